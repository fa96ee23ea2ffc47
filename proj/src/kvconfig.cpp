#include "kvconfig.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "risbeam/errors.hpp"

namespace risbeam::kv {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

KvFile KvFile::parse(const std::string& text) {
    KvFile f;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        if (f.entries_.count(key)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" +
                              key + "'");
        }
        f.entries_[key] = Entry{value, line_no};
        f.order_.push_back(key);
    }
    return f;
}

void KvFile::fail(const std::string& key, const std::string& why) const {
    const auto it = entries_.find(key);
    const int line = it == entries_.end() ? 0 : it->second.line_no;
    throw ConfigError("config line " + std::to_string(line) + ": key '" + key + "': " + why);
}

std::string KvFile::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second.value;
}

double KvFile::get_double(const std::string& key, double fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        return parse_double(it->second.value);
    } catch (const ConfigError&) {
        fail(key, "not a number: '" + it->second.value + "'");
    }
}

int KvFile::get_int(const std::string& key, int fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& v = it->second.value;
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') fail(key, "not an integer: '" + v + "'");
    return static_cast<int>(x);
}

std::uint64_t KvFile::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& v = it->second.value;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos) {
        fail(key, "not an unsigned integer: '" + v + "'");
    }
    return static_cast<std::uint64_t>(x);
}

bool KvFile::get_bool(const std::string& key, bool fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& v = it->second.value;
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(key, "expected true/false: '" + v + "'");
}

std::vector<double> KvFile::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::vector<double> out;
    for (const std::string& item : split_list(it->second.value)) {
        try {
            out.push_back(parse_double(item));
        } catch (const ConfigError&) {
            fail(key, "not a number: '" + item + "'");
        }
    }
    return out;
}

std::vector<int> KvFile::get_int_list(const std::string& key,
                                      const std::vector<int>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::vector<int> out;
    for (const std::string& item : split_list(it->second.value)) {
        char* end = nullptr;
        const long x = std::strtol(item.c_str(), &end, 10);
        if (end == item.c_str() || *end != '\0') fail(key, "not an integer: '" + item + "'");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

std::vector<std::string> KvFile::get_string_list(const std::string& key,
                                                 const std::vector<std::string>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return split_list(it->second.value);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    if (s.empty()) throw ConfigError("empty number");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end); // accepts inf/-inf/nan
    if (end == s.c_str() || *end != '\0') throw ConfigError("bad number: '" + s + "'");
    return v;
}

} // namespace risbeam::kv

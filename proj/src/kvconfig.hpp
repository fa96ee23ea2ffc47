#pragma once

// Flat "key = value" config text: shared parser/formatter for the scenario
// and sweep schemas. '#' starts a comment; keys are single tokens; values run
// to end of line.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace risbeam::kv {

struct Entry {
    std::string value;
    int line_no = 0;
};

class KvFile {
  public:
    static KvFile parse(const std::string& text); // throws ConfigError

    bool has(const std::string& key) const { return entries_.count(key) > 0; }
    const std::vector<std::string>& keys() const { return order_; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;
    std::vector<std::string> get_string_list(const std::string& key,
                                             const std::vector<std::string>& fallback) const;

  private:
    [[noreturn]] void fail(const std::string& key, const std::string& why) const;

    std::map<std::string, Entry> entries_;
    std::vector<std::string> order_;
};

// Shortest round-trip decimal form (std::to_chars); infinities render as
// "inf" / "-inf" and parse back exactly.
std::string format_double(double v);
double parse_double(const std::string& s); // throws ConfigError on garbage

} // namespace risbeam::kv

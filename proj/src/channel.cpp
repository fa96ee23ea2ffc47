#include "risbeam/channel.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "risbeam/errors.hpp"

namespace risbeam {

ChannelView view_of(const ChannelSet& ch) {
    return {std::span<const cxd>(ch.h_d), std::span<const cxd>(ch.g), &ch.h_r};
}

ChannelView prefix_view(const ChannelSet& ch, std::size_t n) {
    if (n > ch.n()) {
        throw DimensionError("prefix_view: requested " + std::to_string(n) + " of " +
                             std::to_string(ch.n()) + " RIS elements");
    }
    return {std::span<const cxd>(ch.h_d), std::span<const cxd>(ch.g).first(n), &ch.h_r};
}

namespace {

void fill_cgaussian(std::span<cxd> out, RandomStream& s) {
    for (cxd& x : out) x = s.next_cgaussian();
}

} // namespace

ChannelSet draw(const ChannelModel& model, std::size_t m, std::size_t n, RandomStream& stream) {
    if (model.kind == ChannelModel::Kind::fixed) {
        stream.next_u64(); // keep stream usage identical across model kinds
        if (model.fixed.m() != m || model.fixed.n() != n || model.fixed.h_r.rows != n ||
            (n > 0 && model.fixed.h_r.cols != m)) {
            throw DimensionError("draw: fixed channel dimensions do not match (m=" +
                                 std::to_string(m) + ", n=" + std::to_string(n) + ")");
        }
        return model.fixed;
    }

    ChannelSet ch;
    ch.h_d.resize(m);
    ch.g.resize(n);
    ch.h_r = CMat(n, m);

    // Independent substream per block: h_d, g and each h_r row keep their
    // positions in the sequence regardless of the other blocks' sizes.
    const std::uint64_t base = stream.next_u64();
    RandomStream s_hd(mix_key(base, 0));
    RandomStream s_g(mix_key(base, 1));
    RandomStream s_hr(mix_key(base, 2));
    fill_cgaussian(ch.h_d, s_hd);
    fill_cgaussian(ch.g, s_g);
    fill_cgaussian(ch.h_r.data, s_hr);
    return ch;
}

namespace {

cxd parse_complex_token(const std::string& tok, int line_no) {
    const auto fail = [&](const char* why) {
        throw ConfigError("channel file line " + std::to_string(line_no) + ": bad complex token '" +
                          tok + "' (" + why + ")");
    };
    if (tok.size() < 2 || tok.back() != 'i') fail("expected re+imi form");
    const std::string body = tok.substr(0, tok.size() - 1);
    // Split at the last '+'/'-' that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) fail("missing imaginary part");
    const std::string re_s = body.substr(0, split);
    const std::string im_s = body.substr(split);
    char* end = nullptr;
    const double re = std::strtod(re_s.c_str(), &end);
    if (end == re_s.c_str() || *end != '\0') fail("bad real part");
    const double im = std::strtod(im_s.c_str(), &end);
    if (end == im_s.c_str() || *end != '\0') fail("bad imaginary part");
    if (!std::isfinite(re) || !std::isfinite(im)) fail("non-finite entry");
    return {re, im};
}

struct TokenReader {
    std::istream& in;
    int line_no = 0;
    std::istringstream line;

    bool next(std::string& tok) {
        while (true) {
            if (line >> tok) {
                if (tok[0] == '#') {
                    line.str("");
                    line.clear();
                    continue;
                }
                return true;
            }
            std::string raw;
            if (!std::getline(in, raw)) return false;
            ++line_no;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            line = std::istringstream(raw);
        }
    }

    std::size_t next_size(const char* what) {
        std::string tok;
        if (!next(tok)) throw ConfigError(std::string("channel file: missing ") + what);
        char* end = nullptr;
        const long long v = std::strtoll(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0' || v < 0) {
            throw ConfigError("channel file line " + std::to_string(line_no) + ": bad " + what +
                              " '" + tok + "'");
        }
        return static_cast<std::size_t>(v);
    }

    void read_entries(std::span<cxd> out) {
        std::string tok;
        for (cxd& x : out) {
            if (!next(tok)) throw ConfigError("channel file: unexpected end of data");
            x = parse_complex_token(tok, line_no);
        }
    }
};

} // namespace

ChannelSet load_channel_set(std::istream& in) {
    ChannelSet ch;
    bool have_hd = false, have_g = false, have_hr = false;
    TokenReader r{in, 0, {}};
    std::string tok;
    while (r.next(tok)) {
        if (tok == "h_d") {
            const std::size_t m = r.next_size("h_d size");
            ch.h_d.resize(m);
            r.read_entries(ch.h_d);
            have_hd = true;
        } else if (tok == "g") {
            const std::size_t n = r.next_size("g size");
            ch.g.resize(n);
            r.read_entries(ch.g);
            have_g = true;
        } else if (tok == "h_r") {
            const std::size_t n = r.next_size("h_r rows");
            const std::size_t m = r.next_size("h_r cols");
            ch.h_r = CMat(n, m);
            r.read_entries(ch.h_r.data);
            have_hr = true;
        } else {
            throw ConfigError("channel file line " + std::to_string(r.line_no) +
                              ": unknown section '" + tok + "'");
        }
    }
    if (!have_hd || !have_g || !have_hr) {
        throw ConfigError("channel file: sections h_d, g and h_r are all required");
    }
    if (ch.h_r.rows != ch.g.size() || (ch.h_r.rows > 0 && ch.h_r.cols != ch.h_d.size())) {
        throw DimensionError("channel file: h_r is " + std::to_string(ch.h_r.rows) + "x" +
                             std::to_string(ch.h_r.cols) + " but h_d has " +
                             std::to_string(ch.h_d.size()) + " and g has " +
                             std::to_string(ch.g.size()) + " entries");
    }
    return ch;
}

ChannelSet load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open channel file: " + path);
    return load_channel_set(in);
}

} // namespace risbeam

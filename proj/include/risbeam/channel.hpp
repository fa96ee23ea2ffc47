#pragma once

#include <iosfwd>
#include <string>

#include "risbeam/cmatrix.hpp"
#include "risbeam/random.hpp"

namespace risbeam {

// One small-scale fading realization: BS->RIS rows (h_r), BS->UE (h_d),
// RIS->UE (g). n may be zero for the no-RIS baseline.
struct ChannelSet {
    CMat h_r; // n x m
    CVec h_d; // m
    CVec g;   // n

    std::size_t m() const { return h_d.size(); }
    std::size_t n() const { return g.size(); }
};

// Non-owning slice of a ChannelSet restricted to its first n RIS elements.
// Lets one large draw serve every N in an element-count sweep without copies.
struct ChannelView {
    std::span<const cxd> h_d;
    std::span<const cxd> g;
    const CMat* h_r = nullptr;

    std::size_t m() const { return h_d.size(); }
    std::size_t n() const { return g.size(); }
    std::span<const cxd> h_r_row(std::size_t i) const { return h_r->row(i); }
};

ChannelView view_of(const ChannelSet& ch);
// Throws DimensionError if n exceeds the stored element count.
ChannelView prefix_view(const ChannelSet& ch, std::size_t n);

struct ChannelModel {
    enum class Kind { iid_complex_gaussian, fixed };
    Kind kind = Kind::iid_complex_gaussian;
    ChannelSet fixed; // used when kind == fixed

    static ChannelModel iid() { return {}; }
    static ChannelModel fixed_set(ChannelSet ch) {
        return {Kind::fixed, std::move(ch)};
    }
};

// Draws one realization. For the iid model every entry is CN(0, 1), generated
// from per-block substreams so a draw at (m, n) is entrywise a prefix of a
// draw at (m, n') for n' >= n from the same stream state. Consumes one word
// of the stream. For the fixed model the stored matrices are returned after
// a dimension check.
ChannelSet draw(const ChannelModel& model, std::size_t m, std::size_t n, RandomStream& stream);

// Plain-text matrix format for golden tests: sections "h_d <m>", "g <n>",
// "h_r <n> <m>", each followed by rows of whitespace-separated re+im tokens
// such as 0.5-1.25i. '#' starts a comment.
ChannelSet load_channel_set(std::istream& in);
ChannelSet load_channel_file(const std::string& path);

} // namespace risbeam

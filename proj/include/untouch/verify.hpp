#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plane.hpp"

// The spectrum engine: for a point set S, count for every s in [0, q+1]
// how many lines meet S in exactly s points. Untouchable means counts[1]
// is zero.

namespace untouch {

struct SpectrumReport {
    std::vector<uint64_t> counts;  // indexed by intersection size, 0..q+1
    uint64_t total_lines = 0;

    uint64_t at(uint32_t s) const {
        return s < counts.size() ? counts[s] : 0;
    }
};

inline SpectrumReport spectrum(const PointSet& s) {
    const Plane& pl = s.plane();
    auto bits = s.bitmap();
    SpectrumReport r;
    r.counts.assign(pl.q() + 2, 0);
    r.total_lines = pl.num_lines();
    for (uint32_t li = 0; li < pl.num_lines(); ++li)
        ++r.counts[pl.count_on_line(li, bits)];
    return r;
}

inline bool is_k_avoiding(const PointSet& s, uint32_t k) {
    if (k > s.plane().q() + 1)
        throw std::invalid_argument("avoidance parameter exceeds line size");
    return spectrum(s).counts[k] == 0;
}

inline bool is_untouchable(const PointSet& s) { return is_k_avoiding(s, 1); }

// Every line meets the set in an even number of points. Meaningful for
// even q; computed the same way regardless.
inline bool is_even_type(const PointSet& s) {
    SpectrumReport r = spectrum(s);
    for (size_t size = 1; size < r.counts.size(); size += 2)
        if (r.counts[size] != 0) return false;
    return true;
}

// Pass/fail check of a claimed untouchable set, with a concrete tangent
// witness on failure.
struct CheckReport {
    bool size_ok = false;
    bool untouchable = false;
    size_t actual_size = 0;
    size_t expected_size = 0;
    std::optional<Line> witness;  // a line meeting the set in exactly 1 point
    bool pass() const { return size_ok && untouchable; }
};

inline CheckReport check_point_set(const PointSet& s, size_t expected_size) {
    const Plane& pl = s.plane();
    CheckReport r;
    r.actual_size = s.size();
    r.expected_size = expected_size;
    r.size_ok = r.actual_size == expected_size;
    r.untouchable = true;
    auto bits = s.bitmap();
    for (uint32_t li = 0; li < pl.num_lines(); ++li) {
        if (pl.count_on_line(li, bits) != 1) continue;
        r.untouchable = false;
        r.witness = pl.line(li);
        break;
    }
    return r;
}

}  // namespace untouch

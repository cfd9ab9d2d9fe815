#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "conics.hpp"
#include "verify.hpp"

// The untouchable-set constructions, one per family. Every builder checks
// its parameters against the family's hypotheses, assembles the set, and
// then verifies size and untouchability before returning; a failed
// self-check throws logic_error rather than returning a bad set.

namespace untouch {

enum class Family {
    even_2q_minus_1,
    even_2q_minus_2,
    even_2q_plus_1,
    odd_2q_plus_1,
    hyperconic,
    set_union
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::even_2q_minus_1: return "even-2q-1";
        case Family::even_2q_minus_2: return "even-2q-2";
        case Family::even_2q_plus_1: return "even-2q+1";
        case Family::odd_2q_plus_1: return "odd-2q+1";
        case Family::hyperconic: return "hyperconic";
        case Family::set_union: return "union";
    }
    return "?";
}

struct ConstructionResult {
    Family family;
    std::map<std::string, uint32_t> params;
    PointSet set;
    size_t expected_size;
};

inline CheckReport check_construction(const ConstructionResult& r) {
    return check_point_set(r.set, r.expected_size);
}

namespace detail {

inline PointSet validated(Family family, PointSet set, size_t expected_size) {
    CheckReport r = check_point_set(set, expected_size);
    if (!r.pass())
        throw std::logic_error(std::string(family_name(family)) +
                               " self-check failed: size " +
                               std::to_string(r.actual_size) + " of " +
                               std::to_string(expected_size) +
                               (r.untouchable ? "" : ", tangent line found"));
    return set;
}

inline void require_even_theorem_order(const Plane& pl) {
    if (pl.q() % 2 != 0)
        throw std::invalid_argument("this family requires even q");
    if (pl.q() < 8)
        throw std::invalid_argument(
            "this family requires q >= 8 (at q = 4 every admissible "
            "parameter is a cube root of unity)");
}

}  // namespace detail

// Conic plus nucleus: q+2 points met by every line in 0 or 2 points.
inline ConstructionResult hyperconic(const Plane& pl, const Quadratic& q) {
    if (pl.q() % 2 != 0)
        throw std::invalid_argument("a hyperconic requires even q");
    if (classify(pl, q).tag != ConicTag::nondegenerate)
        throw std::invalid_argument("a hyperconic requires a nondegenerate conic");
    auto idx = conic_points(pl, q).indices();
    idx.push_back(pl.index_of(nucleus(pl, q)));
    std::map<std::string, uint32_t> params = {{"xx", q.xx}, {"yy", q.yy},
                                              {"zz", q.zz}, {"xy", q.xy},
                                              {"xz", q.xz}, {"yz", q.yz}};
    PointSet s = detail::validated(Family::hyperconic,
                                   PointSet(pl, std::move(idx)), pl.q() + 2);
    return {Family::hyperconic, std::move(params), std::move(s), pl.q() + 2};
}

// C_a ∪ C_{a²} ∪ {(1,1,a²)} from the first pencil, size 2q-1. The extra
// point is the nucleus of C_{a²}, which lies on neither conic; the nucleus
// of C_a is already a point of C_{a²}.
inline ConstructionResult even_2q_minus_1(const Plane& pl, uint32_t a) {
    detail::require_even_theorem_order(pl);
    const Field& f = pl.field();
    if (a >= f.q() || a == 0 || a == 1)
        throw std::invalid_argument("parameter a must avoid {0,1}");
    if (f.pow(a, 3) == 1)
        throw std::invalid_argument(
            "a is a cube root of unity; use the 2q-2 family");
    const uint32_t a2 = f.mul(a, a);
    PointSet s = set_union(conic_points(pl, pencil_conic(pl, Pencil::P1, a)),
                           conic_points(pl, pencil_conic(pl, Pencil::P1, a2)));
    auto idx = s.indices();
    idx.push_back(pl.index_of(Point{1, 1, a2}));
    const size_t expected = 2 * size_t(f.q()) - 1;
    std::map<std::string, uint32_t> params = {{"a", a}};
    PointSet out = detail::validated(Family::even_2q_minus_1,
                                     PointSet(pl, std::move(idx)), expected);
    return {Family::even_2q_minus_1, std::move(params), std::move(out),
            expected};
}

// C_a ∪ C_{a²} for a primitive cube root of unity, size 2q-2: each conic
// carries the other's nucleus, so the union is a union of two hyperconics.
// Cube roots exist only when q is an even power of 2.
inline ConstructionResult even_2q_minus_2(const Plane& pl, uint32_t a) {
    detail::require_even_theorem_order(pl);
    const Field& f = pl.field();
    if ((f.q() - 1) % 3 != 0)
        throw std::invalid_argument(
            "no primitive cube roots of unity: q is an odd power of 2");
    if (a >= f.q() || a == 1 || f.pow(a, 3) != 1)
        throw std::invalid_argument("a must be a primitive cube root of unity");
    const uint32_t a2 = f.mul(a, a);
    PointSet s = set_union(conic_points(pl, pencil_conic(pl, Pencil::P1, a)),
                           conic_points(pl, pencil_conic(pl, Pencil::P1, a2)));
    const size_t expected = 2 * size_t(f.q()) - 2;
    std::map<std::string, uint32_t> params = {{"a", a}};
    PointSet out = detail::validated(Family::even_2q_minus_2, std::move(s),
                                     expected);
    return {Family::even_2q_minus_2, std::move(params), std::move(out),
            expected};
}

// D_a ∪ D_b ∪ {both nuclei} from the second pencil, size 2q+1. The nuclei
// (0,1,a) and (0,1,b) lie on V(xy) and on no conic of the pencil.
inline ConstructionResult even_2q_plus_1(const Plane& pl, uint32_t a,
                                         uint32_t b) {
    detail::require_even_theorem_order(pl);
    const Field& f = pl.field();
    if (a >= f.q() || b >= f.q() || a == 0 || b == 0)
        throw std::invalid_argument("parameters must be nonzero");
    if (a == b) throw std::invalid_argument("parameters must be distinct");
    PointSet s = set_union(conic_points(pl, pencil_conic(pl, Pencil::P2, a)),
                           conic_points(pl, pencil_conic(pl, Pencil::P2, b)));
    auto idx = s.indices();
    idx.push_back(pl.index_of(Point{0, 1, a}));
    idx.push_back(pl.index_of(Point{0, 1, b}));
    const size_t expected = 2 * size_t(f.q()) + 1;
    std::map<std::string, uint32_t> params = {{"a", a}, {"b", b}};
    PointSet out = detail::validated(Family::even_2q_plus_1,
                                     PointSet(pl, std::move(idx)), expected);
    return {Family::even_2q_plus_1, std::move(params), std::move(out),
            expected};
}

// C_1 ∪ C_b ∪ {(0,0,1)} from the third pencil, size 2q+1, for q ≡ 3 mod 4
// and b, b-1 both non-squares. The two conics are mutually exterior and
// share exactly (1,0,0) and (0,1,0), whose tangents meet at (0,0,1).
inline ConstructionResult odd_2q_plus_1(const Plane& pl, uint32_t b) {
    const Field& f = pl.field();
    if (f.q() % 2 == 0)
        throw std::invalid_argument("this family requires odd q");
    if (f.q() % 4 != 3)
        throw std::invalid_argument(
            "this family requires q = 3 (mod 4): for q = 1 (mod 4) the same "
            "union acquires tangent lines through (0,0,1)");
    if (f.q() < 7) throw std::invalid_argument("this family requires q >= 7");
    if (b >= f.q() || b == 0)
        throw std::invalid_argument("parameter b out of range");
    if (f.is_square(b) || f.is_square(f.sub(b, 1)))
        throw std::invalid_argument("b and b-1 must both be non-squares");
    PointSet s = set_union(conic_points(pl, pencil_conic(pl, Pencil::P3, 1)),
                           conic_points(pl, pencil_conic(pl, Pencil::P3, b)));
    auto idx = s.indices();
    idx.push_back(pl.index_of(Point{0, 0, 1}));
    const size_t expected = 2 * size_t(f.q()) + 1;
    std::map<std::string, uint32_t> params = {{"b", b}};
    PointSet out = detail::validated(Family::odd_2q_plus_1,
                                     PointSet(pl, std::move(idx)), expected);
    return {Family::odd_2q_plus_1, std::move(params), std::move(out),
            expected};
}

// Untouchable sets are closed under union; inputs are validated first so a
// tangent in an input is reported as the caller's error, not a self-check
// failure.
inline ConstructionResult union_sets(const std::vector<PointSet>& sets) {
    if (sets.empty())
        throw std::invalid_argument("union of an empty list of sets");
    for (size_t i = 1; i < sets.size(); ++i)
        if (!sets[i].plane().same_plane(sets[0].plane()))
            throw std::invalid_argument("union across different planes");
    for (const PointSet& s : sets)
        if (!is_untouchable(s))
            throw std::invalid_argument(
                "union input has a tangent line and is not untouchable");
    PointSet acc = sets[0];
    for (size_t i = 1; i < sets.size(); ++i) acc = set_union(acc, sets[i]);
    const size_t expected = acc.size();
    PointSet out = detail::validated(Family::set_union, std::move(acc), expected);
    return {Family::set_union, {}, std::move(out), expected};
}

// Smallest b with b and b-1 both non-squares; exists for every q ≡ 3 mod 4,
// q >= 7, since the count (q-3)/4 is positive there.
inline uint32_t find_odd_parameter(const Field& f) {
    if (f.q() % 4 != 3 || f.q() < 7)
        throw std::invalid_argument("requires q = 3 (mod 4), q >= 7");
    for (uint32_t b = 2; b < f.q(); ++b)
        if (!f.is_square(b) && !f.is_square(f.sub(b, 1))) return b;
    throw std::logic_error("no valid parameter found");  // unreachable
}

}  // namespace untouch

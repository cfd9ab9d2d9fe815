#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "plane.hpp"

// Ternary quadratic forms over GF(q): the three conic pencils used by the
// constructions, plus nuclei, tangents, and interior/exterior machinery.
// Degeneracy is decided by zero-set shape, not matrix rank, so the same
// code path serves characteristic 2.

namespace untouch {

// The form xx·x² + yy·y² + zz·z² + xy·xy + xz·xz + yz·yz, coefficients as
// field-element encodings in this fixed order.
struct Quadratic {
    uint32_t xx, yy, zz, xy, xz, yz;
    friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

enum class Pencil { P1, P2, P3 };

enum class ConicTag { nondegenerate, line_pair, repeated_line };

struct ConicClass {
    ConicTag tag;
    std::vector<Line> components;  // the 1 or 2 lines when degenerate
};

enum class PointClass { on, exterior, interior };

namespace detail {

inline void check_quadratic(const Field& f, const Quadratic& q) {
    for (uint32_t c : {q.xx, q.yy, q.zz, q.xy, q.xz, q.yz})
        if (c >= f.q())
            throw std::invalid_argument("quadratic coefficient out of range");
    if (q.xx == 0 && q.yy == 0 && q.zz == 0 && q.xy == 0 && q.xz == 0 &&
        q.yz == 0)
        throw std::invalid_argument("the zero form is not a quadratic");
}

}  // namespace detail

inline uint32_t eval_quadratic(const Plane& pl, const Quadratic& q,
                               const Point& p) {
    const Field& f = pl.field();
    detail::check_quadratic(f, q);
    uint32_t acc = f.mul(q.xx, f.mul(p.x, p.x));
    acc = f.add(acc, f.mul(q.yy, f.mul(p.y, p.y)));
    acc = f.add(acc, f.mul(q.zz, f.mul(p.z, p.z)));
    acc = f.add(acc, f.mul(q.xy, f.mul(p.x, p.y)));
    acc = f.add(acc, f.mul(q.xz, f.mul(p.x, p.z)));
    acc = f.add(acc, f.mul(q.yz, f.mul(p.y, p.z)));
    return acc;
}

// The three pencils. P1 and P2 live in even characteristic, P3 in odd.
inline Quadratic pencil_conic(const Plane& pl, Pencil family, uint32_t k) {
    const Field& f = pl.field();
    if (k >= f.q())
        throw std::invalid_argument("pencil parameter out of range");
    switch (family) {
        case Pencil::P1:
            if (f.q() % 2 != 0)
                throw std::invalid_argument("pencil P1 requires even q");
            return Quadratic{0, 0, 1, k, 1, 1};  // kxy + z² + xz + yz
        case Pencil::P2:
            if (f.q() % 2 != 0)
                throw std::invalid_argument("pencil P2 requires even q");
            return Quadratic{0, 0, 1, k, 1, 0};  // kxy + z² + xz
        case Pencil::P3:
            if (f.q() % 2 == 0)
                throw std::invalid_argument("pencil P3 requires odd q");
            return Quadratic{0, 0, k, 1, 0, 0};  // xy + kz²
    }
    throw std::invalid_argument("unknown pencil");
}

inline PointSet conic_points(const Plane& pl, const Quadratic& q) {
    detail::check_quadratic(pl.field(), q);
    std::vector<uint32_t> idx;
    for (uint32_t i = 0; i < pl.num_points(); ++i)
        if (eval_quadratic(pl, q, pl.point(i)) == 0) idx.push_back(i);
    return PointSet(pl, std::move(idx));
}

// Shape analysis of the zero set; empty result when it matches none of the
// three conic patterns (possible for forms irreducible over GF(q) but not
// over GF(q²), whose zero set is a single point).
inline std::optional<ConicClass> classify_shape(const Plane& pl,
                                                const Quadratic& q) {
    const uint32_t qq = pl.q();
    PointSet zeros = conic_points(pl, q);
    auto bits = zeros.bitmap();
    std::vector<Line> full;
    uint32_t max_meet = 0;
    for (uint32_t li = 0; li < pl.num_lines(); ++li) {
        uint32_t c = pl.count_on_line(li, bits);
        max_meet = std::max(max_meet, c);
        if (c == qq + 1) full.push_back(pl.line(li));
    }
    if (full.size() == 2 && zeros.size() == size_t(2) * qq + 1)
        return ConicClass{ConicTag::line_pair, std::move(full)};
    if (full.size() == 1 && zeros.size() == size_t(qq) + 1)
        return ConicClass{ConicTag::repeated_line, std::move(full)};
    if (full.empty() && zeros.size() == size_t(qq) + 1 && max_meet <= 2)
        return ConicClass{ConicTag::nondegenerate, {}};
    return std::nullopt;
}

inline ConicClass classify(const Plane& pl, const Quadratic& q) {
    auto cls = classify_shape(pl, q);
    if (!cls)
        throw std::domain_error(
            "zero set matches no conic pattern (point count " +
            std::to_string(conic_points(pl, q).size()) + ")");
    return *cls;
}

inline bool is_nondegenerate(const Plane& pl, const Quadratic& q) {
    auto cls = classify_shape(pl, q);
    return cls && cls->tag == ConicTag::nondegenerate;
}

// For each of the q+1 conic points, the unique line meeting the conic only
// there, found by scanning the q+1 lines through the point.
inline std::vector<std::pair<Point, Line>> tangent_lines(const Plane& pl,
                                                         const Quadratic& q) {
    if (classify(pl, q).tag != ConicTag::nondegenerate)
        throw std::domain_error("tangent lines require a nondegenerate conic");
    PointSet zeros = conic_points(pl, q);
    auto bits = zeros.bitmap();
    std::vector<std::pair<Point, Line>> out;
    out.reserve(zeros.size());
    for (uint32_t pi : zeros.indices()) {
        std::optional<uint32_t> tangent;
        for (uint32_t li : pl.lines_through_point(pi)) {
            if (pl.count_on_line(li, bits) != 1) continue;
            if (tangent)
                throw std::logic_error("two tangents at one conic point");
            tangent = li;
        }
        if (!tangent) throw std::logic_error("conic point with no tangent");
        out.emplace_back(pl.point(pi), pl.line(*tangent));
    }
    return out;
}

// Even q only: the common point of all q+1 tangents.
inline Point nucleus(const Plane& pl, const Quadratic& q) {
    if (pl.q() % 2 != 0)
        throw std::domain_error("the nucleus exists only for even q");
    auto tangents = tangent_lines(pl, q);
    Point n = pl.meet(tangents[0].second, tangents[1].second);
    for (const auto& [p, l] : tangents)
        if (!pl.incident(n, l))
            throw std::logic_error("tangents are not concurrent");
    return n;
}

// Odd q only: a non-conic point is exterior when it lies on exactly two
// tangents and interior when it lies on none. Precomputes the tangent set
// once so whole-plane sweeps stay cheap.
class PointClassifier {
  public:
    PointClassifier(const Plane& pl, const Quadratic& q) : plane_(pl) {
        if (pl.q() % 2 == 0)
            throw std::domain_error(
                "interior/exterior classification requires odd q");
        on_ = conic_points(pl, q).indices();
        for (const auto& [p, l] : tangent_lines(pl, q))
            tangents_.push_back(pl.index_of(l));
        std::sort(tangents_.begin(), tangents_.end());
    }

    PointClass classify(uint32_t point_index) const {
        if (std::binary_search(on_.begin(), on_.end(), point_index))
            return PointClass::on;
        uint32_t hits = 0;
        for (uint32_t li : plane_.lines_through_point(point_index))
            if (std::binary_search(tangents_.begin(), tangents_.end(), li))
                ++hits;
        if (hits == 2) return PointClass::exterior;
        if (hits == 0) return PointClass::interior;
        throw std::logic_error("point on " + std::to_string(hits) +
                               " tangents in odd characteristic");
    }
    PointClass classify(const Point& p) const {
        return classify(plane_.index_of(p));
    }

    const std::vector<uint32_t>& tangent_line_indices() const {
        return tangents_;
    }

  private:
    Plane plane_;
    std::vector<uint32_t> on_;
    std::vector<uint32_t> tangents_;
};

inline PointClass point_class(const Plane& pl, const Quadratic& q,
                              const Point& p) {
    return PointClassifier(pl, q).classify(p);
}

// Conics xy + az² and xy + bz² of the third pencil are mutually exterior
// exactly when a(a-b) and b(b-a) are both squares.
inline bool mutually_exterior(const Field& f, uint32_t a, uint32_t b) {
    if (f.q() % 2 == 0)
        throw std::invalid_argument("mutual exteriority requires odd q");
    if (a == 0 || b == 0 || a == b)
        throw std::invalid_argument(
            "mutual exteriority needs distinct nonzero parameters");
    return f.is_square(f.mul(a, f.sub(a, b))) &&
           f.is_square(f.mul(b, f.sub(b, a)));
}

// Number of partners of the unit conic: counts b with mutually_exterior(1,b).
// Equals (q-5)/4 for q ≡ 1 (mod 4) and (q-3)/4 for q ≡ 3 (mod 4).
inline uint32_t count_exterior_partners(const Field& f) {
    if (f.q() % 2 == 0)
        throw std::invalid_argument("exterior partner count requires odd q");
    uint32_t n = 0;
    for (uint32_t b = 2; b < f.q(); ++b)
        if (mutually_exterior(f, 1, b)) ++n;
    return n;
}

namespace detail {

// Basis of the right null space of a matrix over GF(q), by Gaussian
// elimination. Rows are length-6 coefficient vectors.
inline std::vector<std::array<uint32_t, 6>> nullspace6(
    const Field& f, std::vector<std::array<uint32_t, 6>> rows) {
    const size_t m = rows.size();
    std::array<int, 6> pivot_row;
    pivot_row.fill(-1);
    size_t r = 0;
    for (size_t col = 0; col < 6 && r < m; ++col) {
        size_t sel = r;
        while (sel < m && rows[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(rows[r], rows[sel]);
        uint32_t s = f.inv(rows[r][col]);
        for (size_t j = 0; j < 6; ++j) rows[r][j] = f.mul(rows[r][j], s);
        for (size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][col] == 0) continue;
            uint32_t t = rows[i][col];
            for (size_t j = 0; j < 6; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(t, rows[r][j]));
        }
        pivot_row[col] = int(r);
        ++r;
    }
    std::vector<std::array<uint32_t, 6>> basis;
    for (size_t free_col = 0; free_col < 6; ++free_col) {
        if (pivot_row[free_col] >= 0) continue;
        std::array<uint32_t, 6> v{};
        v[free_col] = 1;
        for (size_t col = 0; col < 6; ++col)
            if (pivot_row[col] >= 0)
                v[col] = f.neg(rows[size_t(pivot_row[col])][free_col]);
        basis.push_back(v);
    }
    return basis;
}

inline std::array<uint32_t, 6> quadratic_row(const Field& f, const Point& p) {
    return {f.mul(p.x, p.x), f.mul(p.y, p.y), f.mul(p.z, p.z),
            f.mul(p.x, p.y), f.mul(p.x, p.z), f.mul(p.y, p.z)};
}

inline bool conic_within(const Plane& pl, const Quadratic& q,
                         const PointSet& s) {
    std::vector<uint32_t> zeros;
    for (uint32_t i = 0; i < pl.num_points(); ++i) {
        if (eval_quadratic(pl, q, pl.point(i)) != 0) continue;
        if (!s.contains(i)) return false;
        zeros.push_back(i);
    }
    if (zeros.size() != size_t(pl.q()) + 1) return false;
    auto bits = PointSet(pl, std::move(zeros)).bitmap();
    for (uint32_t li = 0; li < pl.num_lines(); ++li)
        if (pl.count_on_line(li, bits) > 2) return false;
    return true;
}

}  // namespace detail

// Reports a nondegenerate conic fully contained in the set, if any. Five
// points of such a conic determine it, so candidates come from 5-point
// subsets; meant for small witness sets, the subset loop is combinatorial.
inline std::optional<Quadratic> set_contains_conic(const PointSet& s) {
    const Plane& pl = s.plane();
    const Field& f = pl.field();
    const uint32_t q = pl.q();
    if (s.size() < size_t(q) + 1) return std::nullopt;
    if (q <= 3) {
        // Too few points per conic to pin down by interpolation; the form
        // space is tiny, scan it.
        uint64_t total = 1;
        for (int i = 0; i < 6; ++i) total *= q;
        for (uint64_t m = 1; m < total; ++m) {
            uint64_t d = m;
            uint32_t c[6];
            for (int i = 0; i < 6; ++i) {
                c[i] = uint32_t(d % q);
                d /= q;
            }
            Quadratic cand{c[0], c[1], c[2], c[3], c[4], c[5]};
            if (detail::conic_within(pl, cand, s)) return cand;
        }
        return std::nullopt;
    }
    const auto& idx = s.indices();
    const size_t n = idx.size();
    std::array<size_t, 5> c = {0, 1, 2, 3, 4};
    if (n < 5) return std::nullopt;
    while (true) {
        std::vector<std::array<uint32_t, 6>> rows;
        for (size_t i : c) rows.push_back(detail::quadratic_row(f, pl.point(idx[i])));
        auto basis = detail::nullspace6(f, std::move(rows));
        if (basis.size() == 1) {
            const auto& v = basis[0];
            Quadratic cand{v[0], v[1], v[2], v[3], v[4], v[5]};
            if (detail::conic_within(pl, cand, s)) return cand;
        }
        // next 5-combination in lexicographic order
        size_t i = 5;
        while (i-- > 0) {
            if (c[i] != i + n - 5) {
                ++c[i];
                for (size_t j = i + 1; j < 5; ++j) c[j] = c[j - 1] + 1;
                break;
            }
            if (i == 0) return std::nullopt;
        }
    }
}

}  // namespace untouch

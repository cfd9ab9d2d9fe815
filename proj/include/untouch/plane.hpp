#pragma once

#include <bit>
#include <cstdint>
#include <iterator>
#include <memory>
#include <stdexcept>
#include <vector>

#include "gf.hpp"

// The incidence structure of PG(2,q). Points and lines are homogeneous
// triples of field-element encodings, normalized so the leftmost nonzero
// coordinate is 1. Both are enumerated in lexicographic encoding order,
// lines by duality through the same routine, so point index i and line
// index i carry the same triple.

namespace untouch {

struct Point {
    uint32_t x, y, z;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Line {
    uint32_t u, v, w;
    friend bool operator==(const Line&, const Line&) = default;
};

class Plane {
  public:
    // Incidence bitmap and adjacency lists are precomputed up to this order;
    // larger planes fall back to on-demand line solving.
    static constexpr uint32_t kAccelLimit = 256;

    explicit Plane(const Field& f) {
        auto rep = std::make_shared<Rep>(f);
        rep_ = rep;
        const uint32_t q = f.q();
        const uint32_t n = rep->n;
        if (q > kAccelLimit) return;
        rep->line_points.resize(size_t(n) * (q + 1));
        rep->point_lines.resize(size_t(n) * (q + 1));
        rep->line_bits.assign(size_t(n) * rep->words, 0);
        std::vector<uint32_t> cursor(n, 0);
        for (uint32_t li = 0; li < n; ++li) {
            auto [a, b, c] = triple_of_index(li);
            auto pts = solve_incident(a, b, c);
            for (uint32_t j = 0; j <= q; ++j) {
                uint32_t pi = pts[j];
                rep->line_points[size_t(li) * (q + 1) + j] = pi;
                rep->point_lines[size_t(pi) * (q + 1) + cursor[pi]++] = li;
                rep->line_bits[size_t(li) * rep->words + pi / 64] |=
                    uint64_t(1) << (pi % 64);
            }
        }
    }

    const Field& field() const { return rep_->field; }
    uint32_t q() const { return rep_->field.q(); }
    uint32_t num_points() const { return rep_->n; }
    uint32_t num_lines() const { return rep_->n; }

    bool same_plane(const Plane& o) const {
        return rep_ == o.rep_ || rep_->field.same_spec(o.rep_->field);
    }

    // Triple <-> canonical index. Order: (0,0,1), then (0,1,z), then (1,y,z).
    Point point(uint32_t index) const {
        auto [a, b, c] = triple_of_index(index);
        return Point{a, b, c};
    }
    Line line(uint32_t index) const {
        auto [a, b, c] = triple_of_index(index);
        return Line{a, b, c};
    }
    uint32_t index_of(const Point& p) const {
        Point n = normalize(p);
        return index_of_triple(n.x, n.y, n.z);
    }
    uint32_t index_of(const Line& l) const {
        Line n = normalize(l);
        return index_of_triple(n.u, n.v, n.w);
    }

    Point normalize(const Point& p) const {
        auto [a, b, c] = normalize_triple(p.x, p.y, p.z);
        return Point{a, b, c};
    }
    Line normalize(const Line& l) const {
        auto [a, b, c] = normalize_triple(l.u, l.v, l.w);
        return Line{a, b, c};
    }

    bool incident(const Point& p, const Line& l) const {
        const Field& f = rep_->field;
        uint32_t s = f.add(f.mul(l.u, p.x), f.mul(l.v, p.y));
        return f.add(s, f.mul(l.w, p.z)) == 0;
    }

    // The unique line through two distinct points: the normalized cross
    // product of their coordinate triples.
    Line line_through(const Point& p, const Point& q) const {
        const Field& f = rep_->field;
        uint32_t u = f.sub(f.mul(p.y, q.z), f.mul(p.z, q.y));
        uint32_t v = f.sub(f.mul(p.z, q.x), f.mul(p.x, q.z));
        uint32_t w = f.sub(f.mul(p.x, q.y), f.mul(p.y, q.x));
        if (u == 0 && v == 0 && w == 0)
            throw std::invalid_argument("line_through requires two distinct points");
        return normalize(Line{u, v, w});
    }

    Point meet(const Line& l, const Line& m) const {
        const Field& f = rep_->field;
        uint32_t x = f.sub(f.mul(l.v, m.w), f.mul(l.w, m.v));
        uint32_t y = f.sub(f.mul(l.w, m.u), f.mul(l.u, m.w));
        uint32_t z = f.sub(f.mul(l.u, m.v), f.mul(l.v, m.u));
        if (x == 0 && y == 0 && z == 0)
            throw std::invalid_argument("meet requires two distinct lines");
        return normalize(Point{x, y, z});
    }

    std::vector<Point> enumerate_points() const {
        std::vector<Point> pts;
        pts.reserve(rep_->n);
        for (uint32_t i = 0; i < rep_->n; ++i) pts.push_back(point(i));
        return pts;
    }

    // Sorted indices of the q+1 points on a line.
    std::vector<uint32_t> points_on_line(uint32_t line_index) const {
        if (!rep_->line_points.empty()) {
            auto base = rep_->line_points.begin() +
                        size_t(line_index) * (rep_->field.q() + 1);
            return std::vector<uint32_t>(base, base + rep_->field.q() + 1);
        }
        auto [a, b, c] = triple_of_index(line_index);
        return solve_incident(a, b, c);
    }
    std::vector<uint32_t> points_on_line(const Line& l) const {
        return points_on_line(index_of(l));
    }

    // Sorted indices of the q+1 lines through a point (dual of the above).
    std::vector<uint32_t> lines_through_point(uint32_t point_index) const {
        if (!rep_->point_lines.empty()) {
            auto base = rep_->point_lines.begin() +
                        size_t(point_index) * (rep_->field.q() + 1);
            return std::vector<uint32_t>(base, base + rep_->field.q() + 1);
        }
        auto [a, b, c] = triple_of_index(point_index);
        return solve_incident(a, b, c);
    }
    std::vector<uint32_t> lines_through_point(const Point& p) const {
        return lines_through_point(index_of(p));
    }

    // Row of the line-by-point incidence bitmap; only valid when the plane
    // is within the acceleration limit.
    bool has_bitmap() const { return !rep_->line_bits.empty(); }
    uint32_t words_per_row() const { return rep_->words; }
    const uint64_t* line_row(uint32_t line_index) const {
        return rep_->line_bits.data() + size_t(line_index) * rep_->words;
    }

    // |line ∩ S| where S is given as a membership bitmap over point indices.
    uint32_t count_on_line(uint32_t line_index,
                           const std::vector<uint64_t>& set_bits) const {
        if (has_bitmap()) {
            const uint64_t* row = line_row(line_index);
            uint32_t c = 0;
            for (uint32_t w = 0; w < rep_->words; ++w)
                c += uint32_t(std::popcount(row[w] & set_bits[w]));
            return c;
        }
        uint32_t c = 0;
        for (uint32_t pi : points_on_line(line_index))
            c += uint32_t((set_bits[pi / 64] >> (pi % 64)) & 1);
        return c;
    }

  private:
    struct Rep {
        explicit Rep(const Field& f) : field(f) {
            const uint64_t q = field.q();
            n = uint32_t(q * q + q + 1);
            words = uint32_t((n + 63) / 64);
        }
        Field field;
        uint32_t n = 0;
        uint32_t words = 0;
        std::vector<uint32_t> line_points;  // n rows of q+1 sorted indices
        std::vector<uint32_t> point_lines;  // n rows of q+1 sorted indices
        std::vector<uint64_t> line_bits;    // n rows of `words` words
    };

    struct Triple {
        uint32_t a, b, c;
    };

    Triple normalize_triple(uint32_t a, uint32_t b, uint32_t c) const {
        const Field& f = rep_->field;
        if (a != 0) {
            uint32_t s = f.inv(a);
            return {1, f.mul(b, s), f.mul(c, s)};
        }
        if (b != 0) {
            uint32_t s = f.inv(b);
            return {0, 1, f.mul(c, s)};
        }
        if (c != 0) return {0, 0, 1};
        throw std::invalid_argument("the zero triple is not projective");
    }

    uint32_t index_of_triple(uint32_t a, uint32_t b, uint32_t c) const {
        const uint32_t q = rep_->field.q();
        if (a == 0 && b == 0) return 0;
        if (a == 0) return 1 + c;
        return 1 + q + q * b + c;
    }

    Triple triple_of_index(uint32_t i) const {
        const uint32_t q = rep_->field.q();
        if (i >= rep_->n) throw std::out_of_range("plane index out of range");
        if (i == 0) return {0, 0, 1};
        if (i <= q) return {0, 1, i - 1};
        uint32_t j = i - 1 - q;
        return {1, j / q, j % q};
    }

    // Sorted indices of the projective solutions of a*t0 + b*t1 + c*t2 = 0.
    // Used for both points-on-line and lines-through-point.
    std::vector<uint32_t> solve_incident(uint32_t a, uint32_t b, uint32_t c) const {
        const Field& f = rep_->field;
        const uint32_t q = f.q();
        Triple coef = normalize_triple(a, b, c);
        uint32_t cf[3] = {coef.a, coef.b, coef.c};
        int piv = cf[0] != 0 ? 0 : (cf[1] != 0 ? 1 : 2);
        int j = piv == 0 ? 1 : 0;
        int k = piv == 2 ? 1 : 2;
        std::vector<uint32_t> out;
        out.reserve(q + 1);
        uint32_t v[3];
        v[piv] = f.neg(cf[k]);
        v[j] = 0;
        v[k] = 1;
        Triple t = normalize_triple(v[0], v[1], v[2]);
        out.push_back(index_of_triple(t.a, t.b, t.c));
        for (uint32_t s = 0; s < q; ++s) {
            v[piv] = f.neg(f.add(cf[j], f.mul(cf[k], s)));
            v[j] = 1;
            v[k] = s;
            t = normalize_triple(v[0], v[1], v[2]);
            out.push_back(index_of_triple(t.a, t.b, t.c));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::shared_ptr<const Rep> rep_;
};

// A canonical subset of plane points: strictly increasing indices into the
// plane's enumeration.
class PointSet {
  public:
    PointSet(Plane plane, std::vector<uint32_t> indices)
        : plane_(std::move(plane)), indices_(std::move(indices)) {
        std::sort(indices_.begin(), indices_.end());
        indices_.erase(std::unique(indices_.begin(), indices_.end()),
                       indices_.end());
        if (!indices_.empty() && indices_.back() >= plane_.num_points())
            throw std::invalid_argument("point index exceeds plane size");
    }

    static PointSet from_points(const Plane& plane,
                                const std::vector<Point>& pts) {
        std::vector<uint32_t> idx;
        idx.reserve(pts.size());
        for (const Point& p : pts) idx.push_back(plane.index_of(p));
        return PointSet(plane, std::move(idx));
    }

    const Plane& plane() const { return plane_; }
    const std::vector<uint32_t>& indices() const { return indices_; }
    size_t size() const { return indices_.size(); }

    bool contains(uint32_t index) const {
        return std::binary_search(indices_.begin(), indices_.end(), index);
    }

    std::vector<Point> points() const {
        std::vector<Point> out;
        out.reserve(indices_.size());
        for (uint32_t i : indices_) out.push_back(plane_.point(i));
        return out;
    }

    // Membership bitmap sized to the plane, for intersection kernels.
    std::vector<uint64_t> bitmap() const {
        std::vector<uint64_t> bits(plane_.words_per_row(), 0);
        for (uint32_t i : indices_) bits[i / 64] |= uint64_t(1) << (i % 64);
        return bits;
    }

    friend PointSet set_union(const PointSet& a, const PointSet& b) {
        if (!a.plane_.same_plane(b.plane_))
            throw std::invalid_argument("set union across different planes");
        std::vector<uint32_t> idx;
        idx.reserve(a.size() + b.size());
        std::set_union(a.indices_.begin(), a.indices_.end(),
                       b.indices_.begin(), b.indices_.end(),
                       std::back_inserter(idx));
        return PointSet(a.plane_, std::move(idx));
    }

  private:
    Plane plane_;
    std::vector<uint32_t> indices_;
};

}  // namespace untouch

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "plane.hpp"
#include "verify.hpp"

// Exhaustive backtracking search for untouchable sets of a given size.
// Points are considered in canonical index order; a nonempty set can always
// be mapped onto one containing point 0 (the collineation group is
// transitive), so the tree is anchored there. Exhaustion without a witness
// proves non-existence for the plane and size. Running out of budget never
// does; it is reported as inconclusive.

namespace untouch {

struct SearchBudget {
    uint64_t max_nodes = 1'000'000'000;
    double max_seconds = 600.0;
};

enum class SearchStatus { exists, not_exists, inconclusive };

struct SearchOutcome {
    SearchStatus status = SearchStatus::inconclusive;
    std::optional<PointSet> witness;  // engaged exactly when status is exists
    uint64_t nodes_explored = 0;
    double wall_seconds = 0.0;
};

namespace detail {

class Searcher {
  public:
    Searcher(const Plane& pl, uint32_t target, SearchBudget budget)
        : plane_(pl),
          n_(pl.num_points()),
          per_point_(pl.q() + 1),
          target_(target),
          budget_(budget) {
        point_lines_.reserve(size_t(n_) * per_point_);
        for (uint32_t pi = 0; pi < n_; ++pi)
            for (uint32_t li : pl.lines_through_point(pi))
                point_lines_.push_back(li);
        line_max_.resize(n_);
        for (uint32_t li = 0; li < n_; ++li)
            line_max_[li] = plane_.points_on_line(li).back();
        counts_.assign(n_, 0);
    }

    SearchOutcome run() {
        const auto t0 = std::chrono::steady_clock::now();
        deadline_ = t0 + std::chrono::duration_cast<
                             std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(budget_.max_seconds));
        int rc;
        if (target_ == 0) {
            rc = 1;  // the empty set has no tangents
        } else {
            rc = place_and_descend(0, 0);
        }
        SearchOutcome out;
        out.nodes_explored = nodes_;
        out.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (rc == 1) {
            out.status = SearchStatus::exists;
            out.witness = PointSet(plane_, chosen_);
            CheckReport check = check_point_set(*out.witness, target_);
            if (!check.pass())
                throw std::logic_error("search produced an invalid witness");
        } else if (rc == 0) {
            out.status = SearchStatus::not_exists;
        } else {
            out.status = SearchStatus::inconclusive;
        }
        return out;
    }

  private:
    // Returns 0 when the subtree is exhausted, 1 on witness, 2 on budget.
    int place_and_descend(uint32_t p, uint32_t depth) {
        ++nodes_;
        if (nodes_ > budget_.max_nodes) return 2;
        if ((nodes_ & 1023) == 0 &&
            std::chrono::steady_clock::now() > deadline_)
            return 2;
        place(p);
        chosen_.push_back(p);
        const uint32_t need = target_ - depth - 1;
        // dead if a line met exactly once has no candidate point left, or
        // if the open lines outnumber what the remaining points can cover
        bool dead =
            (!deadlines_.empty() && *deadlines_.begin() <= p) ||
            uint64_t(need) * per_point_ < open_;
        int rc = 0;
        if (!dead) {
            if (need == 0) return 1;  // open_ == 0: no tangent lines
            for (uint32_t next = p + 1; next + need <= n_; ++next) {
                rc = place_and_descend(next, depth + 1);
                if (rc != 0) return rc;
            }
        }
        chosen_.pop_back();
        unplace(p);
        return 0;
    }

    void place(uint32_t p) {
        const uint32_t* lines = point_lines_.data() + size_t(p) * per_point_;
        for (uint32_t i = 0; i < per_point_; ++i) {
            uint32_t li = lines[i];
            uint16_t c = ++counts_[li];
            if (c == 1) {
                deadlines_.insert(line_max_[li]);
                ++open_;
            } else if (c == 2) {
                deadlines_.erase(deadlines_.find(line_max_[li]));
                --open_;
            }
        }
    }

    void unplace(uint32_t p) {
        const uint32_t* lines = point_lines_.data() + size_t(p) * per_point_;
        for (uint32_t i = 0; i < per_point_; ++i) {
            uint32_t li = lines[i];
            uint16_t c = counts_[li]--;
            if (c == 1) {
                deadlines_.erase(deadlines_.find(line_max_[li]));
                --open_;
            } else if (c == 2) {
                deadlines_.insert(line_max_[li]);
                ++open_;
            }
        }
    }

    Plane plane_;
    uint32_t n_;
    uint32_t per_point_;
    uint32_t target_;
    SearchBudget budget_;
    std::vector<uint32_t> point_lines_;  // n_ rows of q+1 line indices
    std::vector<uint32_t> line_max_;     // largest point index on each line
    std::vector<uint16_t> counts_;
    std::multiset<uint32_t> deadlines_;  // line_max_ of lines met exactly once
    uint64_t open_ = 0;                  // number of lines met exactly once
    std::vector<uint32_t> chosen_;
    uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point deadline_;
};

}  // namespace detail

inline SearchOutcome exhaustive_exists(const Plane& pl, uint32_t size,
                                       SearchBudget budget = {}) {
    if (size > pl.num_points())
        throw std::invalid_argument("target size exceeds the plane");
    return detail::Searcher(pl, size, budget).run();
}

struct MinSizeResult {
    std::optional<uint32_t> size;  // smallest size admitting an untouchable set
    uint32_t proven_below = 1;     // all sizes below this are ruled out
    bool conclusive = false;
    uint64_t nodes_total = 0;
};

// Scan sizes 1..upper. A found minimum is checked against the known
// bounds: exactly q+2 for even q, at least q + sqrt(2q)/4 + 2 for odd q.
inline MinSizeResult min_untouchable_size(const Plane& pl, uint32_t upper,
                                          SearchBudget budget = {}) {
    if (upper > pl.num_points())
        throw std::invalid_argument("upper bound exceeds the plane");
    MinSizeResult r;
    for (uint32_t s = 1; s <= upper; ++s) {
        SearchOutcome out = exhaustive_exists(pl, s, budget);
        r.nodes_total += out.nodes_explored;
        if (out.status == SearchStatus::inconclusive) {
            r.proven_below = s;
            return r;
        }
        if (out.status == SearchStatus::exists) {
            r.size = s;
            r.proven_below = s;
            r.conclusive = true;
            const uint32_t q = pl.q();
            if (q % 2 == 0) {
                if (s != q + 2)
                    throw std::logic_error(
                        "minimum size must be q+2 for even q");
            } else {
                // s >= q + 2 + sqrt(2q)/4, compared without rounding
                uint64_t d = s >= q + 2 ? s - q - 2 : 0;
                if (s < q + 2 || 16 * d * d < 2 * uint64_t(q))
                    throw std::logic_error(
                        "minimum size violates the odd-order lower bound");
            }
            return r;
        }
    }
    r.proven_below = upper + 1;
    r.conclusive = true;
    return r;
}

}  // namespace untouch

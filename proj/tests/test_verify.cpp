#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <numeric>

#include "oracles.hpp"
#include "untouch/constructions.hpp"
#include "untouch/verify.hpp"

using namespace untouch;

namespace {
Plane make_plane(uint32_t q) {
    auto [p, k] = untouch::factor_prime_power(q);
    return Plane(Field::make(p, k));
}

std::map<uint32_t, uint32_t> as_map(const SpectrumReport& r) {
    std::map<uint32_t, uint32_t> m;
    for (uint32_t s = 0; s < r.counts.size(); ++s)
        if (r.counts[s] != 0) m[s] = uint32_t(r.counts[s]);
    return m;
}

// Deterministic pseudo-random subset of the plane's points.
PointSet sample_set(const Plane& pl, size_t target, uint64_t seed) {
    std::vector<uint32_t> idx;
    uint64_t state = seed * 2862933555777941757ull + 3037000493ull;
    while (idx.size() < target) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        idx.push_back(uint32_t(state % pl.num_points()));
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    }
    return PointSet(pl, idx);
}
}  // namespace

TEST_CASE("spectrum of landmark sets", "[verify]") {
    Plane pl4 = make_plane(4);
    ConstructionResult hyper = hyperconic(pl4, pencil_conic(pl4, Pencil::P1, 2));
    SpectrumReport r = spectrum(hyper.set);
    CHECK(as_map(r) == std::map<uint32_t, uint32_t>{{0, 6}, {2, 15}});
    CHECK(r.total_lines == 21);

    PointSet empty(pl4, {});
    CHECK(as_map(spectrum(empty)) == std::map<uint32_t, uint32_t>{{0, 21}});

    std::vector<uint32_t> all(21);
    std::iota(all.begin(), all.end(), 0);
    CHECK(as_map(spectrum(PointSet(pl4, all))) ==
          std::map<uint32_t, uint32_t>{{5, 21}});
}

TEST_CASE("spectrum agrees with the direct-scan oracle", "[verify]") {
    for (uint32_t q : {4u, 5u, 7u, 8u, 9u}) {
        Plane pl = make_plane(q);
        for (uint64_t seed = 1; seed <= 4; ++seed) {
            PointSet s = sample_set(pl, (q * seed) % (2 * q) + 1, seed);
            auto expected = oracle::spectrum_by_scan(s);
            auto got = as_map(spectrum(s));
            std::map<uint32_t, uint32_t> expected32(expected.begin(),
                                                    expected.end());
            REQUIRE(got == expected32);
        }
    }
}

TEST_CASE("spectrum double counting", "[verify]") {
    for (uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        Plane pl = make_plane(q);
        for (uint64_t seed = 1; seed <= 6; ++seed) {
            PointSet s = sample_set(pl, (7 * seed + q) % pl.num_points(), seed);
            SpectrumReport r = spectrum(s);
            uint64_t lines = 0, flags = 0;
            for (uint32_t size = 0; size < r.counts.size(); ++size) {
                lines += r.counts[size];
                flags += uint64_t(size) * r.counts[size];
            }
            REQUIRE(lines == pl.num_lines());
            REQUIRE(flags == s.size() * (q + 1));
        }
    }
}

TEST_CASE("conic line census for odd q", "[verify]") {
    for (uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 17u, 19u, 23u, 25u, 27u, 29u, 31u}) {
        Plane pl = make_plane(q);
        for (uint32_t k : {1u, q - 1}) {
            PointSet conic = conic_points(pl, pencil_conic(pl, Pencil::P3, k));
            auto census = as_map(spectrum(conic));
            REQUIRE(census ==
                    std::map<uint32_t, uint32_t>{{0, q * (q - 1) / 2},
                                                 {1, q + 1},
                                                 {2, q * (q + 1) / 2}});
        }
    }
}

TEST_CASE("k-avoidance", "[verify]") {
    Plane pl4 = make_plane(4);
    ConstructionResult hyper = hyperconic(pl4, pencil_conic(pl4, Pencil::P1, 2));
    CHECK(is_k_avoiding(hyper.set, 1));
    CHECK(is_untouchable(hyper.set));
    CHECK_FALSE(is_k_avoiding(hyper.set, 2));
    CHECK(is_k_avoiding(hyper.set, 3));

    PointSet singleton(pl4, {7});
    CHECK_FALSE(is_k_avoiding(singleton, 1));
    CHECK_FALSE(is_untouchable(singleton));

    PointSet empty(pl4, {});
    for (uint32_t k = 1; k <= 5; ++k) CHECK(is_k_avoiding(empty, k));
    CHECK_FALSE(is_k_avoiding(empty, 0));

    CHECK_THROWS_AS(is_k_avoiding(empty, 6), std::invalid_argument);

    for (uint64_t seed = 1; seed <= 5; ++seed) {
        PointSet s = sample_set(pl4, 2 * seed + 1, seed);
        CHECK(is_untouchable(s) == is_k_avoiding(s, 1));
        CHECK(is_untouchable(s) == (spectrum(s).counts[1] == 0));
    }
}

TEST_CASE("even type", "[verify]") {
    Plane pl8 = make_plane(8);
    ConstructionResult hyper = hyperconic(pl8, pencil_conic(pl8, Pencil::P1, 2));
    CHECK(is_even_type(hyper.set));

    // any odd-cardinality set over even q has a line meeting it oddly
    for (uint64_t seed = 1; seed <= 5; ++seed)
        CHECK_FALSE(is_even_type(sample_set(pl8, 2 * seed + 1, seed)));

    CHECK_FALSE(is_even_type(even_2q_minus_1(make_plane(8), 2).set));

    // union of two hyperconics, but they overlap in 6 points so lines can
    // meet the union oddly
    CHECK_FALSE(is_even_type(
        even_2q_minus_2(make_plane(16),
                        Field::make(2, 4).cube_roots_of_unity()[1])
            .set));
}

TEST_CASE("construction checking", "[verify]") {
    Plane pl8 = make_plane(8);
    ConstructionResult r = even_2q_minus_1(pl8, 2);
    CheckReport ok = check_construction(r);
    CHECK(ok.pass());
    CHECK(ok.size_ok);
    CHECK(ok.untouchable);
    CHECK(ok.actual_size == 15);
    CHECK_FALSE(ok.witness.has_value());

    SECTION("deleting a point exposes a tangent witness") {
        auto idx = r.set.indices();
        idx.pop_back();
        PointSet broken(pl8, idx);
        CheckReport bad = check_point_set(broken, r.expected_size);
        CHECK_FALSE(bad.pass());
        CHECK_FALSE(bad.size_ok);
        CHECK_FALSE(bad.untouchable);
        REQUIRE(bad.witness.has_value());
        auto bits = broken.bitmap();
        CHECK(broken.plane().count_on_line(
                  broken.plane().index_of(*bad.witness), bits) == 1);
    }

    SECTION("size mismatch alone still fails") {
        CheckReport bad = check_point_set(r.set, r.expected_size + 1);
        CHECK_FALSE(bad.pass());
        CHECK_FALSE(bad.size_ok);
        CHECK(bad.untouchable);
        CHECK_FALSE(bad.witness.has_value());
    }
}

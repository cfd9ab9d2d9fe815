#include <catch2/catch_amalgamated.hpp>

#include "untouch/constructions.hpp"

using namespace untouch;

namespace {
Plane make_plane(uint32_t q) {
    auto [p, k] = untouch::factor_prime_power(q);
    return Plane(Field::make(p, k));
}

size_t intersection_size(const PointSet& a, const PointSet& b) {
    size_t n = 0;
    for (uint32_t i : a.indices()) n += b.contains(i);
    return n;
}
}  // namespace

TEST_CASE("hyperconic", "[constructions]") {
    Plane pl8 = make_plane(8);
    ConstructionResult r = hyperconic(pl8, pencil_conic(pl8, Pencil::P1, 2));
    CHECK(r.set.size() == 10);
    CHECK(r.expected_size == 10);
    CHECK(r.family == Family::hyperconic);
    CHECK(check_construction(r).pass());

    Plane pl16 = make_plane(16);
    CHECK(hyperconic(pl16, pencil_conic(pl16, Pencil::P1, 3)).set.size() == 18);

    Plane pl4 = make_plane(4);
    ConstructionResult h4 = hyperconic(pl4, pencil_conic(pl4, Pencil::P1, 2));
    CHECK(h4.set.size() == 6);
    auto counts = spectrum(h4.set).counts;
    CHECK(counts[0] == 6);
    CHECK(counts[1] == 0);
    CHECK(counts[2] == 15);

    Plane pl7 = make_plane(7);
    CHECK_THROWS_AS(hyperconic(pl7, pencil_conic(pl7, Pencil::P3, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(hyperconic(pl8, pencil_conic(pl8, Pencil::P1, 1)),
                    std::invalid_argument);
}

TEST_CASE("even family of size 2q-1", "[constructions]") {
    Plane pl8 = make_plane(8);
    ConstructionResult r = even_2q_minus_1(pl8, 2);
    CHECK(r.set.size() == 15);
    CHECK(r.params.at("a") == 2);
    CHECK(is_untouchable(r.set));

    CHECK_THROWS_AS(even_2q_minus_1(pl8, 0), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_minus_1(pl8, 1), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_minus_1(pl8, 8), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_minus_1(make_plane(4), 2), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_minus_1(make_plane(7), 2), std::invalid_argument);

    Plane pl16 = make_plane(16);
    uint32_t w = Field::make(2, 4).cube_roots_of_unity()[1];
    CHECK_THROWS_AS(even_2q_minus_1(pl16, w), std::invalid_argument);

    SECTION("every admissible parameter works") {
        for (uint32_t q : {8u, 16u, 32u}) {
            Plane pl = make_plane(q);
            const Field& f = pl.field();
            uint32_t built = 0;
            for (uint32_t a = 2; a < q; ++a) {
                if (f.pow(a, 3) == 1) continue;
                ConstructionResult c = even_2q_minus_1(pl, a);
                REQUIRE(c.set.size() == 2 * q - 1);
                ++built;
            }
            uint32_t roots = (q - 1) % 3 == 0 ? 2 : 0;
            CHECK(built == q - 2 - roots);
        }
    }

    SECTION("internal intersection pattern") {
        for (uint32_t a : {2u, 3u, 5u}) {
            const Field& f = pl8.field();
            PointSet ca = conic_points(pl8, pencil_conic(pl8, Pencil::P1, a));
            PointSet ca2 = conic_points(
                pl8, pencil_conic(pl8, Pencil::P1, f.mul(a, a)));
            CHECK(intersection_size(ca, ca2) == 4);
            // nucleus of C_a lies on C_{a²}; the nucleus of C_{a²} is the
            // added point and lies on neither conic
            uint32_t na = pl8.index_of(Point{1, 1, a});
            uint32_t na2 = pl8.index_of(Point{1, 1, f.mul(a, a)});
            CHECK(ca2.contains(na));
            CHECK_FALSE(ca.contains(na2));
            CHECK_FALSE(ca2.contains(na2));
        }
    }
}

TEST_CASE("even family of size 2q-2", "[constructions]") {
    Plane pl16 = make_plane(16);
    auto roots16 = Field::make(2, 4).cube_roots_of_unity();
    REQUIRE(roots16.size() == 3);
    for (size_t i = 1; i < 3; ++i) {
        ConstructionResult r = even_2q_minus_2(pl16, roots16[i]);
        CHECK(r.set.size() == 30);
        CHECK(is_untouchable(r.set));
    }

    // the two conics exchange nuclei, making the union two hyperconics
    uint32_t w = roots16[1];
    const Field& f16 = pl16.field();
    PointSet cw = conic_points(pl16, pencil_conic(pl16, Pencil::P1, w));
    PointSet cw2 =
        conic_points(pl16, pencil_conic(pl16, Pencil::P1, f16.mul(w, w)));
    CHECK(cw2.contains(pl16.index_of(Point{1, 1, w})));
    CHECK(cw.contains(pl16.index_of(Point{1, 1, f16.mul(w, w)})));

    Plane pl64 = make_plane(64);
    uint32_t w64 = Field::make(2, 6).cube_roots_of_unity()[1];
    CHECK(even_2q_minus_2(pl64, w64).set.size() == 126);

    CHECK_THROWS_AS(even_2q_minus_2(make_plane(8), 2), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_minus_2(make_plane(32), 2), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_minus_2(make_plane(4), 2), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_minus_2(pl16, 1), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_minus_2(pl16, 2), std::invalid_argument);
}

TEST_CASE("even family of size 2q+1", "[constructions]") {
    Plane pl8 = make_plane(8);
    ConstructionResult r = even_2q_plus_1(pl8, 2, 3);
    CHECK(r.set.size() == 17);
    CHECK(r.params.at("a") == 2);
    CHECK(r.params.at("b") == 3);
    CHECK(is_untouchable(r.set));

    CHECK_THROWS_AS(even_2q_plus_1(pl8, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_plus_1(pl8, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_plus_1(pl8, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(even_2q_plus_1(make_plane(4), 2, 3), std::invalid_argument);

    CHECK(even_2q_plus_1(make_plane(32), 1, 2).set.size() == 65);

    SECTION("pencil members pairwise share the three base points") {
        for (uint32_t a = 1; a < 8; ++a)
            for (uint32_t b = a + 1; b < 8; ++b) {
                PointSet da =
                    conic_points(pl8, pencil_conic(pl8, Pencil::P2, a));
                PointSet db =
                    conic_points(pl8, pencil_conic(pl8, Pencil::P2, b));
                REQUIRE(intersection_size(da, db) == 3);
                // neither nucleus lies on either conic
                for (uint32_t k : {a, b}) {
                    uint32_t n = pl8.index_of(Point{0, 1, k});
                    REQUIRE_FALSE(da.contains(n));
                    REQUIRE_FALSE(db.contains(n));
                }
                ConstructionResult c = even_2q_plus_1(pl8, a, b);
                REQUIRE(c.set.size() == 17);
            }
    }
}

TEST_CASE("odd family of size 2q+1", "[constructions]") {
    Plane pl7 = make_plane(7);
    ConstructionResult r7 = odd_2q_plus_1(pl7, 6);
    CHECK(r7.set.size() == 15);
    CHECK(is_untouchable(r7.set));
    CHECK(r7.set.contains(pl7.index_of(Point{0, 0, 1})));

    Plane pl11 = make_plane(11);
    CHECK(odd_2q_plus_1(pl11, 7).set.size() == 23);
    CHECK(odd_2q_plus_1(pl11, 8).set.size() == 23);

    CHECK_THROWS_AS(odd_2q_plus_1(make_plane(13), 2), std::invalid_argument);
    CHECK_THROWS_AS(odd_2q_plus_1(make_plane(8), 2), std::invalid_argument);
    CHECK_THROWS_AS(odd_2q_plus_1(make_plane(3), 2), std::invalid_argument);
    CHECK_THROWS_AS(odd_2q_plus_1(pl7, 3), std::invalid_argument);  // 2 square
    CHECK_THROWS_AS(odd_2q_plus_1(pl7, 5), std::invalid_argument);  // 4 square
    CHECK_THROWS_AS(odd_2q_plus_1(pl7, 0), std::invalid_argument);
    CHECK_THROWS_AS(odd_2q_plus_1(pl7, 1), std::invalid_argument);

    SECTION("parameter counts follow the quarter formulas") {
        for (uint32_t q : {7u, 11u, 19u, 23u, 27u, 31u}) {
            Plane pl = make_plane(q);
            const Field& f = pl.field();
            uint32_t valid = 0;
            for (uint32_t b = 2; b < q; ++b) {
                if (f.is_square(b) || f.is_square(f.sub(b, 1))) {
                    CHECK_THROWS_AS(odd_2q_plus_1(pl, b), std::invalid_argument);
                    continue;
                }
                ConstructionResult c = odd_2q_plus_1(pl, b);
                REQUIRE(c.set.size() == 2 * q + 1);
                ++valid;
            }
            CHECK(valid == (q - 3) / 4);
        }
    }

    SECTION("proof geometry") {
        for (uint32_t q : {7u, 11u}) {
            Plane pl = make_plane(q);
            uint32_t b = find_odd_parameter(pl.field());
            Quadratic c1 = pencil_conic(pl, Pencil::P3, 1);
            Quadratic cb = pencil_conic(pl, Pencil::P3, b);
            PointSet p1 = conic_points(pl, c1);
            PointSet pb = conic_points(pl, cb);
            CHECK(intersection_size(p1, pb) == 2);

            // tangents at the shared points (1,0,0) and (0,1,0) pass
            // through the added point (0,0,1)
            uint32_t shared[2] = {pl.index_of(Point{1, 0, 0}),
                                  pl.index_of(Point{0, 1, 0})};
            for (const Quadratic& c : {c1, cb})
                for (const auto& [p, l] : tangent_lines(pl, c))
                    if (pl.index_of(p) == shared[0] ||
                        pl.index_of(p) == shared[1])
                        CHECK(pl.incident(Point{0, 0, 1}, l));

            // every tangent to one conic at a point off the other is a
            // secant of the other
            auto bits1 = p1.bitmap();
            auto bitsb = pb.bitmap();
            uint32_t cross = 0;
            for (const auto& [p, l] : tangent_lines(pl, c1)) {
                uint32_t pi = pl.index_of(p);
                if (pb.contains(pi)) continue;
                REQUIRE(pl.count_on_line(pl.index_of(l), bitsb) == 2);
                ++cross;
            }
            for (const auto& [p, l] : tangent_lines(pl, cb)) {
                uint32_t pi = pl.index_of(p);
                if (p1.contains(pi)) continue;
                REQUIRE(pl.count_on_line(pl.index_of(l), bits1) == 2);
                ++cross;
            }
            CHECK(cross == 2 * (q - 1));

            // every line through (0,0,1) other than x=0 and y=0 has the
            // form [1,c,0] and meets one of the conics
            for (uint32_t li : pl.lines_through_point(Point{0, 0, 1})) {
                Line l = pl.line(li);
                if (l == Line{1, 0, 0} || l == Line{0, 1, 0}) continue;
                CHECK(l.w == 0);
                CHECK(pl.count_on_line(li, bits1) + pl.count_on_line(li, bitsb) >
                      0);
            }
        }
    }
}

TEST_CASE("union of untouchable sets", "[constructions]") {
    Plane pl8 = make_plane(8);
    ConstructionResult h2 = hyperconic(pl8, pencil_conic(pl8, Pencil::P1, 2));
    ConstructionResult h3 = hyperconic(pl8, pencil_conic(pl8, Pencil::P1, 3));
    CHECK(intersection_size(h2.set, h3.set) >= 1);

    ConstructionResult u = union_sets({h2.set, h3.set});
    CHECK(u.family == Family::set_union);
    CHECK(is_untouchable(u.set));
    CHECK(u.set.size() == u.expected_size);
    CHECK(u.set.size() ==
          h2.set.size() + h3.set.size() - intersection_size(h2.set, h3.set));

    ConstructionResult single = union_sets({h2.set});
    CHECK(single.set.indices() == h2.set.indices());

    CHECK_THROWS_AS(union_sets({h2.set, PointSet(pl8, {5})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(union_sets({}), std::invalid_argument);
    Plane pl16 = make_plane(16);
    ConstructionResult h16 = hyperconic(pl16, pencil_conic(pl16, Pencil::P1, 3));
    CHECK_THROWS_AS(union_sets({h2.set, h16.set}), std::invalid_argument);

    SECTION("closure across families") {
        ConstructionResult a = even_2q_minus_1(pl8, 2);
        ConstructionResult b = even_2q_plus_1(pl8, 2, 3);
        ConstructionResult u2 = union_sets({a.set, b.set, h2.set});
        CHECK(is_untouchable(u2.set));
    }
}

TEST_CASE("smallest odd parameter", "[constructions]") {
    CHECK(find_odd_parameter(Field::make(7, 1)) == 6);
    CHECK(find_odd_parameter(Field::make(11, 1)) == 7);
    CHECK(find_odd_parameter(Field::make(19, 1)) == 3);
    CHECK_THROWS_AS(find_odd_parameter(Field::make(13, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(find_odd_parameter(Field::make(5, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(find_odd_parameter(Field::make(2, 3)),
                    std::invalid_argument);

    for (uint32_t q : {7u, 11u, 19u, 23u, 27u, 31u}) {
        auto [p, k] = untouch::factor_prime_power(q);
        Field f = Field::make(p, k);
        uint32_t b = find_odd_parameter(f);
        CHECK_FALSE(f.is_square(b));
        CHECK_FALSE(f.is_square(f.sub(b, 1)));
        for (uint32_t c = 2; c < b; ++c)
            CHECK((f.is_square(c) || f.is_square(f.sub(c, 1))));
    }
}

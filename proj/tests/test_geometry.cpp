#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "planecode/error.hpp"
#include "planecode/geometry.hpp"

using namespace planecode;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

// Brute-force axiom check independent of Plane's own validation.
void check_axioms(const Plane& pl) {
    const auto n = pl.order();
    const auto N = n * n + n + 1;
    REQUIRE(pl.num_points() == N);
    REQUIRE(pl.num_lines() == N);
    for (std::uint32_t l = 0; l < N; ++l) REQUIRE(pl.points_on(l).size() == n + 1);
    for (std::uint32_t p = 0; p < N; ++p) REQUIRE(pl.lines_through(p).size() == n + 1);
    for (std::uint32_t a = 0; a < N; ++a)
        for (std::uint32_t b = a + 1; b < N; ++b) {
            int common = 0;
            for (std::uint32_t l = 0; l < N; ++l) common += pl.incident(a, l) && pl.incident(b, l);
            REQUIRE(common == 1);
            int meets = 0;
            for (std::uint32_t p = 0; p < N; ++p) meets += pl.incident(p, a) && pl.incident(p, b);
            REQUIRE(meets == 1);
        }
}

std::array<FieldElement, 3> triple(const Field& f, int a, int b, int c) {
    return {f.from_int(a), f.from_int(b), f.from_int(c)};
}

}  // namespace

TEST_CASE("pg2 counts and axioms") {
    for (const auto& spec : {"2", "3", "2^2", "5", "7", "2^3", "3^2"}) {
        auto pl = pg2(Field::parse(spec));
        CAPTURE(spec);
        check_axioms(pl);
    }
    auto fano = pg2(Field::make(2, 1));
    CHECK(fano.num_points() == 7);
    CHECK(fano.points_on(0).size() == 3);
    CHECK(pg2(Field::make(3, 2)).num_points() == 91);
    CHECK(pg2(Field::make(2, 2)).num_points() == 21);
}

TEST_CASE("pg2 indexing is lexicographic and deterministic") {
    const auto f = Field::make(3, 2);
    auto a = pg2(f);
    auto b = pg2(f);
    for (std::uint32_t i = 0; i < a.num_points(); ++i) {
        REQUIRE(a.point_coords(i) == b.point_coords(i));
        REQUIRE(a.line_coords(i) == b.line_coords(i));
        REQUIRE(a.point_index(a.point_coords(i)) == i);
        if (i) REQUIRE(a.point_coords(i - 1) < a.point_coords(i));
    }
    CHECK(a.point_coords(0) == HomogeneousPoint{triple(f, 0, 0, 1)});
    CHECK(a.point_coords(a.num_points() - 1).x[0] == f.one());
    for (std::uint32_t l = 0; l < a.num_lines(); ++l)
        for (auto p : a.points_on(l)) REQUIRE(dot(f, a.point_coords(p).x, a.line_coords(l).x) == f.zero());
}

TEST_CASE("line_through and meet") {
    auto fano = pg2(Field::make(2, 1));
    for (std::uint32_t a = 0; a < 7; ++a)
        for (std::uint32_t b = 0; b < 7; ++b) {
            if (a == b) {
                CHECK(code_of([&] { fano.line_through(a, b); }) == ErrorCode::SamePoint);
                CHECK(code_of([&] { fano.meet(a, b); }) == ErrorCode::SameLine);
                continue;
            }
            const auto l = fano.line_through(a, b);
            CHECK(l == fano.line_through(b, a));
            CHECK(fano.incident(a, l));
            CHECK(fano.incident(b, l));
        }

    auto pg4 = pg2(Field::make(2, 2));
    for (std::uint32_t l = 0; l < pg4.num_lines(); ++l)
        for (std::uint32_t m = l + 1; m < pg4.num_lines(); ++m) {
            const auto x = pg4.meet(l, m);
            REQUIRE(pg4.incident(x, l));
            REQUIRE(pg4.incident(x, m));
        }

    auto pg9 = pg2(Field::make(3, 2));
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint32_t> pick(0, pg9.num_points() - 1);
    for (int i = 0; i < 500; ++i) {
        const auto p = pick(rng), q = pick(rng);
        if (p == q) continue;
        const auto l = pg9.line_through(p, q);
        for (auto m : pg9.lines_through(p))
            if (m != l) REQUIRE(pg9.meet(l, m) == p);
    }
}

TEST_CASE("ingestion round-trip and failures") {
    auto pg3 = pg2(Field::make(3, 1));
    auto again = Plane::from_incidence(pg3.lines(), 3, "roundtrip");
    CHECK(again.same_incidence(pg3));
    CHECK_FALSE(again.generated());
    CHECK(code_of([&] { again.field(); }) == ErrorCode::NotGenerated);
    check_axioms(again);

    // Shuffle rows and points within rows: still a plane, same relation.
    auto rows = pg3.lines();
    std::mt19937 rng(1);
    std::shuffle(rows.begin(), rows.end(), rng);
    for (auto& r : rows) std::shuffle(r.begin(), r.end(), rng);
    CHECK(Plane::from_incidence(rows, 3).same_incidence(pg3));

    auto fano_rows = pg2(Field::make(2, 1)).lines();
    CHECK(Plane::from_incidence(fano_rows, 2).order() == 2);

    auto dup = fano_rows;
    dup[1] = dup[0];
    CHECK(code_of([&] { Plane::from_incidence(dup, 2); }) == ErrorCode::AxiomViolation);
    try {
        Plane::from_incidence(dup, 2);
    } catch (const Error& e) {
        CHECK(std::string(e.detail()).find("more than one point") != std::string::npos);
    }

    auto short_rows = fano_rows;
    short_rows.pop_back();
    CHECK(code_of([&] { Plane::from_incidence(short_rows, 2); }) == ErrorCode::BadShape);
    CHECK(code_of([&] { Plane::from_incidence(fano_rows, 1); }) == ErrorCode::BadShape);
    auto bad_index = fano_rows;
    bad_index[0][0] = 99;
    CHECK(code_of([&] { Plane::from_incidence(bad_index, 2); }) == ErrorCode::BadShape);
}

TEST_CASE("subfield Baer subplanes") {
    auto b9 = baer_subfield_subplane(pg2(Field::make(3, 2)));
    CHECK(b9.points.size() == 13);
    CHECK(b9.lines.size() == 13);
    CHECK(b9.order == 3);
    auto b25 = baer_subfield_subplane(pg2(Field::make(5, 2)));
    CHECK(b25.points.size() == 31);
    CHECK(b25.order == 5);
    auto pg4 = pg2(Field::make(2, 2));
    auto b4 = baer_subfield_subplane(pg4);
    CHECK(b4.points.size() == 7);
    CHECK(induced_subplane(pg4, b4.points).has_value());

    CHECK(code_of([] { baer_subfield_subplane(pg2(Field::make(3, 1))); }) == ErrorCode::NotSquareOrder);
    auto ingested = Plane::from_incidence(pg4.lines(), 4);
    CHECK(code_of([&] { baer_subfield_subplane(ingested); }) == ErrorCode::NotGenerated);
}

TEST_CASE("induced_subplane rejects non-subplanes") {
    auto pg9 = pg2(Field::make(3, 2));
    std::string why;
    std::vector<std::uint32_t> line(pg9.points_on(0).begin(), pg9.points_on(0).end());
    CHECK_FALSE(induced_subplane(pg9, line, &why).has_value());
    CHECK_FALSE(why.empty());
    auto b = baer_subfield_subplane(pg9);
    auto pts = b.points;
    pts.pop_back();
    CHECK_FALSE(induced_subplane(pg9, pts).has_value());
}

TEST_CASE("subplane search") {
    auto pg4 = pg2(Field::make(2, 2));
    auto fano = subplane_search(pg4, 2, {.limit = 4});
    CHECK(fano.found.size() == 4);
    for (const auto& s : fano.found) {
        CHECK(s.order == 2);
        CHECK(s.points.size() == 7);
        CHECK(induced_subplane(pg4, s.points) == s);
    }

    auto pg9 = pg2(Field::make(3, 2));
    const auto t0 = std::chrono::steady_clock::now();
    auto none = subplane_search(pg9, 2);
    MESSAGE("PG(2,9) m=2 search: " << none.closures << " closures, "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s");
    CHECK(none.found.empty());
    CHECK(none.exhausted);
    CHECK_FALSE(none.budget_exceeded);

    auto baer = subplane_search(pg9, 3, {.limit = 10000});
    CHECK(baer.exhausted);
    const auto sub = baer_subfield_subplane(pg9);
    bool seen = false;
    std::set<std::vector<std::uint32_t>> distinct;
    for (const auto& s : baer.found) {
        CHECK(s.points.size() == 13);
        CHECK(induced_subplane(pg9, s.points).has_value());
        distinct.insert(s.points);
        seen = seen || s.points == sub.points;
        if (s.points != sub.points) CHECK_FALSE(s == sub);
    }
    CHECK(seen);
    CHECK(distinct.size() == baer.found.size());
    // |PGL(3,9)| / |PGL(3,3)| = 42456960 / 5616 subplanes of order 3, reached only as sets.
    CHECK(baer.found.size() == 7560);

    auto tiny = subplane_search(pg9, 3, {.limit = 1000, .budget = 10});
    CHECK(tiny.budget_exceeded);
    CHECK_FALSE(tiny.exhausted);

    auto avoid = subplane_search(pg4, 2, {.limit = 1000, .excluded = {0}});
    for (const auto& s : avoid.found) CHECK_FALSE(std::binary_search(s.points.begin(), s.points.end(), 0u));
    CHECK(avoid.exhausted);
    // 360 Fano subplanes in PG(2,4), each missing 14 of the 21 points.
    CHECK(avoid.found.size() == 360 * 14 / 21);
}

TEST_CASE("slopes") {
    auto f5 = Field::make(5, 1);
    auto pg5 = pg2(f5);
    // X3 = X2 through A1 has dual coordinates [0,1,-1].
    CHECK(slope_of_line(f5, Vertex::A1, triple(f5, 0, 1, -1)) == f5.one());
    const auto unit = pg5.point_index(normalize(f5, triple(f5, 1, 1, 1)));
    for (auto v : {Vertex::A1, Vertex::A2, Vertex::A3}) CHECK(slope_to_point(f5, v, triple(f5, 1, 1, 1)) == f5.one());
    CHECK(ceva_product(pg5, unit) == f5.one());

    auto f7 = Field::make(7, 1);
    auto pg7 = pg2(f7);
    const auto a2 = pg7.point_index(normalize(f7, triple(f7, 0, 1, 0)));
    const auto x = pg7.point_index(normalize(f7, triple(f7, 1, 0, 3)));
    CHECK(slope(pg7, Vertex::A2, pg7.line_through(a2, x)) == f7.from_int(5));

    CHECK(code_of([&] { slope_of_line(f7, Vertex::A1, triple(f7, 1, 1, 1)); }) == ErrorCode::NotThroughVertex);
    CHECK(code_of([&] { slope_of_line(f7, Vertex::A1, triple(f7, 0, 0, 1)); }) == ErrorCode::TriangleSide);
    CHECK(code_of([&] { menelaos_product(pg7, pg7.line_index(normalize(f7, triple(f7, 0, 1, 1)))); }) ==
          ErrorCode::Precondition);
    CHECK(code_of([&] { ceva_product(pg7, x); }) == ErrorCode::Precondition);
}

TEST_CASE("Menelaos and Ceva hold exhaustively") {
    for (const auto& spec : {"3", "2^2", "5", "7", "3^2"}) {
        const auto f = Field::parse(spec);
        auto pl = pg2(f);
        const auto minus_one = f.neg(f.one());
        int lines = 0, points = 0;
        for (std::uint32_t i = 0; i < pl.num_points(); ++i) {
            const auto& l = pl.line_coords(i).x;
            if (l[0] != f.zero() && l[1] != f.zero() && l[2] != f.zero()) {
                REQUIRE(menelaos_product(pl, i) == minus_one);
                ++lines;
            }
            const auto& x = pl.point_coords(i).x;
            if (x[0] != f.zero() && x[1] != f.zero() && x[2] != f.zero()) {
                REQUIRE(ceva_product(pl, i) == f.one());
                ++points;
            }
        }
        const auto qm1 = f.q() - 1;
        CHECK(lines == static_cast<int>(qm1 * qm1));
        CHECK(points == static_cast<int>(qm1 * qm1));
    }
}

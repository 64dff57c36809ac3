#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "planecode/antipodal.hpp"
#include "planecode/error.hpp"

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

std::set<std::vector<std::uint32_t>> line_set(const PartialLinearSpace& s) { return {s.lines().begin(), s.lines().end()}; }

// Antipode checks written directly from the definitions.
void check_antipodes(const AntipodalPlane& ap) {
    const auto& s = ap.base();
    const auto n = s.num_points();
    for (std::uint32_t p = 0; p < n; ++p) {
        const auto q = ap.perp_point(p);
        CHECK(q != p);
        CHECK(ap.perp_point(q) == p);
        for (auto l : s.lines_through(p)) CHECK_FALSE(s.incident(q, l));
        for (std::uint32_t r = 0; r < n; ++r) {
            if (r == p || r == q) continue;
            bool joined = false;
            for (auto l : s.lines_through(p)) joined = joined || s.incident(r, l);
            CHECK(joined);
        }
    }
    for (std::uint32_t l = 0; l < s.num_lines(); ++l) {
        const auto m = ap.perp_line(l);
        CHECK(ap.perp_line(m) == l);
        std::set<std::uint32_t> perps;
        for (auto p : s.points_on(l)) {
            CHECK_FALSE(s.incident(p, m));
            perps.insert(ap.perp_point(p));
        }
        CHECK(perps == std::set<std::uint32_t>(s.points_on(m).begin(), s.points_on(m).end()));
    }
}

}  // namespace

TEST_CASE("partial linear space construction") {
    auto s = PartialLinearSpace::from_lines(4, {{0, 1}, {2, 3}, {1, 2}});
    CHECK(s.line_through(0, 1) == 0u);
    CHECK_FALSE(s.line_through(0, 3).has_value());
    CHECK(code_of([] { PartialLinearSpace::from_lines(4, {{0, 1, 2}, {1, 2, 3}}); }) == ErrorCode::AxiomViolation);
    CHECK(code_of([] { PartialLinearSpace::from_lines(4, {{0}}); }) == ErrorCode::BadShape);
    CHECK(code_of([] { PartialLinearSpace::from_lines(4, {{0, 4}}); }) == ErrorCode::BadShape);
    CHECK(code_of([] { PartialLinearSpace::from_lines(4, {{0, 0}}); }) == ErrorCode::BadShape);
}

TEST_CASE("cyclic models") {
    auto m2 = cyclic_antipodal(2);
    CHECK(m2.num_points() == 8);
    CHECK(m2.num_lines() == 8);
    for (const auto& l : m2.lines()) CHECK(l.size() == 3);
    CHECK(m2.points_on(0)[0] == 0);
    CHECK(m2.points_on(0)[2] == 3);
    auto a2 = validate_antipodal(m2);
    CHECK(a2.order() == 2);
    check_antipodes(a2);
    // The antipode of i in the 8-point circulant is i+4.
    for (std::uint32_t i = 0; i < 8; ++i) CHECK(a2.perp_point(i) == (i + 4) % 8);

    auto m3 = cyclic_antipodal(3);
    CHECK(m3.num_points() == 14);
    for (const auto& l : m3.lines()) CHECK(l.size() == 4);
    auto a3 = validate_antipodal(m3);
    CHECK(a3.order() == 3);
    check_antipodes(a3);
    for (std::uint32_t i = 0; i < 14; ++i) CHECK(a3.perp_point(i) == (i + 7) % 14);

    CHECK(code_of([] { cyclic_antipodal(4); }) == ErrorCode::UnsupportedOrder);
    CHECK(code_of([] { cyclic_antipodal(1); }) == ErrorCode::UnsupportedOrder);
}

TEST_CASE("non-antipodal structures are rejected") {
    auto fano = pg2(Field::make(2, 1));
    auto s = PartialLinearSpace::from_lines(7, fano.lines());
    CHECK(code_of([&] { validate_antipodal(s); }) == ErrorCode::NotAntipodal);
    // Drop a line from the order-2 model: counts break.
    auto lines = cyclic_antipodal(2).lines();
    lines.pop_back();
    auto broken = PartialLinearSpace::from_lines(8, lines);
    try {
        validate_antipodal(broken);
        FAIL("expected NotAntipodal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAntipodal);
        CHECK(std::string(e.detail()).find("line count") != std::string::npos);
    }
}

TEST_CASE("PG(2,4) complement model") {
    auto model = antipodal_complement_pg24();
    CHECK(model.pls.num_points() == 14);
    CHECK(model.pls.num_lines() == 14);
    for (const auto& l : model.pls.lines()) CHECK(l.size() == 4);
    auto ap = validate_antipodal(model.pls);
    CHECK(ap.order() == 3);
    check_antipodes(ap);
    const auto cyc = cyclic_antipodal(3);
    auto iso = find_isomorphism(cyc, model.pls);
    REQUIRE(iso.has_value());
    std::set<std::vector<std::uint32_t>> mapped;
    for (const auto& l : cyc.lines()) {
        std::vector<std::uint32_t> img;
        for (auto p : l) img.push_back((*iso)[p]);
        std::sort(img.begin(), img.end());
        mapped.insert(img);
    }
    CHECK(mapped == line_set(model.pls));
    CHECK_FALSE(find_isomorphism(cyclic_antipodal(2), model.pls).has_value());
}

TEST_CASE("Mobius-Kantor points") {
    auto f7 = Field::make(7, 1);
    auto pts = mobius_kantor_points(f7, f7.from_int(3));
    REQUIRE(pts.size() == 8);
    auto plane = pg2(f7);
    // Count three-point lines by dot products, independent of the plane tables.
    int three = 0, more = 0;
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l) {
        int on = 0;
        for (const auto& p : pts) on += dot(f7, p.x, plane.line_coords(l).x) == f7.zero();
        three += on == 3;
        more += on > 3;
    }
    CHECK(three == 8);
    CHECK(more == 0);

    std::vector<std::uint32_t> idx;
    for (const auto& p : pts) idx.push_back(plane.point_index(p));
    auto induced = induced_structure(plane, idx, 3);
    CHECK(induced.pls.num_lines() == 8);
    CHECK(validate_antipodal(induced.pls).order() == 2);
    // Listed in the circulant's column order: the induced lines are exactly the circulant lines.
    CHECK(line_set(induced.pls) == line_set(cyclic_antipodal(2)));

    auto f4 = Field::make(2, 2);
    auto pg4 = pg2(f4);
    for (std::uint32_t v = 2; v < 4; ++v) {
        auto mk = mobius_kantor_points(f4, f4.element(v));
        std::vector<std::uint32_t> ix;
        for (const auto& p : mk) ix.push_back(pg4.point_index(p));
        CHECK(std::set<std::uint32_t>(ix.begin(), ix.end()).size() == 8);
        auto ind = induced_structure(pg4, ix, 3);
        CHECK(ind.pls.num_lines() == 8);
        CHECK(line_set(ind.pls) == line_set(cyclic_antipodal(2)));
    }

    auto f5 = Field::make(5, 1);
    CHECK(code_of([&] { mobius_kantor_points(f5); }) == ErrorCode::NotARoot);
    CHECK(code_of([&] { mobius_kantor_points(f7, f7.from_int(2)); }) == ErrorCode::NotARoot);
    auto f9 = Field::make(3, 2);
    CHECK(mobius_kantor_points(f9).size() == 8);
}

TEST_CASE("good triangles") {
    auto ap3 = validate_antipodal(cyclic_antipodal(3));
    auto tri = find_good_triangle(ap3);
    CHECK(is_good_triangle(ap3, tri));
    const auto& s = ap3.base();
    std::vector<std::uint32_t> sides;
    for (int i = 0; i < 3; ++i) {
        auto l = s.line_through(tri[(i + 1) % 3], tri[(i + 2) % 3]);
        REQUIRE(l.has_value());
        sides.push_back(*l);
    }
    CHECK(std::set<std::uint32_t>(sides.begin(), sides.end()).size() == 3);
    for (auto v : tri)
        for (auto side : sides) CHECK_FALSE(s.incident(ap3.perp_point(v), side));

    CHECK_FALSE(is_good_triangle(ap3, {0, 0, 1}));
    CHECK_FALSE(is_good_triangle(ap3, {0, 7, 1}));  // 0 and 7 are antipodes
    auto line0 = s.points_on(0);
    CHECK_FALSE(is_good_triangle(ap3, {line0[0], line0[1], line0[2]}));

    auto ap2 = validate_antipodal(cyclic_antipodal(2));
    CHECK(code_of([&] { find_good_triangle(ap2); }) == ErrorCode::Precondition);
    auto pg = validate_antipodal(antipodal_from_pg24());
    CHECK(is_good_triangle(pg, find_good_triangle(pg)));
}

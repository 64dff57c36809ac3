#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "planecode/construct.hpp"
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

// Dot product with every line, summed point by point through the incidence test.
bool orthogonal_to_all_lines(const CodeWord& w, const Plane& plane) {
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l) {
        std::uint32_t s = 0;
        for (std::uint32_t pt = 0; pt < plane.num_points(); ++pt)
            if (plane.incident(pt, l)) s += w[pt];
        if (s % w.p()) return false;
    }
    return true;
}

std::map<std::uint32_t, std::uint32_t> class_sizes(const CodeWord& w) {
    std::map<std::uint32_t, std::uint32_t> m;
    for (auto v : w.values())
        if (v) ++m[v];
    return m;
}

}  // namespace

TEST_CASE("characteristic") {
    CHECK(characteristic(pg2(Field::make(3, 2))) == 3);
    CHECK(characteristic(pg2(Field::make(2, 3))) == 2);
    CHECK(characteristic(pg2(Field::make(7, 1))) == 7);
}

TEST_CASE("line differences") {
    for (auto [p, h] : {std::pair{2u, 2u}, {3u, 2u}, {5u, 2u}, {7u, 1u}}) {
        auto plane = pg2(Field::make(p, h));
        const auto n = plane.order();
        CAPTURE(n);
        for (std::uint32_t m : {1u, 7u, plane.num_lines() - 1}) {
            auto w = line_diff(plane, 0, m);
            CHECK(w.word.weight() == 2 * n);
            CHECK(w.dual);
            CHECK(orthogonal_to_all_lines(w.raw, plane));
            CHECK(w.word[w.word.support().front()] == 1);
            CHECK(w.ingredients == std::vector<std::uint32_t>{0, m});
        }
        CHECK(code_of([&] { line_diff(plane, 3, 3); }) == ErrorCode::SameLine);
    }
    // The weight-8 word in PG(2,4) attains the 2q upper bound on the dual minimum weight.
    CHECK(line_diff(pg2(Field::make(2, 2)), 0, 1).word.weight() == 8);
}

TEST_CASE("Baer differences have weight 2p^2-p") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        CAPTURE(p);
        auto plane = pg2(Field::make(p, 2));
        auto baer = baer_subfield_subplane(plane);
        auto w = baer_diff(plane, baer);
        CHECK(w.word.weight() == 2 * p * p - p);
        CHECK(w.dual);
        CHECK(orthogonal_to_all_lines(w.raw, plane));
        const auto sec = first_secant(plane, baer);
        CHECK(w.ingredients == std::vector<std::uint32_t>{sec});
        for (std::uint32_t l = 0; l < sec; ++l) {
            std::uint32_t k = 0;
            for (auto pt : baer.points) k += plane.incident(pt, l);
            CHECK(k == 1);
        }
        if (p > 2) {
            auto sizes = class_sizes(w.raw);
            REQUIRE(sizes.size() == 2);
            CHECK(sizes[1] == p * p);
            CHECK(sizes[p - 1] == p * p - p);
        }
    }
    auto plane = pg2(Field::make(3, 2));
    auto baer = baer_subfield_subplane(plane);
    // Every secant works; a tangent does not.
    for (auto l : baer.lines) {
        auto w = baer_diff(plane, baer, l);
        CHECK(w.word.weight() == 15);
        CHECK(orthogonal_to_all_lines(w.word, plane));
    }
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l)
        if (!std::binary_search(baer.lines.begin(), baer.lines.end(), l)) {
            CHECK(code_of([&] { baer_diff(plane, baer, l); }) == ErrorCode::NotSecant);
            break;
        }
}

TEST_CASE("subplane differences") {
    auto plane = pg2(Field::make(3, 2));
    auto baer = baer_subfield_subplane(plane);
    CHECK(code_of([&] { subplane_diff(plane, baer, baer); }) == ErrorCode::NotDisjoint);

    SubplaneSearchOptions opts;
    opts.limit = 3;
    opts.excluded = baer.points;
    auto found = subplane_search(plane, 3, opts);
    REQUIRE(!found.found.empty());
    for (const auto& other : found.found) {
        auto w = subplane_diff(plane, baer, other);
        CHECK(w.word.weight() == 26);
        CHECK(w.dual == orthogonal_to_all_lines(w.raw, plane));
        MESSAGE("disjoint Baer pair in PG(2,9): dual = ", w.dual);
    }
}

TEST_CASE("antipodal differences") {
    auto plane = pg2(Field::make(3, 2));
    auto mk = validate_antipodal(cyclic_antipodal(2));
    auto first = embed_search(mk.base(), plane);
    REQUIRE(first.status == SearchStatus::Found);
    const auto& e1 = first.embeddings[0];

    CHECK(code_of([&] { antipodal_diff(plane, mk, e1, mk, e1); }) == ErrorCode::NotDisjoint);
    auto broken = e1;
    std::swap(broken.point_map[0], broken.point_map[1]);
    CHECK(code_of([&] { antipodal_diff(plane, mk, broken, mk, e1); }) == ErrorCode::NotVerifiedEmbedding);

    SearchOptions opts;
    opts.forbidden_points = e1.point_map;
    opts.cap = 5;
    auto second = embed_search(mk.base(), plane, opts);
    REQUIRE(second.status == SearchStatus::Found);
    CHECK_FALSE(second.normalized);
    for (const auto& e2 : second.embeddings) {
        auto w = antipodal_diff(plane, mk, e1, mk, e2);
        CHECK(w.word.weight() == 16);
        CHECK(w.dual == orthogonal_to_all_lines(w.raw, plane));
    }

    auto ap3 = validate_antipodal(cyclic_antipodal(3));
    auto pg4 = pg2(Field::make(2, 2));
    auto e = embed_search(ap3.base(), pg4);
    REQUIRE(e.status == SearchStatus::Found);
    CHECK(code_of([&] { antipodal_diff(pg4, ap3, e.embeddings[0], ap3, e.embeddings[0]); }) ==
          ErrorCode::Precondition);
}

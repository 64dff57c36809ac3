#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "planecode/analyze.hpp"
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

void require_no_failures(const WordAnalysis& a) {
    for (const auto& c : a.checks) {
        CAPTURE(c.name);
        CAPTURE(c.witness);
        CHECK(c.status != CheckStatus::Fail);
    }
}

std::vector<std::uint32_t> odd_primes_to(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 3; p <= n; p += 2)
        if (is_prime(p)) out.push_back(p);
    return out;
}

// Secant profile recomputed by intersecting point sets, without the analyzer.
std::vector<std::uint32_t> meet_sizes_at(const CodeWord& w, const Plane& plane, std::uint32_t pt) {
    std::vector<std::uint32_t> sizes;
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l) {
        if (!plane.incident(pt, l)) continue;
        std::uint32_t k = 0;
        for (std::uint32_t q = 0; q < plane.num_points(); ++q) k += plane.incident(q, l) && w[q] != 0;
        sizes.push_back(k);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace

TEST_CASE("colour graph is a path with one loop") {
    for (auto p : odd_primes_to(31)) {
        CAPTURE(p);
        auto g = colour_graph(p);
        CHECK(g.components.size() == 1);
        // Walk 1, p-1, 2, p-2, ... and check consecutive vertices are adjacent.
        std::vector<std::uint32_t> walk;
        for (std::uint32_t i = 1; i <= (p - 1) / 2; ++i) {
            walk.push_back(i);
            walk.push_back(p - i);
        }
        CHECK(walk.back() == (p + 1) / 2);
        std::set<std::pair<std::uint32_t, std::uint32_t>> edges(g.edges.begin(), g.edges.end());
        for (std::size_t i = 0; i + 1 < walk.size(); ++i)
            CHECK(edges.count({std::min(walk[i], walk[i + 1]), std::max(walk[i], walk[i + 1])}) == 1);
        CHECK(edges.count({(p + 1) / 2, (p + 1) / 2}) == 1);
        CHECK(g.edges.size() == p - 1);  // p-2 path edges and the loop
        std::uint32_t loops = 0;
        for (auto [a, b] : g.edges) loops += a == b;
        CHECK(loops == 1);
        for (std::uint32_t v = 1; v < p; ++v) CHECK(g.degree(v) == (v == 1 ? 1u : 2u));
    }
    auto sub = colour_graph(7, {1, 6, 3, 4});
    CHECK(sub.components == std::vector<std::vector<std::uint32_t>>{{1, 6}, {3, 4}});
    CHECK(sub.degree(4) == 2);
    CHECK(code_of([] { colour_graph(5, {5}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Baer difference analysis") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        CAPTURE(p);
        auto plane = pg2(Field::make(p, 2));
        auto built = baer_diff(plane, baer_subfield_subplane(plane));
        auto a = analyze(built.word, plane);
        CHECK(a.weight == 2 * p * p - p);
        CHECK(a.epsilon == std::int64_t(p) - 2);
        CHECK(a.in_band);
        CHECK(a.classification == Classification::Baer);
        CHECK(a.tangents == 0);
        std::set<std::uint32_t> sizes;
        for (auto [c, s] : a.colours) sizes.insert(s);
        CHECK(sizes == std::set<std::uint32_t>{p * p - p, p * p});
        require_no_failures(a);
        for (auto name : {"mu_sum_identity", "line_mu_divisible", "total_mu_divisible", "two_secant_lower_bound",
                          "even_colour_count", "mu_difference_bound", "two_colour_size_gap", "secant_count_bounds",
                          "two_secants_vs_opposite_colour"})
            CHECK(a.check(name).status == CheckStatus::Pass);

        // Subplane points off the secant lie on p^2-p 2-secants, points of the secant on p^2.
        for (const auto& pr : a.profiles) {
            const bool on_secant = built.raw[pr.point] == p - 1;
            CHECK(pr.x == (on_secant ? p * p : p * p - p));
            CHECK(pr.meet_sizes == meet_sizes_at(built.word, plane, pr.point));
        }
        // The minimum x sits in the big class, which the canonical multiple colours p-1.
        auto canon = scale(built.word, a.canonical_scale);
        CHECK(a.canonical_colours.at(p - 1) == p * p);
        CHECK(canon == scale(built.raw, -1));
    }
}

TEST_CASE("line difference analysis") {
    auto plane = pg2(Field::make(3, 2));
    auto a = analyze(line_diff(plane, 0, 1).word, plane);
    CHECK(a.weight == 18);
    CHECK(a.epsilon == 4);
    CHECK_FALSE(a.in_band);
    CHECK(a.colours.size() == 2);
    for (auto [c, s] : a.colours) CHECK(s == 9);
    CHECK(a.classification == Classification::TwoColourOther);
    for (auto name : {"mu_sum_identity", "line_mu_divisible", "total_mu_divisible"})
        CHECK(a.check(name).status == CheckStatus::Pass);
    CHECK(a.check("two_secant_lower_bound").status == CheckStatus::NotApplicable);
    require_no_failures(a);
}

TEST_CASE("zero and non-dual words") {
    auto plane = pg2(Field::make(3, 2));
    auto zero = CodeWord::zero(3, plane.num_points());
    auto a = analyze(zero, plane);
    CHECK(a.weight == 0);
    CHECK(a.colours.empty());
    CHECK(a.classification == Classification::None);
    for (const auto& c : a.checks) CHECK(c.status == CheckStatus::NotApplicable);
    CHECK(a.checks.size() == 13);

    std::vector<std::uint32_t> one = {5};
    auto bad = indicator(3, plane.num_points(), one);
    CHECK(code_of([&] { analyze(bad, plane); }) == ErrorCode::NotDualWord);
    auto b = analyze(bad, plane, true);
    CHECK_FALSE(b.dual);
    CHECK(b.tangents == 4 * 3 - 2);
    for (const auto& c : b.checks) CHECK(c.status == CheckStatus::NotApplicable);
    CHECK(code_of([&] { analyze(CodeWord::zero(3, 13), plane); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("random dual words never fail a check") {
    std::mt19937_64 rng(0);
    for (auto [p, h] : {std::pair{2u, 2u}, {3u, 2u}, {5u, 2u}}) {
        auto plane = pg2(Field::make(p, h));
        auto dual = dual_basis(code_of_plane(plane, p));
        CAPTURE(plane.order());
        for (int i = 0; i < 500; ++i) {
            auto w = random_codeword(dual, rng);
            auto a = analyze(w, plane);
            require_no_failures(a);
            CHECK(a.tangents == 0);
            std::uint32_t total = 0;
            for (auto [c, s] : a.colours) total += s;
            CHECK(total == a.weight);
            // The canonical multiple does not depend on the starting multiple.
            const auto lambda = 1 + i % (p - 1);
            auto scaled = scale(w, lambda);
            CHECK(scale(scaled, canonical_scale(scaled, plane)) == scale(w, a.canonical_scale));
        }
    }
}

TEST_CASE("all line differences in small planes") {
    for (auto [p, h] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}}) {
        auto plane = pg2(Field::make(p, h));
        CAPTURE(plane.order());
        std::uint32_t failures = 0;
        for (std::uint32_t l = 0; l < plane.num_lines(); ++l)
            for (std::uint32_t m = l + 1; m < plane.num_lines(); ++m)
                failures += analyze(line_diff(plane, l, m).word, plane).any_failed();
        CHECK(failures == 0);
    }
}

TEST_CASE("canonical scaling") {
    auto plane = pg2(Field::make(5, 2));
    auto w = line_diff(plane, 2, 40).word;
    auto a = analyze(w, plane);
    auto canon = scale(w, a.canonical_scale);
    std::uint32_t min_x = ~0u;
    for (const auto& pr : a.profiles) min_x = std::min(min_x, pr.x);
    bool found = false;
    for (const auto& pr : a.profiles) found = found || (pr.x == min_x && canon[pr.point] == 4);
    CHECK(found);
    CHECK(canonical_scale(CodeWord::zero(5, plane.num_points()), plane) == 1);
}

TEST_CASE("Baer extraction round-trip") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        CAPTURE(p);
        auto plane = pg2(Field::make(p, 2));
        auto baer = baer_subfield_subplane(plane);
        std::vector<std::uint32_t> secants = baer.lines;
        if (p > 3) secants.resize(4);
        for (auto l : secants) {
            auto built = baer_diff(plane, baer, l);
            for (std::int64_t lambda = 1; lambda < p; ++lambda) {
                auto got = extract_baer(scale(built.raw, lambda), plane);
                CHECK(got.secant == l);
                CHECK(got.subplane == baer);
            }
        }
    }
    // A Baer subplane other than the subfield one.
    auto plane = pg2(Field::make(3, 2));
    SubplaneSearchOptions opts;
    opts.limit = 2;
    opts.excluded = {0};
    auto others = subplane_search(plane, 3, opts);
    REQUIRE(!others.found.empty());
    for (const auto& b : others.found) {
        auto built = baer_diff(plane, b);
        auto got = extract_baer(built.word, plane);
        CHECK(got.subplane == b);
        CHECK(got.secant == first_secant(plane, b));
    }
}

TEST_CASE("Baer extraction failures") {
    auto plane = pg2(Field::make(3, 2));
    CHECK(code_of([&] { extract_baer(line_diff(plane, 0, 1).word, plane); }) == ErrorCode::StructureMismatch);
    try {
        extract_baer(line_diff(plane, 0, 1).word, plane);
    } catch (const Error& e) {
        CHECK(e.detail().find("class sizes") != std::string::npos);
    }
    CHECK(code_of([&] { extract_baer(CodeWord::zero(3, plane.num_points()), plane); }) ==
          ErrorCode::StructureMismatch);
    std::vector<std::uint32_t> one = {0};
    CHECK(code_of([&] { extract_baer(indicator(3, plane.num_points(), one), plane); }) == ErrorCode::NotDualWord);

    // Correct class sizes, but the smaller class is scattered.
    std::mt19937_64 rng(7);
    std::vector<std::uint32_t> pts(plane.num_points());
    std::iota(pts.begin(), pts.end(), 0u);
    for (int trial = 0; trial < 200; ++trial) {
        std::shuffle(pts.begin(), pts.end(), rng);
        std::vector<std::uint8_t> v(plane.num_points(), 0);
        for (int i = 0; i < 9; ++i) v[pts[i]] = 1;
        for (int i = 9; i < 15; ++i) v[pts[i]] = 2;
        CHECK(code_of([&] { extract_baer(CodeWord(3, v), plane, true); }) == ErrorCode::StructureMismatch);
    }
}

TEST_CASE("antipodal extraction") {
    auto plane = pg2(Field::make(3, 2));
    auto baer_word = baer_diff(plane, baer_subfield_subplane(plane)).word;
    CHECK(code_of([&] { extract_antipodal(baer_word, plane); }) == ErrorCode::StructureMismatch);

    // Two disjoint embedded Mobius-Kantor configurations give the right shape either way.
    auto mk = validate_antipodal(cyclic_antipodal(2));
    auto e1 = embed_search(mk.base(), plane).embeddings.at(0);
    SearchOptions opts;
    opts.forbidden_points = e1.point_map;
    auto e2 = embed_search(mk.base(), plane, opts).embeddings.at(0);
    auto w = antipodal_diff(plane, mk, e1, mk, e2);
    auto got = extract_antipodal(w.word, plane, true);
    for (const auto& part : got.parts) {
        CHECK(part.pls.num_points() == 8);
        CHECK(find_isomorphism(cyclic_antipodal(2), part.pls).has_value());
    }

    // Random classes of the right size: any success must be a genuine antipodal pair.
    std::mt19937_64 rng(11);
    std::vector<std::uint32_t> pts(plane.num_points());
    std::iota(pts.begin(), pts.end(), 0u);
    int mismatches = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::shuffle(pts.begin(), pts.end(), rng);
        std::vector<std::uint8_t> v(plane.num_points(), 0);
        for (int i = 0; i < 8; ++i) v[pts[i]] = 1;
        for (int i = 8; i < 16; ++i) v[pts[i]] = 2;
        try {
            auto res = extract_antipodal(CodeWord(3, v), plane, true);
            for (const auto& part : res.parts) {
                auto ap = validate_antipodal(part.pls);
                CHECK(ap.order() == 2);
                for (auto l : part.lines) {
                    std::uint32_t k = 0;
                    for (auto q : part.points) k += plane.incident(q, l);
                    CHECK(k == 3);
                }
            }
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::StructureMismatch);
            ++mismatches;
        }
    }
    CHECK(mismatches > 0);
}

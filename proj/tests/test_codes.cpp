#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "planecode/codes.hpp"
#include "planecode/error.hpp"

using namespace planecode;

namespace {

// Rank by plain elimination on int rows, written without the library matrix.
std::uint32_t oracle_rank(const Plane& pl, std::uint32_t p) {
    const std::uint32_t n = pl.num_points();
    std::vector<std::vector<int>> m(pl.num_lines(), std::vector<int>(n, 0));
    for (std::uint32_t l = 0; l < pl.num_lines(); ++l)
        for (auto pt : pl.points_on(l)) m[l][pt] = 1;
    std::uint32_t rank = 0;
    for (std::uint32_t c = 0; c < n; ++c) {
        std::uint32_t r = rank;
        while (r < m.size() && m[r][c] % int(p) == 0) ++r;
        if (r == m.size()) continue;
        std::swap(m[r], m[rank]);
        int inv = 1;
        while (m[rank][c] * inv % int(p) != 1) ++inv;
        for (std::uint32_t i = rank + 1; i < m.size(); ++i) {
            const int f = m[i][c] * inv % int(p);
            if (!f) continue;
            for (std::uint32_t j = c; j < n; ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % int(p) + int(p)) % int(p);
        }
        ++rank;
    }
    return rank;
}

std::uint32_t formula_dim(std::uint32_t p, std::uint32_t h) {
    std::uint32_t b = p * (p + 1) / 2, r = 1;
    for (std::uint32_t i = 0; i < h; ++i) r *= b;
    return r + 1;
}

// Minimum-weight words by evaluating every message directly.
MinWeightResult oracle_min_weight(const LinearCode& code) {
    MinWeightResult res{UINT32_MAX, {}, 0};
    std::vector<std::uint32_t> msg(code.dimension(), 0);
    for (;;) {
        auto w = code.combine(msg);
        ++res.enumerated;
        if (w.weight() && w.weight() <= res.min_weight) {
            if (w.weight() < res.min_weight) res.words.clear();
            res.min_weight = w.weight();
            res.words.push_back(w);
        }
        std::size_t i = 0;
        while (i < msg.size() && msg[i] == code.p - 1) msg[i++] = 0;
        if (i == msg.size()) break;
        ++msg[i];
    }
    std::sort(res.words.begin(), res.words.end());
    return res;
}

CodeWord line_word(const Plane& pl, std::uint32_t p, std::uint32_t l) { return indicator(p, pl.num_points(), pl.points_on(l)); }

}  // namespace

TEST_CASE("dimension formula and independent rank") {
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> cases = {{2, 1}, {3, 1}, {2, 2}, {5, 1},
                                                                          {2, 3}, {3, 2}, {2, 4}, {5, 2}};
    for (auto [p, h] : cases) {
        auto pl = pg2(Field::make(p, h));
        auto code = code_of_plane(pl, p);
        CAPTURE(p);
        CAPTURE(h);
        CHECK(code.dimension() == formula_dim(p, h));
        if (pl.num_points() <= 91) CHECK(code.dimension() == oracle_rank(pl, p));
    }
    CHECK(formula_dim(2, 1) == 4);
    CHECK(formula_dim(3, 2) == 37);
    CHECK(formula_dim(5, 2) == 226);
}

TEST_CASE("prime mismatch") {
    auto pl = pg2(Field::make(3, 1));
    CHECK_THROWS_AS(code_of_plane(pl, 2), Error);
    CHECK(code_of_plane(pl, 2, true).dimension() == oracle_rank(pl, 2));
}

TEST_CASE("RREF is canonical") {
    auto pl = pg2(Field::make(3, 1));
    auto a = code_of_plane(pl, 3);
    auto rows = pl.lines();
    std::reverse(rows.begin(), rows.end());
    auto b = code_of_plane(Plane::from_incidence(rows, 3), 3);
    CHECK(a.generator == b.generator);
    for (std::uint32_t i = 0; i < a.dimension(); ++i) {
        CHECK(a.generator.at(i, a.pivots[i]) == 1);
        for (std::uint32_t j = 0; j < a.dimension(); ++j)
            if (j != i) CHECK(a.generator.at(j, a.pivots[i]) == 0);
    }
}

TEST_CASE("dual bases") {
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> cases = {{2, 1, 3}, {2, 2, 11}, {3, 2, 54}};
    for (auto [p, h, expect] : cases) {
        auto pl = pg2(Field::make(p, h));
        auto code = code_of_plane(pl, p);
        auto dual = dual_basis(code);
        CHECK(dual.dimension() == expect);
        CHECK(dual.dimension() + code.dimension() == pl.num_points());
        for (std::uint32_t a = 0; a < dual.dimension(); ++a) {
            CHECK(is_dual_word(dual.row_word(a), pl).dual);
            for (std::uint32_t b = 0; b < code.dimension(); ++b) {
                std::uint32_t s = 0;
                for (std::uint32_t j = 0; j < pl.num_points(); ++j) s += dual.generator.at(a, j) * code.generator.at(b, j);
                REQUIRE(s % p == 0);
            }
        }
    }
}

TEST_CASE("is_dual_word") {
    auto pl = pg2(Field::make(3, 1));
    CHECK(is_dual_word(CodeWord::zero(3, 13), pl).dual);
    auto l0 = line_word(pl, 3, 0);
    auto chk = is_dual_word(l0, pl);
    CHECK_FALSE(chk.dual);
    REQUIRE(chk.witness_line.has_value());
    CHECK(mu_on(l0, pl.points_on(*chk.witness_line)) % 3 != 0);
    CHECK(mu_on(l0, pl.points_on(0)) == 4);
    CHECK(is_dual_word(diff(l0, line_word(pl, 3, 5)), pl).dual);
    CHECK_THROWS_AS(is_dual_word(CodeWord::zero(3, 7), pl), Error);
}

TEST_CASE("word arithmetic") {
    auto pl = pg2(Field::make(5, 1));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> sym(0, 4);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::uint8_t> v(pl.num_points());
        for (auto& x : v) x = std::uint8_t(sym(rng));
        CodeWord w(5, v);
        CHECK(mu(w) + mu(scale(w, -1)) == 5 * w.weight());
        CHECK(diff(w, w) == CodeWord::zero(5, w.length()));
        CHECK(add(w, scale(w, -1)).weight() == 0);
        auto n = normalized(w);
        if (w.weight()) CHECK(n[n.support().front()] == 1);
        CHECK(n.support() == w.support());
    }
    CHECK_THROWS_AS(CodeWord(3, {0, 3}), Error);
    CHECK_THROWS_AS(diff(CodeWord::zero(3, 4), CodeWord::zero(3, 5)), Error);
    CHECK_THROWS_AS(diff(CodeWord::zero(3, 4), CodeWord::zero(5, 4)), Error);

    auto pg9 = pg2(Field::make(3, 2));
    auto b = baer_subfield_subplane(pg9);
    CHECK(indicator(3, pg9.num_points(), b.points).weight() == 13);
    CHECK_THROWS_AS(indicator(3, 4, std::vector<std::uint32_t>{4}), Error);
}

TEST_CASE("primal minimum weight is the scalar multiples of lines") {
    for (auto [p, h] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        auto pl = pg2(Field::make(p, h));
        auto code = code_of_plane(pl, p);
        auto res = enumerate_min_weight(code);
        CHECK(res.min_weight == pl.order() + 1);
        std::vector<CodeWord> expect;
        for (std::uint32_t l = 0; l < pl.num_lines(); ++l)
            for (std::uint32_t c = 1; c < p; ++c) expect.push_back(scale(line_word(pl, p, l), c));
        std::sort(expect.begin(), expect.end());
        CHECK(res.words == expect);
        CHECK(res.words.size() == (p - 1) * pl.num_lines());
        auto oracle = oracle_min_weight(code);
        CHECK(oracle.words == res.words);
        CHECK(res.enumerated == oracle.enumerated);
    }
}

TEST_CASE("dual minimum weights") {
    struct Case {
        std::uint32_t p, h, d;
    };
    for (auto c : {Case{2, 1, 4}, Case{2, 2, 6}, Case{3, 1, 6}}) {
        auto pl = pg2(Field::make(c.p, c.h));
        auto dual = dual_basis(code_of_plane(pl, c.p));
        auto res = enumerate_min_weight(dual);
        CHECK(res.min_weight == c.d);
        auto oracle = oracle_min_weight(dual);
        CHECK(oracle.min_weight == c.d);
        CHECK(oracle.words == res.words);
        for (unsigned t : {2u, 3u}) CHECK(enumerate_min_weight(dual, kDefaultEnumerationBudget, t).words == res.words);
    }
}

TEST_CASE("generic-prime enumeration path") {
    auto pl = pg2(Field::make(5, 1));
    auto dual = dual_basis(code_of_plane(pl, 5));
    // dim 31 - 16 = 15 is too big; enumerate a small subcode spanned by line differences instead.
    GfpMatrix m(5, 3, pl.num_points());
    for (std::uint32_t r = 0; r < 3; ++r) {
        auto w = diff(line_word(pl, 5, 0), line_word(pl, 5, r + 1));
        for (std::uint32_t j = 0; j < w.length(); ++j) m.set(r, j, w[j]);
    }
    auto sub = span_of(m);
    CHECK(sub.dimension() == 3);
    auto res = enumerate_min_weight(sub);
    auto oracle = oracle_min_weight(sub);
    CHECK(res.min_weight == oracle.min_weight);
    CHECK(res.words == oracle.words);
    CHECK(res.enumerated == 125);
    CHECK(dual.dimension() == 15);
}

TEST_CASE("enumeration budget") {
    auto pl = pg2(Field::make(3, 2));
    auto code = code_of_plane(pl, 3);
    try {
        enumerate_min_weight(code);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
    auto small = code_of_plane(pg2(Field::make(2, 1)), 2);
    CHECK_THROWS_AS(enumerate_min_weight(small, 15), Error);
    CHECK_NOTHROW(enumerate_min_weight(small, 16));
}

TEST_CASE("mu congruences on random dual words") {
    std::mt19937_64 rng(0);
    for (auto [p, h] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 1}, {5, 1}, {3, 2}, {7, 1}}) {
        auto pl = pg2(Field::make(p, h));
        auto dual = dual_basis(code_of_plane(pl, p));
        for (int t = 0; t < 100; ++t) {
            auto w = random_codeword(dual, rng);
            REQUIRE(is_dual_word(w, pl).dual);
            REQUIRE(mu(w) % p == 0);
            for (std::uint32_t l = 0; l < pl.num_lines(); ++l) REQUIRE(mu_on(w, pl.points_on(l)) % p == 0);
        }
    }
}

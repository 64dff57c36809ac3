#include "planecode/suite.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "planecode/analyze.hpp"
#include "planecode/construct.hpp"
#include "planecode/error.hpp"
#include "planecode/io.hpp"
#include "planecode/search.hpp"

namespace planecode {

namespace {

// Wall-clock limits per row, in seconds.
constexpr double kDimensionLimit = 60;
constexpr double kBaerWitnessLimit = 300;
constexpr double kTruthTableLimit = 1800;
constexpr double kAnalyzerLimit = 600;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Q {
    std::uint32_t p, h;
    std::uint32_t q() const {
        std::uint32_t r = 1;
        for (std::uint32_t i = 0; i < h; ++i) r *= p;
        return r;
    }
};

Q of_order(std::uint32_t p, std::uint32_t q) {
    Q r{p, 0};
    while (q > 1) q /= p, ++r.h;
    return r;
}

std::string error_text(const Error& e) { return std::string(to_string(e.code())) + ": " + e.detail(); }

// Words produced for the analyzer and weight-bound rows, with the plane they live in.
struct Sample {
    std::uint32_t q = 0, p = 0;
    std::string recipe;
    CodeWord word;
};

class Suite {
public:
    explicit Suite(const SuiteOptions& opts) : opts_(opts) {}

    SuiteRow ingestion();
    SuiteRow dimensions();
    SuiteRow primal_min_weight();
    SuiteRow dual_min_weight_even();
    SuiteRow dual_min_weight_prime();
    SuiteRow baer_witnesses();
    SuiteRow baer_round_trip();
    SuiteRow truth_table();
    SuiteRow menelaos_ceva();
    SuiteRow antipodal_models();
    SuiteRow analyzer();
    SuiteRow weight_bound();
    nlohmann::json experiments();

private:
    const Plane& plane(Q q);
    const std::vector<Sample>& baer_samples();
    const std::vector<Sample>& analyzer_samples();

    SuiteOptions opts_;
    std::map<std::uint32_t, Plane> planes_;
    std::optional<std::vector<Sample>> baer_samples_;
    std::optional<std::vector<Sample>> analyzer_samples_;
};

const Plane& Suite::plane(Q q) {
    auto it = planes_.find(q.q());
    if (it == planes_.end()) it = planes_.emplace(q.q(), pg2(Field::make(q.p, q.h))).first;
    return it->second;
}

SuiteRow Suite::ingestion() {
    SuiteRow row;
    std::string text = opts_.plane_file ? read_file(*opts_.plane_file) : plane_to_text(plane({3, 2}));
    row.data["source"] = opts_.plane_file ? *opts_.plane_file : std::string("exported PG(2,9)");
    row.data["fnv1a64"] = hex64(fnv1a64(text));
    auto ingested = plane_from_text(text, opts_.plane_file.value_or("pg2-9-export"));
    row.data["order"] = ingested.order();
    row.pass = true;
    if (!opts_.plane_file) {
        row.pass = ingested.same_incidence(plane({3, 2})) && plane_to_text(ingested) == text;
        row.detail = row.pass ? "round-trip identical" : "round-trip changed the plane";
    } else {
        row.detail = fmt::format("order {} plane accepted", ingested.order());
    }
    return row;
}

SuiteRow Suite::dimensions() {
    SuiteRow row;
    row.limit_seconds = kDimensionLimit;
    struct Case {
        Q q;
        std::uint32_t expected;
    };
    const Case cases[] = {{{2, 1}, 4},  {{3, 1}, 7},  {{2, 2}, 10}, {{5, 1}, 16}, {{7, 1}, 29},
                          {{2, 3}, 28}, {{3, 2}, 37}, {{2, 4}, 82}, {{5, 2}, 226}};
    row.pass = true;
    std::vector<std::string> bad;
    for (const auto& c : cases) {
        // Closed form: binom(p+1, 2)^h + 1.
        std::uint64_t formula = 1;
        for (std::uint32_t i = 0; i < c.q.h; ++i) formula *= std::uint64_t(c.q.p) * (c.q.p + 1) / 2;
        ++formula;
        const auto dim = code_of_plane(plane(c.q), c.q.p).dimension();
        row.data[std::to_string(c.q.q())] = dim;
        if (dim != c.expected || formula != c.expected) {
            row.pass = false;
            bad.push_back(fmt::format("q={}: rank {}, formula {}, expected {}", c.q.q(), dim, formula, c.expected));
        }
    }
    row.detail = bad.empty() ? "all nine dimensions match" : fmt::format("{}", fmt::join(bad, "; "));
    return row;
}

SuiteRow Suite::primal_min_weight() {
    SuiteRow row;
    row.pass = true;
    std::vector<std::string> notes;
    for (Q q : {Q{2, 1}, Q{3, 1}, Q{2, 2}}) {
        const auto& pl = plane(q);
        auto res = enumerate_min_weight(code_of_plane(pl, q.p), kDefaultEnumerationBudget, opts_.threads);
        std::vector<CodeWord> expect;
        for (std::uint32_t l = 0; l < pl.num_lines(); ++l)
            for (std::uint32_t c = 1; c < q.p; ++c) expect.push_back(scale(indicator(q.p, pl.num_points(), pl.points_on(l)), c));
        std::sort(expect.begin(), expect.end());
        const bool ok = res.min_weight == pl.order() + 1 && res.words == expect;
        row.pass = row.pass && ok;
        row.data[std::to_string(q.q())] = {{"min_weight", res.min_weight}, {"words", res.words.size()},
                                           {"enumerated", res.enumerated}};
        notes.push_back(fmt::format("q={}: d={} ({} words){}", q.q(), res.min_weight, res.words.size(), ok ? "" : " MISMATCH"));
    }
    row.detail = fmt::format("{}", fmt::join(notes, ", "));
    return row;
}

SuiteRow Suite::dual_min_weight_even() {
    SuiteRow row;
    row.pass = true;
    std::vector<std::string> notes;
    for (auto [q, d, count] : {std::tuple{Q{2, 1}, 4u, 8ull}, std::tuple{Q{2, 2}, 6u, 2048ull}}) {
        auto dual = dual_basis(code_of_plane(plane(q), q.p));
        auto res = enumerate_min_weight(dual, kDefaultEnumerationBudget, opts_.threads);
        const bool ok = res.min_weight == d && res.enumerated == count;
        row.pass = row.pass && ok;
        row.data[std::to_string(q.q())] = {{"min_weight", res.min_weight}, {"enumerated", res.enumerated}};
        notes.push_back(fmt::format("q={}: d={} over {} words{}", q.q(), res.min_weight, res.enumerated, ok ? "" : " MISMATCH"));
    }
    row.detail = fmt::format("{}", fmt::join(notes, ", "));
    return row;
}

SuiteRow Suite::dual_min_weight_prime() {
    SuiteRow row;
    auto dual = dual_basis(code_of_plane(plane({3, 1}), 3));
    auto res = enumerate_min_weight(dual, kDefaultEnumerationBudget, opts_.threads);
    row.pass = dual.dimension() == 6 && res.enumerated == 729 && res.min_weight == 6;
    row.data = {{"dimension", dual.dimension()}, {"enumerated", res.enumerated}, {"min_weight", res.min_weight}};
    row.detail = fmt::format("dim {}, {} words, d={}", dual.dimension(), res.enumerated, res.min_weight);
    return row;
}

const std::vector<Sample>& Suite::baer_samples() {
    if (!baer_samples_) {
        baer_samples_.emplace();
        for (std::uint32_t p : {3u, 5u, 7u}) {
            const auto& pl = plane({p, 2});
            auto w = baer_diff(pl, baer_subfield_subplane(pl));
            baer_samples_->push_back({p * p, p, w.dual ? "baer-diff" : "baer-diff (not dual)", w.word});
        }
    }
    return *baer_samples_;
}

SuiteRow Suite::baer_witnesses() {
    SuiteRow row;
    row.limit_seconds = kBaerWitnessLimit;
    row.pass = true;
    std::vector<std::string> notes;
    for (const auto& s : baer_samples()) {
        const auto& pl = plane({s.p, 2});
        const bool dual = is_dual_word(s.word, pl).dual;
        const auto expected = 2 * s.p * s.p - s.p;
        std::string failed;
        if (dual) {
            auto a = analyze(s.word, pl);
            for (const auto& c : a.checks)
                if (c.status == CheckStatus::Fail) failed += (failed.empty() ? "" : ",") + c.name;
            row.data[std::to_string(s.q)] = {{"weight", s.word.weight()}, {"dual", dual},
                                             {"classification", to_string(a.classification)}};
        }
        const bool ok = dual && s.word.weight() == expected && failed.empty();
        row.pass = row.pass && ok;
        notes.push_back(fmt::format("q={}: w={}{}{}", s.q, s.word.weight(), dual ? "" : " not dual",
                                    failed.empty() ? "" : " failed " + failed));
    }
    row.detail = fmt::format("{}", fmt::join(notes, ", "));
    return row;
}

SuiteRow Suite::baer_round_trip() {
    SuiteRow row;
    row.pass = true;
    std::uint32_t trials = 0;
    std::vector<std::string> bad;
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const auto& pl = plane({p, 2});
        const auto baer = baer_subfield_subplane(pl);
        // Every secant, every nonzero multiple.
        for (auto secant : baer.lines) {
            auto w = baer_diff(pl, baer, secant).word;
            for (std::uint32_t lambda = 1; lambda < p; ++lambda) {
                ++trials;
                auto got = extract_baer(scale(w, lambda), pl);
                if (got.subplane != baer || got.secant != secant)
                    bad.push_back(fmt::format("p={} secant {} lambda {}", p, secant, lambda));
            }
        }
    }
    row.pass = bad.empty();
    row.data = {{"trials", trials}, {"mismatches", bad.size()}};
    row.detail = bad.empty() ? fmt::format("{} round-trips exact", trials) : bad.front();
    return row;
}

SuiteRow Suite::truth_table() {
    SuiteRow row;
    row.limit_seconds = kTruthTableLimit;
    row.pass = true;
    const auto mk = validate_antipodal(cyclic_antipodal(2));
    const auto ap3 = validate_antipodal(cyclic_antipodal(3));
    struct Cell {
        const AntipodalPlane* model;
        std::string name;
        Q q;
        bool expected;
    };
    std::vector<Cell> cells;
    for (Q q : {Q{3, 1}, Q{2, 2}, Q{5, 1}, Q{7, 1}, Q{2, 3}, Q{3, 2}, Q{11, 1}, Q{13, 1}})
        cells.push_back({&mk, "order-2", q, q.p == 3 || (q.q() - 1) % 3 == 0});
    for (Q q : {Q{2, 2}, Q{5, 1}, Q{7, 1}, Q{2, 3}, Q{3, 2}, Q{2, 4}})
        cells.push_back({&ap3, "order-3", q, q.p == 2 && q.h % 2 == 0});

    SearchOptions so;
    so.budget = opts_.search_budget;
    so.threads = opts_.threads;
    auto table = nlohmann::json::array();
    std::vector<std::string> bad;
    for (const auto& c : cells) {
        const auto& pl = plane(c.q);
        auto out = embed_search(c.model->base(), pl, so);
        bool ok = false;
        nlohmann::json cell = {{"model", c.name}, {"q", c.q.q()}, {"expected", c.expected ? "exists" : "none"},
                               {"status", to_string(out.status)}, {"nodes", out.stats.nodes}};
        if (out.status == SearchStatus::Found) {
            const auto check = verify_embedding(c.model->base(), pl, out.embeddings.front());
            ok = c.expected && check.ok;
            cell["verified"] = check.ok;
            try {
                auto cert = slope_certificate(*c.model, pl, out.embeddings.front());
                cell["slope_product"] = pl.field().to_string(cert.product);
            } catch (const Error& e) {
                cell["slope_product_error"] = error_text(e);
            }
        } else {
            ok = !c.expected && out.status == SearchStatus::ExhaustedNone;
        }
        if (!ok) bad.push_back(fmt::format("{} in q={}: {}", c.name, c.q.q(), to_string(out.status)));
        table.push_back(cell);
    }
    row.pass = bad.empty();
    row.data["cells"] = table;
    row.detail = bad.empty() ? fmt::format("{} cells match", cells.size()) : fmt::format("{}", fmt::join(bad, "; "));
    return row;
}

SuiteRow Suite::menelaos_ceva() {
    SuiteRow row;
    row.pass = true;
    std::vector<std::string> notes;
    for (Q q : {Q{3, 1}, Q{2, 2}, Q{5, 1}, Q{7, 1}, Q{3, 2}}) {
        const auto& pl = plane(q);
        const auto& f = pl.field();
        const auto minus_one = f.neg(f.one());
        std::uint32_t lines = 0, points = 0, bad = 0;
        for (std::uint32_t i = 0; i < pl.num_points(); ++i) {
            const auto& l = pl.line_coords(i).x;
            if (l[0] != f.zero() && l[1] != f.zero() && l[2] != f.zero()) {
                ++lines;
                bad += menelaos_product(pl, i) != minus_one;
            }
            const auto& x = pl.point_coords(i).x;
            if (x[0] != f.zero() && x[1] != f.zero() && x[2] != f.zero()) {
                ++points;
                bad += ceva_product(pl, i) != f.one();
            }
        }
        const auto expect = (q.q() - 1) * (q.q() - 1);
        const bool ok = bad == 0 && lines == expect && points == expect;
        row.pass = row.pass && ok;
        row.data[std::to_string(q.q())] = {{"lines", lines}, {"points", points}, {"failures", bad}};
        notes.push_back(fmt::format("q={}: {}+{}{}", q.q(), lines, points, ok ? "" : " FAIL"));
    }
    row.detail = fmt::format("{}", fmt::join(notes, ", "));
    return row;
}

namespace {

// Antipode axioms and the elementwise description of antipodal lines, counted directly.
std::uint32_t antipode_violations(const AntipodalPlane& ap) {
    const auto& s = ap.base();
    std::uint32_t bad = 0;
    auto collinear = [&](std::uint32_t a, std::uint32_t b) {
        for (auto l : s.lines_through(a))
            if (s.incident(b, l)) return true;
        return false;
    };
    for (std::uint32_t p = 0; p < s.num_points(); ++p) {
        const auto q = ap.perp_point(p);
        bad += q == p || ap.perp_point(q) != p || collinear(p, q);
        for (std::uint32_t r = 0; r < s.num_points(); ++r)
            if (r != p && r != q) bad += !collinear(p, r);
    }
    for (std::uint32_t l = 0; l < s.num_lines(); ++l) {
        const auto m = ap.perp_line(l);
        bad += m == l || ap.perp_line(m) != l;
        for (auto p : s.points_on(l)) bad += s.incident(p, m) || !s.incident(ap.perp_point(p), m);
    }
    return bad;
}

bool has_parameters(const PartialLinearSpace& s, std::uint32_t order) {
    const auto n = order * order + order + 2;
    if (s.num_points() != n || s.num_lines() != n) return false;
    for (std::uint32_t l = 0; l < n; ++l)
        if (s.points_on(l).size() != order + 1) return false;
    for (std::uint32_t p = 0; p < n; ++p)
        if (s.lines_through(p).size() != order + 1) return false;
    return true;
}

}  // namespace

SuiteRow Suite::antipodal_models() {
    SuiteRow row;
    const auto c2 = cyclic_antipodal(2), c3 = cyclic_antipodal(3), pg24 = antipodal_from_pg24();
    const auto a2 = validate_antipodal(c2), a3 = validate_antipodal(c3), a24 = validate_antipodal(pg24);
    const bool params = has_parameters(c2, 2) && has_parameters(c3, 3) && has_parameters(pg24, 3) &&
                        a2.order() == 2 && a3.order() == 3 && a24.order() == 3;
    const auto violations = antipode_violations(a2) + antipode_violations(a3) + antipode_violations(a24);
    const bool iso = find_isomorphism(c3, pg24).has_value();
    row.pass = params && violations == 0 && iso;
    row.data = {{"parameters", params}, {"antipode_violations", violations}, {"complement_isomorphic", iso}};
    row.detail = fmt::format("parameters {}, {} antipode violations, isomorphism {}", params ? "ok" : "WRONG",
                             violations, iso ? "found" : "MISSING");
    return row;
}

const std::vector<Sample>& Suite::analyzer_samples() {
    if (analyzer_samples_) return *analyzer_samples_;
    analyzer_samples_.emplace();
    auto& out = *analyzer_samples_;
    auto add = [&](Q q, const ConstructedWord& w) {
        if (w.dual) out.push_back({q.q(), q.p, w.recipe, w.word});
    };
    for (Q q : {Q{2, 2}, Q{3, 2}, Q{5, 2}}) {
        const auto& pl = plane(q);
        for (std::uint32_t m = 1; m < pl.num_lines(); ++m) add(q, line_diff(pl, 0, m));
        const auto baer = baer_subfield_subplane(pl);
        for (auto secant : baer.lines) add(q, baer_diff(pl, baer, secant));
    }
    {
        // Baer subplanes disjoint from the subfield one give subplane differences in PG(2,9).
        const Q q{3, 2};
        const auto& pl = plane(q);
        const auto baer = baer_subfield_subplane(pl);
        SubplaneSearchOptions so;
        so.limit = 8;
        so.excluded = baer.points;
        for (const auto& other : subplane_search(pl, 3, so).found) add(q, subplane_diff(pl, baer, other));
    }
    for (const auto& s : baer_samples())
        if (s.recipe == "baer-diff") out.push_back(s);

    for (Q q : {Q{2, 2}, Q{3, 2}, Q{5, 2}}) {
        const auto& pl = plane(q);
        auto dual = dual_basis(code_of_plane(pl, q.p));
        std::mt19937_64 rng(opts_.seed);
        for (std::uint32_t i = 0; i < opts_.random_words; ++i)
            out.push_back({q.q(), q.p, "random", random_codeword(dual, rng)});
    }
    return out;
}

SuiteRow Suite::analyzer() {
    SuiteRow row;
    row.limit_seconds = kAnalyzerLimit;
    std::map<std::string, std::uint32_t> by_recipe;
    std::uint32_t failures = 0, passes = 0;
    std::string first;
    for (const auto& s : analyzer_samples()) {
        auto a = analyze(s.word, plane(of_order(s.p, s.q)));
        ++by_recipe[fmt::format("{} q={}", s.recipe, s.q)];
        for (const auto& c : a.checks) {
            if (c.status == CheckStatus::Fail) {
                ++failures;
                if (first.empty()) first = fmt::format("{} q={} w={}: {} ({})", s.recipe, s.q, s.word.weight(), c.name, c.witness);
            } else if (c.status == CheckStatus::Pass) {
                ++passes;
            }
        }
    }
    row.pass = failures == 0;
    row.data = {{"words", by_recipe}, {"check_passes", passes}, {"check_failures", failures}};
    row.detail = row.pass ? fmt::format("{} words, {} checks passed, 0 failed", analyzer_samples().size(), passes)
                          : fmt::format("{} failures, first: {}", failures, first);
    return row;
}

SuiteRow Suite::weight_bound() {
    SuiteRow row;
    std::uint32_t checked = 0, zero = 0;
    std::vector<std::string> bad;
    std::map<std::uint32_t, std::uint32_t> min_weight;
    auto consider = [&](const Sample& s) {
        if (s.word.weight() == 0) {
            ++zero;
            return;
        }
        ++checked;
        // Integer form of the bound: w >= 2(q + 1) - 2q/p.
        const auto bound = 2 * (s.q + 1) - 2 * s.q / s.p;
        if (s.word.weight() < bound) bad.push_back(fmt::format("{} q={} w={} < {}", s.recipe, s.q, s.word.weight(), bound));
        auto [it, fresh] = min_weight.emplace(s.q, s.word.weight());
        if (!fresh) it->second = std::min(it->second, s.word.weight());
    };
    for (const auto& s : baer_samples()) consider(s);
    for (const auto& s : analyzer_samples()) consider(s);
    row.pass = bad.empty();
    nlohmann::json mins = nlohmann::json::object();
    for (auto [q, w] : min_weight) mins[std::to_string(q)] = w;
    row.data = {{"checked", checked}, {"zero_words_skipped", zero}, {"min_weight_by_q", mins}};
    row.detail = bad.empty() ? fmt::format("{} words checked", checked) : bad.front();
    return row;
}

nlohmann::json Suite::experiments() {
    // Outcomes here are recorded, not asserted.
    constexpr std::size_t kPairs = 64;
    nlohmann::json out = nlohmann::json::object();
    {
        // Pairs of disjoint Mobius-Kantor embeddings in PG(2,9).
        const auto& pl = plane({3, 2});
        const auto mk = validate_antipodal(cyclic_antipodal(2));
        auto first = embed_search(mk.base(), pl);
        SearchOptions so;
        so.forbidden_points = first.embeddings.at(0).point_map;
        so.budget = opts_.search_budget;
        so.cap = kPairs;
        so.threads = opts_.threads;
        auto second = embed_search(mk.base(), pl, so);
        std::uint32_t dual = 0;
        std::map<std::string, std::uint32_t> weights;
        for (const auto& e : second.embeddings) {
            auto w = antipodal_diff(pl, mk, first.embeddings[0], mk, e);
            dual += w.dual;
            ++weights[std::to_string(w.word.weight())];
        }
        out["order2_pairs_pg2_9"] = {{"search", to_string(second.status)}, {"pairs", second.embeddings.size()},
                                     {"dual", dual}, {"weights", weights}};
    }
    {
        // Pairs of disjoint Fano subplanes in the nearfield plane of order 9.
        const auto pl = nearfield_plane_9();
        SubplaneSearchOptions so;
        so.limit = 1;
        auto a = subplane_search(pl, 2, so);
        nlohmann::json e = {{"fano_found", !a.found.empty()}, {"bound", 2 * (9 + 1) - 2 * 9 / 3}};
        if (!a.found.empty()) {
            so.excluded = a.found[0].points;
            so.limit = kPairs;
            auto b = subplane_search(pl, 2, so);
            std::uint32_t dual = 0;
            std::map<std::string, std::uint32_t> weights;
            for (const auto& other : b.found) {
                auto w = subplane_diff(pl, a.found[0], other);
                dual += w.dual;
                ++weights[std::to_string(w.word.weight())];
            }
            e["pairs"] = b.found.size();
            e["dual"] = dual;
            e["weights"] = weights;
        }
        out["fano_pairs_nearfield_9"] = e;
    }
    return out;
}

}  // namespace

SuiteReport run_acceptance(const SuiteOptions& opts, const std::function<void(const SuiteRow&)>& on_row) {
    Suite suite(opts);
    SuiteReport report;
    const auto t_all = Clock::now();
    auto wanted = [&](const std::string& id) { return opts.only.empty() || opts.only.count(id); };
    struct Entry {
        std::string id, title;
        SuiteRow (Suite::*run)();
    };
    const Entry rows[] = {
        {"ingestion", "plane file ingestion validates the axioms", &Suite::ingestion},
        {"1", "dimension of C(2,q) from the GF(p) rank", &Suite::dimensions},
        {"2", "primal minimum weight n+1, attained only by multiples of lines", &Suite::primal_min_weight},
        {"3", "dual minimum weight for q = 2 and q = 4", &Suite::dual_min_weight_even},
        {"4", "dual minimum weight 2p for q = 3", &Suite::dual_min_weight_prime},
        {"5", "Baer differences of weight 15, 45, 91 are dual and pass the analyzer", &Suite::baer_witnesses},
        {"6", "Baer extraction recovers subplane and secant", &Suite::baer_round_trip},
        {"7", "embedding existence truth table", &Suite::truth_table},
        {"8", "Menelaos product -1 and Ceva product 1", &Suite::menelaos_ceva},
        {"9", "antipodal models validate; complement model matches the cyclic one", &Suite::antipodal_models},
        {"10", "analyzer checks on constructed and random dual words", &Suite::analyzer},
        {"11", "weight >= 2(q+1-q/p) for every nonzero word from rows 5 and 10", &Suite::weight_bound},
    };
    for (const auto& entry : rows) {
        if (!wanted(entry.id)) continue;
        const auto t0 = Clock::now();
        SuiteRow row;
        try {
            row = (suite.*entry.run)();
        } catch (const Error& e) {
            row = SuiteRow{};
            row.pass = false;
            row.detail = error_text(e);
        }
        row.id = entry.id;
        row.title = entry.title;
        row.seconds = since(t0);
        if (row.limit_seconds && row.seconds >= *row.limit_seconds) {
            row.pass = false;
            row.detail += fmt::format(" [over the {} s limit]", *row.limit_seconds);
        }
        report.passed = report.passed && row.pass;
        if (on_row) on_row(row);
        report.rows.push_back(std::move(row));
    }
    if (wanted("experiments")) {
        try {
            report.experiments = suite.experiments();
        } catch (const Error& e) {
            report.experiments = {{"error", error_text(e)}};
        }
    }
    report.seconds = since(t_all);
    return report;
}

std::string format_row(const SuiteRow& row) {
    const auto label = row.id == "ingestion" ? std::string("ingestion") : "criterion " + row.id;
    const auto timing = row.limit_seconds ? fmt::format("{:.2f} s, limit {:.0f} s", row.seconds, *row.limit_seconds)
                                          : fmt::format("{:.2f} s", row.seconds);
    return fmt::format("{:<13} {}  {}  ({})  {}", label, row.pass ? "PASS" : "FAIL", row.title, timing, row.detail);
}

nlohmann::json to_json(const SuiteRow& row) {
    nlohmann::json j = {{"id", row.id},           {"title", row.title},   {"pass", row.pass},
                        {"detail", row.detail},   {"seconds", row.seconds}, {"data", row.data}};
    if (row.limit_seconds) j["limit_seconds"] = *row.limit_seconds;
    return j;
}

nlohmann::json to_json(const SuiteReport& report) {
    auto rows = nlohmann::json::array();
    for (const auto& r : report.rows) rows.push_back(to_json(r));
    return {{"passed", report.passed}, {"seconds", report.seconds}, {"rows", rows}, {"experiments", report.experiments}};
}

}  // namespace planecode

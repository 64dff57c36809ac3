#include "planecode/analyze.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "planecode/construct.hpp"
#include "planecode/error.hpp"

namespace planecode {

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotApplicable: return "n/a";
    }
    return "?";
}

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::None: return "none";
        case Classification::Baer: return "baer";
        case Classification::Antipodal: return "antipodal";
        case Classification::TwoColourOther: return "two-colour-other";
        case Classification::MultiColour: return "multi-colour";
    }
    return "?";
}

// ---------------------------------------------------------------- colour graph

std::uint32_t ColourGraph::degree(std::uint32_t v) const {
    std::uint32_t d = 0;
    for (auto [a, b] : edges) d += (a == v) + (b == v && a != v);
    return d;
}

ColourGraph colour_graph(std::uint32_t p, const std::vector<std::uint32_t>& colours) {
    ColourGraph g;
    g.p = p;
    g.vertices = colours;
    std::sort(g.vertices.begin(), g.vertices.end());
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
    for (auto v : g.vertices)
        if (v == 0 || v >= p) throw Error(ErrorCode::InvalidArgument, fmt::format("colour {} outside 1..{}", v, p - 1));

    std::vector<std::uint32_t> parent(p);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto in_graph = [&](std::uint32_t v) { return std::binary_search(g.vertices.begin(), g.vertices.end(), v); };
    for (auto a : g.vertices)
        for (auto b : {p - a, p + 1 - a})
            if (b >= a && b < p && in_graph(b)) {
                g.edges.emplace_back(a, b);
                parent[find(a)] = find(b);
            }
    std::sort(g.edges.begin(), g.edges.end());
    std::map<std::uint32_t, std::vector<std::uint32_t>> comps;
    for (auto v : g.vertices) comps[find(v)].push_back(v);
    for (auto& [root, c] : comps) g.components.push_back(std::move(c));
    std::sort(g.components.begin(), g.components.end());
    return g;
}

ColourGraph colour_graph(std::uint32_t p) {
    std::vector<std::uint32_t> all(p - 1);
    std::iota(all.begin(), all.end(), 1u);
    return colour_graph(p, all);
}

// ---------------------------------------------------------------- analysis

const CheckResult& WordAnalysis::check(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw Error(ErrorCode::InvalidArgument, fmt::format("no check named {}", name));
}

bool WordAnalysis::any_failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
}

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a % p;
    for (auto e = p - 2; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return static_cast<std::uint32_t>(r);
}

std::vector<std::uint32_t> line_meets(const CodeWord& w, const Plane& plane) {
    std::vector<std::uint32_t> meet(plane.num_lines(), 0);
    for (auto pt : w.support())
        for (auto l : plane.lines_through(pt)) ++meet[l];
    return meet;
}

std::map<std::uint32_t, std::uint32_t> colour_sizes(const CodeWord& w) {
    std::map<std::uint32_t, std::uint32_t> sizes;
    for (auto pt : w.support()) ++sizes[w[pt]];
    return sizes;
}

std::uint32_t size_of(const std::map<std::uint32_t, std::uint32_t>& m, std::uint32_t colour) {
    auto it = m.find(colour);
    return it == m.end() ? 0 : it->second;
}

CheckResult pass(std::string name) { return {std::move(name), CheckStatus::Pass, {}}; }
CheckResult fail(std::string name, std::string why) { return {std::move(name), CheckStatus::Fail, std::move(why)}; }
CheckResult not_applicable(std::string name, std::string why) {
    return {std::move(name), CheckStatus::NotApplicable, std::move(why)};
}

const char* const kCheckNames[] = {
    "mu_sum_identity",
    "line_mu_divisible",
    "total_mu_divisible",
    "two_secant_lower_bound",
    "even_colour_count",
    "mu_difference_bound",
    "two_colour_size_gap",
    "secant_count_bounds",
    "two_secants_vs_opposite_colour",
    "opposite_class_at_bound",
    "two_secants_at_bound",
    "opposite_class_one_above_bound",
    "colour_graph_components",
};

class Checker {
public:
    Checker(const CodeWord& w, const Plane& plane, WordAnalysis& a, const std::vector<std::uint32_t>& meet)
        : w_(w), plane_(plane), a_(a), meet_(meet), p_(a.p) {}

    void run() {
        auto& out = a_.checks;
        out.push_back(mu_sum_identity());
        out.push_back(line_mu_divisible());
        out.push_back(total_mu_divisible());
        out.push_back(two_secant_lower_bound());
        out.push_back(even_colour_count());
        out.push_back(mu_difference_bound());
        out.push_back(two_colour_size_gap());
        out.push_back(secant_count_bounds());
        out.push_back(two_secants_vs_opposite_colour());
        out.push_back(opposite_class_at_bound());
        out.push_back(two_secants_at_bound());
        out.push_back(opposite_class_one_above_bound());
        out.push_back(colour_graph_components());
    }

private:
    std::int64_t eps() const { return a_.epsilon; }
    std::int64_t p() const { return p_; }
    bool square_order() const { return a_.order_is_p_squared; }

    CheckResult mu_sum_identity() {
        const char* n = "mu_sum_identity";
        if (a_.mu + a_.mu_neg == std::uint64_t(p_) * a_.weight) return pass(n);
        return fail(n, fmt::format("{} + {} != {} * {}", a_.mu, a_.mu_neg, p_, a_.weight));
    }

    CheckResult line_mu_divisible() {
        const char* n = "line_mu_divisible";
        for (std::uint32_t l = 0; l < plane_.num_lines(); ++l)
            if (const auto m = mu_on(w_, plane_.points_on(l)); m % p_)
                return fail(n, fmt::format("line {} has symbol sum {}", l, m));
        return pass(n);
    }

    CheckResult total_mu_divisible() {
        const char* n = "total_mu_divisible";
        if (a_.mu % p_ || a_.mu_neg % p_) return fail(n, fmt::format("sums {} and {}", a_.mu, a_.mu_neg));
        return pass(n);
    }

    CheckResult two_secant_lower_bound() {
        const char* n = "two_secant_lower_bound";
        if (!a_.in_band) return not_applicable(n, "needs order p^2 and 1 <= epsilon <= p-2");
        const auto bound = 2 * p() + 1 - eps();
        for (const auto& pr : a_.profiles)
            if (pr.x < bound) return fail(n, fmt::format("point {} lies on {} 2-secants, below {}", pr.point, pr.x, bound));
        return pass(n);
    }

    // Every point on a 2-secant forces the opposite colour to occur, so when
    // every class reaches a 2-secant the colours pair up as {c, p-c}.
    CheckResult even_colour_count() {
        const char* n = "even_colour_count";
        if (p_ == 2) return not_applicable(n, "p = 2");
        std::map<std::uint32_t, bool> reached;
        for (auto [c, size] : a_.colours) reached[c] = false;
        for (const auto& pr : a_.profiles)
            if (pr.x > 0) reached[w_[pr.point]] = true;
        for (auto [c, r] : reached)
            if (!r) return not_applicable(n, fmt::format("colour {} has no point on a 2-secant", c));
        for (auto [c, size] : a_.colours)
            if (!a_.colours.contains(p_ - c)) return fail(n, fmt::format("colour {} occurs but {} does not", c, p_ - c));
        if (a_.colours.size() % 2) return fail(n, fmt::format("{} colours", a_.colours.size()));
        return pass(n);
    }

    // Checked for every multiple that uses both 1 and p-1.
    CheckResult mu_difference_bound() {
        const char* n = "mu_difference_bound";
        if (!square_order()) return not_applicable(n, "needs order p^2");
        bool any = false;
        for (std::uint32_t s = 1; s < p_; ++s) {
            auto c = scale(w_, s);
            auto sizes = colour_sizes(c);
            if (!sizes.contains(1) || !sizes.contains(p_ - 1)) continue;
            any = true;
            const auto m = std::int64_t(mu(c)), mn = std::int64_t(mu(scale(c, -1)));
            if (std::abs(m - mn) > eps() * p())
                return fail(n, fmt::format("multiple {}: |{} - {}| > {}", s, m, mn, eps() * p()));
        }
        if (!any) return not_applicable(n, "no multiple uses both 1 and p-1");
        return pass(n);
    }

    CheckResult two_colour_size_gap() {
        const char* n = "two_colour_size_gap";
        if (!a_.in_band) return not_applicable(n, "needs order p^2 and 1 <= epsilon <= p-2");
        if (a_.colours.size() != 2) return not_applicable(n, "not exactly two colours");
        const auto lo = a_.colours.begin()->first, hi = a_.colours.rbegin()->first;
        if (lo + hi != p_) return not_applicable(n, "the two colours are not opposite");
        const auto a = a_.colours.begin()->second, b = a_.colours.rbegin()->second;
        const auto gap = a > b ? a - b : b - a;
        if (gap != 0 && gap != p_) return fail(n, fmt::format("class sizes {} and {}", a, b));
        if (gap == p_ && eps() != p() - 2) return fail(n, fmt::format("gap p with epsilon {}", eps()));
        return pass(n);
    }

    CheckResult secant_count_bounds() {
        const char* n = "secant_count_bounds";
        if (!square_order()) return not_applicable(n, "needs order p^2");
        if (a_.weight == 0) return not_applicable(n, "zero word");
        const auto q = p() * p();
        for (const auto& pr : a_.profiles) {
            const std::int64_t x = pr.x, y = pr.y, z = pr.z;
            if (2 * x + y < q + 2 * p() + 2 - eps())
                return fail(n, fmt::format("point {}: 2x+y = {}", pr.point, 2 * x + y));
            if (3 * x + 2 * y + z < 2 * q + 2 * p() + 3 - eps())
                return fail(n, fmt::format("point {}: 3x+2y+z = {}", pr.point, 3 * x + 2 * y + z));
            std::int64_t excess = 0;
            for (auto k : pr.meet_sizes)
                if (k >= 4) excess += k - 3;
            if (x != 2 * p() + 1 - eps() + excess)
                return fail(n, fmt::format("point {}: x = {} but the line count gives {}", pr.point, x,
                                           2 * p() + 1 - eps() + excess));
        }
        return pass(n);
    }

    CheckResult two_secants_vs_opposite_colour() {
        const char* n = "two_secants_vs_opposite_colour";
        if (a_.weight == 0) return not_applicable(n, "zero word");
        for (const auto& pr : a_.profiles) {
            const auto c = w_[pr.point];
            const auto opp = size_of(a_.colours, (p_ - c) % p_);
            if (pr.x > opp)
                return fail(n, fmt::format("point {} of colour {}: {} 2-secants, {} points of colour {}", pr.point, c,
                                           pr.x, opp, p_ - c));
        }
        return pass(n);
    }

    CheckResult opposite_class_at_bound() {
        const char* n = "opposite_class_at_bound";
        if (!a_.in_band) return not_applicable(n, "needs order p^2 and 1 <= epsilon <= p-2");
        const auto bound = 2 * p() + 1 - eps();
        bool any = false;
        for (const auto& pr : a_.profiles) {
            const auto c = w_[pr.point];
            if (size_of(a_.colours, p_ - c) != bound) continue;
            any = true;
            if (pr.x != bound) return fail(n, fmt::format("point {}: x = {}, expected {}", pr.point, pr.x, bound));
        }
        if (!any) return not_applicable(n, "no opposite class of size 2p+1-epsilon");
        return pass(n);
    }

    CheckResult two_secants_at_bound() {
        const char* n = "two_secants_at_bound";
        if (!a_.in_band) return not_applicable(n, "needs order p^2 and 1 <= epsilon <= p-2");
        const auto bound = 2 * p() + 1 - eps();
        bool any = false;
        for (const auto& pr : a_.profiles) {
            if (pr.x != bound) continue;
            any = true;
            const auto c = w_[pr.point];
            if (size_of(a_.colours, p_ - c) != bound)
                return fail(n, fmt::format("point {}: opposite class has {} points", pr.point, size_of(a_.colours, p_ - c)));
            if (!pr.meet_sizes.empty() && pr.meet_sizes.back() > 3)
                return fail(n, fmt::format("point {} lies on a {}-secant", pr.point, pr.meet_sizes.back()));
            std::vector<std::uint32_t> partners, opposite;
            for (auto l : plane_.lines_through(pr.point))
                if (meet_[l] == 2)
                    for (auto q : plane_.points_on(l))
                        if (q != pr.point && w_[q]) partners.push_back(q);
            for (auto q : w_.support())
                if (w_[q] == p_ - c) opposite.push_back(q);
            std::sort(partners.begin(), partners.end());
            if (partners != opposite)
                return fail(n, fmt::format("point {}: 2-secant partners differ from colour {}", pr.point, p_ - c));
        }
        if (!any) return not_applicable(n, "no point with x = 2p+1-epsilon");
        return pass(n);
    }

    CheckResult opposite_class_one_above_bound() {
        const char* n = "opposite_class_one_above_bound";
        if (!a_.in_band) return not_applicable(n, "needs order p^2 and 1 <= epsilon <= p-2");
        const auto target = 2 * p() + 2 - eps();
        bool any = false;
        for (const auto& pr : a_.profiles) {
            const auto c = w_[pr.point];
            if (size_of(a_.colours, p_ - c) != target) continue;
            any = true;
            const auto big = pr.meet_sizes.empty() ? 0 : pr.meet_sizes.back();
            if (pr.x != target || pr.y != p() * p() - 2 * p() - 2 + eps() || pr.z != 1 || big > 4)
                return fail(n, fmt::format("point {}: (x,y,z) = ({},{},{})", pr.point, pr.x, pr.y, pr.z));
        }
        if (!any) return not_applicable(n, "no opposite class of size 2p+2-epsilon");
        return pass(n);
    }

    CheckResult colour_graph_components() {
        const char* n = "colour_graph_components";
        if (p_ == 2 || !square_order() || (eps() != 1 && eps() != 2))
            return not_applicable(n, "needs p odd, order p^2 and epsilon in {1,2}");
        const auto& g = a_.graph;
        if (g.components.size() > 2) return fail(n, fmt::format("{} components", g.components.size()));
        if (g.components.size() == 2) {
            const auto mid = (p_ + 1) / 2;
            if (!std::binary_search(g.vertices.begin(), g.vertices.end(), mid))
                return fail(n, fmt::format("two components without colour {}", mid));
            if (p_ >= 7 && 6 * g.vertices.size() / 2 >= p_)
                return fail(n, fmt::format("two components with {} colour pairs", g.vertices.size() / 2));
        }
        return pass(n);
    }

    const CodeWord& w_;
    const Plane& plane_;
    WordAnalysis& a_;
    const std::vector<std::uint32_t>& meet_;
    std::uint32_t p_;
};

void require_dual(const CodeWord& w, const Plane& plane) {
    if (auto d = is_dual_word(w, plane); !d.dual)
        throw Error(ErrorCode::NotDualWord, fmt::format("nonzero dot product with line {}", *d.witness_line));
}

}  // namespace

std::uint32_t canonical_scale(const CodeWord& w, const Plane& plane) {
    if (w.weight() == 0) return 1;
    const auto p = w.p();
    const auto meet = line_meets(w, plane);
    std::uint32_t best_x = ~0u;
    std::vector<std::uint32_t> minimal;
    for (auto pt : w.support()) {
        std::uint32_t x = 0;
        for (auto l : plane.lines_through(pt)) x += meet[l] == 2;
        if (x < best_x) {
            best_x = x;
            minimal.clear();
        }
        if (x == best_x) minimal.push_back(pt);
    }
    std::uint32_t best_scale = 0;
    std::optional<CodeWord> best;
    for (auto q : minimal) {
        const auto s = static_cast<std::uint32_t>(std::uint64_t(p - 1) * inverse_mod(w[q], p) % p);
        if (s == best_scale) continue;
        auto c = scale(w, s);
        if (!best || c.values() < best->values()) {
            best = std::move(c);
            best_scale = s;
        }
    }
    return best_scale;
}

WordAnalysis analyze(const CodeWord& w, const Plane& plane, bool allow_non_dual) {
    WordAnalysis a;
    a.p = w.p();
    a.plane_order = plane.order();
    const auto dual = is_dual_word(w, plane);  // throws LengthMismatch
    a.dual = dual.dual;
    if (!a.dual && !allow_non_dual)
        throw Error(ErrorCode::NotDualWord, fmt::format("nonzero dot product with line {}", *dual.witness_line));
    const std::int64_t p = a.p;
    a.order_is_p_squared = std::int64_t(plane.order()) == p * p;
    a.weight = w.weight();
    a.epsilon = std::int64_t(a.weight) - (2 * p * p - 2 * p + 2);
    a.in_band = a.order_is_p_squared && a.epsilon >= 1 && a.epsilon <= p - 2;
    a.colours = colour_sizes(w);

    const auto meet = line_meets(w, plane);
    for (auto k : meet) a.tangents += k == 1;
    for (auto pt : w.support()) {
        SecantProfile pr;
        pr.point = pt;
        for (auto l : plane.lines_through(pt)) pr.meet_sizes.push_back(meet[l]);
        std::sort(pr.meet_sizes.begin(), pr.meet_sizes.end());
        for (auto k : pr.meet_sizes) {
            pr.x += k == 2;
            pr.y += k == 3;
            pr.z += k == 4;
        }
        a.profiles.push_back(std::move(pr));
    }
    a.mu = mu(w);
    a.mu_neg = mu(scale(w, -1));

    a.canonical_scale = canonical_scale(w, plane);
    a.canonical_colours = colour_sizes(scale(w, a.canonical_scale));
    std::vector<std::uint32_t> used;
    for (auto [c, size] : a.canonical_colours) used.push_back(c);
    a.graph = colour_graph(a.p, used);

    if (!a.dual || a.weight == 0) {
        const char* why = a.weight == 0 ? "zero word" : "word is not dual";
        for (const auto* name : kCheckNames) a.checks.push_back(not_applicable(name, why));
    } else {
        Checker(w, plane, a, meet).run();
    }

    if (a.colours.size() > 2) {
        a.classification = Classification::MultiColour;
    } else if (a.colours.size() == 2) {
        auto s1 = a.colours.begin()->second, s2 = a.colours.rbegin()->second;
        if (s1 > s2) std::swap(s1, s2);
        const std::int64_t lo = s1, hi = s2;
        if (a.order_is_p_squared && a.weight == 2 * p * p - p && lo == p * p - p && hi == p * p)
            a.classification = Classification::Baer;
        else if (lo == hi && lo == p * p - p + 2)
            a.classification = Classification::Antipodal;
        else
            a.classification = Classification::TwoColourOther;
    }
    return a;
}

// ---------------------------------------------------------------- extraction

namespace {

[[noreturn]] void mismatch(const std::string& step) { throw Error(ErrorCode::StructureMismatch, step); }

std::array<std::uint32_t, 2> two_opposite_colours(const CodeWord& w) {
    const auto sizes = colour_sizes(w);
    if (sizes.size() != 2) mismatch(fmt::format("two colours: the word uses {}", sizes.size()));
    const auto a = sizes.begin()->first, b = sizes.rbegin()->first;
    if (a + b != w.p()) mismatch(fmt::format("opposite colours: {} and {} do not sum to {}", a, b, w.p()));
    return {a, b};
}

std::vector<std::uint32_t> class_of(const CodeWord& w, std::uint32_t colour) {
    std::vector<std::uint32_t> pts;
    for (auto pt : w.support())
        if (w[pt] == colour) pts.push_back(pt);
    return pts;
}

}  // namespace

BaerExtraction extract_baer(const CodeWord& w, const Plane& plane, bool allow_non_dual) {
    if (!allow_non_dual) require_dual(w, plane);
    const std::uint32_t p = w.p();
    if (plane.order() != p * p) mismatch(fmt::format("plane order: {} is not {}^2", plane.order(), p));
    const auto colours = two_opposite_colours(w);
    auto first = class_of(w, colours[0]), second = class_of(w, colours[1]);
    if (first.size() < second.size()) std::swap(first, second);
    const auto& big = first;
    const auto& small = second;
    if (big.size() != p * p || small.size() != p * p - p)
        mismatch(fmt::format("class sizes: {} and {}, expected {} and {}", big.size(), small.size(), p * p, p * p - p));

    const auto secant = plane.line_through(small[0], small[1]);
    for (auto pt : small)
        if (!plane.incident(pt, secant)) mismatch(fmt::format("smaller class on one line: point {} is off line {}", pt, secant));
    for (auto pt : big)
        if (plane.incident(pt, secant)) mismatch(fmt::format("line {} avoids the larger class: contains point {}", secant, pt));

    std::vector<std::uint32_t> subplane_points = big;
    for (auto pt : plane.points_on(secant))
        if (w[pt] == 0) subplane_points.push_back(pt);
    std::sort(subplane_points.begin(), subplane_points.end());
    std::string reason;
    auto sub = induced_subplane(plane, subplane_points, &reason);
    if (!sub) mismatch("subplane: " + reason);
    if (sub->order != p) mismatch(fmt::format("subplane order: {} instead of {}", sub->order, p));

    const auto rebuilt = baer_diff(plane, *sub, secant);
    if (rebuilt.word != normalized(w)) mismatch("rebuilt word differs from the input");
    return {std::move(*sub), secant};
}

AntipodalExtraction extract_antipodal(const CodeWord& w, const Plane& plane, bool allow_non_dual) {
    if (!allow_non_dual) require_dual(w, plane);
    const std::uint32_t p = w.p();
    const auto colours = two_opposite_colours(w);
    AntipodalExtraction out;
    out.colours = colours;
    for (int i = 0; i < 2; ++i) {
        const auto pts = class_of(w, colours[i]);
        if (pts.size() != p * p - p + 2)
            mismatch(fmt::format("class size: colour {} has {} points, expected {}", colours[i], pts.size(), p * p - p + 2));
        try {
            out.parts[i] = induced_structure(plane, pts, p);
            const auto ap = validate_antipodal(out.parts[i].pls);
            if (ap.order() + 1 != p)
                mismatch(fmt::format("antipodal order: colour {} gives order {}", colours[i], ap.order()));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::StructureMismatch) throw;
            mismatch(fmt::format("colour {}: {}", colours[i], e.what()));
        }
    }
    return out;
}

}  // namespace planecode

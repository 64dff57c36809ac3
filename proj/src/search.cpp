#include "planecode/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "planecode/error.hpp"

namespace planecode {

std::string_view to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::ExhaustedNone: return "exhausted-none";
        case SearchStatus::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

EmbeddingCheck verify_embedding(const PartialLinearSpace& pls, const Plane& plane, const Embedding& e) {
    auto bad = [](std::string msg) { return EmbeddingCheck{false, std::move(msg)}; };
    if (e.point_map.size() != pls.num_points())
        return bad(fmt::format("point map has {} entries for {} points", e.point_map.size(), pls.num_points()));
    if (e.line_map.size() != pls.num_lines())
        return bad(fmt::format("line map has {} entries for {} lines", e.line_map.size(), pls.num_lines()));
    std::vector<std::int32_t> seen_pt(plane.num_points(), -1), seen_ln(plane.num_lines(), -1);
    for (std::uint32_t p = 0; p < pls.num_points(); ++p) {
        const auto img = e.point_map[p];
        if (img >= plane.num_points()) return bad(fmt::format("point {} maps outside the plane", p));
        if (seen_pt[img] >= 0) return bad(fmt::format("points {} and {} both map to {}", seen_pt[img], p, img));
        seen_pt[img] = std::int32_t(p);
    }
    for (std::uint32_t l = 0; l < pls.num_lines(); ++l) {
        const auto img = e.line_map[l];
        if (img >= plane.num_lines()) return bad(fmt::format("line {} maps outside the plane", l));
        if (seen_ln[img] >= 0) return bad(fmt::format("lines {} and {} both map to {}", seen_ln[img], l, img));
        seen_ln[img] = std::int32_t(l);
    }
    for (std::uint32_t p = 0; p < pls.num_points(); ++p)
        for (std::uint32_t l = 0; l < pls.num_lines(); ++l) {
            const bool inc = pls.incident(p, l);
            if (inc != plane.incident(e.point_map[p], e.line_map[l]))
                return bad(fmt::format("{} lost: point {} and line {}", inc ? "incidence" : "non-incidence", p, l));
        }
    return {};
}

// ---------------------------------------------------------------- planning

bool is_frame_seed(const PartialLinearSpace& pls, const std::array<std::uint32_t, 4>& seed) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (seed[i] == seed[j]) return false;
    static constexpr int kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& t : kTriples) {
        bool pinned = false;
        for (int a = 0; a < 3 && !pinned; ++a) {
            const auto u = seed[t[a]], v = seed[t[(a + 1) % 3]], w = seed[t[(a + 2) % 3]];
            const auto l = pls.line_through(u, v);
            pinned = l && !pls.incident(w, *l);
        }
        if (!pinned) return false;
    }
    return true;
}

std::vector<std::uint32_t> placement_order(const PartialLinearSpace& pls, std::vector<std::uint32_t> prefix) {
    const auto n = pls.num_points();
    std::vector<char> placed(n, 0);
    std::vector<std::uint32_t> on_line(pls.num_lines(), 0);
    auto place = [&](std::uint32_t x) {
        placed[x] = 1;
        for (auto l : pls.lines_through(x)) ++on_line[l];
    };
    for (auto x : prefix) place(x);
    while (prefix.size() < n) {
        std::int64_t best = -1;
        std::uint32_t pick = 0;
        for (std::uint32_t x = 0; x < n; ++x) {
            if (placed[x]) continue;
            std::int64_t forced = 0, touched = 0;
            for (auto l : pls.lines_through(x)) {
                forced += on_line[l] >= 2;
                touched += on_line[l] >= 1;
            }
            const std::int64_t key = forced * 1024 + touched;
            if (key > best) {
                best = key;
                pick = x;
            }
        }
        prefix.push_back(pick);
        place(pick);
    }
    return prefix;
}

FramePlan normalize_frame(const PartialLinearSpace& pls) {
    const auto n = pls.num_points();
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c)
                for (std::uint32_t d = c + 1; d < n; ++d)
                    if (is_frame_seed(pls, {a, b, c, d})) return {{a, b, c, d}, placement_order(pls, {a, b, c, d})};
    throw Error(ErrorCode::NoQuadrangle, "no four points are forced onto a frame");
}

// ---------------------------------------------------------------- search

namespace {

struct Shared {
    std::uint64_t budget;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exceeded{false};
};

class Searcher {
public:
    Searcher(const PartialLinearSpace& pls, const Plane& plane, const SearchOptions& opts, Shared& shared,
             std::vector<std::uint32_t> order, std::vector<std::int32_t> fixed)
        : pls_(pls), plane_(plane), opts_(opts), shared_(shared), order_(std::move(order)), fixed_(std::move(fixed)),
          pmap_(pls.num_points(), -1), inv_(plane.num_points(), -1), lmap_(pls.num_lines(), -1),
          owner_(plane.num_lines(), -1), count_(pls.num_lines(), 0), forbidden_(plane.num_points(), 0) {
        for (auto p : opts.forbidden_points) forbidden_.at(p) = 1;
    }

    SearchStats stats;
    std::vector<Embedding> found;

    bool budget_hit() const { return shared_.exceeded.load(std::memory_order_relaxed); }

    // Tries to map pls point x to plane point y; on failure the state is unchanged.
    bool assign(std::uint32_t x, std::uint32_t y) {
        if (shared_.nodes.fetch_add(1, std::memory_order_relaxed) >= shared_.budget) {
            shared_.exceeded = true;
            return false;
        }
        ++stats.nodes;
        if (inv_[y] >= 0) return ++stats.prune_point_injective, false;
        if (forbidden_[y]) return ++stats.prune_forbidden, false;
        for (auto l : pls_.lines_through(x))
            if (lmap_[l] >= 0 && !plane_.incident(y, std::uint32_t(lmap_[l]))) return ++stats.prune_incidence, false;
        for (auto m : plane_.lines_through(y))
            if (owner_[m] >= 0 && !pls_.incident(x, std::uint32_t(owner_[m]))) return ++stats.prune_non_incidence, false;

        const auto mark = log_.size();
        pmap_[x] = std::int32_t(y);
        inv_[y] = std::int32_t(x);
        log_.push_back({Undo::Point, x});
        for (auto l : pls_.lines_through(x)) {
            if (lmap_[l] >= 0 || count_[l] == 0) continue;
            std::uint32_t u = 0;
            for (auto pt : pls_.points_on(l))
                if (pt != x && pmap_[pt] >= 0) u = pt;
            const auto m = plane_.line_through(y, std::uint32_t(pmap_[u]));
            if (owner_[m] >= 0) {
                ++stats.prune_line_injective;
                rollback(mark);
                return false;
            }
            for (auto z : plane_.points_on(m))
                if (inv_[z] >= 0 && !pls_.incident(std::uint32_t(inv_[z]), l)) {
                    ++stats.prune_non_incidence;
                    rollback(mark);
                    return false;
                }
            lmap_[l] = std::int32_t(m);
            owner_[m] = std::int32_t(l);
            log_.push_back({Undo::Line, l});
        }
        for (auto l : pls_.lines_through(x)) ++count_[l];
        log_.push_back({Undo::Count, x});
        return true;
    }

    void rollback(std::size_t mark) {
        while (log_.size() > mark) {
            const auto [kind, id] = log_.back();
            log_.pop_back();
            switch (kind) {
                case Undo::Point:
                    inv_[std::uint32_t(pmap_[id])] = -1;
                    pmap_[id] = -1;
                    break;
                case Undo::Line:
                    owner_[std::uint32_t(lmap_[id])] = -1;
                    lmap_[id] = -1;
                    break;
                case Undo::Count:
                    for (auto l : pls_.lines_through(id)) --count_[l];
                    break;
            }
        }
    }

    std::size_t mark() const { return log_.size(); }

    std::vector<std::uint32_t> candidates(std::size_t depth) const {
        const auto x = order_[depth];
        if (fixed_[depth] >= 0) return {std::uint32_t(fixed_[depth])};
        std::vector<std::int32_t> det;
        for (auto l : pls_.lines_through(x))
            if (lmap_[l] >= 0) det.push_back(lmap_[l]);
        if (det.size() >= 2) {
            if (det[0] == det[1]) return {};
            return {plane_.meet(std::uint32_t(det[0]), std::uint32_t(det[1]))};
        }
        if (det.size() == 1) {
            auto pts = plane_.points_on(std::uint32_t(det[0]));
            return {pts.begin(), pts.end()};
        }
        std::vector<std::uint32_t> all(plane_.num_points());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }

    // Depth-first from `depth`; returns false once enough embeddings are found or the budget is hit.
    bool dfs(std::size_t depth) {
        if (depth == order_.size()) {
            Embedding e{std::vector<std::uint32_t>(pmap_.begin(), pmap_.end()),
                        std::vector<std::uint32_t>(lmap_.begin(), lmap_.end())};
            if (!verify_embedding(pls_, plane_, e).ok) {
                ++stats.leaf_rejects;
                return true;
            }
            found.push_back(std::move(e));
            return found.size() < opts_.cap;
        }
        const auto x = order_[depth];
        for (auto y : candidates(depth)) {
            const auto m = mark();
            if (!assign(x, y)) {
                if (budget_hit()) return false;
                continue;
            }
            const bool go_on = dfs(depth + 1);
            rollback(m);
            if (!go_on) return false;
        }
        return true;
    }

    std::size_t depth_count() const { return order_.size(); }
    bool is_fixed(std::size_t depth) const { return fixed_[depth] >= 0; }
    std::uint32_t point_at(std::size_t depth) const { return order_[depth]; }

private:
    enum class Undo { Point, Line, Count };
    struct Entry {
        Undo kind;
        std::uint32_t id;
    };

    const PartialLinearSpace& pls_;
    const Plane& plane_;
    const SearchOptions& opts_;
    Shared& shared_;
    std::vector<std::uint32_t> order_;
    std::vector<std::int32_t> fixed_;
    std::vector<std::int32_t> pmap_, inv_, lmap_, owner_;
    std::vector<std::uint32_t> count_;
    std::vector<char> forbidden_;
    std::vector<Entry> log_;
};

void add_stats(SearchStats& a, const SearchStats& b) {
    a.nodes += b.nodes;
    a.prune_point_injective += b.prune_point_injective;
    a.prune_forbidden += b.prune_forbidden;
    a.prune_incidence += b.prune_incidence;
    a.prune_non_incidence += b.prune_non_incidence;
    a.prune_line_injective += b.prune_line_injective;
    a.leaf_rejects += b.leaf_rejects;
}

}  // namespace

SearchOutcome embed_search(const PartialLinearSpace& pls, const Plane& plane, const SearchOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SearchOutcome out;
    if (opts.cap == 0) throw Error(ErrorCode::InvalidArgument, "cap must be positive");
    for (auto p : opts.forbidden_points)
        if (p >= plane.num_points()) throw Error(ErrorCode::InvalidArgument, fmt::format("forbidden point {} out of range", p));

    std::vector<std::uint32_t> order;
    std::vector<std::int32_t> fixed(pls.num_points(), -1);
    if (opts.normalize && plane.generated() && opts.forbidden_points.empty()) {
        try {
            auto plan = normalize_frame(pls);
            const auto& f = plane.field();
            const auto o = f.zero(), i = f.one();
            const std::array<std::array<FieldElement, 3>, 4> frame = {{{i, o, o}, {o, i, o}, {o, o, i}, {i, i, i}}};
            for (int k = 0; k < 4; ++k) fixed[k] = std::int32_t(plane.point_index(HomogeneousPoint{frame[k]}));
            order = std::move(plan.order);
            out.normalized = true;
            out.seed = plan.seed;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoQuadrangle) throw;
        }
    }
    if (!out.normalized) order = placement_order(pls, {});

    Shared shared{opts.budget};
    Searcher root(pls, plane, opts, shared, order, fixed);
    bool alive = true;
    std::size_t depth = 0;
    // Fixed placements and the first branching level run on the root state.
    while (depth < root.depth_count() && root.is_fixed(depth)) {
        if (!root.assign(root.point_at(depth), root.candidates(depth).front())) {
            alive = false;
            break;
        }
        ++depth;
    }

    std::vector<Embedding> merged;
    if (alive && depth == root.depth_count()) {
        root.dfs(depth);
        merged = root.found;
    } else if (alive) {
        const auto first = root.candidates(depth);
        std::vector<SearchStats> shard_stats(first.size());
        std::vector<std::vector<Embedding>> shard_found(first.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k; (k = next.fetch_add(1)) < first.size();) {
                if (shared.exceeded) break;
                Searcher s = root;
                s.stats = {};
                if (s.assign(s.point_at(depth), first[k])) s.dfs(depth + 1);
                shard_stats[k] = s.stats;
                shard_found[k] = std::move(s.found);
            }
        };
        const unsigned n = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(first.size())));
        if (n == 1) {
            // Sequential: stop as soon as the cap is reached in candidate order.
            std::size_t total = 0;
            for (std::size_t k = 0; k < first.size() && total < opts.cap && !shared.exceeded; ++k) {
                Searcher s = root;
                s.stats = {};
                if (s.assign(s.point_at(depth), first[k])) s.dfs(depth + 1);
                shard_stats[k] = s.stats;
                total += s.found.size();
                shard_found[k] = std::move(s.found);
            }
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        for (std::size_t k = 0; k < first.size(); ++k) {
            add_stats(root.stats, shard_stats[k]);
            for (auto& e : shard_found[k])
                if (merged.size() < opts.cap) merged.push_back(std::move(e));
        }
    }

    out.stats = root.stats;
    out.embeddings = std::move(merged);
    for (const auto& e : out.embeddings)
        if (!verify_embedding(pls, plane, e).ok) throw Error(ErrorCode::Precondition, "search produced an invalid embedding");
    if (!out.embeddings.empty())
        out.status = SearchStatus::Found;
    else if (shared.exceeded)
        out.status = SearchStatus::BudgetExceeded;
    else
        out.status = SearchStatus::ExhaustedNone;
    out.complete = !shared.exceeded && out.embeddings.size() < opts.cap;
    out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ---------------------------------------------------------------- slope certificate

namespace {

using Mat3 = std::array<std::array<FieldElement, 3>, 3>;

// Inverse of the matrix whose columns are the given points.
Mat3 inverse_of_columns(const Field& f, const std::array<std::array<FieldElement, 3>, 3>& cols) {
    Mat3 m{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[r][c] = cols[c][r];
    auto minor = [&](int r0, int r1, int c0, int c1) {
        return f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
    };
    const auto det = f.add(f.sub(f.mul(m[0][0], minor(1, 2, 1, 2)), f.mul(m[0][1], minor(1, 2, 0, 2))),
                           f.mul(m[0][2], minor(1, 2, 0, 1)));
    if (det == f.zero()) throw Error(ErrorCode::Precondition, "triangle vertices are collinear in the plane");
    const auto inv = f.inv(det);
    Mat3 adj{};
    // adj[c][r] = cofactor(r, c)
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const int r0 = r == 0 ? 1 : 0, r1 = r == 2 ? 1 : 2;
            const int c0 = c == 0 ? 1 : 0, c1 = c == 2 ? 1 : 2;
            auto cof = minor(r0, r1, c0, c1);
            if ((r + c) % 2) cof = f.neg(cof);
            adj[c][r] = f.mul(cof, inv);
        }
    return adj;
}

std::array<FieldElement, 3> apply(const Field& f, const Mat3& m, const std::array<FieldElement, 3>& x) {
    std::array<FieldElement, 3> y{};
    for (int r = 0; r < 3; ++r) y[r] = f.add(f.add(f.mul(m[r][0], x[0]), f.mul(m[r][1], x[1])), f.mul(m[r][2], x[2]));
    return y;
}

bool triangle_with_pls_sides(const PartialLinearSpace& s, const std::array<std::uint32_t, 3>& t) {
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) return false;
    for (auto v : t)
        if (v >= s.num_points()) return false;
    auto a = s.line_through(t[0], t[1]), b = s.line_through(t[0], t[2]), c = s.line_through(t[1], t[2]);
    return a && b && c && *a != *b;
}

}  // namespace

SlopeCertificate slope_certificate(const AntipodalPlane& ap, const Plane& plane, const Embedding& e,
                                   std::optional<std::array<std::uint32_t, 3>> triangle,
                                   std::optional<std::uint32_t> line) {
    const auto& s = ap.base();
    const Field& f = plane.field();
    if (auto chk = verify_embedding(s, plane, e); !chk.ok) throw Error(ErrorCode::NotVerifiedEmbedding, chk.violation);

    SlopeCertificate cert;
    if (triangle) {
        if (!triangle_with_pls_sides(s, *triangle))
            throw Error(ErrorCode::Precondition, "triangle sides must be three distinct lines of the structure");
        cert.triangle = *triangle;
    } else if (ap.order() >= 3) {
        cert.triangle = find_good_triangle(ap);
    } else {
        bool got = false;
        const auto n = s.num_points();
        for (std::uint32_t a = 0; a < n && !got; ++a)
            for (std::uint32_t b = a + 1; b < n && !got; ++b)
                for (std::uint32_t c = b + 1; c < n && !got; ++c)
                    if (triangle_with_pls_sides(s, {a, b, c})) {
                        cert.triangle = {a, b, c};
                        got = true;
                    }
        if (!got) throw Error(ErrorCode::NotFound, "no triangle with sides in the structure");
    }
    const auto& tri = cert.triangle;

    std::array<std::array<FieldElement, 3>, 3> cols{};
    for (int i = 0; i < 3; ++i) cols[i] = plane.point_coords(e.point_map[tri[i]]).x;
    const auto to_std = inverse_of_columns(f, cols);
    auto coords = [&](std::uint32_t pls_point) { return apply(f, to_std, plane.point_coords(e.point_map[pls_point]).x); };

    std::array<std::uint32_t, 3> sides{};  // side opposite A_i
    for (int i = 0; i < 3; ++i) sides[i] = *s.line_through(tri[(i + 1) % 3], tri[(i + 2) % 3]);

    // T_i over the s-1 structure lines through A_i that are not sides.
    cert.product = f.one();
    for (int i = 0; i < 3; ++i) {
        FieldElement t = f.one();
        for (auto l : s.lines_through(tri[i])) {
            if (l == sides[(i + 1) % 3] || l == sides[(i + 2) % 3]) continue;
            std::uint32_t other = 0;
            for (auto pt : s.points_on(l))
                if (pt != tri[i]) {
                    other = pt;
                    break;
                }
            t = f.mul(t, slope_to_point(f, static_cast<Vertex>(i), coords(other)));
        }
        cert.t[i] = t;
        cert.product = f.mul(cert.product, t);
    }

    std::vector<std::uint32_t> k_set;
    for (auto v : tri) {
        k_set.push_back(v);
        k_set.push_back(ap.perp_point(v));
    }
    auto avoids = [&](std::uint32_t l, std::span<const std::uint32_t> pts) {
        for (auto p : pts)
            if (s.incident(p, l)) return false;
        return true;
    };
    if (line) {
        if (*line >= s.num_lines()) throw Error(ErrorCode::Precondition, fmt::format("line {} out of range", *line));
        if (!avoids(*line, k_set))
            throw Error(ErrorCode::Precondition, fmt::format("line {} meets the triangle or an antipode of a vertex", *line));
        cert.line = *line;
    } else {
        for (std::uint32_t l = 0; l < s.num_lines() && !cert.line; ++l)
            if (avoids(l, k_set)) cert.line = l;
    }
    if (cert.line) {
        FieldElement prod = f.one();
        for (int i = 0; i < 3; ++i) {
            std::optional<std::uint32_t> b;
            for (auto p : s.points_on(*cert.line))
                if (s.incident(p, sides[i])) b = p;
            if (!b) throw Error(ErrorCode::Precondition, "line misses a side inside the structure");
            prod = f.mul(prod, slope_to_point(f, static_cast<Vertex>(i), coords(*b)));
        }
        cert.transversal_product = prod;
    }

    const auto a1perp = ap.perp_point(tri[0]);
    const std::array<std::uint32_t, 4> avoid2 = {tri[1], tri[2], ap.perp_point(tri[1]), ap.perp_point(tri[2])};
    for (auto l : s.lines_through(a1perp))
        if (avoids(l, avoid2)) {
            cert.second_line = l;
            break;
        }
    if (cert.second_line) {
        const auto mperp = ap.perp_line(*cert.second_line);
        std::uint32_t other = 0;
        for (auto pt : s.points_on(mperp))
            if (pt != tri[0]) {
                other = pt;
                break;
            }
        try {
            cert.xi = slope_to_point(f, Vertex::A1, coords(other));
            cert.antipode_slope = slope_to_point(f, Vertex::A1, coords(a1perp));
        } catch (const Error&) {
            cert.xi.reset();
            cert.antipode_slope.reset();
        }
    }
    return cert;
}

}  // namespace planecode

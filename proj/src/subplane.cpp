#include <algorithm>
#include <unordered_map>

#include "planecode/error.hpp"
#include "planecode/geometry.hpp"

namespace planecode {

namespace {

// Join/meet closure of a point set, abandoned as soon as it grows past the
// target size or touches an excluded point.
class Closure {
public:
    Closure(const Plane& plane, std::uint32_t target, const std::vector<char>& excluded)
        : plane_(plane), target_(target), excluded_(excluded), in_pt_(plane.num_points(), 0),
          in_ln_(plane.num_lines(), 0) {}

    // Returns the sorted closed point set, or nullopt when abandoned.
    std::optional<std::vector<std::uint32_t>> run(std::span<const std::uint32_t> seed) {
        for (auto pt : pts_) in_pt_[pt] = 0;
        for (auto ln : lns_) in_ln_[ln] = 0;
        pts_.clear();
        lns_.clear();
        for (auto pt : seed)
            if (!add_point(pt)) return std::nullopt;
        std::size_t done_pts = 0, done_lns = 0;
        while (done_pts < pts_.size() || done_lns < lns_.size()) {
            while (done_pts < pts_.size()) {
                const auto x = pts_[done_pts];
                for (std::size_t j = 0; j < done_pts; ++j)
                    if (!add_line(plane_.line_through(x, pts_[j]))) return std::nullopt;
                ++done_pts;
            }
            while (done_lns < lns_.size()) {
                const auto l = lns_[done_lns];
                for (std::size_t j = 0; j < done_lns; ++j)
                    if (!add_point(plane_.meet(l, lns_[j]))) return std::nullopt;
                ++done_lns;
            }
        }
        std::vector<std::uint32_t> out = pts_;
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    bool add_point(std::uint32_t pt) {
        if (in_pt_[pt]) return true;
        if (excluded_[pt]) return false;
        in_pt_[pt] = 1;
        pts_.push_back(pt);
        return pts_.size() <= target_;
    }
    bool add_line(std::uint32_t ln) {
        if (in_ln_[ln]) return true;
        in_ln_[ln] = 1;
        lns_.push_back(ln);
        return lns_.size() <= target_;
    }

    const Plane& plane_;
    std::uint32_t target_;
    const std::vector<char>& excluded_;
    std::vector<char> in_pt_, in_ln_;
    std::vector<std::uint32_t> pts_, lns_;
};

struct SearchState {
    SearchState(const Plane& pl, std::uint32_t order, const SubplaneSearchOptions& o, std::vector<char> excl)
        : plane(pl), m(order), target(order * order + order + 1), opts(o), excluded(std::move(excl)),
          closure(pl, target, excluded) {}

    const Plane& plane;
    std::uint32_t m;
    std::uint32_t target;
    const SubplaneSearchOptions& opts;
    std::vector<char> excluded;
    Closure closure;
    SubplaneSearchOutcome out;
    std::vector<std::vector<std::uint32_t>> found_sets;
    // Found sets indexed by each point pair they contain.
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_pair;

    static std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return (std::uint64_t(a) << 32) | b;
    }

    bool stop() const { return out.budget_exceeded || out.found.size() >= opts.limit; }

    bool covered(std::span<const std::uint32_t> pts) const {
        auto it = by_pair.find(pair_key(pts[0], pts[1]));
        if (it == by_pair.end()) return false;
        for (auto id : it->second) {
            const auto& s = found_sets[id];
            bool all = true;
            for (auto pt : pts.subspan(2)) all = all && std::binary_search(s.begin(), s.end(), pt);
            if (all) return true;
        }
        return false;
    }

    void record(std::vector<std::uint32_t> pts) {
        if (covered(pts)) return;
        auto sub = induced_subplane(plane, pts);
        if (!sub || sub->order != m) return;
        const auto id = static_cast<std::uint32_t>(found_sets.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) by_pair[pair_key(pts[i], pts[j])].push_back(id);
        found_sets.push_back(std::move(pts));
        out.found.push_back(std::move(*sub));
    }

    // Closed set S with |S| < target: add one more point and close again.
    void extend(const std::vector<std::uint32_t>& closed) {
        std::vector<char> in(plane.num_points(), 0);
        for (auto pt : closed) in[pt] = 1;
        for (std::uint32_t pt = 0; pt < plane.num_points() && !stop(); ++pt) {
            if (in[pt] || excluded[pt]) continue;
            if (++out.closures > opts.budget) {
                out.budget_exceeded = true;
                return;
            }
            std::vector<std::uint32_t> seed = closed;
            seed.push_back(pt);
            auto next = closure.run(seed);
            if (!next) continue;
            if (next->size() == target)
                record(std::move(*next));
            else if (next->size() < target)
                extend(*next);
        }
    }
};

}  // namespace

SubplaneSearchOutcome subplane_search(const Plane& plane, std::uint32_t m, const SubplaneSearchOptions& opts) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "subplane order must be >= 2");
    const std::uint32_t target = m * m + m + 1;
    std::vector<char> excluded(plane.num_points(), 0);
    for (auto pt : opts.excluded) excluded.at(pt) = 1;
    SearchState st(plane, m, opts, excluded);
    if (target > plane.num_points() || opts.limit == 0) {
        st.out.exhausted = opts.limit != 0 || target > plane.num_points();
        return st.out;
    }

    const std::uint32_t n_pts = plane.num_points();
    std::array<std::uint32_t, 4> quad{};
    for (quad[0] = 0; quad[0] < n_pts && !st.stop(); ++quad[0]) {
        if (excluded[quad[0]]) continue;
        for (quad[1] = quad[0] + 1; quad[1] < n_pts && !st.stop(); ++quad[1]) {
            if (excluded[quad[1]]) continue;
            const auto l01 = plane.line_through(quad[0], quad[1]);
            for (quad[2] = quad[1] + 1; quad[2] < n_pts && !st.stop(); ++quad[2]) {
                if (excluded[quad[2]] || plane.incident(quad[2], l01)) continue;
                const auto l02 = plane.line_through(quad[0], quad[2]);
                const auto l12 = plane.line_through(quad[1], quad[2]);
                for (quad[3] = quad[2] + 1; quad[3] < n_pts && !st.stop(); ++quad[3]) {
                    const auto d = quad[3];
                    if (excluded[d] || plane.incident(d, l01) || plane.incident(d, l02) || plane.incident(d, l12))
                        continue;
                    if (st.covered(quad)) continue;
                    if (++st.out.closures > opts.budget) {
                        st.out.budget_exceeded = true;
                        break;
                    }
                    auto closed = st.closure.run(quad);
                    if (!closed) continue;
                    if (closed->size() == target)
                        st.record(std::move(*closed));
                    else
                        st.extend(*closed);
                }
            }
        }
    }
    st.out.exhausted = !st.out.budget_exceeded && st.out.found.size() < opts.limit;
    std::sort(st.out.found.begin(), st.out.found.end(),
              [](const SubplaneResult& a, const SubplaneResult& b) { return a.points < b.points; });
    return st.out;
}

}  // namespace planecode

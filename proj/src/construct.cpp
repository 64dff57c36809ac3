#include "planecode/construct.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "planecode/error.hpp"

namespace planecode {

std::uint32_t characteristic(const Plane& plane) {
    const auto n = plane.order();
    std::uint32_t p = 2;
    while (p <= n && n % p) ++p;
    auto r = n;
    while (r % p == 0) r /= p;
    if (n < 2 || r != 1) throw Error(ErrorCode::Precondition, fmt::format("plane order {} is not a prime power", n));
    return p;
}

namespace {

ConstructedWord finish(const Plane& plane, CodeWord raw, std::string recipe, std::vector<std::uint32_t> ingredients) {
    const bool dual = is_dual_word(raw, plane).dual;
    auto word = normalized(raw);
    return {std::move(word), std::move(raw), dual, std::move(recipe), std::move(ingredients)};
}

std::vector<std::uint32_t> sorted_copy(std::span<const std::uint32_t> pts) {
    std::vector<std::uint32_t> v(pts.begin(), pts.end());
    std::sort(v.begin(), v.end());
    return v;
}

bool disjoint(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    auto x = sorted_copy(a), y = sorted_copy(b);
    std::vector<std::uint32_t> both;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
    return both.empty();
}

std::uint32_t meet_count(const Plane& plane, const SubplaneResult& s, std::uint32_t line) {
    std::uint32_t k = 0;
    for (auto pt : s.points) k += plane.incident(pt, line);
    return k;
}

}  // namespace

ConstructedWord line_diff(const Plane& plane, std::uint32_t l, std::uint32_t m) {
    if (l >= plane.num_lines() || m >= plane.num_lines())
        throw Error(ErrorCode::InvalidArgument, fmt::format("line index out of range ({} lines)", plane.num_lines()));
    if (l == m) throw Error(ErrorCode::SameLine, fmt::format("both lines are {}", l));
    const auto p = characteristic(plane);
    const auto len = plane.num_points();
    auto raw = diff(indicator(p, len, plane.points_on(l)), indicator(p, len, plane.points_on(m)));
    return finish(plane, std::move(raw), "line-diff", {l, m});
}

std::uint32_t first_secant(const Plane& plane, const SubplaneResult& baer) {
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l)
        if (meet_count(plane, baer, l) == baer.order + 1) return l;
    throw Error(ErrorCode::NotFound, "no line meets the subplane in order+1 points");
}

ConstructedWord baer_diff(const Plane& plane, const SubplaneResult& baer, std::optional<std::uint32_t> secant) {
    const auto p = characteristic(plane);
    const auto m = baer.order;
    if (std::uint64_t(m) * m != plane.order())
        throw Error(ErrorCode::Precondition,
                    fmt::format("subplane of order {} is not Baer in a plane of order {}", m, plane.order()));
    if (baer.points.size() != std::size_t(m) * m + m + 1)
        throw Error(ErrorCode::Precondition, "subplane point count does not match its order");
    const auto l = secant ? *secant : first_secant(plane, baer);
    if (l >= plane.num_lines()) throw Error(ErrorCode::InvalidArgument, fmt::format("line {} out of range", l));
    if (const auto k = meet_count(plane, baer, l); k != m + 1)
        throw Error(ErrorCode::NotSecant, fmt::format("line {} meets the subplane in {} points, not {}", l, k, m + 1));
    const auto len = plane.num_points();
    auto raw = diff(indicator(p, len, baer.points), indicator(p, len, plane.points_on(l)));
    return finish(plane, std::move(raw), "baer-diff", {l});
}

ConstructedWord subplane_diff(const Plane& plane, const SubplaneResult& a, const SubplaneResult& b) {
    if (a.order != b.order)
        throw Error(ErrorCode::Precondition, fmt::format("subplane orders differ: {} and {}", a.order, b.order));
    if (!disjoint(a.points, b.points)) throw Error(ErrorCode::NotDisjoint, "the subplanes share a point");
    const auto p = characteristic(plane);
    const auto len = plane.num_points();
    return finish(plane, diff(indicator(p, len, a.points), indicator(p, len, b.points)), "subplane-diff", {});
}

ConstructedWord antipodal_diff(const Plane& plane, const AntipodalPlane& a, const Embedding& ea,
                               const AntipodalPlane& b, const Embedding& eb) {
    const auto p = characteristic(plane);
    for (const auto* ap : {&a, &b})
        if (ap->order() + 1 != p)
            throw Error(ErrorCode::Precondition,
                        fmt::format("antipodal plane of order {} in characteristic {}", ap->order(), p));
    if (auto c = verify_embedding(a.base(), plane, ea); !c.ok)
        throw Error(ErrorCode::NotVerifiedEmbedding, "first: " + c.violation);
    if (auto c = verify_embedding(b.base(), plane, eb); !c.ok)
        throw Error(ErrorCode::NotVerifiedEmbedding, "second: " + c.violation);
    if (!disjoint(ea.point_map, eb.point_map)) throw Error(ErrorCode::NotDisjoint, "the images share a point");
    const auto len = plane.num_points();
    return finish(plane, diff(indicator(p, len, ea.point_map), indicator(p, len, eb.point_map)), "antipodal-diff", {});
}

}  // namespace planecode

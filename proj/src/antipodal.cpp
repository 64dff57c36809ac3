#include "planecode/antipodal.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "planecode/error.hpp"

namespace planecode {

// ---------------------------------------------------------------- PartialLinearSpace

PartialLinearSpace PartialLinearSpace::from_lines(std::uint32_t num_points,
                                                  std::vector<std::vector<std::uint32_t>> lines) {
    if (num_points > 4096) throw Error(ErrorCode::BadShape, fmt::format("{} points is too many", num_points));
    PartialLinearSpace s;
    s.num_points_ = num_points;
    s.point_lines_.resize(num_points);
    s.join_.assign(std::size_t(num_points) * num_points, -1);
    for (std::uint32_t l = 0; l < lines.size(); ++l) {
        auto& ln = lines[l];
        std::sort(ln.begin(), ln.end());
        if (ln.size() < 2) throw Error(ErrorCode::BadShape, fmt::format("line {} has fewer than two points", l));
        if (std::adjacent_find(ln.begin(), ln.end()) != ln.end())
            throw Error(ErrorCode::BadShape, fmt::format("line {} repeats a point", l));
        if (ln.back() >= num_points)
            throw Error(ErrorCode::BadShape, fmt::format("line {} names point {} of {}", l, ln.back(), num_points));
        for (std::size_t i = 0; i < ln.size(); ++i) {
            s.point_lines_[ln[i]].push_back(l);
            for (std::size_t j = i + 1; j < ln.size(); ++j) {
                auto& cell = s.join_[std::size_t(ln[i]) * num_points + ln[j]];
                if (cell >= 0)
                    throw Error(ErrorCode::AxiomViolation, fmt::format("points {} and {} lie on lines {} and {}", ln[i],
                                                                       ln[j], cell, l));
                cell = std::int32_t(l);
                s.join_[std::size_t(ln[j]) * num_points + ln[i]] = std::int32_t(l);
            }
        }
    }
    s.lines_ = std::move(lines);
    return s;
}

bool PartialLinearSpace::incident(std::uint32_t point, std::uint32_t line) const {
    const auto& ln = lines_.at(line);
    return std::binary_search(ln.begin(), ln.end(), point);
}

std::optional<std::uint32_t> PartialLinearSpace::line_through(std::uint32_t a, std::uint32_t b) const {
    if (a >= num_points_ || b >= num_points_) throw Error(ErrorCode::InvalidArgument, "point out of range");
    if (a == b) throw Error(ErrorCode::SamePoint, fmt::format("point {} twice", a));
    const auto v = join_[std::size_t(a) * num_points_ + b];
    if (v < 0) return std::nullopt;
    return static_cast<std::uint32_t>(v);
}

// ---------------------------------------------------------------- validation

AntipodalPlane validate_antipodal(const PartialLinearSpace& pls) {
    auto fail = [](std::string_view axiom, std::string witness) -> Error {
        return Error(ErrorCode::NotAntipodal, fmt::format("{}: {}", axiom, witness));
    };
    if (pls.num_lines() == 0) throw fail("line size", "no lines");
    const auto k = static_cast<std::uint32_t>(pls.points_on(0).size());
    const std::uint32_t s = k - 1;
    if (s < 2) throw fail("order", fmt::format("line 0 has {} points, order would be {}", k, s));
    const std::uint32_t n = s * s + s + 2;
    if (pls.num_points() != n)
        throw fail("point count", fmt::format("{} points, order {} needs {}", pls.num_points(), s, n));
    if (pls.num_lines() != n) throw fail("line count", fmt::format("{} lines, order {} needs {}", pls.num_lines(), s, n));
    for (std::uint32_t l = 0; l < n; ++l)
        if (pls.points_on(l).size() != k)
            throw fail("line size", fmt::format("line {} has {} points, expected {}", l, pls.points_on(l).size(), k));
    for (std::uint32_t p = 0; p < n; ++p)
        if (pls.lines_through(p).size() != k)
            throw fail("point degree", fmt::format("point {} is on {} lines, expected {}", p, pls.lines_through(p).size(), k));

    AntipodalPlane ap;
    ap.order_ = s;
    ap.perp_point_.resize(n);
    ap.perp_line_.resize(n);
    for (std::uint32_t p = 0; p < n; ++p) {
        std::vector<std::uint32_t> far;
        for (std::uint32_t r = 0; r < n; ++r)
            if (r != p && !pls.line_through(p, r)) far.push_back(r);
        if (far.size() != 1)
            throw fail("antipodal point", fmt::format("point {} is non-collinear with {} points", p, far.size()));
        ap.perp_point_[p] = far[0];
    }
    for (std::uint32_t l = 0; l < n; ++l) {
        std::vector<std::uint32_t> disjoint;
        for (std::uint32_t m = 0; m < n; ++m) {
            if (m == l) continue;
            bool meets = false;
            for (auto p : pls.points_on(l)) meets = meets || pls.incident(p, m);
            if (!meets) disjoint.push_back(m);
        }
        if (disjoint.size() != 1)
            throw fail("antipodal line", fmt::format("line {} is disjoint from {} lines", l, disjoint.size()));
        ap.perp_line_[l] = disjoint[0];
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        if (ap.perp_point_[ap.perp_point_[i]] != i) throw fail("point involution", fmt::format("point {}", i));
        if (ap.perp_line_[ap.perp_line_[i]] != i) throw fail("line involution", fmt::format("line {}", i));
        for (auto p : pls.points_on(i))
            if (!pls.incident(ap.perp_point_[p], ap.perp_line_[i]))
                throw fail("antipodes of a line", fmt::format("antipode of point {} is off the antipode of line {}", p, i));
    }
    ap.base_ = pls;
    return ap;
}

// ---------------------------------------------------------------- models

PartialLinearSpace cyclic_antipodal(std::uint32_t order) {
    std::vector<std::uint32_t> base;
    std::uint32_t n = 0;
    if (order == 2) {
        base = {0, 1, 3};
        n = 8;
    } else if (order == 3) {
        base = {0, 1, 4, 6};
        n = 14;
    } else {
        throw Error(ErrorCode::UnsupportedOrder, fmt::format("no cyclic model of order {}", order));
    }
    std::vector<std::vector<std::uint32_t>> lines(n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (auto b : base) lines[i].push_back((i + b) % n);
    return PartialLinearSpace::from_lines(n, std::move(lines));
}

InducedStructure induced_structure(const Plane& plane, std::span<const std::uint32_t> points, std::uint32_t min_size) {
    std::vector<std::int32_t> local(plane.num_points(), -1);
    InducedStructure out;
    for (auto p : points) {
        if (p >= plane.num_points()) throw Error(ErrorCode::InvalidArgument, fmt::format("point {} out of range", p));
        if (local[p] >= 0) throw Error(ErrorCode::InvalidArgument, fmt::format("point {} listed twice", p));
        local[p] = std::int32_t(out.points.size());
        out.points.push_back(p);
    }
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l) {
        std::vector<std::uint32_t> row;
        for (auto p : plane.points_on(l))
            if (local[p] >= 0) row.push_back(std::uint32_t(local[p]));
        if (row.size() >= std::max<std::uint32_t>(min_size, 2)) {
            rows.push_back(std::move(row));
            out.lines.push_back(l);
        }
    }
    out.pls = PartialLinearSpace::from_lines(static_cast<std::uint32_t>(out.points.size()), std::move(rows));
    return out;
}

InducedStructure antipodal_complement_pg24() {
    const auto plane = pg2(Field::make(2, 2));
    const auto fano = baer_subfield_subplane(plane);
    std::vector<std::uint32_t> rest;
    for (std::uint32_t p = 0; p < plane.num_points(); ++p)
        if (!std::binary_search(fano.points.begin(), fano.points.end(), p)) rest.push_back(p);
    // Extended lines of the subplane keep 2 of their 5 points; the others keep 4.
    return induced_structure(plane, rest, 3);
}

PartialLinearSpace antipodal_from_pg24() { return antipodal_complement_pg24().pls; }

std::vector<HomogeneousPoint> mobius_kantor_points(const Field& f, FieldElement omega) {
    const auto one = f.one();
    const auto zero = f.zero();
    if (f.add(f.sub(f.mul(omega, omega), omega), one) != zero)
        throw Error(ErrorCode::NotARoot, fmt::format("{} is not a root of x^2-x+1 over GF({})", f.to_string(omega), f.q()));
    const std::array<std::array<FieldElement, 3>, 8> raw = {{{one, zero, zero},
                                                            {zero, one, zero},
                                                            {zero, zero, one},
                                                            {one, one, zero},
                                                            {zero, one, omega},
                                                            {one, one, one},
                                                            {omega, one, one},
                                                            {one, zero, f.sub(one, omega)}}};
    std::vector<HomogeneousPoint> pts;
    for (const auto& r : raw) pts.push_back(normalize(f, r));
    return pts;
}

std::vector<HomogeneousPoint> mobius_kantor_points(const Field& f) {
    const auto roots = f.solve_monic_quadratic(f.neg(f.one()), f.one());
    if (roots.empty()) throw Error(ErrorCode::NotARoot, fmt::format("x^2-x+1 has no root over GF({})", f.q()));
    return mobius_kantor_points(f, roots.front());
}

// ---------------------------------------------------------------- triangles

bool is_good_triangle(const AntipodalPlane& ap, const std::array<std::uint32_t, 3>& tri) {
    const auto& s = ap.base();
    for (auto v : tri)
        if (v >= s.num_points()) return false;
    if (tri[0] == tri[1] || tri[0] == tri[2] || tri[1] == tri[2]) return false;
    std::array<std::uint32_t, 3> sides{};
    for (int i = 0; i < 3; ++i) {
        auto l = s.line_through(tri[(i + 1) % 3], tri[(i + 2) % 3]);
        if (!l) return false;
        sides[i] = *l;
    }
    if (sides[0] == sides[1]) return false;  // collinear triple
    for (auto v : tri)
        for (auto side : sides)
            if (s.incident(ap.perp_point(v), side)) return false;
    return true;
}

std::array<std::uint32_t, 3> find_good_triangle(const AntipodalPlane& ap) {
    if (ap.order() < 3)
        throw Error(ErrorCode::Precondition, fmt::format("good triangles are only guaranteed for order >= 3, got {}", ap.order()));
    const auto n = ap.base().num_points();
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c)
                if (is_good_triangle(ap, {a, b, c})) return {a, b, c};
    throw Error(ErrorCode::NotFound, "no triangle with antipodes off its sides");
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
    const PartialLinearSpace& a;
    const PartialLinearSpace& b;
    std::vector<std::int32_t> fwd;
    std::vector<char> used;

    bool consistent(std::uint32_t x, std::uint32_t y) const {
        if (a.lines_through(x).size() != b.lines_through(y).size()) return false;
        for (std::uint32_t u = 0; u < x; ++u) {
            const auto fu = std::uint32_t(fwd[u]);
            const auto la = a.line_through(x, u);
            const auto lb = b.line_through(y, fu);
            if (la.has_value() != lb.has_value()) return false;
            if (!la) continue;
            for (std::uint32_t w = 0; w < x; ++w)
                if (w != u && a.incident(w, *la) != b.incident(std::uint32_t(fwd[w]), *lb)) return false;
        }
        return true;
    }

    bool run(std::uint32_t x) {
        if (x == a.num_points()) return true;
        for (std::uint32_t y = 0; y < b.num_points(); ++y) {
            if (used[y] || !consistent(x, y)) continue;
            fwd[x] = std::int32_t(y);
            used[y] = 1;
            if (run(x + 1)) return true;
            used[y] = 0;
        }
        fwd[x] = -1;
        return false;
    }
};

}  // namespace

std::optional<std::vector<std::uint32_t>> find_isomorphism(const PartialLinearSpace& a, const PartialLinearSpace& b) {
    if (a.num_points() != b.num_points() || a.num_lines() != b.num_lines()) return std::nullopt;
    auto sizes = [](const PartialLinearSpace& s) {
        std::multiset<std::size_t> m;
        for (const auto& l : s.lines()) m.insert(l.size());
        return m;
    };
    if (sizes(a) != sizes(b)) return std::nullopt;
    IsoSearch st{a, b, std::vector<std::int32_t>(a.num_points(), -1), std::vector<char>(b.num_points(), 0)};
    if (!st.run(0)) return std::nullopt;
    std::vector<std::uint32_t> map(st.fwd.begin(), st.fwd.end());
    std::set<std::vector<std::uint32_t>> blines(b.lines().begin(), b.lines().end());
    for (const auto& l : a.lines()) {
        std::vector<std::uint32_t> img;
        for (auto p : l) img.push_back(map[p]);
        std::sort(img.begin(), img.end());
        if (!blines.count(img)) return std::nullopt;
    }
    return map;
}

}  // namespace planecode

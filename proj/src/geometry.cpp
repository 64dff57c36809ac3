#include "planecode/geometry.hpp"

#include <algorithm>

#include "planecode/error.hpp"

namespace planecode {

namespace {

constexpr std::uint32_t kMaxIngestOrder = 49;
constexpr std::uint32_t kMaxBitsetPoints = 8192;

std::string pair_text(std::uint32_t a, std::uint32_t b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

HomogeneousPoint normalize(const Field& f, std::array<FieldElement, 3> v) {
    for (std::size_t i = 0; i < 3; ++i) {
        if (v[i] != f.zero()) {
            const FieldElement s = f.inv(v[i]);
            for (auto& c : v) c = f.mul(c, s);
            return {v};
        }
    }
    throw Error(ErrorCode::InvalidArgument, "zero vector has no projective point");
}

std::array<FieldElement, 3> cross(const Field& f, const std::array<FieldElement, 3>& a,
                                  const std::array<FieldElement, 3>& b) {
    return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])), f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
            f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

FieldElement dot(const Field& f, const std::array<FieldElement, 3>& a, const std::array<FieldElement, 3>& b) {
    return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

std::uint32_t homogeneous_index(const HomogeneousPoint& pt, std::uint32_t q) {
    const auto& x = pt.x;
    if (x[0].value == 0) {
        if (x[1].value == 0) return 0;
        return 1 + x[2].value;
    }
    return 1 + q + x[1].value * q + x[2].value;
}

void Plane::build_indices() {
    const std::uint32_t n_pts = static_cast<std::uint32_t>(lines_.size());
    point_lines_.assign(n_pts, {});
    for (std::uint32_t l = 0; l < lines_.size(); ++l)
        for (auto pt : lines_[l]) point_lines_[pt].push_back(l);
    incidence_bits_.clear();
    if (n_pts <= kMaxBitsetPoints) {
        incidence_bits_.assign((std::size_t(n_pts) * n_pts + 63) / 64, 0);
        for (std::uint32_t l = 0; l < lines_.size(); ++l) {
            for (auto pt : lines_[l]) {
                const std::size_t bit = std::size_t(pt) * n_pts + l;
                incidence_bits_[bit / 64] |= std::uint64_t{1} << (bit % 64);
            }
        }
    }
}

bool Plane::incident(std::uint32_t point, std::uint32_t line) const {
    if (!incidence_bits_.empty()) {
        const std::size_t bit = std::size_t(point) * num_points() + line;
        return (incidence_bits_[bit / 64] >> (bit % 64)) & 1u;
    }
    const auto& pts = lines_.at(line);
    return std::binary_search(pts.begin(), pts.end(), point);
}

std::uint32_t Plane::line_through(std::uint32_t a, std::uint32_t b) const {
    if (a == b) throw Error(ErrorCode::SamePoint, "line_through needs distinct points, got " + std::to_string(a));
    if (field_) {
        const auto ln = normalize(*field_, cross(*field_, point_coords_.at(a).x, point_coords_.at(b).x));
        return homogeneous_index(ln, field_->q());
    }
    const auto& la = point_lines_.at(a);
    const auto& lb = point_lines_.at(b);
    std::size_t i = 0, j = 0;
    while (i < la.size() && j < lb.size()) {
        if (la[i] == lb[j]) return la[i];
        if (la[i] < lb[j])
            ++i;
        else
            ++j;
    }
    throw Error(ErrorCode::AxiomViolation, "no line through " + pair_text(a, b));
}

std::uint32_t Plane::meet(std::uint32_t l, std::uint32_t m) const {
    if (l == m) throw Error(ErrorCode::SameLine, "meet needs distinct lines, got " + std::to_string(l));
    if (field_) {
        const auto pt = normalize(*field_, cross(*field_, line_coords_.at(l).x, line_coords_.at(m).x));
        return homogeneous_index(pt, field_->q());
    }
    const auto& a = lines_.at(l);
    const auto& b = lines_.at(m);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return a[i];
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    throw Error(ErrorCode::AxiomViolation, "lines " + pair_text(l, m) + " do not meet");
}

const Field& Plane::field() const {
    if (!field_) throw Error(ErrorCode::NotGenerated, "plane '" + source_id_ + "' has no coordinates");
    return *field_;
}

const HomogeneousPoint& Plane::point_coords(std::uint32_t point) const {
    if (!field_) throw Error(ErrorCode::NotGenerated, "plane '" + source_id_ + "' has no coordinates");
    return point_coords_.at(point);
}

const HomogeneousPoint& Plane::line_coords(std::uint32_t line) const {
    if (!field_) throw Error(ErrorCode::NotGenerated, "plane '" + source_id_ + "' has no coordinates");
    return line_coords_.at(line);
}

std::uint32_t Plane::point_index(const HomogeneousPoint& pt) const {
    return homogeneous_index(normalize(field(), pt.x), field_->q());
}

std::uint32_t Plane::line_index(const HomogeneousPoint& ln) const {
    return homogeneous_index(normalize(field(), ln.x), field_->q());
}

bool Plane::same_incidence(const Plane& other) const {
    if (num_points() != other.num_points()) return false;
    auto a = lines_;
    auto b = other.lines_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Plane Plane::from_incidence(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t n, std::string source_id) {
    if (n < 2) throw Error(ErrorCode::BadShape, "plane order must be >= 2");
    if (n > kMaxIngestOrder)
        throw Error(ErrorCode::BadShape, "ingestion is capped at order " + std::to_string(kMaxIngestOrder));
    const std::uint32_t total = n * n + n + 1;
    if (rows.size() != total)
        throw Error(ErrorCode::BadShape,
                    "expected " + std::to_string(total) + " lines, got " + std::to_string(rows.size()));

    for (std::uint32_t l = 0; l < total; ++l) {
        auto& r = rows[l];
        std::sort(r.begin(), r.end());
        if (std::adjacent_find(r.begin(), r.end()) != r.end())
            throw Error(ErrorCode::AxiomViolation, "line " + std::to_string(l) + " repeats a point");
        if (!r.empty() && r.back() >= total)
            throw Error(ErrorCode::BadShape, "line " + std::to_string(l) + " has point index out of range");
        if (r.size() != n + 1)
            throw Error(ErrorCode::AxiomViolation, "line " + std::to_string(l) + " has " + std::to_string(r.size()) +
                                                       " points, expected " + std::to_string(n + 1));
    }

    // Any two points on exactly one line.
    constexpr std::uint16_t kNone = 0xFFFF;
    std::vector<std::uint16_t> pair_line(std::size_t(total) * total, kNone);
    std::uint64_t covered = 0;
    for (std::uint32_t l = 0; l < total; ++l) {
        const auto& r = rows[l];
        for (std::size_t i = 0; i < r.size(); ++i) {
            for (std::size_t j = i + 1; j < r.size(); ++j) {
                auto& slot = pair_line[std::size_t(r[i]) * total + r[j]];
                if (slot != kNone)
                    throw Error(ErrorCode::AxiomViolation, "two lines meet in more than one point: lines " +
                                                               pair_text(slot, l) + " share points " +
                                                               pair_text(r[i], r[j]));
                slot = static_cast<std::uint16_t>(l);
                ++covered;
            }
        }
    }
    if (covered != std::uint64_t(total) * (total - 1) / 2) {
        for (std::uint32_t a = 0; a < total; ++a)
            for (std::uint32_t b = a + 1; b < total; ++b)
                if (pair_line[std::size_t(a) * total + b] == kNone)
                    throw Error(ErrorCode::AxiomViolation, "points " + pair_text(a, b) + " lie on no common line");
    }

    Plane plane;
    plane.order_ = n;
    plane.lines_ = std::move(rows);
    plane.source_id_ = std::move(source_id);
    plane.build_indices();

    for (std::uint32_t pt = 0; pt < total; ++pt) {
        if (plane.point_lines_[pt].size() != n + 1)
            throw Error(ErrorCode::AxiomViolation, "point " + std::to_string(pt) + " lies on " +
                                                       std::to_string(plane.point_lines_[pt].size()) +
                                                       " lines, expected " + std::to_string(n + 1));
    }
    // Any two lines meet in exactly one point.
    std::fill(pair_line.begin(), pair_line.end(), kNone);
    for (std::uint32_t pt = 0; pt < total; ++pt) {
        const auto& ls = plane.point_lines_[pt];
        for (std::size_t i = 0; i < ls.size(); ++i) {
            for (std::size_t j = i + 1; j < ls.size(); ++j) {
                auto& slot = pair_line[std::size_t(ls[i]) * total + ls[j]];
                if (slot != kNone)
                    throw Error(ErrorCode::AxiomViolation, "lines " + pair_text(ls[i], ls[j]) +
                                                               " meet in points " + pair_text(slot, pt));
                slot = static_cast<std::uint16_t>(pt);
            }
        }
    }
    return plane;
}

Plane pg2(const Field& field) {
    const std::uint32_t q = field.q();
    const std::uint32_t total = q * q + q + 1;

    std::vector<HomogeneousPoint> coords;
    coords.reserve(total);
    coords.push_back({{field.zero(), field.zero(), field.one()}});
    for (std::uint32_t z = 0; z < q; ++z) coords.push_back({{field.zero(), field.one(), field.element(z)}});
    for (std::uint32_t y = 0; y < q; ++y)
        for (std::uint32_t z = 0; z < q; ++z) coords.push_back({{field.one(), field.element(y), field.element(z)}});

    Plane plane;
    plane.order_ = q;
    plane.source_id_ = "PG(2," + field.spec_string() + ")";
    plane.lines_.resize(total);
    const auto zero = field.zero();
    for (std::uint32_t l = 0; l < total; ++l) {
        const auto& [a, b, c] = coords[l].x;
        auto& pts = plane.lines_[l];
        pts.reserve(q + 1);
        auto put = [&](FieldElement x, FieldElement y, FieldElement z) {
            pts.push_back(homogeneous_index({{x, y, z}}, q));
        };
        if (c != zero) {
            const auto ci = field.inv(c);
            put(zero, field.one(), field.neg(field.mul(b, ci)));
            for (std::uint32_t yv = 0; yv < q; ++yv) {
                const auto y = field.element(yv);
                put(field.one(), y, field.neg(field.mul(field.add(a, field.mul(b, y)), ci)));
            }
        } else if (b != zero) {
            put(zero, zero, field.one());
            const auto y = field.neg(field.div(a, b));
            for (std::uint32_t zv = 0; zv < q; ++zv) put(field.one(), y, field.element(zv));
        } else {
            put(zero, zero, field.one());
            for (std::uint32_t zv = 0; zv < q; ++zv) put(zero, field.one(), field.element(zv));
        }
        std::sort(pts.begin(), pts.end());
    }
    plane.field_ = field;
    plane.point_coords_ = coords;
    plane.line_coords_ = std::move(coords);
    plane.build_indices();
    return plane;
}

std::optional<SubplaneResult> induced_subplane(const Plane& plane, std::span<const std::uint32_t> points,
                                               std::string* reason) {
    auto fail = [&](std::string why) -> std::optional<SubplaneResult> {
        if (reason) *reason = std::move(why);
        return std::nullopt;
    };
    std::vector<std::uint32_t> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::uint32_t m = 2;
    while (m * m + m + 1 < pts.size()) ++m;
    if (m * m + m + 1 != pts.size()) return fail("point count " + std::to_string(pts.size()) + " is not m^2+m+1");

    std::vector<char> member(plane.num_points(), 0);
    for (auto pt : pts) member.at(pt) = 1;
    SubplaneResult res;
    res.order = m;
    res.points = pts;
    for (std::uint32_t l = 0; l < plane.num_lines(); ++l) {
        std::uint32_t k = 0;
        for (auto pt : plane.points_on(l)) k += member[pt];
        if (k >= 2) {
            if (k != m + 1)
                return fail("line " + std::to_string(l) + " meets the set in " + std::to_string(k) + " points");
            res.lines.push_back(l);
        }
    }
    if (res.lines.size() != pts.size()) return fail("induced line count differs from point count");
    for (auto pt : pts) {
        std::uint32_t deg = 0;
        for (auto l : plane.lines_through(pt)) deg += std::binary_search(res.lines.begin(), res.lines.end(), l);
        if (deg != m + 1) return fail("point " + std::to_string(pt) + " lies on " + std::to_string(deg) + " induced lines");
    }
    return res;
}

SubplaneResult baer_subfield_subplane(const Plane& plane) {
    const Field& f = plane.field();
    if (f.h() % 2 != 0) throw Error(ErrorCode::NotSquareOrder, "plane order " + std::to_string(f.q()) + " is not a square");
    const std::uint32_t k = f.h() / 2;
    std::vector<char> sub(f.q(), 0);
    for (std::uint32_t v = 0; v < f.q(); ++v) sub[v] = f.in_subfield(f.element(v), k);
    std::vector<std::uint32_t> pts;
    for (std::uint32_t pt = 0; pt < plane.num_points(); ++pt) {
        const auto& x = plane.point_coords(pt).x;
        if (sub[x[0].value] && sub[x[1].value] && sub[x[2].value]) pts.push_back(pt);
    }
    std::string why;
    auto res = induced_subplane(plane, pts, &why);
    if (!res) throw Error(ErrorCode::StructureMismatch, "subfield points are not a subplane: " + why);
    return *res;
}

}  // namespace planecode

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "planecode/field.hpp"

namespace planecode {

/// Projective point (or line, in dual coordinates) with first nonzero coordinate 1.
struct HomogeneousPoint {
    std::array<FieldElement, 3> x{};

    friend constexpr auto operator<=>(const HomogeneousPoint&, const HomogeneousPoint&) = default;
};

/// Scales a nonzero triple so that its first nonzero coordinate is 1.
HomogeneousPoint normalize(const Field& f, std::array<FieldElement, 3> v);
std::array<FieldElement, 3> cross(const Field& f, const std::array<FieldElement, 3>& a,
                                  const std::array<FieldElement, 3>& b);
FieldElement dot(const Field& f, const std::array<FieldElement, 3>& a, const std::array<FieldElement, 3>& b);

/// A projective plane of order n on indices 0..n^2+n.
///
/// Each line keeps its sorted point list and each point its sorted line list.
/// Generated planes additionally carry the field and the coordinates of every
/// point and line; indices are lexicographic on normalized coordinates.
/// Ingested planes keep the line order of their input.
class Plane {
public:
    /// Validates all projective-plane axioms. Throws BadShape or AxiomViolation.
    static Plane from_incidence(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t n,
                                std::string source_id = "ingested");

    std::uint32_t order() const noexcept { return order_; }
    std::uint32_t num_points() const noexcept { return static_cast<std::uint32_t>(point_lines_.size()); }
    std::uint32_t num_lines() const noexcept { return static_cast<std::uint32_t>(lines_.size()); }

    std::span<const std::uint32_t> points_on(std::uint32_t line) const { return lines_.at(line); }
    std::span<const std::uint32_t> lines_through(std::uint32_t point) const { return point_lines_.at(point); }
    const std::vector<std::vector<std::uint32_t>>& lines() const noexcept { return lines_; }
    bool incident(std::uint32_t point, std::uint32_t line) const;

    /// The unique line through two distinct points. Throws SamePoint.
    std::uint32_t line_through(std::uint32_t a, std::uint32_t b) const;
    /// The unique point on two distinct lines. Throws SameLine.
    std::uint32_t meet(std::uint32_t l, std::uint32_t m) const;

    bool generated() const noexcept { return field_.has_value(); }
    /// Throws NotGenerated for ingested planes.
    const Field& field() const;
    const HomogeneousPoint& point_coords(std::uint32_t point) const;
    const HomogeneousPoint& line_coords(std::uint32_t line) const;
    std::uint32_t point_index(const HomogeneousPoint& pt) const;
    std::uint32_t line_index(const HomogeneousPoint& ln) const;

    /// "PG(2,p^h)" for generated planes, the file id otherwise.
    const std::string& source_id() const noexcept { return source_id_; }

    /// Same point count and the same set of lines (as point sets).
    bool same_incidence(const Plane& other) const;

private:
    friend Plane pg2(const Field& field);

    Plane() = default;
    void build_indices();

    std::uint32_t order_ = 0;
    std::vector<std::vector<std::uint32_t>> lines_;
    std::vector<std::vector<std::uint32_t>> point_lines_;
    std::vector<std::uint64_t> incidence_bits_;  // empty for very large planes
    std::string source_id_;
    std::optional<Field> field_;
    std::vector<HomogeneousPoint> point_coords_;
    std::vector<HomogeneousPoint> line_coords_;
};

/// The Desarguesian plane over the given field.
Plane pg2(const Field& field);

/// The non-Desarguesian plane of order 9 over the regular nearfield on GF(9),
/// built as incidence data (no coordinates). Affine point (x, y) is 9x + y,
/// slope m is 81 + m and the vertical direction is 90.
Plane nearfield_plane_9();

/// Index of a normalized triple in the lexicographic enumeration used by pg2.
std::uint32_t homogeneous_index(const HomogeneousPoint& pt, std::uint32_t q);

struct SubplaneResult {
    std::vector<std::uint32_t> points;  // sorted
    std::vector<std::uint32_t> lines;   // sorted; ambient lines meeting the point set in order+1 points
    std::uint32_t order = 0;

    friend bool operator==(const SubplaneResult&, const SubplaneResult&) = default;
};

/// Checks that the point set carries a projective plane of some order m >= 2
/// under the induced lines. Returns the result, or std::nullopt with a reason.
std::optional<SubplaneResult> induced_subplane(const Plane& plane, std::span<const std::uint32_t> points,
                                               std::string* reason = nullptr);

/// Points of PG(2,q) whose normalized coordinates lie in GF(sqrt q).
/// Throws NotGenerated or NotSquareOrder.
SubplaneResult baer_subfield_subplane(const Plane& plane);

struct SubplaneSearchOptions {
    std::size_t limit = 16;
    std::uint64_t budget = 100'000'000;  // closure computations
    std::vector<std::uint32_t> excluded;  // points no result may contain
};

struct SubplaneSearchOutcome {
    std::vector<SubplaneResult> found;  // sorted by point set
    bool exhausted = false;             // the whole quadrangle space was covered
    bool budget_exceeded = false;
    std::uint64_t closures = 0;
};

/// Subplanes of order m found by closing quadrangles under join and meet,
/// extending undersized closed sets one point at a time.
SubplaneSearchOutcome subplane_search(const Plane& plane, std::uint32_t m, const SubplaneSearchOptions& opts = {});

// Slopes relative to the fundamental triangle A1=(1,0,0), A2=(0,1,0), A3=(0,0,1).
// Lines through A1 read X3 = t X2, through A2 X1 = t X3, through A3 X2 = t X1.

enum class Vertex { A1 = 0, A2 = 1, A3 = 2 };

/// Slope of the line with dual coordinates `line` at the given vertex.
/// Throws NotThroughVertex or TriangleSide.
FieldElement slope_of_line(const Field& f, Vertex v, const std::array<FieldElement, 3>& line);
/// Slope of the line joining the vertex to `point`. Throws NotThroughVertex
/// when point is the vertex and TriangleSide when the join is a side.
FieldElement slope_to_point(const Field& f, Vertex v, const std::array<FieldElement, 3>& point);

FieldElement slope(const Plane& plane, Vertex v, std::uint32_t line);
/// Product of the slopes (A_i B_i) where B_i is the meet of `line` with the side
/// opposite A_i. Precondition: line avoids A1, A2, A3.
FieldElement menelaos_product(const Plane& plane, std::uint32_t line);
/// Product of the slopes (A_i X). Precondition: X is off the triangle sides.
FieldElement ceva_product(const Plane& plane, std::uint32_t point);

}  // namespace planecode

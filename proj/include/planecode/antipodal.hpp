#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "planecode/geometry.hpp"

namespace planecode {

/// Points 0..N-1 and lines given as sorted point sets of size >= 2, with two
/// points on at most one common line.
class PartialLinearSpace {
public:
    /// Throws BadShape (indices, sizes) or AxiomViolation (two lines share two points).
    static PartialLinearSpace from_lines(std::uint32_t num_points, std::vector<std::vector<std::uint32_t>> lines);

    std::uint32_t num_points() const noexcept { return num_points_; }
    std::uint32_t num_lines() const noexcept { return static_cast<std::uint32_t>(lines_.size()); }
    std::span<const std::uint32_t> points_on(std::uint32_t line) const { return lines_.at(line); }
    std::span<const std::uint32_t> lines_through(std::uint32_t point) const { return point_lines_.at(point); }
    const std::vector<std::vector<std::uint32_t>>& lines() const noexcept { return lines_; }
    bool incident(std::uint32_t point, std::uint32_t line) const;
    /// The line joining two distinct points, if any.
    std::optional<std::uint32_t> line_through(std::uint32_t a, std::uint32_t b) const;

    friend bool operator==(const PartialLinearSpace& a, const PartialLinearSpace& b) {
        return a.num_points_ == b.num_points_ && a.lines_ == b.lines_;
    }

private:
    std::uint32_t num_points_ = 0;
    std::vector<std::vector<std::uint32_t>> lines_;
    std::vector<std::vector<std::uint32_t>> point_lines_;
    std::vector<std::int32_t> join_;  // num_points^2, -1 when not collinear
};

/// A validated antipodal plane with its antipode maps.
class AntipodalPlane {
public:
    const PartialLinearSpace& base() const noexcept { return base_; }
    std::uint32_t order() const noexcept { return order_; }
    std::uint32_t perp_point(std::uint32_t p) const { return perp_point_.at(p); }
    std::uint32_t perp_line(std::uint32_t l) const { return perp_line_.at(l); }

private:
    friend AntipodalPlane validate_antipodal(const PartialLinearSpace& pls);
    PartialLinearSpace base_;
    std::uint32_t order_ = 0;
    std::vector<std::uint32_t> perp_point_, perp_line_;
};

/// Checks the counting axioms, derives both antipode maps and checks that they
/// are involutions and that each antipodal line is made of the antipodes of a
/// line's points. Throws NotAntipodal naming the failed axiom and a witness.
AntipodalPlane validate_antipodal(const PartialLinearSpace& pls);

/// Circulant models: 8 points with base block {0,1,3} or 14 points with
/// base block {0,1,4,6}. Throws UnsupportedOrder for other orders.
PartialLinearSpace cyclic_antipodal(std::uint32_t order);

/// A point set of a plane together with the lines meeting it in at least
/// `min_size` points, restricted and renumbered.
struct InducedStructure {
    PartialLinearSpace pls;
    std::vector<std::uint32_t> points;  // local index -> ambient point
    std::vector<std::uint32_t> lines;   // local index -> ambient line
};

InducedStructure induced_structure(const Plane& plane, std::span<const std::uint32_t> points, std::uint32_t min_size);

/// Points of PG(2,4) off a Fano subplane, with the lines that are not
/// extended lines of the subplane. Uses the subfield subplane.
InducedStructure antipodal_complement_pg24();
PartialLinearSpace antipodal_from_pg24();

/// The eight points (1,0,0),(0,1,0),(0,0,1),(1,1,0),(0,1,w),(1,1,1),(w,1,1),(1,0,1-w)
/// for a root w of x^2-x+1. Throws NotARoot.
std::vector<HomogeneousPoint> mobius_kantor_points(const Field& f, FieldElement omega);
/// Same, using the smallest root in the field. Throws NotARoot when none exists.
std::vector<HomogeneousPoint> mobius_kantor_points(const Field& f);

/// Three pairwise collinear points, not on one line, whose antipodes are off all three sides.
bool is_good_triangle(const AntipodalPlane& ap, const std::array<std::uint32_t, 3>& tri);
/// First good triangle in lexicographic order. Throws Precondition for order < 3
/// and NotFound if the scan comes up empty.
std::array<std::uint32_t, 3> find_good_triangle(const AntipodalPlane& ap);

/// A point bijection carrying lines onto lines, found by backtracking.
std::optional<std::vector<std::uint32_t>> find_isomorphism(const PartialLinearSpace& a, const PartialLinearSpace& b);

}  // namespace planecode

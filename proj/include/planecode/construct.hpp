#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planecode/antipodal.hpp"
#include "planecode/codes.hpp"
#include "planecode/geometry.hpp"
#include "planecode/search.hpp"

namespace planecode {

/// The prime p with order = p^h. Throws Precondition when the order is not a prime power.
std::uint32_t characteristic(const Plane& plane);

struct ConstructedWord {
    CodeWord word;  // leading nonzero symbol scaled to 1
    CodeWord raw;   // as built, before scaling
    bool dual = false;
    std::string recipe;
    std::vector<std::uint32_t> ingredients;  // lines, or the secant for baer-diff
};

/// Indicator of l minus indicator of m. Throws SameLine.
ConstructedWord line_diff(const Plane& plane, std::uint32_t l, std::uint32_t m);

/// The lowest-indexed line meeting the subplane in order+1 points.
std::uint32_t first_secant(const Plane& plane, const SubplaneResult& baer);

/// Indicator of a Baer subplane minus one of its secant lines. The plane order
/// must be the square of the subplane order, itself a power of the characteristic.
/// Throws NotSecant if the line meets the subplane in any other number of points.
ConstructedWord baer_diff(const Plane& plane, const SubplaneResult& baer, std::optional<std::uint32_t> secant = {});

/// Difference of two subplane indicators. Throws NotDisjoint.
ConstructedWord subplane_diff(const Plane& plane, const SubplaneResult& a, const SubplaneResult& b);

/// Difference of the images of two embedded antipodal planes of order p-1.
/// Throws NotVerifiedEmbedding, NotDisjoint, or Precondition on the order.
ConstructedWord antipodal_diff(const Plane& plane, const AntipodalPlane& a, const Embedding& ea,
                               const AntipodalPlane& b, const Embedding& eb);

}  // namespace planecode

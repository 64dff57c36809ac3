#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planecode/antipodal.hpp"
#include "planecode/codes.hpp"
#include "planecode/geometry.hpp"

namespace planecode {

/// Colour graph on 1..p-1: a ~ b iff a + b is p or p + 1. A loop adds one to the degree.
struct ColourGraph {
    std::uint32_t p = 0;
    std::vector<std::uint32_t> vertices;  // sorted
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // a <= b, loops included
    std::vector<std::vector<std::uint32_t>> components;         // each sorted, ordered by least vertex

    std::uint32_t degree(std::uint32_t v) const;
};

/// The graph on all colours, or the subgraph induced on the given ones.
ColourGraph colour_graph(std::uint32_t p);
ColourGraph colour_graph(std::uint32_t p, const std::vector<std::uint32_t>& colours);

/// Secant data for one support point: sizes of |line ∩ support| over its lines.
struct SecantProfile {
    std::uint32_t point = 0;
    std::uint32_t x = 0, y = 0, z = 0;        // 2-, 3- and 4-secants
    std::vector<std::uint32_t> meet_sizes;   // one entry per line through the point, sorted
};

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string_view to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::NotApplicable;
    std::string witness;  // failure witness, or why the check does not apply
};

enum class Classification { None, Baer, Antipodal, TwoColourOther, MultiColour };
std::string_view to_string(Classification c);

struct WordAnalysis {
    std::uint32_t p = 0;
    std::uint32_t plane_order = 0;
    bool order_is_p_squared = false;
    bool dual = false;
    std::uint32_t weight = 0;
    std::int64_t epsilon = 0;  // weight - (2p^2 - 2p + 2)
    bool in_band = false;      // 1 <= epsilon <= p-2 and order p^2
    std::map<std::uint32_t, std::uint32_t> colours;  // colour -> class size, nonempty classes only
    std::vector<SecantProfile> profiles;             // by support point index
    std::uint32_t tangents = 0;                      // lines meeting the support in one point
    std::uint64_t mu = 0, mu_neg = 0;
    /// Scalar taking the word to its canonical multiple, and that multiple's colour classes.
    std::uint32_t canonical_scale = 1;
    std::map<std::uint32_t, std::uint32_t> canonical_colours;
    ColourGraph graph;  // on the canonical colours
    std::vector<CheckResult> checks;
    Classification classification = Classification::None;

    const CheckResult& check(std::string_view name) const;
    bool any_failed() const;
};

/// Throws NotDualWord unless the word is dual or allow_non_dual is set; in the
/// latter case every check is marked not applicable.
WordAnalysis analyze(const CodeWord& w, const Plane& plane, bool allow_non_dual = false);

/// Multiple of w with a minimum-x support point coloured p-1, lexicographically
/// least among such choices. Returns the scalar.
std::uint32_t canonical_scale(const CodeWord& w, const Plane& plane);

struct BaerExtraction {
    SubplaneResult subplane;
    std::uint32_t secant = 0;
};

/// Rebuilds the Baer subplane and secant from a two-colour word with class
/// sizes p^2 and p^2-p. Throws StructureMismatch naming the failed step, and
/// NotDualWord unless the word is dual or allow_non_dual is set.
BaerExtraction extract_baer(const CodeWord& w, const Plane& plane, bool allow_non_dual = false);

struct AntipodalExtraction {
    std::array<std::uint32_t, 2> colours{};
    std::array<InducedStructure, 2> parts;
};

/// Both colour classes of a two-colour word with class sizes p^2-p+2, each with
/// the lines meeting it in p points, validated as antipodal planes of order p-1.
/// Throws StructureMismatch, and NotDualWord as for extract_baer.
AntipodalExtraction extract_antipodal(const CodeWord& w, const Plane& plane, bool allow_non_dual = false);

}  // namespace planecode

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planecode/antipodal.hpp"
#include "planecode/geometry.hpp"

namespace planecode {

/// Injective point and line maps from a partial linear space into a plane.
struct Embedding {
    std::vector<std::uint32_t> point_map;
    std::vector<std::uint32_t> line_map;

    friend bool operator==(const Embedding&, const Embedding&) = default;
    friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

struct EmbeddingCheck {
    bool ok = true;
    std::string violation;  // empty when ok
};

/// Checks injectivity of both maps, incidence and non-incidence for every
/// (point, line) pair. Reports the first violation.
EmbeddingCheck verify_embedding(const PartialLinearSpace& pls, const Plane& plane, const Embedding& e);

/// Four points whose images under any embedding form a frame: in each triple
/// some pair is joined by a line missing the third point.
bool is_frame_seed(const PartialLinearSpace& pls, const std::array<std::uint32_t, 4>& seed);

struct FramePlan {
    std::array<std::uint32_t, 4> seed{};
    std::vector<std::uint32_t> order;  // placement order, seed first
};

/// Lexicographically least frame seed plus a fail-first placement order.
/// Throws NoQuadrangle when no seed exists.
FramePlan normalize_frame(const PartialLinearSpace& pls);

/// Placement order without a seed, starting from point 0.
std::vector<std::uint32_t> placement_order(const PartialLinearSpace& pls, std::vector<std::uint32_t> prefix = {});

enum class SearchStatus { Found, ExhaustedNone, BudgetExceeded };
std::string_view to_string(SearchStatus s);

struct SearchOptions {
    std::size_t cap = 1;
    std::uint64_t budget = 1'000'000'000;  // placement attempts
    bool normalize = true;                 // only honoured for generated planes without forbidden points
    unsigned threads = 1;
    std::vector<std::uint32_t> forbidden_points;  // plane points no image may use
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t prune_point_injective = 0;
    std::uint64_t prune_forbidden = 0;
    std::uint64_t prune_incidence = 0;
    std::uint64_t prune_non_incidence = 0;
    std::uint64_t prune_line_injective = 0;
    std::uint64_t leaf_rejects = 0;
    double wall_seconds = 0;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::ExhaustedNone;
    std::vector<Embedding> embeddings;  // at most cap, in search order
    bool complete = false;              // the whole tree was traversed
    bool normalized = false;
    std::optional<std::array<std::uint32_t, 4>> seed;
    SearchStats stats;
};

/// Exhaustive backtracking for embeddings preserving incidence and
/// non-incidence. Pls points with no common line may still land on a common
/// plane line as long as that line is not the image of any pls line.
SearchOutcome embed_search(const PartialLinearSpace& pls, const Plane& plane, const SearchOptions& opts = {});

struct SlopeCertificate {
    std::array<std::uint32_t, 3> triangle{};  // pls points A1, A2, A3
    std::array<FieldElement, 3> t{};          // T_i: slope products over non-side lines through A_i
    FieldElement product{};                   // T1 T2 T3
    std::optional<std::uint32_t> line;        // pls line avoiding the triangle and its antipodes
    std::optional<FieldElement> transversal_product;  // slope product of that line's side meets
    /// Line through the antipode of A1 avoiding A2, A3 and their antipodes, when one exists.
    std::optional<std::uint32_t> second_line;
    std::optional<FieldElement> xi;               // slope at A1 of the antipodal line of second_line
    std::optional<FieldElement> antipode_slope;  // slope at A1 of the join of A1 and its antipode
};

/// Moves the images of the triangle to the fundamental triangle and computes
/// the slope products. Without a triangle the first good triangle is used (for
/// order 2, the first triangle whose sides are pls lines); without a line the
/// first admissible one, if any. Throws Precondition on bad triangle or line
/// choices and NotVerifiedEmbedding if e fails verification.
SlopeCertificate slope_certificate(const AntipodalPlane& ap, const Plane& plane, const Embedding& e,
                                   std::optional<std::array<std::uint32_t, 3>> triangle = std::nullopt,
                                   std::optional<std::uint32_t> line = std::nullopt);

}  // namespace planecode

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace planecode {

enum class ErrorCode {
    InvalidArgument,
    NotPrime,
    ReducibleModulus,
    DivisionByZero,
    AxiomViolation,
    BadShape,
    SamePoint,
    SameLine,
    NotGenerated,
    NotSquareOrder,
    NotThroughVertex,
    TriangleSide,
    PrimeMismatch,
    LengthMismatch,
    BudgetExceeded,
    NotSecant,
    NotDisjoint,
    NotVerifiedEmbedding,
    NotDualWord,
    StructureMismatch,
    NotAntipodal,
    UnsupportedOrder,
    NotARoot,
    NotFound,
    NoQuadrangle,
    Precondition,
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying a machine-readable code and a human-readable detail.
/// Every failure surfaced by the library is an Error; the CLI maps it to exit
/// status 1 and a structured record.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace planecode

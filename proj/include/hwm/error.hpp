#pragma once

#include <stdexcept>
#include <string>

namespace hwm {

enum class ErrorCode {
    // structural validation
    MissingPort,
    DuplicatePort,
    UnknownSymbol,
    UnknownVertex,
    DuplicateVertex,
    DuplicateSymbol,
    EmptyHyperedge,
    EmptyGraph,
    ArityMismatch,
    AlphabetMismatch,
    // tensors / algebras
    BasisMismatch,
    InvalidLabel,
    NotDense,
    NotSymmetric,
    NotAssociative,
    NotSquare,
    NotReal,
    ModeOutOfRange,
    ShapeMismatch,
    // encodings
    EmptyWord,
    OddLength,
    DegenerateRep,
    DimensionMismatch,
    InvalidTree,
    // engines
    WrongAlgebra,
    BudgetExceeded,
    // tiling
    InvalidMap,
    ZeroSelfValue,
    // io
    SchemaError,
    InvalidConfig,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception. Carries a code so callers (CLI, tests) can
/// distinguish validation, budget and schema failures.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// Process exit code mapping: 2 validation, 3 budget, 4 schema.
    int exit_code() const noexcept {
        switch (code_) {
            case ErrorCode::BudgetExceeded: return 3;
            case ErrorCode::SchemaError: return 4;
            default: return 2;
        }
    }

private:
    ErrorCode code_;
};

} // namespace hwm

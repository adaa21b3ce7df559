#include "hwm/error.hpp"

namespace hwm {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingPort: return "MissingPort";
        case ErrorCode::DuplicatePort: return "DuplicatePort";
        case ErrorCode::UnknownSymbol: return "UnknownSymbol";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::DuplicateVertex: return "DuplicateVertex";
        case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
        case ErrorCode::EmptyHyperedge: return "EmptyHyperedge";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorCode::BasisMismatch: return "BasisMismatch";
        case ErrorCode::InvalidLabel: return "InvalidLabel";
        case ErrorCode::NotDense: return "NotDense";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotAssociative: return "NotAssociative";
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotReal: return "NotReal";
        case ErrorCode::ModeOutOfRange: return "ModeOutOfRange";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::EmptyWord: return "EmptyWord";
        case ErrorCode::OddLength: return "OddLength";
        case ErrorCode::DegenerateRep: return "DegenerateRep";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidTree: return "InvalidTree";
        case ErrorCode::WrongAlgebra: return "WrongAlgebra";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::InvalidMap: return "InvalidMap";
        case ErrorCode::ZeroSelfValue: return "ZeroSelfValue";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "UnknownError";
}

} // namespace hwm

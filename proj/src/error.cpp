#include "cornerlab/error.hpp"

namespace cornerlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::WrongDomain: return "WrongDomain";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotACorner: return "NotACorner";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::WrongResidue: return "WrongResidue";
    case ErrorCode::InfeasibleDomain: return "InfeasibleDomain";
    case ErrorCode::WrongColorCount: return "WrongColorCount";
    case ErrorCode::NotQuadraticResidue: return "NotQuadraticResidue";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CorruptCheckpoint: return "CorruptCheckpoint";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cornerlab

#include "vidshift/error.hpp"

namespace vidshift {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::FrameTooSmall: return "FrameTooSmall";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CodecFailure: return "CodecFailure";
    case ErrorCode::EncoderNotFound: return "EncoderNotFound";
    case ErrorCode::EncoderFailure: return "EncoderFailure";
    case ErrorCode::FrameCountMismatch: return "FrameCountMismatch";
    case ErrorCode::InconsistentLabels: return "InconsistentLabels";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::DivisionByZeroClean: return "DivisionByZeroClean";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IncompleteGrid: return "IncompleteGrid";
    case ErrorCode::ManifestConflict: return "ManifestConflict";
    case ErrorCode::DecodeFailure: return "DecodeFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace vidshift

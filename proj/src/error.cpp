#include "fusegraph/error.hpp"

namespace fusegraph {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingRank: return "MissingRank";
    case ErrorCode::InvalidRankSet: return "InvalidRankSet";
    case ErrorCode::EmptyRank: return "EmptyRank";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::MalformedGraphRecord: return "MalformedGraphRecord";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::BothEmpty: return "BothEmpty";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooManyItems: return "TooManyItems";
    case ErrorCode::RankerMismatch: return "RankerMismatch";
    case ErrorCode::EmptyRankSet: return "EmptyRankSet";
    case ErrorCode::MissingScores: return "MissingScores";
    case ErrorCode::UnknownQuery: return "UnknownQuery";
    case ErrorCode::QuerySetMismatch: return "QuerySetMismatch";
    case ErrorCode::NotEnoughRankers: return "NotEnoughRankers";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateDoc: return "DuplicateDoc";
    case ErrorCode::RankGap: return "RankGap";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fusegraph

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fusegraph {

/// Failure categories. The CLI prints the category name so scripts can
/// dispatch on it.
enum class ErrorCode {
  MissingRank,
  InvalidRankSet,
  EmptyRank,
  EmptyGraph,
  MalformedGraphRecord,
  UnsupportedVersion,
  BothEmpty,
  TooLarge,
  TooManyItems,
  RankerMismatch,
  EmptyRankSet,
  MissingScores,
  UnknownQuery,
  QuerySetMismatch,
  NotEnoughRankers,
  IncompleteTable,
  LengthMismatch,
  ParseError,
  DuplicateDoc,
  RankGap,
  InvalidArgument,
  IoError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fusegraph

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spacer {

enum class ErrorCode {
  EmptyKeyword,
  ParseError,
  DuplicateDoi,
  UnknownRecord,
  SetTooSmall,
  NoScorableSets,
  EmptyGraph,
  DegenerateLabels,
  InsufficientStratum,
  DimensionMismatch,
  EmptySample,
  RankDeficient,
  SingularScatter,
  InvalidGraph,
  NoValidGraph,
  GeneratorFailure,
  MalformedJudgment,
  InvalidSpec,
  InvalidArgument,
  Io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyKeyword: return "EmptyKeyword";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateDoi: return "DuplicateDoi";
    case ErrorCode::UnknownRecord: return "UnknownRecord";
    case ErrorCode::SetTooSmall: return "SetTooSmall";
    case ErrorCode::NoScorableSets: return "NoScorableSets";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::InsufficientStratum: return "InsufficientStratum";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::SingularScatter: return "SingularScatter";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::NoValidGraph: return "NoValidGraph";
    case ErrorCode::GeneratorFailure: return "GeneratorFailure";
    case ErrorCode::MalformedJudgment: return "MalformedJudgment";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Library-wide exception. Every failure raised by spacer carries a code so
/// callers (and the CLI's exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by ingest; carries the 1-based input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace spacer

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace t2i {

enum class ErrorCode {
  // ingestion
  EmptyFile,
  RaggedRow,
  NotUtf8,
  // sql
  ParseError,
  UnresolvedIdentifiers,
  UnknownColumn,
  TypeMismatch,
  InvalidGrouping,
  // translation
  OffTopic,
  LlmTimeout,
  LlmHttpError,
  LlmMalformedOutput,
  // charting
  EmptyDataset,
  NoSuitableChart,
  InapplicableChart,
  // evaluation
  EmptyInput,
  EmptyMatrix,
  MalformedPairFile,
  // service
  UnknownDataset,
  ConfigError,
  IoError,
  BadRequest,
};

std::string_view to_string(ErrorCode code);

/// Service-level code string (EMPTY_FILE, PARSE_ERROR, ...) used in JSON
/// error payloads.
std::string_view wire_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace t2i

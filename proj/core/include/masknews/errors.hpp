#pragma once

#include <stdexcept>
#include <string>

namespace masknews {

// Failure categories surfaced to callers; the CLI maps these onto exit codes.
enum class ErrorCode {
  missing_file,
  malformed_record,
  duplicate_id,
  invalid_orientation,
  duplicate_word,
  empty_lexicon,
  empty_vocabulary,
  missing_label,
  unbalanced_publishers,
  invalid_plan,
  length_mismatch,
  invalid_argument,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace masknews

#include "masknews/errors.hpp"

namespace masknews {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::missing_file: return "MissingFile";
    case ErrorCode::malformed_record: return "MalformedRecord";
    case ErrorCode::duplicate_id: return "DuplicateId";
    case ErrorCode::invalid_orientation: return "InvalidOrientation";
    case ErrorCode::duplicate_word: return "DuplicateWord";
    case ErrorCode::empty_lexicon: return "EmptyLexicon";
    case ErrorCode::empty_vocabulary: return "EmptyVocabulary";
    case ErrorCode::missing_label: return "MissingLabel";
    case ErrorCode::unbalanced_publishers: return "UnbalancedPublishers";
    case ErrorCode::invalid_plan: return "InvalidPlan";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace masknews

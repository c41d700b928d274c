#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "masknews/corpus.hpp"
#include "masknews/lexicon.hpp"

namespace masknews {

enum class TokenKind { word, number };

struct TokenSpan {
  std::size_t start = 0;  // byte offset into the source text
  std::size_t end = 0;    // exclusive
  std::string_view surface;
  TokenKind kind = TokenKind::word;
};

// topic: mask words in the frequent set, keeping content words.
// style: mask words outside the frequent set (and all numbers), keeping
//        frequent function words.
// identity: mask nothing.
enum class MaskMode { topic, style, identity };

std::string_view to_string(MaskMode mode) noexcept;
std::optional<MaskMode> mask_mode_from_string(std::string_view s) noexcept;

struct MaskedText {
  std::string text;
  MaskMode mode = MaskMode::identity;
  std::size_t k_used = 0;
};

// Tokens are maximal runs of ASCII alphanumeric characters; everything
// else, including non-ASCII code points, is inter-token material. A token
// is a number iff every character is a decimal digit.
std::vector<TokenSpan> tokenize(std::string_view text);

// Masking predicate for a single token. Membership is tested on the
// lowercased surface; a number token's fate depends on the mode alone.
bool mask_token(const TokenSpan& token, const WordSet& wordset, MaskMode mode);

// Replaces each masked word with "*" and each masked number with "#",
// preserving all inter-token bytes verbatim.
MaskedText mask_text(std::string_view text, const WordSet& wordset,
                     MaskMode mode);

// Applies mask_text to every article body; ids, labels, publishers and
// titles are unchanged.
Corpus mask_corpus(const Corpus& corpus, const WordSet& wordset,
                   MaskMode mode);

}  // namespace masknews

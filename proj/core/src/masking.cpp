#include "masknews/masking.hpp"

#include "masknews/text.hpp"

namespace masknews {

std::string_view to_string(MaskMode mode) noexcept {
  switch (mode) {
    case MaskMode::topic: return "topic";
    case MaskMode::style: return "style";
    case MaskMode::identity: return "identity";
  }
  return "identity";
}

std::optional<MaskMode> mask_mode_from_string(std::string_view s) noexcept {
  if (s == "topic") return MaskMode::topic;
  if (s == "style") return MaskMode::style;
  if (s == "identity") return MaskMode::identity;
  return std::nullopt;
}

std::vector<TokenSpan> tokenize(std::string_view text) {
  std::vector<TokenSpan> tokens;
  std::size_t i = 0;
  const std::size_t size = text.size();
  while (i < size) {
    if (!is_ascii_alnum(text[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    bool all_digits = true;
    while (i < size && is_ascii_alnum(text[i])) {
      all_digits = all_digits && is_ascii_digit(text[i]);
      ++i;
    }
    tokens.push_back({start, i, text.substr(start, i - start),
                      all_digits ? TokenKind::number : TokenKind::word});
  }
  return tokens;
}

bool mask_token(const TokenSpan& token, const WordSet& wordset,
                MaskMode mode) {
  switch (mode) {
    case MaskMode::identity:
      return false;
    case MaskMode::topic:
      // Keep content words and all numbers.
      return token.kind == TokenKind::word &&
             wordset.contains(ascii_lower(token.surface));
    case MaskMode::style:
      // Keep only frequent words; numbers always become '#'.
      return token.kind == TokenKind::number ||
             !wordset.contains(ascii_lower(token.surface));
  }
  return false;
}

MaskedText mask_text(std::string_view text, const WordSet& wordset,
                     MaskMode mode) {
  MaskedText result;
  result.mode = mode;
  result.k_used = wordset.k;
  if (mode == MaskMode::identity) {
    result.text.assign(text);
    return result;
  }

  std::string out;
  out.reserve(text.size());
  std::size_t prev = 0;
  for (const TokenSpan& token : tokenize(text)) {
    out.append(text.substr(prev, token.start - prev));
    if (mask_token(token, wordset, mode)) {
      out.push_back(token.kind == TokenKind::number ? '#' : '*');
    } else {
      out.append(token.surface);
    }
    prev = token.end;
  }
  out.append(text.substr(prev));
  result.text = std::move(out);
  return result;
}

Corpus mask_corpus(const Corpus& corpus, const WordSet& wordset,
                   MaskMode mode) {
  Corpus masked;
  masked.articles.reserve(corpus.size());
  for (const Article& article : corpus.articles) {
    Article copy = article;
    copy.text = mask_text(article.text, wordset, mode).text;
    masked.articles.push_back(std::move(copy));
  }
  return masked;
}

}  // namespace masknews

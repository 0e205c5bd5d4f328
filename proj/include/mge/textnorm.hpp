// Copyright 2026 The mge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text normalization and tokenization shared by references, annotated forms
// and hypotheses. Everything that is compared goes through normalize() and
// tokenize(), so the matching rules live in exactly one place.

#pragma once

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mge {

namespace detail {

inline const icu::Normalizer2& NfcInstance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) {
    throw std::runtime_error(std::string("ICU NFC normalizer unavailable: ") +
                             u_errorName(status));
  }
  return *nfc;
}

inline std::string ToUtf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

inline icu::UnicodeString NfcOf(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = NfcInstance().normalize(s, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error(std::string("NFC normalization failed: ") +
                             u_errorName(status));
  }
  return out;
}

inline bool IsDash(UChar32 c) {
  return u_charType(c) == U_DASH_PUNCTUATION;
}

// Whitespace, control characters, apostrophes and every punctuation
// character except dashes. Dashes are decided by context in tokenize().
inline bool IsBoundary(UChar32 c) {
  if (c < 0) return true;
  if (c == 0x27 || c == 0x2019) return true;
  if (u_isUWhiteSpace(c) || u_iscntrl(c)) return true;
  return u_ispunct(c) && !IsDash(c);
}

}  // namespace detail

/// True iff `text` is well-formed UTF-8.
inline bool is_valid_utf8(std::string_view text) {
  if (text.empty()) return true;
  UErrorCode status = U_ZERO_ERROR;
  int32_t needed = 0;
  u_strFromUTF8(nullptr, 0, &needed, text.data(),
                static_cast<int32_t>(text.size()), &status);
  return status == U_BUFFER_OVERFLOW_ERROR || U_SUCCESS(status) ||
         status == U_STRING_NOT_TERMINATED_WARNING;
}

/// Canonical composition (NFC) without case change. Used for free-text
/// corpus fields that are stored, not compared.
inline std::string nfc(std::string_view text) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  return detail::ToUtf8(detail::NfcOf(u));
}

/// NFC plus root-locale lowercasing. Idempotent.
inline std::string normalize(std::string_view text) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u = detail::NfcOf(u);
  u.toLower(icu::Locale::getRoot());
  return detail::ToUtf8(detail::NfcOf(u));
}

/// Splits normalized text into word tokens.
///
/// Whitespace and punctuation separate tokens and are dropped. Both the ASCII
/// apostrophe and U+2019 separate tokens, so elided articles survive as their
/// own token ("l'une" -> "l", "une"). A dash is kept only when it sits
/// between two word characters ("porte-parole" stays one token).
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());

  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };

  int32_t i = 0;
  bool last_was_word_char = false;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (detail::IsBoundary(c)) {
      flush();
      last_was_word_char = false;
      continue;
    }
    if (detail::IsDash(c)) {
      bool next_is_word_char = false;
      if (i < length) {
        int32_t j = i;
        UChar32 next;
        U8_NEXT(bytes, j, length, next);
        next_is_word_char = !detail::IsBoundary(next) && !detail::IsDash(next);
      }
      if (last_was_word_char && next_is_word_char) {
        current.append(text.substr(start, i - start));
      } else {
        flush();
      }
      last_was_word_char = false;
      continue;
    }
    current.append(text.substr(start, i - start));
    last_was_word_char = true;
  }
  flush();
  return tokens;
}

/// tokenize(normalize(text)).
inline std::vector<std::string> normalized_tokens(std::string_view text) {
  return tokenize(normalize(text));
}

/// Occurrence counts of tokens. Keys with a zero count are erased, so every
/// present key has count >= 1.
class TokenMultiset {
 public:
  TokenMultiset() = default;

  explicit TokenMultiset(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) add(t);
  }

  void add(const std::string& token, std::size_t n = 1) {
    if (n == 0) return;
    counts_[token] += n;
    total_ += n;
  }

  std::size_t count(std::string_view token) const {
    auto it = counts_.find(token);
    return it == counts_.end() ? 0 : it->second;
  }

  /// Consumes one occurrence. Returns false if none is left.
  bool take(std::string_view token) {
    auto it = counts_.find(token);
    if (it == counts_.end()) return false;
    if (--it->second == 0) counts_.erase(it);
    --total_;
    return true;
  }

  std::size_t total() const { return total_; }
  std::size_t distinct() const { return counts_.size(); }
  bool empty() const { return total_ == 0; }

  const std::map<std::string, std::size_t, std::less<>>& counts() const {
    return counts_;
  }

  friend bool operator==(const TokenMultiset&, const TokenMultiset&) = default;

 private:
  std::map<std::string, std::size_t, std::less<>> counts_;
  std::size_t total_ = 0;
};

inline TokenMultiset to_multiset(const std::vector<std::string>& tokens) {
  return TokenMultiset(tokens);
}

}  // namespace mge

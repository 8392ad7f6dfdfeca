#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vtag {

using TokenStream = std::vector<std::string>;

/// Splits `text` into lowercase tokens. ASCII whitespace and punctuation
/// separate tokens; ASCII letters are lowercased; bytes >= 0x80 (UTF-8
/// multibyte sequences) count as word characters and pass through untouched.
/// Empty fragments are dropped, so the result never contains an empty token.
TokenStream tokenize(std::string_view text);

/// Removes every token present in the embedded stop-word list, keeping the
/// relative order of the survivors.
TokenStream remove_stopwords(const TokenStream& tokens);

bool is_stopword(std::string_view token);

/// The embedded stop-word list (lowercase, sorted, duplicate-free). The list
/// lives in data/stopwords.txt and is compiled into the binary.
const std::vector<std::string>& stopword_list();

/// Splits on ASCII whitespace only, preserving token bytes exactly.
TokenStream split_whitespace(std::string_view text);

/// Joins tokens with single spaces.
std::string join_tokens(const TokenStream& tokens);

}  // namespace vtag

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pekg {

// A grapheme cluster is the atomic text unit everywhere in the pipeline.
using Graphemes = std::vector<std::string>;

// Extended grapheme clusters of a UTF-8 string (ICU break iterator).
Graphemes split_graphemes(std::string_view utf8);

std::string join(const Graphemes& g, std::size_t begin, std::size_t end);
inline std::string join(const Graphemes& g) { return join(g, 0, g.size()); }

bool is_whitespace_grapheme(std::string_view grapheme);

// Case fold plus full-width to half-width mapping. Never changes the number
// of graphemes, so folded sequences stay index-aligned with the original.
std::string fold_grapheme(std::string_view grapheme);

// Label normalization: width fold, case fold, whitespace runs collapsed to a
// single space, trimmed. Idempotent.
std::string normalize(std::string_view surface);

// Splits raw text at 。 ． . ! ? ; ； and newlines. Delimiters are dropped,
// surrounding whitespace trimmed, empty pieces skipped.
std::vector<std::string> split_sentences(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace pekg

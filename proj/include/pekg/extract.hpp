// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pekg/lexicon.hpp"
#include "pekg/segmenter.hpp"
#include "pekg/types.hpp"

namespace pekg {

// A dictionary hit on one token. Category is never None.
struct Mention {
    std::string surface;
    Category category = Category::E1;
    std::string sentence_id;
    std::size_t token_index = 0;  // ordinal among the sentence's non-whitespace tokens
    std::string canonical;

    bool operator==(const Mention&) const = default;
};

// Drops whitespace tokens and tokens without a categorized dictionary entry.
// canonical = alias target when the entry names one, else normalize(surface).
// Self-canonical relation words keep the entry spelling instead.
std::vector<Mention> tag_tokens(const std::vector<Token>& tokens, const Lexicon& lexicon,
                                const std::string& sentence_id = {});

struct Endpoint {
    std::string label;
    EntityKind kind = EntityKind::E1;

    auto operator<=>(const Endpoint&) const = default;
};

struct CandidateTriple {
    Endpoint subject;
    Predicate predicate;
    Endpoint object;
    Provenance provenance;
};

// Relation classification over one sentence's mentions. Each relation word is
// paired with the nearest entity mention on either side and checked against
// the allowed category combinations; E1 and P mentions that sit next to each
// other (at most one word apart) yield an `occurs` fact.
std::vector<CandidateTriple> extract_relations(const std::vector<Mention>& mentions);

// Window, in non-whitespace tokens, within which an E1 and a P mention
// trigger an `occurs` fact.
inline constexpr std::size_t kOccursWindow = 2;

}  // namespace pekg

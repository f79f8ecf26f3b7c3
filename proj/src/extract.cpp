// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/extract.hpp"

#include <optional>

#include "pekg/text.hpp"

namespace pekg {

std::vector<Mention> tag_tokens(const std::vector<Token>& tokens, const Lexicon& lexicon,
                                const std::string& sentence_id) {
    std::vector<Mention> out;
    std::size_t ordinal = 0;
    for (const auto& tok : tokens) {
        if (is_whitespace_grapheme(tok.surface)) continue;
        std::size_t index = ordinal++;
        const LexiconEntry* entry = lexicon.lookup(tok.surface);
        if (!entry || entry->category == Category::None) continue;
        Mention m;
        m.surface = tok.surface;
        m.category = entry->category;
        m.sentence_id = sentence_id;
        m.token_index = index;
        if (is_relation_category(entry->category)) {
            m.canonical = lexicon.canonical_of(*entry);
        } else {
            m.canonical = entry->canonical ? *entry->canonical : normalize(tok.surface);
        }
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

Provenance text_provenance(const Mention& m) { return {ProvenanceKind::Text, m.sentence_id}; }

Endpoint endpoint(const Mention& m) { return {m.canonical, entity_kind_of(m.category)}; }

std::optional<CandidateTriple> classify(const Mention& left, const Mention& rel, const Mention& right) {
    const Category a = left.category;
    const Category b = right.category;
    const Category r = rel.category;
    if (normalize(left.canonical) == normalize(right.canonical)) return std::nullopt;

    auto pair_is = [&](Category x, Category y) { return (a == x && b == y) || (a == y && b == x); };
    const Mention* subject = nullptr;
    const Mention* object = nullptr;
    PredicateCategory pc{};

    if (r == Category::R1 && a == Category::E1 && b == Category::E1) {
        subject = &left;
        object = &right;
        pc = PredicateCategory::R1;
    } else if (r == Category::R2 && pair_is(Category::E1, Category::E2)) {
        subject = a == Category::E2 ? &left : &right;
        object = a == Category::E2 ? &right : &left;
        pc = PredicateCategory::R2;
    } else if (r == Category::R3 && pair_is(Category::E1, Category::E3)) {
        subject = a == Category::E3 ? &left : &right;
        object = a == Category::E3 ? &right : &left;
        pc = PredicateCategory::R3;
    } else {
        return std::nullopt;
    }

    Predicate pred{rel.canonical, pc, pc == PredicateCategory::R1 && is_symmetric_predicate(rel.canonical)};
    CandidateTriple t{endpoint(*subject), std::move(pred), endpoint(*object), text_provenance(rel)};
    if (t.predicate.symmetric && t.object.label < t.subject.label) std::swap(t.subject, t.object);
    return t;
}

}  // namespace

std::vector<CandidateTriple> extract_relations(const std::vector<Mention>& mentions) {
    std::vector<CandidateTriple> out;
    const std::size_t n = mentions.size();

    for (std::size_t i = 0; i < n; ++i) {
        const Mention& rel = mentions[i];
        if (!is_relation_category(rel.category)) continue;
        std::optional<std::size_t> left, right;
        for (std::size_t j = i; j-- > 0;) {
            if (is_entity_category(mentions[j].category)) {
                left = j;
                break;
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (is_entity_category(mentions[j].category)) {
                right = j;
                break;
            }
        }
        if (!left || !right) continue;
        if (auto t = classify(mentions[*left], rel, mentions[*right])) out.push_back(std::move(*t));
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Mention& x = mentions[i];
        const Mention& y = mentions[i + 1];
        const Mention* equipment = nullptr;
        const Mention* phenomenon = nullptr;
        if (x.category == Category::E1 && y.category == Category::P) {
            equipment = &x;
            phenomenon = &y;
        } else if (x.category == Category::P && y.category == Category::E1) {
            equipment = &y;
            phenomenon = &x;
        } else {
            continue;
        }
        if (y.token_index - x.token_index > kOccursWindow) continue;
        out.push_back({endpoint(*equipment), make_predicate(predicates::kOccurs), endpoint(*phenomenon),
                       text_provenance(*equipment)});
    }
    return out;
}

}  // namespace pekg

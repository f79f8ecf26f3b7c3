// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pekg/triple_store.hpp"

namespace pekg {

// `?name` is a variable; anything else is a constant (entity label or
// predicate name, depending on position).
struct Term {
    bool variable = false;
    std::string text;

    bool operator==(const Term&) const = default;
};

struct TriplePattern {
    Term s, p, o;

    bool operator==(const TriplePattern&) const = default;
};

// Horn rule over triple patterns: premises => conclusion.
struct InferenceRule {
    std::string name;
    std::vector<TriplePattern> premises;
    TriplePattern conclusion;
};

using RuleSet = std::vector<InferenceRule>;

// Rejects rules whose conclusion introduces unbound variables, and variables
// used both as predicate and as entity.
void validate(const InferenceRule& rule);

// One rule per line: `name: (s,p,o) & (s,p,o) => (s,p,o)`. '#' starts a comment line.
RuleSet parse_rules(std::string_view text);
RuleSet load_rules(const std::string& path);
std::string format_rule(const InferenceRule& rule);

// BelongTo transitivity.
RuleSet default_rules();

struct DerivedTriple {
    EntityId s = 0;
    std::string predicate;
    EntityId o = 0;
    std::vector<std::string> rules;  // every rule that produced it
};

// Forward chaining (semi-naive) to the fixpoint over the store's triples.
// Returns only facts absent from the store; no new entities are created.
std::vector<DerivedTriple> saturate(const GraphStore& store, const RuleSet& rules);

// Inserts derived facts flagged as derived, with Derived(rule) provenance.
void apply_derived(GraphStore& store, const std::vector<DerivedTriple>& derived);

}  // namespace pekg

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace pekg {

// Dictionary tag categories. None marks words that carry no graph meaning.
enum class Category { E1, E2, E3, R1, R2, R3, P, None };

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view token);  // accepts "-" for None
bool is_entity_category(Category c);    // E1 E2 E3 P
bool is_relation_category(Category c);  // R1 R2 R3

// Kinds of graph nodes. Text mentions produce E1/E2/E3/P; structured
// documents also produce ontology classes, stations, systems and companies.
enum class EntityKind { E1, E2, E3, P, Class, Station, System, Company };

std::string_view to_string(EntityKind k);
std::optional<EntityKind> parse_entity_kind(std::string_view token);
EntityKind entity_kind_of(Category c);  // requires is_entity_category(c)

// System and Company refine E2; all other kinds only agree with themselves.
bool kinds_compatible(EntityKind a, EntityKind b);
// The more specific of two compatible kinds.
EntityKind merge_kinds(EntityKind a, EntityKind b);

enum class ProvenanceKind { Structured, Text, Derived };

struct Provenance {
    ProvenanceKind kind = ProvenanceKind::Text;
    std::string source_id;  // document/sentence id, or rule name for Derived

    auto operator<=>(const Provenance&) const = default;
};

std::string_view to_string(ProvenanceKind k);
std::optional<ProvenanceKind> parse_provenance_kind(std::string_view token);

enum class PredicateCategory { R1, R2, R3, Occurs };

struct Predicate {
    std::string name;
    PredicateCategory category = PredicateCategory::R1;
    bool symmetric = false;

    bool operator==(const Predicate&) const = default;
};

namespace predicates {
inline constexpr std::string_view kBelongTo = "BelongTo";
inline constexpr std::string_view kConnect = "Connect";
inline constexpr std::string_view kOperate = "Operate";
inline constexpr std::string_view kManage = "Manage";
inline constexpr std::string_view kManufacture = "Manufacture";
inline constexpr std::string_view kControl = "Control";
inline constexpr std::string_view kOccurs = "occurs";
}  // namespace predicates

// Built-in vocabulary lookup; unknown names fall back to an asymmetric
// predicate of the given category.
Predicate make_predicate(std::string_view name, PredicateCategory fallback = PredicateCategory::R1);
bool is_symmetric_predicate(std::string_view name);

}  // namespace pekg

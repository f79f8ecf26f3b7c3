// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/types.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace pekg {

namespace {

constexpr std::array<std::pair<Category, std::string_view>, 8> kCategoryNames{{
    {Category::E1, "E1"},
    {Category::E2, "E2"},
    {Category::E3, "E3"},
    {Category::R1, "R1"},
    {Category::R2, "R2"},
    {Category::R3, "R3"},
    {Category::P, "P"},
    {Category::None, "-"},
}};

constexpr std::array<std::pair<EntityKind, std::string_view>, 8> kKindNames{{
    {EntityKind::E1, "E1"},
    {EntityKind::E2, "E2"},
    {EntityKind::E3, "E3"},
    {EntityKind::P, "P"},
    {EntityKind::Class, "Class"},
    {EntityKind::Station, "Station"},
    {EntityKind::System, "System"},
    {EntityKind::Company, "Company"},
}};

bool refines_e2(EntityKind k) { return k == EntityKind::System || k == EntityKind::Company; }

}  // namespace

std::string_view to_string(Category c) {
    for (const auto& [cat, name] : kCategoryNames)
        if (cat == c) return name;
    return "-";
}

std::optional<Category> parse_category(std::string_view token) {
    for (const auto& [cat, name] : kCategoryNames)
        if (name == token) return cat;
    return std::nullopt;
}

bool is_entity_category(Category c) {
    return c == Category::E1 || c == Category::E2 || c == Category::E3 || c == Category::P;
}

bool is_relation_category(Category c) {
    return c == Category::R1 || c == Category::R2 || c == Category::R3;
}

std::string_view to_string(EntityKind k) {
    for (const auto& [kind, name] : kKindNames)
        if (kind == k) return name;
    return "E1";
}

std::optional<EntityKind> parse_entity_kind(std::string_view token) {
    for (const auto& [kind, name] : kKindNames)
        if (name == token) return kind;
    return std::nullopt;
}

EntityKind entity_kind_of(Category c) {
    switch (c) {
        case Category::E1: return EntityKind::E1;
        case Category::E2: return EntityKind::E2;
        case Category::E3: return EntityKind::E3;
        case Category::P: return EntityKind::P;
        default: throw std::invalid_argument("not an entity category");
    }
}

bool kinds_compatible(EntityKind a, EntityKind b) {
    if (a == b) return true;
    return (a == EntityKind::E2 && refines_e2(b)) || (b == EntityKind::E2 && refines_e2(a));
}

EntityKind merge_kinds(EntityKind a, EntityKind b) { return a == EntityKind::E2 ? b : a; }

std::string_view to_string(ProvenanceKind k) {
    switch (k) {
        case ProvenanceKind::Structured: return "Structured";
        case ProvenanceKind::Text: return "Text";
        case ProvenanceKind::Derived: return "Derived";
    }
    return "Text";
}

std::optional<ProvenanceKind> parse_provenance_kind(std::string_view token) {
    if (token == "Structured") return ProvenanceKind::Structured;
    if (token == "Text") return ProvenanceKind::Text;
    if (token == "Derived") return ProvenanceKind::Derived;
    return std::nullopt;
}

Predicate make_predicate(std::string_view name, PredicateCategory fallback) {
    using namespace predicates;
    if (name == kConnect) return {std::string(name), PredicateCategory::R1, true};
    if (name == kBelongTo) return {std::string(name), PredicateCategory::R1, false};
    if (name == kOperate || name == kManage || name == kControl)
        return {std::string(name), PredicateCategory::R2, false};
    if (name == kManufacture) return {std::string(name), PredicateCategory::R3, false};
    if (name == kOccurs) return {std::string(name), PredicateCategory::Occurs, false};
    return {std::string(name), fallback, false};
}

bool is_symmetric_predicate(std::string_view name) { return name == predicates::kConnect; }

}  // namespace pekg

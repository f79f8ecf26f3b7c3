// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pekg/extract.hpp"
#include "pekg/fusion.hpp"
#include "pekg/types.hpp"

namespace pekg {

using EntityId = std::uint32_t;
using PredicateId = std::uint32_t;

struct EntityRecord {
    EntityId id = 0;
    std::string label;
    EntityKind category = EntityKind::E1;
    std::set<std::string> aliases;
};

struct TripleKey {
    EntityId s = 0;
    PredicateId p = 0;
    EntityId o = 0;

    auto operator<=>(const TripleKey&) const = default;
};

struct Triple {
    TripleKey key;
    std::vector<Provenance> provenance;
    bool derived = false;
};

enum class Direction { Out, In };
std::string_view to_string(Direction d);

struct Neighbor {
    const Triple* triple = nullptr;
    Direction direction = Direction::Out;
    EntityId other = 0;
};

// In-memory triple graph with three sorted permutation indexes.
//
// Not internally synchronized: callers either own the store exclusively while
// writing or share it read-only (the query service swaps immutable snapshots).
class GraphStore {
public:
    // Returns the id for `label`, creating the entity when needed. A label whose
    // normalized form matches an existing entity resolves to that entity.
    // Throws CategoryConflict or InvalidLabel.
    EntityId ensure_entity(std::string_view label, EntityKind kind);
    void add_alias(EntityId id, std::string_view alias);

    // Returns true when the triple was new. Re-inserting merges provenance; an
    // asserted insert over a derived triple clears the derived flag, and a
    // derived insert never shadows an asserted triple.
    bool insert(EntityId s, std::string_view predicate, EntityId o, std::vector<Provenance> provenance,
                bool derived = false);
    bool insert(const CandidateTriple& t);
    bool insert(const FusedTriple& t);

    std::optional<EntityId> find_label(std::string_view label) const;
    // Normalized label or normalized alias.
    std::optional<EntityId> find_normalized(std::string_view query) const;

    const EntityRecord& entity(EntityId id) const;
    bool has_entity(EntityId id) const noexcept { return id < entities_.size(); }
    const std::vector<EntityRecord>& entities() const noexcept { return entities_; }
    std::size_t entity_count() const noexcept { return entities_.size(); }

    std::optional<PredicateId> predicate_id(std::string_view name) const;
    const Predicate& predicate(PredicateId id) const { return predicates_.at(id); }
    const std::string& predicate_name(PredicateId id) const { return predicates_.at(id).name; }
    std::size_t predicate_count() const noexcept { return predicates_.size(); }

    const Triple* find(const TripleKey& key) const;
    std::vector<const Triple*> match(std::optional<EntityId> s, std::optional<PredicateId> p,
                                     std::optional<EntityId> o) const;

    // Every triple touching `id`, sorted by (predicate name, other label).
    // Symmetric predicates are reported Out from either endpoint.
    std::vector<Neighbor> neighbors(EntityId id) const;

    std::size_t size() const noexcept { return spo_.size(); }
    std::size_t derived_count() const noexcept;
    const std::map<TripleKey, Triple>& triples() const noexcept { return spo_; }

    void remove_derived();

    // True when all three indexes hold the same triple set.
    bool indexes_coherent() const;

private:
    PredicateId intern_predicate(std::string_view name);

    std::vector<EntityRecord> entities_;
    std::unordered_map<std::string, EntityId> by_label_;
    std::unordered_map<std::string, EntityId> by_normalized_;
    std::unordered_map<std::string, EntityId> by_alias_;

    std::vector<Predicate> predicates_;
    std::unordered_map<std::string, PredicateId> predicate_ids_;

    std::map<TripleKey, Triple> spo_;
    std::set<std::array<std::uint32_t, 3>> pos_;
    std::set<std::array<std::uint32_t, 3>> osp_;
};

// Line-oriented graph file. Entities sorted by label and triples by labels, so
// equal graphs serialize to identical bytes.
std::string format_graph(const GraphStore& store, bool include_derived = false);
void save_graph(const GraphStore& store, const std::string& path, bool include_derived = false);
GraphStore parse_graph(std::string_view text);
GraphStore load_graph(const std::string& path);

}  // namespace pekg

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "pekg/lexicon.hpp"
#include "pekg/triple_store.hpp"

namespace pekg {

struct TreeEdge {
    TripleKey key;
    Direction direction = Direction::Out;
    bool derived = false;

    bool operator==(const TreeEdge&) const = default;
};

struct Level {
    std::vector<EntityId> frontier;
    std::vector<TreeEdge> edges;
};

// Level-wise retrieval result. not_found implies no levels.
struct ResultTree {
    std::optional<EntityId> root;
    std::vector<Level> levels;
    bool not_found = false;

    std::size_t edge_count() const;
};

// Interactive exploration state. The caller owns it; the store is never
// mutated by queries.
struct Session {
    ResultTree tree;
    std::set<EntityId> revealed;
    std::vector<EntityId> path;
    std::set<TripleKey> present;
};

// Exact label, then normalized label or alias, then the lexicon alias target.
// Absence is an ordinary outcome.
std::optional<EntityId> find_entity(const GraphStore& store, std::string_view query,
                                    const Lexicon* lexicon = nullptr);

ResultTree not_found_tree();

// Exhaustive first level: every edge incident to `id` (derived ones included
// when the store carries them).
ResultTree level1(const GraphStore& store, EntityId id);
Session start_session(const GraphStore& store, EntityId id);

// Appends one level holding the targets' edges not yet shown, plus any edge
// linking a newly revealed entity to an entity already on screen. Frontier is
// the set of newly revealed entities. Throws TargetNotRevealed.
Session drill(const Session& session, const GraphStore& store, EntityId target);
Session expand(const Session& session, const GraphStore& store, const std::vector<EntityId>& targets);

// Level 1 followed by (depth - 1) expansions of the previous frontier.
ResultTree neighborhood(const GraphStore& store, EntityId id, std::size_t depth);

struct TraceNode {
    EntityId entity = 0;
    std::optional<EntityId> parent;
    std::optional<TripleKey> via;
    std::size_t depth = 0;
};

// Undirected BFS spanning tree of the connected component, children ordered
// by (predicate, label). Nodes listed in BFS order, root first.
struct TraceTree {
    EntityId root = 0;
    std::vector<TraceNode> nodes;
};

TraceTree trace(const GraphStore& store, EntityId id);

// Undirected shortest path as a triple sequence; among equal lengths the
// lexicographically smallest (predicate, label) sequence wins. nullopt = no path.
std::optional<std::vector<TripleKey>> shortest_path(const GraphStore& store, EntityId from, EntityId to);

}  // namespace pekg

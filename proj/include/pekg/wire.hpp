// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pekg/query_engine.hpp"
#include "pekg/triple_store.hpp"

// Structured payloads shared by the CLI (--json) and the HTTP service, so
// both surfaces emit identical bytes for the same query.
namespace pekg::wire {

using nlohmann::json;

json entity(const GraphStore& store, EntityId id);
json entity_ref(const GraphStore& store, EntityId id);
json edge(const GraphStore& store, const TripleKey& key, Direction direction);
json level(const GraphStore& store, const Level& level);
json tree(const GraphStore& store, const ResultTree& tree);
json search(const GraphStore& store, std::string_view query, std::optional<EntityId> hit);
json path(const GraphStore& store, EntityId from, EntityId to,
          const std::optional<std::vector<TripleKey>>& path);
json trace(const GraphStore& store, const TraceTree& tree);
json error(std::string_view message);

// Stable textual form of a payload.
std::string dump(const json& j);

}  // namespace pekg::wire

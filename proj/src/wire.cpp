// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/wire.hpp"

namespace pekg::wire {

json entity(const GraphStore& store, EntityId id) {
    const EntityRecord& e = store.entity(id);
    return {{"id", e.id},
            {"label", e.label},
            {"category", std::string(to_string(e.category))},
            {"aliases", std::vector<std::string>(e.aliases.begin(), e.aliases.end())}};
}

json entity_ref(const GraphStore& store, EntityId id) {
    const EntityRecord& e = store.entity(id);
    return {{"id", e.id}, {"label", e.label}, {"category", std::string(to_string(e.category))}};
}

json edge(const GraphStore& store, const TripleKey& key, Direction direction) {
    const Triple* t = store.find(key);
    json prov = json::array();
    bool derived = false;
    if (t) {
        derived = t->derived;
        for (const auto& p : t->provenance)
            prov.push_back({{"kind", std::string(to_string(p.kind))}, {"source", p.source_id}});
    }
    return {{"subject", entity_ref(store, key.s)},
            {"predicate", store.predicate_name(key.p)},
            {"object", entity_ref(store, key.o)},
            {"direction", std::string(to_string(direction))},
            {"derived", derived},
            {"provenance", std::move(prov)}};
}

json level(const GraphStore& store, const Level& l) {
    json frontier = json::array();
    for (EntityId id : l.frontier) frontier.push_back(entity_ref(store, id));
    json edges = json::array();
    for (const auto& e : l.edges) edges.push_back(edge(store, e.key, e.direction));
    return {{"frontier", std::move(frontier)}, {"edges", std::move(edges)}};
}

json tree(const GraphStore& store, const ResultTree& t) {
    json levels = json::array();
    for (const auto& l : t.levels) levels.push_back(level(store, l));
    return {{"not_found", t.not_found},
            {"root", t.root ? entity(store, *t.root) : json(nullptr)},
            {"levels", std::move(levels)}};
}

json search(const GraphStore& store, std::string_view query, std::optional<EntityId> hit) {
    if (!hit) return {{"found", false}, {"query", std::string(query)}};
    return {{"found", true}, {"query", std::string(query)}, {"entity", entity(store, *hit)}};
}

json path(const GraphStore& store, EntityId from, EntityId to, const std::optional<std::vector<TripleKey>>& p) {
    json edges = json::array();
    if (p) {
        EntityId at = from;
        for (const TripleKey& k : *p) {
            Direction d = (k.s == at || is_symmetric_predicate(store.predicate_name(k.p))) ? Direction::Out
                                                                                           : Direction::In;
            edges.push_back(edge(store, k, d));
            at = k.s == at ? k.o : k.s;
        }
    }
    return {{"from", entity_ref(store, from)},
            {"to", entity_ref(store, to)},
            {"no_path", !p.has_value()},
            {"length", p ? p->size() : 0},
            {"edges", std::move(edges)}};
}

json trace(const GraphStore& store, const TraceTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
        json via = nullptr;
        if (n.via) via = edge(store, *n.via, n.via->s == *n.parent ? Direction::Out : Direction::In);
        nodes.push_back({{"entity", entity_ref(store, n.entity)},
                         {"parent", n.parent ? json(*n.parent) : json(nullptr)},
                         {"depth", n.depth},
                         {"via", std::move(via)}});
    }
    return {{"root", entity(store, t.root)}, {"nodes", std::move(nodes)}};
}

json error(std::string_view message) { return {{"error", std::string(message)}}; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace pekg::wire

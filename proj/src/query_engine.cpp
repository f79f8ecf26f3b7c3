// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/query_engine.hpp"

#include <deque>
#include <map>

#include "pekg/error.hpp"

namespace pekg {

std::size_t ResultTree::edge_count() const {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.edges.size();
    return n;
}

std::optional<EntityId> find_entity(const GraphStore& store, std::string_view query, const Lexicon* lexicon) {
    if (auto id = store.find_label(query)) return id;
    if (auto id = store.find_normalized(query)) return id;
    if (lexicon) {
        if (const LexiconEntry* e = lexicon->lookup(query); e && e->canonical)
            return store.find_normalized(*e->canonical);
    }
    return std::nullopt;
}

ResultTree not_found_tree() {
    ResultTree t;
    t.not_found = true;
    return t;
}

Session start_session(const GraphStore& store, EntityId id) {
    Session s;
    s.tree.root = id;
    Level level;
    s.revealed.insert(id);
    for (const Neighbor& n : store.neighbors(id)) {
        level.edges.push_back({n.triple->key, n.direction, n.triple->derived});
        s.present.insert(n.triple->key);
        if (s.revealed.insert(n.other).second) level.frontier.push_back(n.other);
    }
    s.tree.levels.push_back(std::move(level));
    return s;
}

ResultTree level1(const GraphStore& store, EntityId id) { return start_session(store, id).tree; }

Session expand(const Session& session, const GraphStore& store, const std::vector<EntityId>& targets) {
    for (EntityId t : targets)
        if (!session.revealed.count(t)) throw TargetNotRevealed(t);

    Session next = session;
    Level level;
    for (EntityId t : targets) {
        for (const Neighbor& n : store.neighbors(t)) {
            if (!next.present.insert(n.triple->key).second) continue;
            level.edges.push_back({n.triple->key, n.direction, n.triple->derived});
            if (next.revealed.insert(n.other).second) level.frontier.push_back(n.other);
        }
        next.path.push_back(t);
    }
    // Newly revealed entities bring along their links to everything on screen.
    for (EntityId f : level.frontier) {
        for (const Neighbor& n : store.neighbors(f)) {
            if (!next.revealed.count(n.other)) continue;
            if (!next.present.insert(n.triple->key).second) continue;
            level.edges.push_back({n.triple->key, n.direction, n.triple->derived});
        }
    }
    next.tree.levels.push_back(std::move(level));
    return next;
}

Session drill(const Session& session, const GraphStore& store, EntityId target) {
    return expand(session, store, {target});
}

ResultTree neighborhood(const GraphStore& store, EntityId id, std::size_t depth) {
    if (!store.has_entity(id)) throw UnknownEntity(id);
    if (depth == 0) {
        ResultTree t;
        t.root = id;
        return t;
    }
    Session s = start_session(store, id);
    for (std::size_t d = 1; d < depth; ++d) {
        std::vector<EntityId> targets = s.tree.levels.back().frontier;
        s = expand(s, store, targets);
    }
    return s.tree;
}

TraceTree trace(const GraphStore& store, EntityId id) {
    if (!store.has_entity(id)) throw UnknownEntity(id);
    TraceTree tree;
    tree.root = id;
    std::vector<bool> seen(store.entity_count(), false);
    seen[id] = true;
    tree.nodes.push_back({id, std::nullopt, std::nullopt, 0});
    for (std::size_t head = 0; head < tree.nodes.size(); ++head) {
        const TraceNode cur = tree.nodes[head];
        for (const Neighbor& n : store.neighbors(cur.entity)) {
            if (seen[n.other]) continue;
            seen[n.other] = true;
            tree.nodes.push_back({n.other, cur.entity, n.triple->key, cur.depth + 1});
        }
    }
    return tree;
}

std::optional<std::vector<TripleKey>> shortest_path(const GraphStore& store, EntityId from, EntityId to) {
    if (!store.has_entity(from)) throw UnknownEntity(from);
    if (!store.has_entity(to)) throw UnknownEntity(to);
    if (from == to) return std::vector<TripleKey>{};

    // BFS with sorted expansion discovers every node through its
    // lexicographically smallest shortest path.
    std::map<EntityId, std::pair<EntityId, TripleKey>> parent;
    std::deque<EntityId> queue{from};
    std::vector<bool> seen(store.entity_count(), false);
    seen[from] = true;
    while (!queue.empty()) {
        EntityId cur = queue.front();
        queue.pop_front();
        for (const Neighbor& n : store.neighbors(cur)) {
            if (seen[n.other]) continue;
            seen[n.other] = true;
            parent[n.other] = {cur, n.triple->key};
            if (n.other == to) {
                std::vector<TripleKey> path;
                for (EntityId at = to; at != from; at = parent[at].first) path.push_back(parent[at].second);
                return std::vector<TripleKey>(path.rbegin(), path.rend());
            }
            queue.push_back(n.other);
        }
    }
    return std::nullopt;
}

}  // namespace pekg

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

// Shared fixtures and brute-force oracles for the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <limits>
#include <map>
#include <netinet/in.h>
#include <random>
#include <set>
#include <string>
#include <sys/socket.h>
#include <sys/wait.h>
#include <tuple>
#include <unistd.h>
#include <vector>

#include "pekg/segmenter.hpp"
#include "pekg/triple_store.hpp"

namespace pekg::testing {

inline std::string fixture(const std::string& rel) { return std::string(PEKG_FIXTURES) + "/" + rel; }

class TempDir {
public:
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "pekg-test-XXXXXX").string();
        path_ = ::mkdtemp(tmpl.data());
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

// Runs a shell command and captures stdout.
inline CommandResult run(const std::string& command) {
    CommandResult r;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) {
        if (c == '\'') q += "'\\''";
        else q += c;
    }
    return q + "'";
}

// An ephemeral loopback port that was free a moment ago.
inline int free_port() {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) return -1;
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    socklen_t len = sizeof addr;
    int port = -1;
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0 &&
        ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0)
        port = ntohs(addr.sin_port);
    ::close(fd);
    return port;
}

inline std::string cli(const std::string& args) { return quote(PEKG_CLI) + " " + args; }

// ---------------------------------------------------------------- segmenter

inline double log_or_neg_inf(double p) {
    return p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

// Random BMES parameters over `alphabet`. Some legal events get probability 0
// so that -inf scores show up in the search.
template <class Rng>
HmmParams random_params(Rng& rng, const std::vector<std::string>& alphabet) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&](std::size_t k) {
        std::vector<double> w(k);
        double total = 0;
        for (auto& x : w) {
            x = u(rng) < 0.1 ? 0.0 : u(rng);
            total += x;
        }
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        for (auto& x : w) x /= total;
        return w;
    };

    HmmParams p;
    p.initial.fill(-std::numeric_limits<double>::infinity());
    for (auto& row : p.transition) row.fill(-std::numeric_limits<double>::infinity());

    std::vector<State> starts;
    for (State s : kStates)
        if (legal_initial(s)) starts.push_back(s);
    auto w = draw(starts.size());
    if (std::all_of(w.begin(), w.end(), [](double x) { return x < 1e-300; })) w[0] = 1;
    for (std::size_t i = 0; i < starts.size(); ++i) p.initial[static_cast<std::size_t>(starts[i])] = log_or_neg_inf(w[i]);

    for (State from : kStates) {
        std::vector<State> to;
        for (State s : kStates)
            if (legal_transition(from, s)) to.push_back(s);
        auto tw = draw(to.size());
        for (std::size_t i = 0; i < to.size(); ++i)
            p.transition[static_cast<std::size_t>(from)][static_cast<std::size_t>(to[i])] = log_or_neg_inf(tw[i]);
    }

    // Emission rows: each state's distribution covers the alphabet plus an
    // unseen bucket.
    std::array<std::vector<double>, kStateCount> per_state;
    for (auto& v : per_state) v = draw(alphabet.size() + 1);
    for (std::size_t g = 0; g < alphabet.size(); ++g) {
        HmmParams::Row row{};
        for (std::size_t s = 0; s < kStateCount; ++s) row[s] = log_or_neg_inf(per_state[s][g]);
        p.emission[alphabet[g]] = row;
    }
    p.unseen_emission_logp = std::log(0.01);
    return p;
}

// Exhaustive search over all 4^n state sequences. Among optimal paths the one
// whose reversed state sequence is smallest (B<M<E<S) wins.
inline Decoding brute_force_viterbi(const Sentence& sentence, const HmmParams& params,
                                    const std::vector<Span>& locked) {
    const auto& g = sentence.graphemes;
    const std::size_t n = g.size();
    auto allowed = allowed_states(sentence, locked);
    Decoding best;
    bool have = false;
    std::vector<State> seq(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= kStateCount;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            seq[i] = kStates[c % kStateCount];
            c /= kStateCount;
        }
        bool legal = legal_initial(seq[0]) && legal_final(seq[n - 1]);
        for (std::size_t i = 0; legal && i < n; ++i) {
            if (!allowed[i][static_cast<std::size_t>(seq[i])]) legal = false;
            if (i > 0 && !legal_transition(seq[i - 1], seq[i])) legal = false;
        }
        if (!legal) continue;
        double score = params.initial[static_cast<std::size_t>(seq[0])] + params.emit(seq[0], g[0]);
        for (std::size_t i = 1; i < n; ++i)
            score = (score + params.transition[static_cast<std::size_t>(seq[i - 1])][static_cast<std::size_t>(seq[i])]) +
                    params.emit(seq[i], g[i]);
        bool better = !have || score > best.logp;
        if (!better && score == best.logp) {
            better = std::lexicographical_compare(seq.rbegin(), seq.rend(), best.states.rbegin(), best.states.rend());
        }
        if (better) {
            best.states = seq;
            best.logp = score;
            have = true;
        }
    }
    return best;
}

// ------------------------------------------------------------- triple store

inline std::string entity_label(std::size_t i) { return "n" + std::to_string(i); }

// Random asserted graph with labels n0..n{entities-1}; no self-loops.
template <class Rng>
GraphStore random_store(Rng& rng, std::size_t entities, std::size_t triples,
                        const std::vector<std::string>& predicates = {"BelongTo", "Connect", "Operate",
                                                                      "Manage", "occurs"}) {
    GraphStore store;
    for (std::size_t i = 0; i < entities; ++i) store.ensure_entity(entity_label(i), EntityKind::E1);
    std::uniform_int_distribution<std::size_t> pick(0, entities - 1);
    std::uniform_int_distribution<std::size_t> pred(0, predicates.size() - 1);
    for (std::size_t k = 0; k < triples; ++k) {
        auto s = static_cast<EntityId>(pick(rng));
        auto o = static_cast<EntityId>(pick(rng));
        if (s == o) continue;
        const std::string& p = predicates[pred(rng)];
        if (p == "Connect" && store.entity(o).label < store.entity(s).label) std::swap(s, o);
        store.insert(s, p, o, {Provenance{ProvenanceKind::Structured, "random"}});
    }
    return store;
}

// Undirected BFS distances over all stored triples.
inline std::vector<std::size_t> bfs_distances(const GraphStore& store, EntityId root) {
    std::vector<std::vector<EntityId>> adj(store.entity_count());
    for (const auto& [key, t] : store.triples()) {
        adj[key.s].push_back(key.o);
        adj[key.o].push_back(key.s);
    }
    std::vector<std::size_t> dist(store.entity_count(), std::numeric_limits<std::size_t>::max());
    std::deque<EntityId> q{root};
    dist[root] = 0;
    while (!q.empty()) {
        EntityId v = q.front();
        q.pop_front();
        for (EntityId w : adj[v])
            if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

struct OracleLevel {
    std::set<TripleKey> edges;
    std::set<EntityId> frontier;
};

// Level 1: edges incident to the root. Level j >= 2: edges whose endpoints
// both lie within distance j, minus earlier levels. Frontier j: nodes at
// distance exactly j.
inline std::vector<OracleLevel> oracle_levels(const GraphStore& store, EntityId root, std::size_t depth) {
    auto dist = bfs_distances(store, root);
    std::vector<OracleLevel> levels(depth);
    std::set<TripleKey> seen;
    for (std::size_t j = 1; j <= depth; ++j) {
        OracleLevel& L = levels[j - 1];
        for (const auto& [key, t] : store.triples()) {
            bool in = j == 1 ? (key.s == root || key.o == root) : (dist[key.s] <= j && dist[key.o] <= j);
            if (in && !seen.count(key)) L.edges.insert(key);
        }
        seen.insert(L.edges.begin(), L.edges.end());
        for (EntityId v = 0; v < dist.size(); ++v)
            if (dist[v] == j) L.frontier.insert(v);
    }
    return levels;
}

// Label-level multiset view of a store, independent of entity ids.
using LabelTriple = std::tuple<std::string, std::string, std::string, std::string, bool>;
inline std::multiset<LabelTriple> label_triples(const GraphStore& store) {
    std::multiset<LabelTriple> out;
    for (const auto& [key, t] : store.triples()) {
        std::string prov;
        for (const auto& p : t.provenance) prov += std::string(to_string(p.kind)) + ":" + p.source_id + ";";
        out.emplace(store.entity(key.s).label, store.predicate_name(key.p), store.entity(key.o).label, prov,
                    t.derived);
    }
    return out;
}

}  // namespace pekg::testing

#include "pekg/pipeline.hpp"

namespace pekg::testing {

// The station graph built from the fixture dictionaries, records and topology.
inline BuildConfig station_config() {
    BuildConfig c;
    c.common_dictionary = fixture("station/common.dict");
    c.power_dictionary = fixture("station/power.dict");
    c.tagged_corpus = fixture("station/tagged.txt");
    c.corpus = {fixture("station/records.txt")};
    c.structured = {fixture("station/station.json")};
    return c;
}

}  // namespace pekg::testing

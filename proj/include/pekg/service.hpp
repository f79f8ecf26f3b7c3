// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "pekg/rules.hpp"
#include "pekg/triple_store.hpp"

namespace pekg {

// An immutable, fully materialized graph: asserted triples plus whatever the
// rule set derives from them.
struct Snapshot {
    GraphStore store;
    RuleSet rules;
    std::size_t derived = 0;
};

std::shared_ptr<const Snapshot> load_snapshot(const std::string& graph_path,
                                              const std::optional<std::string>& rules_path);

struct HttpResponse {
    int status = 200;
    std::string body;  // JSON
};

// Stateless query front end over a swappable snapshot. Every handler runs
// against the snapshot current at its start; reload() replaces it atomically.
class QueryService {
public:
    QueryService(std::string graph_path, std::optional<std::string> rules_path);

    std::shared_ptr<const Snapshot> snapshot() const;
    void reload();

    HttpResponse search(std::string_view query) const;
    HttpResponse entity(std::string_view id) const;
    HttpResponse neighborhood(std::string_view id, std::string_view depth) const;
    // Body: {"root": id, "revealed": [ids], "target": id, "present": [[s, "pred", o], ...]}.
    // Without "present", every edge between revealed entities counts as shown.
    HttpResponse drill(std::string_view body) const;
    HttpResponse path(std::string_view from, std::string_view to) const;
    HttpResponse trace(std::string_view id) const;
    HttpResponse reload_endpoint();

    // Blocks serving HTTP on host:port. Throws Error when binding fails.
    void listen(const std::string& host, int port);
    void stop();

private:
    std::string graph_path_;
    std::optional<std::string> rules_path_;
    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> current_;
    struct Server;
    std::shared_ptr<Server> server_;
};

// "host:port" or ":port".
std::pair<std::string, int> parse_bind(std::string_view bind);

}  // namespace pekg

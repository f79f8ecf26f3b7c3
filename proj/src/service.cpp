// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/service.hpp"

#include <charconv>

#include <httplib.h>

#include "pekg/error.hpp"
#include "pekg/query_engine.hpp"
#include "pekg/wire.hpp"

namespace pekg {

using nlohmann::json;

std::shared_ptr<const Snapshot> load_snapshot(const std::string& graph_path,
                                              const std::optional<std::string>& rules_path) {
    auto snap = std::make_shared<Snapshot>();
    snap->store = load_graph(graph_path);
    if (rules_path) {
        snap->rules = load_rules(*rules_path);
        auto derived = saturate(snap->store, snap->rules);
        snap->derived = derived.size();
        apply_derived(snap->store, derived);
    }
    return snap;
}

namespace {

constexpr std::size_t kMaxDepth = 64;

HttpResponse ok(const json& j) { return {200, wire::dump(j)}; }
HttpResponse fail(int status, std::string_view message) { return {status, wire::dump(wire::error(message))}; }

std::optional<std::size_t> parse_number(std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<EntityId> parse_id(const GraphStore& store, std::string_view s) {
    auto v = parse_number(s);
    if (!v || !store.has_entity(static_cast<EntityId>(*v))) return std::nullopt;
    return static_cast<EntityId>(*v);
}

// Numeric ids first, labels second.
std::optional<EntityId> resolve(const GraphStore& store, std::string_view s) {
    if (auto id = parse_id(store, s)) return id;
    return find_entity(store, s);
}

}  // namespace

QueryService::QueryService(std::string graph_path, std::optional<std::string> rules_path)
    : graph_path_(std::move(graph_path)), rules_path_(std::move(rules_path)) {
    current_ = load_snapshot(graph_path_, rules_path_);
}

std::shared_ptr<const Snapshot> QueryService::snapshot() const {
    std::lock_guard lock(mutex_);
    return current_;
}

void QueryService::reload() {
    auto fresh = load_snapshot(graph_path_, rules_path_);
    std::lock_guard lock(mutex_);
    current_ = std::move(fresh);
}

HttpResponse QueryService::search(std::string_view query) const {
    auto snap = snapshot();
    return ok(wire::search(snap->store, query, find_entity(snap->store, query)));
}

HttpResponse QueryService::entity(std::string_view id) const {
    auto snap = snapshot();
    auto e = parse_id(snap->store, id);
    if (!e) return fail(404, "unknown entity " + std::string(id));
    return ok(wire::entity(snap->store, *e));
}

HttpResponse QueryService::neighborhood(std::string_view id, std::string_view depth) const {
    auto snap = snapshot();
    auto e = parse_id(snap->store, id);
    if (!e) return fail(404, "unknown entity " + std::string(id));
    std::size_t d = 1;
    if (!depth.empty()) {
        auto parsed = parse_number(depth);
        if (!parsed || *parsed > kMaxDepth) return fail(400, "depth must be an integer in [0, 64]");
        d = *parsed;
    }
    return ok(wire::tree(snap->store, pekg::neighborhood(snap->store, *e, d)));
}

HttpResponse QueryService::drill(std::string_view body) const {
    auto snap = snapshot();
    const GraphStore& store = snap->store;
    json req = json::parse(body, nullptr, false);
    if (req.is_discarded() || !req.is_object()) return fail(400, "body must be a JSON object");

    auto id_field = [&](const json& v) -> std::optional<EntityId> {
        if (!v.is_number_unsigned()) return std::nullopt;
        auto id = v.get<std::size_t>();
        if (!store.has_entity(static_cast<EntityId>(id))) return std::nullopt;
        return static_cast<EntityId>(id);
    };
    if (!req.contains("target") || !req.contains("revealed") || !req.at("revealed").is_array())
        return fail(400, "body needs 'target' and 'revealed'");
    auto target = id_field(req.at("target"));
    if (!target) return fail(404, "unknown target");

    Session session;
    for (const auto& v : req.at("revealed")) {
        auto id = id_field(v);
        if (!id) return fail(404, "unknown revealed entity");
        session.revealed.insert(*id);
    }
    if (req.contains("root")) {
        auto root = id_field(req.at("root"));
        if (!root) return fail(404, "unknown root");
        session.tree.root = root;
        session.revealed.insert(*root);
    }
    if (req.contains("present") && req.at("present").is_array()) {
        for (const auto& e : req.at("present")) {
            if (!e.is_array() || e.size() != 3 || !e[1].is_string()) return fail(400, "present edges are [s, p, o]");
            auto s = id_field(e[0]);
            auto o = id_field(e[2]);
            auto p = store.predicate_id(e[1].get<std::string>());
            if (!s || !o || !p) continue;
            TripleKey k{*s, *p, *o};
            if (store.find(k)) session.present.insert(k);
            TripleKey swapped{*o, *p, *s};
            if (store.find(swapped)) session.present.insert(swapped);
        }
    } else {
        for (EntityId id : session.revealed)
            for (const Neighbor& n : store.neighbors(id))
                if (session.revealed.count(n.other)) session.present.insert(n.triple->key);
    }

    try {
        Session next = pekg::drill(session, store, *target);
        json revealed = json::array();
        for (EntityId id : next.revealed) revealed.push_back(id);
        return ok({{"level", wire::level(store, next.tree.levels.back())}, {"revealed", std::move(revealed)}});
    } catch (const TargetNotRevealed& e) {
        return fail(409, e.what());
    }
}

HttpResponse QueryService::path(std::string_view from, std::string_view to) const {
    auto snap = snapshot();
    auto a = resolve(snap->store, from);
    auto b = resolve(snap->store, to);
    if (!a || !b) return fail(404, "unknown path endpoint");
    return ok(wire::path(snap->store, *a, *b, shortest_path(snap->store, *a, *b)));
}

HttpResponse QueryService::trace(std::string_view id) const {
    auto snap = snapshot();
    auto e = parse_id(snap->store, id);
    if (!e) return fail(404, "unknown entity " + std::string(id));
    return ok(wire::trace(snap->store, pekg::trace(snap->store, *e)));
}

HttpResponse QueryService::reload_endpoint() {
    try {
        reload();
    } catch (const std::exception& e) {
        return fail(500, std::string("reload failed, previous snapshot kept: ") + e.what());
    }
    auto snap = snapshot();
    return ok({{"reloaded", true},
               {"entities", snap->store.entity_count()},
               {"triples", snap->store.size()},
               {"derived", snap->derived}});
}

struct QueryService::Server {
    httplib::Server http;
};

void QueryService::listen(const std::string& host, int port) {
    auto server = std::make_shared<Server>();
    {
        std::lock_guard lock(mutex_);
        server_ = server;
    }
    auto& http = server->http;
    auto send = [](httplib::Response& res, const HttpResponse& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
        res.set_header("Access-Control-Allow-Origin", "*");
    };

    http.Get("/search", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, search(req.get_param_value("q")));
    });
    http.Get(R"(/entity/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, entity(req.matches[1].str()));
    });
    http.Get(R"(/entity/([^/]+)/neighborhood)", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, neighborhood(req.matches[1].str(), req.get_param_value("depth")));
    });
    http.Post("/drill", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, drill(req.body));
    });
    http.Get("/path", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, path(req.get_param_value("from"), req.get_param_value("to")));
    });
    http.Get(R"(/trace/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, trace(req.matches[1].str()));
    });
    http.Post("/reload", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, reload_endpoint());
    });
    http.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            send(res, fail(500, e.what()));
        } catch (...) {
            send(res, fail(500, "internal error"));
        }
    });
    http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });

    if (!http.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
    http.listen_after_bind();
}

void QueryService::stop() {
    std::shared_ptr<Server> server;
    {
        std::lock_guard lock(mutex_);
        server = server_;
    }
    if (server) server->http.stop();
}

std::pair<std::string, int> parse_bind(std::string_view bind) {
    auto colon = bind.rfind(':');
    if (colon == std::string_view::npos) throw Error("bind address must be host:port");
    std::string host(bind.substr(0, colon));
    if (host.empty()) host = "0.0.0.0";
    auto port = parse_number(bind.substr(colon + 1));
    if (!port || *port > 65535) throw Error("invalid port in bind address");
    return {host, static_cast<int>(*port)};
}

}  // namespace pekg

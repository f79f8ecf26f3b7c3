// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include <random>

#include "doctest.h"
#include "pekg/error.hpp"
#include "pekg/triple_store.hpp"
#include "support.hpp"

using namespace pekg;

namespace {

const Provenance kSt{ProvenanceKind::Structured, "st"};
const Provenance kTx{ProvenanceKind::Text, "doc:1"};

}  // namespace

TEST_CASE("entities resolve by normalized label") {
    GraphStore g;
    EntityId a = g.ensure_entity("Transformer #1", EntityKind::E1);
    CHECK(g.ensure_entity("transformer  #1", EntityKind::E1) == a);
    CHECK(g.ensure_entity("ＴＲＡＮＳＦＯＲＭＥＲ #1", EntityKind::E1) == a);
    CHECK(g.entity(a).label == "Transformer #1");
    CHECK(g.entity_count() == 1);
    CHECK_THROWS_AS(g.ensure_entity("transformer #1", EntityKind::E3), CategoryConflict);
    CHECK_THROWS_AS(g.ensure_entity("  ", EntityKind::E1), InvalidLabel);
    CHECK_THROWS_AS(g.ensure_entity("a\tb", EntityKind::E1), InvalidLabel);

    EntityId s = g.ensure_entity("Operation System 1", EntityKind::E2);
    CHECK(g.ensure_entity("Operation System 1", EntityKind::System) == s);
    CHECK(g.entity(s).category == EntityKind::System);

    g.add_alias(a, "main transformer 1");
    CHECK(g.find_normalized("MAIN transformer 1") == a);
    CHECK(g.find_label("main transformer 1") == std::nullopt);
    CHECK(g.find_label("Transformer #1") == a);
    CHECK_THROWS_AS(g.add_alias(a, "x,y"), InvalidLabel);
}

TEST_CASE("insert: duplicates merge, self-loops rejected, derived never shadows") {
    GraphStore g;
    EntityId a = g.ensure_entity("a", EntityKind::E1);
    EntityId b = g.ensure_entity("b", EntityKind::E2);
    CHECK(g.insert(b, "Operate", a, {kSt}));
    CHECK_FALSE(g.insert(b, "Operate", a, {kTx}));
    CHECK(g.size() == 1);
    auto p = g.predicate_id("Operate");
    REQUIRE(p);
    const Triple* t = g.find({b, *p, a});
    REQUIRE(t);
    CHECK(t->provenance == std::vector<Provenance>{kSt, kTx});
    CHECK_THROWS_AS(g.insert(a, "Connect", a, {kSt}), InvalidLabel);

    CHECK_FALSE(g.insert(b, "Operate", a, {{ProvenanceKind::Derived, "r"}}, true));
    CHECK_FALSE(g.find({b, *p, a})->derived);

    EntityId c = g.ensure_entity("c", EntityKind::E1);
    CHECK(g.insert(a, "BelongTo", c, {{ProvenanceKind::Derived, "r"}}, true));
    CHECK(g.derived_count() == 1);
    CHECK_FALSE(g.insert(a, "BelongTo", c, {kSt}));
    CHECK(g.derived_count() == 0);
    CHECK(g.indexes_coherent());
}

TEST_CASE("match and neighbors agree with a linear scan on random graphs") {
    std::mt19937 rng(11);
    for (int round = 0; round < 5; ++round) {
        GraphStore g = testing::random_store(rng, 60, 1000);
        CHECK(g.indexes_coherent());
        for (EntityId e = 0; e < g.entity_count(); ++e) {
            std::set<TripleKey> expected;
            for (const auto& [k, t] : g.triples())
                if (k.s == e || k.o == e) expected.insert(k);
            std::set<TripleKey> got;
            auto ns = g.neighbors(e);
            for (const auto& n : ns) {
                got.insert(n.triple->key);
                CHECK(n.other == (n.triple->key.s == e ? n.triple->key.o : n.triple->key.s));
            }
            CHECK(got == expected);
            CHECK(ns.size() == expected.size());
            for (std::size_t i = 1; i < ns.size(); ++i) {
                const auto& x = ns[i - 1];
                const auto& y = ns[i];
                auto kx = std::tie(g.predicate_name(x.triple->key.p), g.entity(x.other).label);
                auto ky = std::tie(g.predicate_name(y.triple->key.p), g.entity(y.other).label);
                CHECK(kx <= ky);
            }

            std::set<TripleKey> by_s, by_o;
            for (const auto* t : g.match(e, std::nullopt, std::nullopt)) by_s.insert(t->key);
            for (const auto* t : g.match(std::nullopt, std::nullopt, e)) by_o.insert(t->key);
            std::set<TripleKey> exp_s, exp_o;
            for (const auto& [k, t] : g.triples()) {
                if (k.s == e) exp_s.insert(k);
                if (k.o == e) exp_o.insert(k);
            }
            CHECK(by_s == exp_s);
            CHECK(by_o == exp_o);
        }
        for (PredicateId p = 0; p < g.predicate_count(); ++p) {
            std::size_t expected = 0;
            for (const auto& [k, t] : g.triples()) expected += k.p == p;
            CHECK(g.match(std::nullopt, p, std::nullopt).size() == expected);
        }
    }
}

TEST_CASE("symmetric triples report Out from both endpoints") {
    GraphStore g;
    EntityId a = g.ensure_entity("#2016", EntityKind::E1);
    EntityId b = g.ensure_entity("Transformer #1", EntityKind::E1);
    EntityId m = g.ensure_entity("Manufacturer 1", EntityKind::E3);
    g.insert(a, "Connect", b, {kSt});
    g.insert(m, "Manufacture", b, {kSt});
    auto nb = g.neighbors(b);
    REQUIRE(nb.size() == 2);
    CHECK(nb[0].direction == Direction::Out);
    CHECK(nb[0].other == a);
    CHECK(nb[1].direction == Direction::In);
    CHECK(nb[1].other == m);
    CHECK(g.neighbors(a)[0].direction == Direction::Out);
}

TEST_CASE("persistence round trip") {
    std::mt19937 rng(5);
    testing::TempDir dir;
    for (int round = 0; round < 10; ++round) {
        GraphStore g = testing::random_store(rng, 40, 400);
        g.add_alias(0, "first node");
        save_graph(g, dir.file("g.graph"));
        GraphStore h = load_graph(dir.file("g.graph"));
        CHECK(testing::label_triples(h) == testing::label_triples(g));
        std::set<std::string> lg, lh;
        for (const auto& e : g.entities()) lg.insert(e.label);
        for (const auto& e : h.entities()) lh.insert(e.label);
        CHECK(lh == lg);
        CHECK(h.entity(*h.find_label("n0")).aliases == std::set<std::string>{"first node"});
        CHECK(format_graph(h) == format_graph(g));
    }
}

TEST_CASE("derived triples are excluded from the file unless requested") {
    GraphStore g;
    EntityId a = g.ensure_entity("a", EntityKind::E1);
    EntityId b = g.ensure_entity("b", EntityKind::Class);
    g.insert(a, "BelongTo", b, {{ProvenanceKind::Derived, "belongto-trans"}}, true);
    CHECK(parse_graph(format_graph(g)).size() == 0);
    GraphStore h = parse_graph(format_graph(g, true));
    CHECK(h.size() == 1);
    CHECK(h.derived_count() == 1);
    g.remove_derived();
    CHECK(g.size() == 0);
    CHECK(g.indexes_coherent());
}

TEST_CASE("malformed graph files name the line") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_graph(text);
        } catch (const MalformedLine& e) {
            return e.line_no();
        }
        return 0;
    };
    CHECK(line_of("#entities\nE\ta\tE1\t\nE\tb\tE9\t\n") == 3);
    CHECK(line_of("#entities\nE\ta\tE1\t\n#triples\nT\ta\tConnect\tz\tStructured:x\t0\n") == 4);
    CHECK(line_of("#entities\nE\ta\tE1\t\nE\tb\tE1\t\n#triples\nT\ta\tConnect\tb\tBogus:x\t0\n") == 5);
    CHECK(line_of("#entities\nE\ta\tE1\t\nE\tb\tE1\t\n#triples\nT\ta\tConnect\tb\tText:x\t2\n") == 5);
    CHECK(line_of("#entities\nE\ta\tE1\t\n#triples\nT\ta\tConnect\ta\tText:x\t0\n") == 4);
    CHECK(line_of("E\ta\tE1\t\n") == 1);
    CHECK(line_of("#entities\nE\ta\tE1\t\nE\ta\tE1\t\n") == 3);
    CHECK_THROWS_AS(load_graph("/nonexistent/graph"), IoFailure);
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors
//
// pekg: build a power-equipment knowledge graph and query it.
//
//   pekg build --power power.dict --train tagged.tsv --corpus records.txt \
//              --structured station.json --out station.graph
//   pekg query station.graph "Transformer #1" --depth 1 --json
//   pekg serve station.graph --rules default.rules --bind 127.0.0.1:8080

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pekg/error.hpp"
#include "pekg/pipeline.hpp"
#include "pekg/query_engine.hpp"
#include "pekg/service.hpp"
#include "pekg/text.hpp"
#include "pekg/wire.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void print_tree(const pekg::GraphStore& store, const pekg::ResultTree& tree, std::ostream& out) {
    if (tree.not_found || !tree.root) {
        out << "not found\n";
        return;
    }
    const auto& root = store.entity(*tree.root);
    out << root.label << " [" << pekg::to_string(root.category) << "]\n";
    for (std::size_t i = 0; i < tree.levels.size(); ++i) {
        out << "level " << i + 1 << ":\n";
        for (const auto& e : tree.levels[i].edges) {
            out << "  " << store.entity(e.key.s).label << " --" << store.predicate_name(e.key.p) << "--> "
                << store.entity(e.key.o).label;
            if (e.derived) out << " (derived)";
            out << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power equipment knowledge graph builder and query tool"};
    app.require_subcommand(1);

    pekg::BuildConfig config;
    std::optional<std::string> report_path;
    auto* build = app.add_subcommand("build", "Extract, fuse and store a knowledge graph");
    build->add_option("--common", config.common_dictionary, "Common words dictionary");
    build->add_option("--power", config.power_dictionary, "Electric power dictionary");
    auto* hmm = build->add_option("--hmm", config.hmm_params, "Segmentation HMM parameters");
    auto* train = build->add_option("--train", config.tagged_corpus, "Tagged corpus to fit HMM parameters from");
    hmm->excludes(train);
    build->add_option("--corpus", config.corpus, "Free-text record files")->expected(1, -1);
    build->add_option("--structured", config.structured, "Station documents (JSON)")->expected(1, -1);
    build->add_option("--rules", config.rules, "Inference rules");
    build->add_flag("--include-derived", config.include_derived, "Store rule-derived triples too");
    build->add_option("--out", config.output, "Output graph file");
    build->add_option("--report", report_path, "Write the build report here instead of stdout");

    std::string graph_path, label;
    std::size_t depth = 1;
    bool as_json = false;
    std::optional<std::string> rules_path;
    auto* query = app.add_subcommand("query", "Look up an entity and print its leveled neighborhood");
    query->add_option("GRAPH", graph_path, "Graph file")->required();
    query->add_option("LABEL", label, "Entity to search for")->required();
    query->add_option("--depth", depth, "Number of levels")->check(CLI::Range(0, 64));
    query->add_flag("--json", as_json, "Emit the structured payload");
    query->add_option("--rules", rules_path, "Inference rules");

    std::string from, to;
    auto* path = app.add_subcommand("path", "Shortest undirected path between two entities");
    path->add_option("GRAPH", graph_path, "Graph file")->required();
    path->add_option("FROM", from)->required();
    path->add_option("TO", to)->required();
    path->add_option("--rules", rules_path, "Inference rules");

    auto* trace = app.add_subcommand("trace", "Traceability tree of an entity's connected component");
    trace->add_option("GRAPH", graph_path, "Graph file")->required();
    trace->add_option("LABEL", label)->required();
    trace->add_option("--rules", rules_path, "Inference rules");

    std::string bind = "127.0.0.1:8080";
    auto* serve = app.add_subcommand("serve", "Serve the HTTP query API");
    serve->add_option("GRAPH", graph_path, "Graph file")->required();
    serve->add_option("--rules", rules_path, "Inference rules");
    serve->add_option("--bind", bind, "host:port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*build) {
            try {
                pekg::validate(config);
            } catch (const pekg::Error& e) {
                std::cerr << "pekg build: " << e.what() << '\n';
                return kExitUsage;
            }
            auto result = pekg::build_graph(config);
            std::string report = result.report.to_json().dump(2) + "\n";
            if (report_path) {
                pekg::write_file(*report_path, report);
            } else {
                std::cout << report;
            }
        } else if (*query) {
            auto snap = pekg::load_snapshot(graph_path, rules_path);
            auto id = pekg::find_entity(snap->store, label);
            pekg::ResultTree tree = id ? pekg::neighborhood(snap->store, *id, depth) : pekg::not_found_tree();
            if (as_json) {
                std::cout << pekg::wire::dump(pekg::wire::tree(snap->store, tree));
            } else {
                print_tree(snap->store, tree, std::cout);
            }
        } else if (*path) {
            auto snap = pekg::load_snapshot(graph_path, rules_path);
            auto a = pekg::find_entity(snap->store, from);
            auto b = pekg::find_entity(snap->store, to);
            if (!a || !b) {
                std::cout << pekg::wire::dump({{"not_found", true}});
                return kExitOk;
            }
            std::cout << pekg::wire::dump(pekg::wire::path(snap->store, *a, *b, pekg::shortest_path(snap->store, *a, *b)));
        } else if (*trace) {
            auto snap = pekg::load_snapshot(graph_path, rules_path);
            auto id = pekg::find_entity(snap->store, label);
            if (!id) {
                std::cout << pekg::wire::dump({{"not_found", true}});
                return kExitOk;
            }
            std::cout << pekg::wire::dump(pekg::wire::trace(snap->store, pekg::trace(snap->store, *id)));
        } else if (*serve) {
            auto [host, port] = pekg::parse_bind(bind);
            pekg::QueryService service(graph_path, rules_path);
            std::cerr << "pekg: serving " << graph_path << " on " << host << ":" << port << '\n';
            service.listen(host, port);
        }
    } catch (const pekg::Error& e) {
        std::cerr << "pekg: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "pekg: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

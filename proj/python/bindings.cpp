// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pekg/error.hpp"
#include "pekg/extract.hpp"
#include "pekg/lexicon.hpp"
#include "pekg/pipeline.hpp"
#include "pekg/query_engine.hpp"
#include "pekg/rules.hpp"
#include "pekg/segmenter.hpp"
#include "pekg/service.hpp"
#include "pekg/text.hpp"
#include "pekg/wire.hpp"

namespace py = pybind11;

namespace {

py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

// Read-only graph handle backed by a snapshot (asserted + derived triples).
class Graph {
public:
    Graph(const std::string& path, std::optional<std::string> rules)
        : snap_(pekg::load_snapshot(path, rules)) {}

    std::optional<pekg::EntityId> find(const std::string& label) const {
        return pekg::find_entity(snap_->store, label);
    }
    py::object entity(pekg::EntityId id) const { return to_python(pekg::wire::entity(snap_->store, id)); }
    py::object query(const std::string& label, std::size_t depth) const {
        auto id = find(label);
        auto tree = id ? pekg::neighborhood(snap_->store, *id, depth) : pekg::not_found_tree();
        return to_python(pekg::wire::tree(snap_->store, tree));
    }
    py::object neighborhood(pekg::EntityId id, std::size_t depth) const {
        return to_python(pekg::wire::tree(snap_->store, pekg::neighborhood(snap_->store, id, depth)));
    }
    py::object shortest_path(pekg::EntityId a, pekg::EntityId b) const {
        return to_python(pekg::wire::path(snap_->store, a, b, pekg::shortest_path(snap_->store, a, b)));
    }
    py::object trace(pekg::EntityId id) const {
        return to_python(pekg::wire::trace(snap_->store, pekg::trace(snap_->store, id)));
    }
    std::size_t triple_count() const { return snap_->store.size(); }
    std::size_t entity_count() const { return snap_->store.entity_count(); }
    std::size_t derived_count() const { return snap_->derived; }

private:
    std::shared_ptr<const pekg::Snapshot> snap_;
};

}  // namespace

PYBIND11_MODULE(_pekg, m) {
    m.doc() = "Power equipment knowledge graph: extraction, fusion, storage and retrieval";

    py::register_exception<pekg::Error>(m, "PekgError");

    m.def("normalize", &pekg::normalize, py::arg("surface"));
    m.def("split_graphemes", &pekg::split_graphemes, py::arg("text"));
    m.def("split_sentences", &pekg::split_sentences, py::arg("text"));

    py::class_<pekg::Lexicon>(m, "Lexicon")
        .def(py::init([](std::optional<std::string> common, std::optional<std::string> power) {
                 return pekg::Lexicon(common ? pekg::load_lexicon(*common, pekg::Source::Common)
                                             : std::vector<pekg::LexiconEntry>{},
                                      power ? pekg::load_lexicon(*power, pekg::Source::Power)
                                            : std::vector<pekg::LexiconEntry>{});
             }),
             py::arg("common") = py::none(), py::arg("power") = py::none())
        .def("lookup",
             [](const pekg::Lexicon& lex, const std::string& surface) -> py::object {
                 const pekg::LexiconEntry* e = lex.lookup(surface);
                 if (!e) return py::none();
                 py::dict d;
                 d["surface"] = e->surface;
                 d["source"] = e->source == pekg::Source::Power ? "Power" : "Common";
                 d["category"] = std::string(pekg::to_string(e->category));
                 d["canonical"] = lex.canonical_of(*e);
                 return std::move(d);
             })
        .def("__len__", &pekg::Lexicon::size);

    py::class_<pekg::HmmParams>(m, "HmmParams")
        .def_static("load", &pekg::load_params, py::arg("path"))
        .def_static("fit", [](const std::string& tagged) { return pekg::fit_params(pekg::load_tagged_corpus(tagged)); },
                    py::arg("tagged_corpus"))
        .def("save", [](const pekg::HmmParams& p, const std::string& path) { pekg::save_params(p, path); });

    m.def(
        "segment",
        [](const std::string& text, const pekg::HmmParams& params, const pekg::Lexicon& lexicon) {
            std::vector<std::string> out;
            for (const auto& t : pekg::segment(pekg::make_sentence("py", text), params, lexicon))
                out.push_back(t.surface);
            return out;
        },
        py::arg("text"), py::arg("params"), py::arg("lexicon"));

    m.def(
        "extract",
        [](const std::string& text, const pekg::HmmParams& params, const pekg::Lexicon& lexicon) {
            auto x = pekg::extract_text("py", text, params, lexicon);
            py::list out;
            for (const auto& t : x.triples)
                out.append(py::make_tuple(t.subject.label, t.predicate.name, t.object.label));
            return out;
        },
        py::arg("text"), py::arg("params"), py::arg("lexicon"));

    m.def(
        "build",
        [](std::optional<std::string> common, std::optional<std::string> power, std::optional<std::string> hmm,
           std::optional<std::string> train, std::vector<std::string> corpus, std::vector<std::string> structured,
           std::optional<std::string> rules, std::optional<std::string> out) {
            pekg::BuildConfig c;
            c.common_dictionary = std::move(common);
            c.power_dictionary = std::move(power);
            c.hmm_params = std::move(hmm);
            c.tagged_corpus = std::move(train);
            c.corpus = std::move(corpus);
            c.structured = std::move(structured);
            c.rules = std::move(rules);
            c.output = std::move(out);
            return to_python(pekg::build_graph(c).report.to_json());
        },
        py::arg("common") = py::none(), py::arg("power") = py::none(), py::arg("hmm") = py::none(),
        py::arg("train") = py::none(), py::arg("corpus") = std::vector<std::string>{},
        py::arg("structured") = std::vector<std::string>{}, py::arg("rules") = py::none(),
        py::arg("out") = py::none());

    py::class_<Graph>(m, "Graph")
        .def(py::init<const std::string&, std::optional<std::string>>(), py::arg("path"),
             py::arg("rules") = py::none())
        .def("find", &Graph::find, py::arg("label"))
        .def("entity", &Graph::entity, py::arg("id"))
        .def("query", &Graph::query, py::arg("label"), py::arg("depth") = 1)
        .def("neighborhood", &Graph::neighborhood, py::arg("id"), py::arg("depth") = 1)
        .def("shortest_path", &Graph::shortest_path, py::arg("a"), py::arg("b"))
        .def("trace", &Graph::trace, py::arg("id"))
        .def_property_readonly("triple_count", &Graph::triple_count)
        .def_property_readonly("entity_count", &Graph::entity_count)
        .def_property_readonly("derived_count", &Graph::derived_count);
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pekg/extract.hpp"
#include "pekg/lexicon.hpp"

namespace pekg {

// Structured station topology, read from a JSON document.
struct StationDocument {
    struct Station {
        std::string label;
        std::string voltage_class;
    };
    struct OntologyClass {
        std::string label;
        std::optional<std::string> parent;  // absent: first-level class of the station
    };
    struct Component {
        std::string id;
        std::string label;
        std::string ontology_class;
        std::string voltage_level;
        std::optional<std::string> manufacturer;
        std::optional<std::string> operator_system;
        std::optional<std::string> management_system;
    };
    enum class SystemKind { Operation, Management };
    struct System {
        std::string label;
        SystemKind kind = SystemKind::Operation;
        std::optional<std::string> controlled_by;
    };

    Station station;
    std::vector<OntologyClass> ontology_classes;
    std::vector<Component> components;
    std::vector<std::pair<std::string, std::string>> connections;
    std::vector<System> systems;
    std::vector<std::string> companies;
};

StationDocument parse_station_document(std::string_view json_text);
StationDocument load_station_document(const std::string& path);
std::string format_station_document(const StationDocument& doc);

// Throws DanglingReference for undeclared connection endpoints, classes,
// systems or companies.
void validate(const StationDocument& doc);

std::vector<CandidateTriple> structured_to_triples(const StationDocument& doc,
                                                   const std::string& source_id = {});

// Rewrites every label to its canonical form: the lexicon alias target when
// one exists, then one representative per normalized label (structured
// spelling preferred, else the smallest). Symmetric triples are re-ordered and
// triples folded onto a self-loop are dropped. Throws CategoryConflict.
std::vector<CandidateTriple> fold_coreferences(const std::vector<CandidateTriple>& triples,
                                               const Lexicon& lexicon);

struct FusedTriple {
    Endpoint subject;
    Predicate predicate;
    Endpoint object;
    std::vector<Provenance> provenance;
};

// Collapses exact (subject, predicate, object) duplicates into one triple whose
// provenance is the merged, de-duplicated list ordered Structured, Text,
// Derived. Output sorted by (subject, predicate, object) labels.
std::vector<FusedTriple> filter_redundant(const std::vector<CandidateTriple>& triples);
std::vector<FusedTriple> filter_redundant(const std::vector<FusedTriple>& triples);

}  // namespace pekg

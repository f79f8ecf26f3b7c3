// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pekg/lexicon.hpp"
#include "pekg/rules.hpp"
#include "pekg/segmenter.hpp"
#include "pekg/triple_store.hpp"

namespace pekg {

struct BuildConfig {
    std::optional<std::string> common_dictionary;
    std::optional<std::string> power_dictionary;
    std::optional<std::string> hmm_params;      // either this ...
    std::optional<std::string> tagged_corpus;   // ... or a corpus to fit from
    std::vector<std::string> corpus;            // free-text records
    std::vector<std::string> structured;        // station documents
    std::optional<std::string> rules;
    std::optional<std::string> output;
    bool include_derived = false;
};

// Throws Error when the configuration cannot produce a graph.
void validate(const BuildConfig& config);

struct BuildReport {
    std::size_t sentences = 0;
    std::size_t tokens = 0;
    std::map<std::string, std::size_t> mentions;  // per category
    std::size_t candidate_triples = 0;            // text + structured, before fusion
    std::size_t text_triples = 0;
    std::size_t structured_triples = 0;
    std::size_t post_filter_triples = 0;
    std::size_t components = 0;
    std::size_t entities = 0;
    std::map<std::string, std::size_t> entities_by_category;
    std::size_t derived_triples = 0;

    nlohmann::json to_json() const;
};

struct BuildResult {
    GraphStore store;
    BuildReport report;
};

// Extraction, then fusion (coreference folding, redundancy filtering,
// integration with structured triples), then optional inference. Writes the
// graph file when config.output is set.
BuildResult build_graph(const BuildConfig& config);

// Free-text extraction of one document; sentence ids are `<name>:<n>`.
struct TextExtraction {
    std::size_t sentences = 0;
    std::size_t tokens = 0;
    std::vector<Mention> mentions;
    std::vector<CandidateTriple> triples;
};

TextExtraction extract_text(const std::string& name, std::string_view text, const HmmParams& params,
                            const Lexicon& lexicon);

}  // namespace pekg

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/pipeline.hpp"

#include <filesystem>

#include "pekg/error.hpp"
#include "pekg/extract.hpp"
#include "pekg/fusion.hpp"
#include "pekg/text.hpp"

namespace pekg {

nlohmann::json BuildReport::to_json() const {
    return {{"sentences", sentences},
            {"tokens", tokens},
            {"mentions", mentions},
            {"candidate_triples", candidate_triples},
            {"text_triples", text_triples},
            {"structured_triples", structured_triples},
            {"post_filter_triples", post_filter_triples},
            {"components", components},
            {"entities", entities},
            {"entities_by_category", entities_by_category},
            {"derived_triples", derived_triples}};
}

void validate(const BuildConfig& config) {
    if (config.corpus.empty() && config.structured.empty())
        throw Error("build needs at least one text corpus or structured document");
    if (!config.corpus.empty()) {
        if (!config.power_dictionary) throw Error("text corpora need an electric power dictionary (--power)");
        if (!config.hmm_params && !config.tagged_corpus)
            throw Error("text corpora need HMM parameters (--hmm) or a tagged corpus (--train)");
    }
    if (config.hmm_params && config.tagged_corpus) throw Error("--hmm and --train are mutually exclusive");
}

TextExtraction extract_text(const std::string& name, std::string_view text, const HmmParams& params,
                            const Lexicon& lexicon) {
    TextExtraction out;
    std::size_t n = 0;
    for (const auto& raw : split_sentences(text)) {
        std::string id = name + ":" + std::to_string(++n);
        Sentence sentence = make_sentence(id, raw, {ProvenanceKind::Text, id});
        std::vector<Token> tokens = segment(sentence, params, lexicon);
        std::vector<Mention> mentions = tag_tokens(tokens, lexicon, id);
        std::vector<CandidateTriple> triples = extract_relations(mentions);
        ++out.sentences;
        out.tokens += tokens.size();
        out.mentions.insert(out.mentions.end(), mentions.begin(), mentions.end());
        out.triples.insert(out.triples.end(), triples.begin(), triples.end());
    }
    return out;
}

BuildResult build_graph(const BuildConfig& config) {
    validate(config);
    BuildResult result;
    BuildReport& report = result.report;

    Lexicon lexicon(config.common_dictionary ? load_lexicon(*config.common_dictionary, Source::Common)
                                             : std::vector<LexiconEntry>{},
                    config.power_dictionary ? load_lexicon(*config.power_dictionary, Source::Power)
                                            : std::vector<LexiconEntry>{});

    std::vector<CandidateTriple> candidates;
    std::vector<Mention> all_mentions;
    if (!config.corpus.empty()) {
        HmmParams params = config.hmm_params ? load_params(*config.hmm_params)
                                             : fit_params(load_tagged_corpus(*config.tagged_corpus));
        validate(params);
        for (const auto& path : config.corpus) {
            std::string name = std::filesystem::path(path).filename().string();
            TextExtraction x = extract_text(name, read_file(path), params, lexicon);
            report.sentences += x.sentences;
            report.tokens += x.tokens;
            report.text_triples += x.triples.size();
            for (const auto& m : x.mentions) ++report.mentions[std::string(to_string(m.category))];
            all_mentions.insert(all_mentions.end(), x.mentions.begin(), x.mentions.end());
            candidates.insert(candidates.end(), x.triples.begin(), x.triples.end());
        }
    }
    for (const auto& path : config.structured) {
        StationDocument doc = load_station_document(path);
        auto triples = structured_to_triples(doc, std::filesystem::path(path).filename().string());
        report.components += doc.components.size();
        report.structured_triples += triples.size();
        candidates.insert(candidates.end(), triples.begin(), triples.end());
    }
    report.candidate_triples = candidates.size();

    std::vector<FusedTriple> fused = filter_redundant(fold_coreferences(candidates, lexicon));
    report.post_filter_triples = fused.size();

    GraphStore& store = result.store;
    for (const auto& t : fused) store.insert(t);

    auto storable = [](const std::string& alias) { return alias.find(',') == std::string::npos; };
    for (std::size_t i = 0; i < store.entity_count(); ++i) {
        EntityId id = static_cast<EntityId>(i);
        for (const auto& alias : lexicon.aliases_of(store.entity(id).label))
            if (storable(alias)) store.add_alias(id, alias);
    }
    for (const auto& m : all_mentions) {
        if (!is_entity_category(m.category) || !storable(m.surface)) continue;
        auto id = store.find_normalized(m.canonical);
        if (id && normalize(m.surface) != normalize(store.entity(*id).label)) store.add_alias(*id, m.surface);
    }

    if (config.rules) {
        auto derived = saturate(store, load_rules(*config.rules));
        report.derived_triples = derived.size();
        if (config.include_derived) apply_derived(store, derived);
    }

    report.entities = store.entity_count();
    for (const auto& e : store.entities()) ++report.entities_by_category[std::string(to_string(e.category))];

    if (config.output) save_graph(store, *config.output, config.include_derived);
    return result;
}

}  // namespace pekg

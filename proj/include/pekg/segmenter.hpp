// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pekg/lexicon.hpp"
#include "pekg/text.hpp"
#include "pekg/types.hpp"

namespace pekg {

// Begin / Middle / End of a multi-grapheme word, or Single.
enum class State : std::uint8_t { B = 0, M = 1, E = 2, S = 3 };
inline constexpr std::size_t kStateCount = 4;
inline constexpr std::array<State, kStateCount> kStates{State::B, State::M, State::E, State::S};

char state_char(State s);
bool legal_transition(State from, State to);
bool legal_initial(State s);
bool legal_final(State s);

// Log-probabilities; -infinity marks impossible events.
struct HmmParams {
    using Row = std::array<double, kStateCount>;

    Row initial{};
    std::array<Row, kStateCount> transition{};
    std::map<std::string, Row> emission;  // per grapheme, indexed by state
    double unseen_emission_logp = 0.0;

    double emit(State s, std::string_view grapheme) const;
};

// Throws InvalidParams when the BMES structure or normalization is violated.
void validate(const HmmParams& params);

HmmParams parse_params(std::string_view text);
HmmParams load_params(const std::string& path);
std::string format_params(const HmmParams& params);
void save_params(const HmmParams& params, const std::string& path);

// Half-open grapheme index range.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
    auto operator<=>(const Span&) const = default;
};

struct Sentence {
    std::string id;
    Graphemes graphemes;
    Provenance source;
};

Sentence make_sentence(std::string id, std::string_view text, Provenance source = {});

struct Token {
    std::string surface;
    Span span;
    bool locked = false;

    bool operator==(const Token&) const = default;
};

// Greedy left-to-right longest match of Power surfaces, compared per
// grapheme after case and width folding.
std::vector<Span> lock_spans(const Sentence& sentence, const Lexicon& lexicon);

// Per-position allowed states. Locked spans force S or B M.. E; whitespace
// graphemes outside locks are forced to S.
std::vector<std::array<bool, kStateCount>> allowed_states(const Sentence& sentence,
                                                          const std::vector<Span>& locked);

struct Decoding {
    std::vector<State> states;
    double logp = 0.0;
};

// Constrained Viterbi. Ties prefer the earlier state (B<M<E<S) at the latest
// differing position.
Decoding viterbi_states(const Sentence& sentence, const HmmParams& params,
                        const std::vector<Span>& locked);

std::vector<Token> viterbi(const Sentence& sentence, const HmmParams& params,
                           const std::vector<Span>& locked);

std::vector<Token> tokens_from_states(const Sentence& sentence, const std::vector<State>& states,
                                      const std::vector<Span>& locked);

// lock_spans followed by viterbi.
std::vector<Token> segment(const Sentence& sentence, const HmmParams& params,
                           const Lexicon& lexicon);

struct TaggedSentence {
    Sentence sentence;
    std::vector<Span> gold;  // must tile the sentence
};

// Maximum-likelihood BMES estimates with add-one smoothed emissions.
HmmParams fit_params(const std::vector<TaggedSentence>& corpus);

// One sentence per line, gold tokens separated by TAB.
std::vector<TaggedSentence> parse_tagged_corpus(std::string_view text);
std::vector<TaggedSentence> load_tagged_corpus(const std::string& path);

}  // namespace pekg

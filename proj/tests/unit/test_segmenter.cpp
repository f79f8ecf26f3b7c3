// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include <cmath>
#include <random>

#include "doctest.h"
#include "pekg/error.hpp"
#include "pekg/lexicon.hpp"
#include "pekg/segmenter.hpp"
#include "support.hpp"

using namespace pekg;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t ix(State s) { return static_cast<std::size_t>(s); }

Lexicon power_only(const char* power) { return Lexicon({}, parse_lexicon(power, Source::Power)); }

std::string states_string(const std::vector<State>& s) {
    std::string out;
    for (State x : s) out += state_char(x);
    return out;
}

// Brute-force lock oracle: at each position take the longest Power surface whose
// per-grapheme fold matches, else advance by one.
std::vector<Span> brute_lock(const Sentence& s, const std::vector<std::string>& surfaces) {
    std::vector<Graphemes> folded;
    for (const auto& w : surfaces) {
        Graphemes g = split_graphemes(w);
        for (auto& x : g) x = fold_grapheme(x);
        folded.push_back(g);
    }
    std::vector<Span> out;
    std::size_t i = 0;
    while (i < s.graphemes.size()) {
        std::size_t best = 0;
        for (const auto& w : folded) {
            if (w.size() <= best || i + w.size() > s.graphemes.size()) continue;
            bool match = true;
            for (std::size_t k = 0; k < w.size() && match; ++k) match = fold_grapheme(s.graphemes[i + k]) == w[k];
            if (match) best = w.size();
        }
        if (best) {
            out.push_back({i, i + best});
            i += best;
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("BMES structure") {
    CHECK(legal_initial(State::B));
    CHECK(legal_initial(State::S));
    CHECK_FALSE(legal_initial(State::M));
    CHECK_FALSE(legal_initial(State::E));
    CHECK(legal_final(State::E));
    CHECK(legal_final(State::S));
    CHECK_FALSE(legal_final(State::B));
    int legal = 0;
    for (State a : kStates)
        for (State b : kStates) legal += legal_transition(a, b);
    CHECK(legal == 8);
    CHECK(legal_transition(State::B, State::M));
    CHECK(legal_transition(State::M, State::E));
    CHECK(legal_transition(State::E, State::B));
    CHECK_FALSE(legal_transition(State::B, State::S));
    CHECK_FALSE(legal_transition(State::S, State::E));
}

TEST_CASE("lock spans: longest match, case and width folded") {
    Lexicon lex = power_only("Transformer #1\tE1\nTransformer\tE1\n#1\tE1\nxfmr\tE1\n");
    auto s = make_sentence("s", "ＸＦＭＲ and transformer #1 and Transformer");
    auto spans = lock_spans(s, lex);
    REQUIRE(spans.size() == 3);
    CHECK(join(s.graphemes, spans[0].begin, spans[0].end) == "ＸＦＭＲ");
    CHECK(join(s.graphemes, spans[1].begin, spans[1].end) == "transformer #1");
    CHECK(join(s.graphemes, spans[2].begin, spans[2].end) == "Transformer");
}

TEST_CASE("lock spans agree with a brute-force scan") {
    std::mt19937 rng(7);
    const std::vector<std::string> alphabet{"a", "b", "A", "B", " "};
    std::uniform_int_distribution<std::size_t> letter(0, alphabet.size() - 1), len(1, 4), count(1, 6);
    for (int round = 0; round < 300; ++round) {
        std::vector<std::string> surfaces;
        std::string dict;
        std::set<std::string> seen;
        for (std::size_t k = count(rng); k > 0; --k) {
            std::string w;
            for (std::size_t n = len(rng); n > 0; --n) w += alphabet[letter(rng) % 2 + (letter(rng) % 2) * 2];
            if (!seen.insert(w).second) continue;
            surfaces.push_back(w);
            dict += w + "\tE1\n";
        }
        Lexicon lex = power_only(dict.c_str());
        std::string text;
        for (std::size_t n = 12; n > 0; --n) text += alphabet[letter(rng)];
        auto s = make_sentence("r", text);
        CAPTURE(dict);
        CAPTURE(text);
        CHECK(lock_spans(s, lex) == brute_lock(s, surfaces));
    }
}

TEST_CASE("allowed states: locks and whitespace") {
    auto s = make_sentence("s", "ab c");
    auto allowed = allowed_states(s, {{0, 2}});
    CHECK(allowed[0] == std::array<bool, 4>{true, false, false, false});
    CHECK(allowed[1] == std::array<bool, 4>{false, false, true, false});
    CHECK(allowed[2] == std::array<bool, 4>{false, false, false, true});
    CHECK(allowed[3] == std::array<bool, 4>{true, true, true, true});
    CHECK(allowed_states(s, {{3, 4}})[3] == std::array<bool, 4>{false, false, false, true});
    CHECK_THROWS_AS(allowed_states(s, {{3, 5}}), SpanOutOfBounds);
    CHECK_THROWS_AS(allowed_states(s, {{0, 2}, {1, 3}}), SpanOutOfBounds);
    CHECK_THROWS_AS(allowed_states(s, {{2, 2}}), SpanOutOfBounds);
}

TEST_CASE("viterbi matches exhaustive search on random parameters") {
    std::mt19937_64 rng(20261017);
    const std::vector<std::string> alphabet{"a", "b", "c", " "};
    std::uniform_int_distribution<std::size_t> len(1, 8), letter(0, alphabet.size());
    std::uniform_real_distribution<double> u(0, 1);
    int checked = 0;
    for (int round = 0; round < 400; ++round) {
        HmmParams params = testing::random_params(rng, alphabet);
        std::string text;
        for (std::size_t n = len(rng); n > 0; --n) {
            std::size_t k = letter(rng);
            text += k < alphabet.size() ? alphabet[k] : "z";  // "z" exercises the unseen emission
        }
        Sentence s = make_sentence("r", text);
        std::vector<Span> locked;
        if (u(rng) < 0.5 && s.graphemes.size() >= 2) {
            std::uniform_int_distribution<std::size_t> at(0, s.graphemes.size() - 1);
            std::size_t b = at(rng);
            std::size_t e = std::min(s.graphemes.size(), b + 1 + at(rng) % 3);
            locked.push_back({b, e});
        }
        auto expected = testing::brute_force_viterbi(s, params, locked);
        if (expected.states.empty()) {
            CHECK_THROWS_AS(viterbi_states(s, params, locked), SpanOutOfBounds);
            continue;
        }
        auto got = viterbi_states(s, params, locked);
        CAPTURE(text);
        CHECK(states_string(got.states) == states_string(expected.states));
        if (std::isinf(expected.logp)) {
            CHECK(got.logp == expected.logp);
        } else {
            CHECK(std::abs(got.logp - expected.logp) <= 1e-9);
        }
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("viterbi tie-break prefers the earlier state at the latest differing position") {
    // Uniform parameters over one grapheme: every legal path scores the same.
    HmmParams p;
    p.initial = {std::log(0.5), kNegInf, kNegInf, std::log(0.5)};
    for (State a : kStates)
        for (State b : kStates) p.transition[ix(a)][ix(b)] = legal_transition(a, b) ? std::log(0.5) : kNegInf;
    p.emission["x"] = {0, 0, 0, 0};
    p.unseen_emission_logp = 0;
    auto d = viterbi_states(make_sentence("t", "xxx"), p, {});
    auto oracle = testing::brute_force_viterbi(make_sentence("t", "xxx"), p, {});
    CHECK(states_string(d.states) == states_string(oracle.states));
    CHECK(states_string(d.states) == "SBE");
}

TEST_CASE("all -inf paths still yield a legal decoding") {
    HmmParams p;
    p.initial = {std::log(0.5), kNegInf, kNegInf, std::log(0.5)};
    for (State a : kStates)
        for (State b : kStates) p.transition[ix(a)][ix(b)] = legal_transition(a, b) ? std::log(0.5) : kNegInf;
    p.unseen_emission_logp = kNegInf;
    auto d = viterbi_states(make_sentence("t", "qq"), p, {});
    CHECK(d.logp == kNegInf);
    CHECK(states_string(d.states) == "BE");
}

TEST_CASE("segment output tiles the sentence and keeps locks whole") {
    HmmParams params = fit_params(load_tagged_corpus(testing::fixture("station/tagged.txt")));
    Lexicon lex({}, load_lexicon(testing::fixture("station/power.dict"), Source::Power));
    for (const char* text : {"Transformer #1 connects #2016", "xfmr 1 oil leakage near Bay 3", "ＸＦＭＲ 2",
                             "unknown words only", "a"}) {
        CAPTURE(text);
        Sentence s = make_sentence("s", text);
        auto tokens = segment(s, params, lex);
        std::string joined;
        std::size_t cursor = 0;
        for (const auto& t : tokens) {
            CHECK(t.span.begin == cursor);
            CHECK(t.span.end > t.span.begin);
            cursor = t.span.end;
            joined += t.surface;
        }
        CHECK(cursor == s.graphemes.size());
        CHECK(joined == text);
        for (const auto& span : lock_spans(s, lex)) {
            bool whole = std::any_of(tokens.begin(), tokens.end(),
                                     [&](const Token& t) { return t.span == span && t.locked; });
            CHECK(whole);
        }
        CHECK(segment(s, params, lex) == tokens);
    }
}

TEST_CASE("fit_params reproduces hand counts") {
    // Gold: "ab c" -> [ab][ ][c]; "cc" -> [cc]. States: B E S S / B E.
    auto corpus = parse_tagged_corpus("ab\t \tc\ncc\n");
    HmmParams p = fit_params(corpus);
    CHECK(p.initial[ix(State::B)] == doctest::Approx(std::log(1.0)));
    CHECK(p.initial[ix(State::S)] == kNegInf);
    // E->S observed once, E->B never: row E = {B:0, S:1}.
    CHECK(p.transition[ix(State::E)][ix(State::S)] == doctest::Approx(0.0));
    CHECK(p.transition[ix(State::E)][ix(State::B)] == kNegInf);
    // S->S once: row S = {S:1}.
    CHECK(p.transition[ix(State::S)][ix(State::S)] == doctest::Approx(0.0));
    // M never observed: uniform over M, E.
    CHECK(p.transition[ix(State::M)][ix(State::M)] == doctest::Approx(std::log(0.5)));
    CHECK(p.transition[ix(State::M)][ix(State::E)] == doctest::Approx(std::log(0.5)));
    // B->E twice, B->M never.
    CHECK(p.transition[ix(State::B)][ix(State::E)] == doctest::Approx(0.0));
    // Vocabulary {a, b, c, ' '} (V=4). N_B = 2, N_E = 2, N_S = 2, N_M = 0.
    CHECK(p.emission.at("a")[ix(State::B)] == doctest::Approx(std::log(2.0 / 7.0)));
    CHECK(p.emission.at("c")[ix(State::E)] == doctest::Approx(std::log(2.0 / 7.0)));
    CHECK(p.emission.at("c")[ix(State::S)] == doctest::Approx(std::log(2.0 / 7.0)));
    CHECK(p.emission.at("a")[ix(State::M)] == doctest::Approx(std::log(1.0 / 5.0)));
    CHECK(p.unseen_emission_logp == doctest::Approx(std::log(1.0 / 7.0)));
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("fit_params rejects empty corpora and bad tiling") {
    CHECK_THROWS_AS(fit_params({}), EmptyCorpus);
    CHECK_THROWS_AS(parse_tagged_corpus("a\t\tb\n"), MalformedLine);
    TaggedSentence t{make_sentence("x", "abc"), {{0, 1}, {2, 3}}};
    CHECK_THROWS_AS(fit_params({t}), Error);
}

TEST_CASE("params round trip exactly") {
    HmmParams p = fit_params(load_tagged_corpus(testing::fixture("station/tagged.txt")));
    testing::TempDir dir;
    save_params(p, dir.file("hmm.params"));
    HmmParams q = load_params(dir.file("hmm.params"));
    CHECK(q.initial == p.initial);
    CHECK(q.transition == p.transition);
    CHECK(q.emission == p.emission);
    CHECK(q.unseen_emission_logp == p.unseen_emission_logp);
    CHECK(format_params(q) == format_params(p));
}

TEST_CASE("validate rejects broken parameters") {
    HmmParams p = fit_params(parse_tagged_corpus("ab\tc\n"));
    HmmParams bad = p;
    bad.initial[ix(State::M)] = std::log(0.1);
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = p;
    bad.transition[ix(State::B)][ix(State::M)] = std::log(0.9);
    bad.transition[ix(State::B)][ix(State::E)] = std::log(0.9);
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = p;
    bad.transition[ix(State::B)][ix(State::S)] = std::log(0.1);
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = p;
    bad.unseen_emission_logp = std::nan("");
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    CHECK_THROWS_AS(parse_params("[initial]\nQ\t0\n"), MalformedLine);
    CHECK_THROWS_AS(parse_params("B\t0\n"), MalformedLine);
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>

#include "pekg/error.hpp"

namespace pekg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t idx(State s) { return static_cast<std::size_t>(s); }

std::optional<State> parse_state(std::string_view s) {
    if (s == "B") return State::B;
    if (s == "M") return State::M;
    if (s == "E") return State::E;
    if (s == "S") return State::S;
    return std::nullopt;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, std::size_t line_no) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw MalformedLine(line_no, "bad number '" + s + "'");
    return v;
}

double log_sum_exp(const HmmParams::Row& row) {
    double sum = 0.0;
    for (double v : row) sum += std::exp(v);
    return sum;
}

}  // namespace

char state_char(State s) { return "BMES"[idx(s)]; }

bool legal_transition(State from, State to) {
    switch (from) {
        case State::B:
        case State::M: return to == State::M || to == State::E;
        case State::E:
        case State::S: return to == State::B || to == State::S;
    }
    return false;
}

bool legal_initial(State s) { return s == State::B || s == State::S; }
bool legal_final(State s) { return s == State::E || s == State::S; }

double HmmParams::emit(State s, std::string_view grapheme) const {
    auto it = emission.find(std::string(grapheme));
    return it == emission.end() ? unseen_emission_logp : it->second[idx(s)];
}

void validate(const HmmParams& p) {
    auto bad = [](double v) { return std::isnan(v) || v == std::numeric_limits<double>::infinity(); };
    for (State s : kStates) {
        if (bad(p.initial[idx(s)])) throw InvalidParams("initial log-probability is not a number");
        if (!legal_initial(s) && p.initial[idx(s)] != kNegInf)
            throw InvalidParams(std::string("initial[") + state_char(s) + "] must be -inf");
    }
    if (std::abs(log_sum_exp(p.initial) - 1.0) > 1e-9) throw InvalidParams("initial does not sum to 1");
    for (State from : kStates) {
        const auto& row = p.transition[idx(from)];
        for (State to : kStates) {
            if (bad(row[idx(to)])) throw InvalidParams("transition log-probability is not a number");
            if (!legal_transition(from, to) && row[idx(to)] != kNegInf)
                throw InvalidParams(std::string("illegal transition ") + state_char(from) + "->" +
                                    state_char(to) + " must be -inf");
        }
        if (std::abs(log_sum_exp(row) - 1.0) > 1e-9)
            throw InvalidParams(std::string("transition row ") + state_char(from) + " does not sum to 1");
    }
    for (const auto& [g, row] : p.emission)
        for (double v : row)
            if (bad(v)) throw InvalidParams("emission log-probability for '" + g + "' is not a number");
    if (bad(p.unseen_emission_logp)) throw InvalidParams("unseen emission log-probability is not a number");
}

HmmParams parse_params(std::string_view text) {
    HmmParams p;
    p.initial.fill(kNegInf);
    for (auto& row : p.transition) row.fill(kNegInf);

    enum class Section { None, Initial, Transition, Emission, Unseen } section = Section::None;
    struct Pending {
        std::string grapheme;
        State state;
        double value;
    };
    std::vector<Pending> emissions;

    std::size_t line_no = 0;
    for (std::string line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (line == "[initial]") { section = Section::Initial; continue; }
        if (line == "[transition]") { section = Section::Transition; continue; }
        if (line == "[emission]") { section = Section::Emission; continue; }
        if (line == "[unseen]") { section = Section::Unseen; continue; }

        auto cols = split(line, '\t');
        switch (section) {
            case Section::None:
                throw MalformedLine(line_no, "entry outside of a section");
            case Section::Initial: {
                auto s = cols.size() == 2 ? parse_state(cols[0]) : std::nullopt;
                if (!s) throw MalformedLine(line_no, "expected state<TAB>value");
                p.initial[idx(*s)] = parse_double(cols[1], line_no);
                break;
            }
            case Section::Transition: {
                if (cols.size() != 3) throw MalformedLine(line_no, "expected s1<TAB>s2<TAB>value");
                auto a = parse_state(cols[0]);
                auto b = parse_state(cols[1]);
                if (!a || !b) throw MalformedLine(line_no, "unknown state");
                p.transition[idx(*a)][idx(*b)] = parse_double(cols[2], line_no);
                break;
            }
            case Section::Emission: {
                if (cols.size() != 3) throw MalformedLine(line_no, "expected state<TAB>grapheme<TAB>value");
                auto s = parse_state(cols[0]);
                if (!s) throw MalformedLine(line_no, "unknown state");
                emissions.push_back({cols[1], *s, parse_double(cols[2], line_no)});
                break;
            }
            case Section::Unseen:
                if (cols.size() != 1) throw MalformedLine(line_no, "expected a single value");
                p.unseen_emission_logp = parse_double(cols[0], line_no);
                break;
        }
    }
    for (const auto& e : emissions) {
        auto [it, inserted] = p.emission.try_emplace(e.grapheme);
        if (inserted) it->second.fill(p.unseen_emission_logp);
        it->second[idx(e.state)] = e.value;
    }
    return p;
}

HmmParams load_params(const std::string& path) { return parse_params(read_file(path)); }

std::string format_params(const HmmParams& p) {
    std::string out = "[initial]\n";
    for (State s : kStates) out += std::string(1, state_char(s)) + '\t' + format_double(p.initial[idx(s)]) + '\n';
    out += "[transition]\n";
    for (State a : kStates)
        for (State b : kStates)
            out += std::string(1, state_char(a)) + '\t' + state_char(b) + '\t' +
                   format_double(p.transition[idx(a)][idx(b)]) + '\n';
    out += "[unseen]\n" + format_double(p.unseen_emission_logp) + '\n';
    out += "[emission]\n";
    for (const auto& [g, row] : p.emission)
        for (State s : kStates)
            out += std::string(1, state_char(s)) + '\t' + g + '\t' + format_double(row[idx(s)]) + '\n';
    return out;
}

void save_params(const HmmParams& params, const std::string& path) {
    write_file(path, format_params(params));
}

Sentence make_sentence(std::string id, std::string_view text, Provenance source) {
    return Sentence{std::move(id), split_graphemes(text), std::move(source)};
}

std::vector<Span> lock_spans(const Sentence& sentence, const Lexicon& lexicon) {
    std::vector<Span> spans;
    const auto& g = sentence.graphemes;
    std::vector<std::string> folded;
    folded.reserve(g.size());
    for (const auto& gr : g) folded.push_back(fold_grapheme(gr));

    std::size_t i = 0;
    while (i < g.size()) {
        std::size_t longest = 0;
        std::size_t limit = std::min(lexicon.max_power_len(), g.size() - i);
        std::string key;
        for (std::size_t len = 1; len <= limit; ++len) {
            key += folded[i + len - 1];
            if (lexicon.has_power_fold(key)) longest = len;
        }
        if (longest > 0) {
            spans.push_back({i, i + longest});
            i += longest;
        } else {
            ++i;
        }
    }
    return spans;
}

std::vector<std::array<bool, kStateCount>> allowed_states(const Sentence& sentence,
                                                          const std::vector<Span>& locked) {
    const std::size_t n = sentence.graphemes.size();
    std::vector<std::array<bool, kStateCount>> allowed(n, {true, true, true, true});
    std::vector<bool> in_lock(n, false);
    std::size_t prev_end = 0;
    for (const auto& span : locked) {
        if (span.begin >= span.end || span.end > n || span.begin < prev_end)
            throw SpanOutOfBounds("locked span [" + std::to_string(span.begin) + "," +
                                  std::to_string(span.end) + ") invalid for sentence of length " +
                                  std::to_string(n));
        prev_end = span.end;
        for (std::size_t i = span.begin; i < span.end; ++i) {
            in_lock[i] = true;
            State forced = span.size() == 1       ? State::S
                           : i == span.begin      ? State::B
                           : i + 1 == span.end    ? State::E
                                                  : State::M;
            allowed[i] = {false, false, false, false};
            allowed[i][idx(forced)] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_lock[i] && is_whitespace_grapheme(sentence.graphemes[i])) {
            allowed[i] = {false, false, false, true};
        }
    }
    return allowed;
}

Decoding viterbi_states(const Sentence& sentence, const HmmParams& params,
                        const std::vector<Span>& locked) {
    validate(params);
    const auto& g = sentence.graphemes;
    const std::size_t n = g.size();
    auto allowed = allowed_states(sentence, locked);
    if (n == 0) return {};

    struct Cell {
        bool reachable = false;
        double score = kNegInf;
        State back = State::B;
    };
    std::vector<std::array<Cell, kStateCount>> table(n);

    for (State s : kStates) {
        if (!allowed[0][idx(s)] || !legal_initial(s)) continue;
        table[0][idx(s)] = {true, params.initial[idx(s)] + params.emit(s, g[0]), s};
    }
    for (std::size_t i = 1; i < n; ++i) {
        for (State cur : kStates) {
            if (!allowed[i][idx(cur)]) continue;
            Cell& cell = table[i][idx(cur)];
            double e = params.emit(cur, g[i]);
            for (State prev : kStates) {
                const Cell& from = table[i - 1][idx(prev)];
                if (!from.reachable || !legal_transition(prev, cur)) continue;
                double cand = (from.score + params.transition[idx(prev)][idx(cur)]) + e;
                if (!cell.reachable || cand > cell.score) cell = {true, cand, prev};
            }
        }
    }

    const Cell* best = nullptr;
    State best_state = State::B;
    for (State s : kStates) {
        const Cell& c = table[n - 1][idx(s)];
        if (!c.reachable || !legal_final(s)) continue;
        if (!best || c.score > best->score) {
            best = &c;
            best_state = s;
        }
    }
    if (!best) throw SpanOutOfBounds("no legal segmentation satisfies the locked spans");

    // Every legal path scores -inf, so all of them tie: keep the earliest
    // reachable predecessor at each cell and the earliest final state.
    if (best->score == kNegInf) {
        for (std::size_t i = 1; i < n; ++i)
            for (State cur : kStates) {
                Cell& cell = table[i][idx(cur)];
                if (!cell.reachable) continue;
                for (State prev : kStates)
                    if (table[i - 1][idx(prev)].reachable && legal_transition(prev, cur)) {
                        cell.back = prev;
                        break;
                    }
            }
        for (State s : kStates)
            if (table[n - 1][idx(s)].reachable && legal_final(s)) {
                best_state = s;
                break;
            }
    }

    Decoding out;
    out.logp = best->score;
    out.states.resize(n);
    State s = best_state;
    for (std::size_t i = n; i-- > 0;) {
        out.states[i] = s;
        s = table[i][idx(s)].back;
    }
    return out;
}

std::vector<Token> tokens_from_states(const Sentence& sentence, const std::vector<State>& states,
                                      const std::vector<Span>& locked) {
    std::set<Span> locked_set(locked.begin(), locked.end());
    std::vector<Token> tokens;
    std::size_t start = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i] == State::E || states[i] == State::S || i + 1 == states.size()) {
            Span span{start, i + 1};
            tokens.push_back({join(sentence.graphemes, span.begin, span.end), span,
                              locked_set.count(span) > 0});
            start = i + 1;
        }
    }
    return tokens;
}

std::vector<Token> viterbi(const Sentence& sentence, const HmmParams& params,
                           const std::vector<Span>& locked) {
    Decoding d = viterbi_states(sentence, params, locked);
    return tokens_from_states(sentence, d.states, locked);
}

std::vector<Token> segment(const Sentence& sentence, const HmmParams& params,
                           const Lexicon& lexicon) {
    return viterbi(sentence, params, lock_spans(sentence, lexicon));
}

HmmParams fit_params(const std::vector<TaggedSentence>& corpus) {
    std::array<double, kStateCount> init{};
    std::array<std::array<double, kStateCount>, kStateCount> trans{};
    std::map<std::string, std::array<double, kStateCount>> emit_counts;
    std::array<double, kStateCount> state_totals{};
    std::size_t used = 0;

    for (const auto& tagged : corpus) {
        const auto& g = tagged.sentence.graphemes;
        if (g.empty()) continue;
        std::vector<State> states;
        std::size_t cursor = 0;
        for (const auto& span : tagged.gold) {
            if (span.begin != cursor || span.end <= span.begin || span.end > g.size())
                throw Error("gold tokens of sentence '" + tagged.sentence.id + "' do not tile it");
            for (std::size_t i = span.begin; i < span.end; ++i) {
                states.push_back(span.size() == 1      ? State::S
                                 : i == span.begin     ? State::B
                                 : i + 1 == span.end   ? State::E
                                                       : State::M);
            }
            cursor = span.end;
        }
        if (cursor != g.size())
            throw Error("gold tokens of sentence '" + tagged.sentence.id + "' do not tile it");

        ++used;
        init[idx(states[0])] += 1;
        for (std::size_t i = 0; i < g.size(); ++i) {
            emit_counts[g[i]][idx(states[i])] += 1;
            state_totals[idx(states[i])] += 1;
            if (i > 0) trans[idx(states[i - 1])][idx(states[i])] += 1;
        }
    }
    if (used == 0) throw EmptyCorpus();

    HmmParams p;
    for (State s : kStates) p.initial[idx(s)] = std::log(init[idx(s)] / static_cast<double>(used));

    for (State from : kStates) {
        double total = 0;
        for (double c : trans[idx(from)]) total += c;
        for (State to : kStates) {
            double& out = p.transition[idx(from)][idx(to)];
            if (!legal_transition(from, to)) {
                out = kNegInf;
            } else if (total == 0) {
                out = std::log(0.5);  // unobserved row: uniform over the two legal successors
            } else {
                out = std::log(trans[idx(from)][idx(to)] / total);
            }
        }
    }

    const double vocab = static_cast<double>(emit_counts.size());
    double max_denominator = 0;
    for (State s : kStates) max_denominator = std::max(max_denominator, state_totals[idx(s)] + vocab + 1);
    for (const auto& [g, counts] : emit_counts) {
        auto& row = p.emission[g];
        for (State s : kStates)
            row[idx(s)] = std::log((counts[idx(s)] + 1) / (state_totals[idx(s)] + vocab + 1));
    }
    p.unseen_emission_logp = std::log(1.0 / max_denominator);
    return p;
}

std::vector<TaggedSentence> parse_tagged_corpus(std::string_view text) {
    std::vector<TaggedSentence> out;
    std::size_t line_no = 0;
    for (std::string line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        TaggedSentence t;
        t.sentence.id = "tagged:" + std::to_string(line_no);
        for (const auto& tok : split(line, '\t')) {
            if (tok.empty()) throw MalformedLine(line_no, "empty gold token");
            Graphemes g = split_graphemes(tok);
            std::size_t begin = t.sentence.graphemes.size();
            t.sentence.graphemes.insert(t.sentence.graphemes.end(), g.begin(), g.end());
            t.gold.push_back({begin, t.sentence.graphemes.size()});
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<TaggedSentence> load_tagged_corpus(const std::string& path) {
    return parse_tagged_corpus(read_file(path));
}

}  // namespace pekg

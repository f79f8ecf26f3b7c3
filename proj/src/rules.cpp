// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/rules.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>

#include "pekg/error.hpp"
#include "pekg/text.hpp"

namespace pekg {

namespace {

Term parse_term(std::string_view raw, std::size_t line_no) {
    std::string_view t = trim(raw);
    if (t.empty()) throw MalformedLine(line_no, "empty term");
    if (t.front() == '?') {
        if (t.size() == 1) throw MalformedLine(line_no, "unnamed variable");
        return {true, std::string(t.substr(1))};
    }
    return {false, std::string(t)};
}

TriplePattern parse_pattern(std::string_view raw, std::size_t line_no) {
    std::string_view t = trim(raw);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw MalformedLine(line_no, "pattern must be written (s,p,o)");
    auto parts = split(t.substr(1, t.size() - 2), ',');
    if (parts.size() != 3) throw MalformedLine(line_no, "pattern must have three terms");
    return {parse_term(parts[0], line_no), parse_term(parts[1], line_no), parse_term(parts[2], line_no)};
}

std::string format_term(const Term& t) { return t.variable ? "?" + t.text : t.text; }

std::string format_pattern(const TriplePattern& p) {
    return "(" + format_term(p.s) + "," + format_term(p.p) + "," + format_term(p.o) + ")";
}

}  // namespace

void validate(const InferenceRule& rule) {
    if (rule.premises.empty()) throw NonTerminatingRuleSet("rule '" + rule.name + "' has no premises");
    std::set<std::string> entity_vars, predicate_vars;
    for (const auto& p : rule.premises) {
        if (p.s.variable) entity_vars.insert(p.s.text);
        if (p.o.variable) entity_vars.insert(p.o.text);
        if (p.p.variable) predicate_vars.insert(p.p.text);
    }
    for (const auto& v : predicate_vars)
        if (entity_vars.count(v))
            throw NonTerminatingRuleSet("rule '" + rule.name + "' uses ?" + v + " as both entity and predicate");
    const auto& c = rule.conclusion;
    for (const Term* t : {&c.s, &c.o})
        if (t->variable && !entity_vars.count(t->text))
            throw NonTerminatingRuleSet("rule '" + rule.name + "' concludes unbound variable ?" + t->text);
    if (c.p.variable && !predicate_vars.count(c.p.text))
        throw NonTerminatingRuleSet("rule '" + rule.name + "' concludes unbound variable ?" + c.p.text);
}

RuleSet parse_rules(std::string_view text) {
    RuleSet rules;
    std::set<std::string> names;
    std::size_t line_no = 0;
    for (std::string line : split(text, '\n')) {
        ++line_no;
        std::string_view l = trim(line);
        if (l.empty() || l.front() == '#') continue;
        auto colon = l.find(':');
        auto arrow = l.find("=>");
        if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow < colon)
            throw MalformedLine(line_no, "expected name: premises => conclusion");
        InferenceRule rule;
        rule.name = std::string(trim(l.substr(0, colon)));
        if (rule.name.empty()) throw MalformedLine(line_no, "rule needs a name");
        if (!names.insert(rule.name).second) throw MalformedLine(line_no, "duplicate rule '" + rule.name + "'");
        for (const auto& premise : split(l.substr(colon + 1, arrow - colon - 1), '&'))
            rule.premises.push_back(parse_pattern(premise, line_no));
        rule.conclusion = parse_pattern(l.substr(arrow + 2), line_no);
        validate(rule);
        rules.push_back(std::move(rule));
    }
    return rules;
}

RuleSet load_rules(const std::string& path) { return parse_rules(read_file(path)); }

std::string format_rule(const InferenceRule& rule) {
    std::string out = rule.name + ": ";
    for (std::size_t i = 0; i < rule.premises.size(); ++i) {
        if (i) out += " & ";
        out += format_pattern(rule.premises[i]);
    }
    return out + " => " + format_pattern(rule.conclusion);
}

RuleSet default_rules() {
    return parse_rules("belongto-trans: (?a,BelongTo,?b) & (?b,BelongTo,?c) => (?a,BelongTo,?c)\n");
}

namespace {

using Fact = std::array<std::uint32_t, 3>;  // s, p, o
constexpr std::uint32_t kUnbound = UINT32_MAX;

struct CompiledTerm {
    bool variable = false;
    std::uint32_t value = kUnbound;  // constant id or variable slot
};

struct CompiledPattern {
    std::array<CompiledTerm, 3> terms;
};

struct CompiledRule {
    const InferenceRule* source = nullptr;
    std::vector<CompiledPattern> premises;
    CompiledPattern conclusion;
    std::size_t slots = 0;
    bool inert = false;  // references a constant absent from the store
};

// Facts visible to pattern matching; symmetric predicates appear in both
// orientations.
class FactIndex {
public:
    void add(const Fact& f) {
        if (!all_.insert(f).second) return;
        by_p_[f[1]].push_back(f);
        by_ps_[key(f[1], f[0])].push_back(f);
        by_po_[key(f[1], f[2])].push_back(f);
    }

    const std::vector<Fact>& candidates(const std::array<std::uint32_t, 3>& bound) const {
        static const std::vector<Fact> empty;
        const std::unordered_map<std::uint64_t, std::vector<Fact>>* map = nullptr;
        std::uint64_t k = 0;
        if (bound[1] != kUnbound && bound[0] != kUnbound) {
            map = &by_ps_;
            k = key(bound[1], bound[0]);
        } else if (bound[1] != kUnbound && bound[2] != kUnbound) {
            map = &by_po_;
            k = key(bound[1], bound[2]);
        } else if (bound[1] != kUnbound) {
            auto it = by_p_.find(bound[1]);
            return it == by_p_.end() ? empty : it->second;
        } else {
            return all_vec();
        }
        auto it = map->find(k);
        return it == map->end() ? empty : it->second;
    }

private:
    static std::uint64_t key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

    const std::vector<Fact>& all_vec() const {
        if (all_cache_.size() != all_.size()) all_cache_.assign(all_.begin(), all_.end());
        return all_cache_;
    }

    std::set<Fact> all_;
    mutable std::vector<Fact> all_cache_;
    std::unordered_map<std::uint32_t, std::vector<Fact>> by_p_;
    std::unordered_map<std::uint64_t, std::vector<Fact>> by_ps_;
    std::unordered_map<std::uint64_t, std::vector<Fact>> by_po_;
};

class Saturator {
public:
    Saturator(const GraphStore& store, const RuleSet& rules) : store_(store) {
        for (PredicateId p = 0; p < store.predicate_count(); ++p) predicate_names_.push_back(store.predicate_name(p));
        for (const auto& r : rules) compile(r);
    }

    std::vector<DerivedTriple> run() {
        std::vector<Fact> delta;
        for (const auto& [k, t] : store_.triples()) {
            Fact f{k.s, k.p, k.o};
            known_.insert(f);
            for (const Fact& v : views(f)) {
                index_.add(v);
                delta.push_back(v);
            }
        }

        while (!delta.empty()) {
            std::vector<Fact> fresh;
            FactIndex delta_index;
            for (const Fact& f : delta) delta_index.add(f);
            for (const auto& rule : rules_) {
                if (rule.inert) continue;
                for (std::size_t pivot = 0; pivot < rule.premises.size(); ++pivot) {
                    std::vector<std::uint32_t> binding(rule.slots, kUnbound);
                    join(rule, pivot, delta_index, 0, binding, fresh);
                }
            }
            delta.clear();
            for (const Fact& f : fresh)
                for (const Fact& v : views(f)) {
                    index_.add(v);
                    delta.push_back(v);
                }
        }

        std::vector<DerivedTriple> out;
        for (auto& [f, names] : derived_)
            out.push_back({f[0], predicate_names_[f[1]], f[2], std::vector<std::string>(names.begin(), names.end())});
        std::sort(out.begin(), out.end(), [this](const DerivedTriple& a, const DerivedTriple& b) {
            return std::tie(store_.entity(a.s).label, a.predicate, store_.entity(a.o).label) <
                   std::tie(store_.entity(b.s).label, b.predicate, store_.entity(b.o).label);
        });
        return out;
    }

private:
    std::uint32_t predicate_id(const std::string& name) {
        for (std::uint32_t i = 0; i < predicate_names_.size(); ++i)
            if (predicate_names_[i] == name) return i;
        predicate_names_.push_back(name);
        return static_cast<std::uint32_t>(predicate_names_.size() - 1);
    }

    bool symmetric(std::uint32_t p) const { return is_symmetric_predicate(predicate_names_[p]); }

    // Canonical orientation of a fact with a symmetric predicate.
    Fact canonical(Fact f) const {
        if (symmetric(f[1]) && store_.entity(f[2]).label < store_.entity(f[0]).label) std::swap(f[0], f[2]);
        return f;
    }

    std::vector<Fact> views(const Fact& f) const {
        if (symmetric(f[1])) return {f, Fact{f[2], f[1], f[0]}};
        return {f};
    }

    void compile(const InferenceRule& rule) {
        CompiledRule c;
        c.source = &rule;
        std::map<std::string, std::uint32_t> slots;
        auto term = [&](const Term& t, bool predicate_pos) {
            CompiledTerm ct;
            if (t.variable) {
                ct.variable = true;
                auto [it, inserted] = slots.try_emplace(t.text, static_cast<std::uint32_t>(slots.size()));
                ct.value = it->second;
                return ct;
            }
            if (predicate_pos) {
                ct.value = predicate_id(t.text);
            } else {
                auto id = store_.find_label(t.text);
                if (!id) id = store_.find_normalized(t.text);
                ct.value = id ? *id : kUnbound;
            }
            if (ct.value == kUnbound) c.inert = true;
            return ct;
        };
        for (const auto& p : rule.premises)
            c.premises.push_back({{term(p.s, false), term(p.p, true), term(p.o, false)}});
        c.conclusion = {{term(rule.conclusion.s, false), term(rule.conclusion.p, true), term(rule.conclusion.o, false)}};
        c.slots = slots.size();
        rules_.push_back(std::move(c));
    }

    void join(const CompiledRule& rule, std::size_t pivot, const FactIndex& delta, std::size_t depth,
              std::vector<std::uint32_t>& binding, std::vector<Fact>& fresh) {
        // Pivot premise first, then the rest in declaration order.
        if (depth == rule.premises.size()) {
            conclude(rule, binding, fresh);
            return;
        }
        std::size_t which = depth == 0 ? pivot : (depth <= pivot ? depth - 1 : depth);
        const CompiledPattern& pat = rule.premises[which];
        const FactIndex& source = depth == 0 ? delta : index_;

        std::array<std::uint32_t, 3> bound{};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& t = pat.terms[i];
            bound[i] = t.variable ? binding[t.value] : t.value;
        }
        for (const Fact& f : source.candidates(bound)) {
            std::vector<std::uint32_t> saved = binding;
            bool ok = true;
            for (std::size_t i = 0; i < 3 && ok; ++i) {
                const auto& t = pat.terms[i];
                std::uint32_t want = t.variable ? binding[t.value] : t.value;
                if (want != kUnbound && want != f[i]) {
                    ok = false;
                } else if (t.variable) {
                    binding[t.value] = f[i];
                }
            }
            if (ok) join(rule, pivot, delta, depth + 1, binding, fresh);
            binding = std::move(saved);
        }
    }

    void conclude(const CompiledRule& rule, const std::vector<std::uint32_t>& binding, std::vector<Fact>& fresh) {
        Fact f{};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& t = rule.conclusion.terms[i];
            f[i] = t.variable ? binding[t.value] : t.value;
        }
        if (f[0] == f[2]) return;
        f = canonical(f);
        auto it = derived_.find(f);
        if (it != derived_.end()) {
            it->second.insert(rule.source->name);
            return;
        }
        if (!known_.insert(f).second) return;  // asserted
        derived_[f].insert(rule.source->name);
        fresh.push_back(f);
    }

    const GraphStore& store_;
    std::vector<std::string> predicate_names_;
    std::vector<CompiledRule> rules_;
    std::set<Fact> known_;
    std::map<Fact, std::set<std::string>> derived_;
    FactIndex index_;
};

}  // namespace

std::vector<DerivedTriple> saturate(const GraphStore& store, const RuleSet& rules) {
    for (const auto& r : rules) validate(r);
    if (rules.empty()) return {};
    return Saturator(store, rules).run();
}

void apply_derived(GraphStore& store, const std::vector<DerivedTriple>& derived) {
    for (const auto& d : derived) {
        std::vector<Provenance> prov;
        for (const auto& r : d.rules) prov.push_back({ProvenanceKind::Derived, r});
        store.insert(d.s, d.predicate, d.o, std::move(prov), true);
    }
}

}  // namespace pekg

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/triple_store.hpp"

#include <algorithm>
#include <tuple>

#include "pekg/error.hpp"
#include "pekg/text.hpp"

namespace pekg {

namespace {

void check_field(std::string_view value, std::string_view what, std::string_view forbidden) {
    if (value.empty()) throw InvalidLabel(std::string(what) + " must not be empty");
    if (value.find_first_of(forbidden) != std::string_view::npos)
        throw InvalidLabel(std::string(what) + " contains a reserved character: " + std::string(value));
}

void merge_provenance(std::vector<Provenance>& into, std::vector<Provenance> extra) {
    into.insert(into.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
    std::sort(into.begin(), into.end());
    into.erase(std::unique(into.begin(), into.end()), into.end());
}

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::Out ? "out" : "in"; }

EntityId GraphStore::ensure_entity(std::string_view label, EntityKind kind) {
    check_field(label, "label", "\t\n\r");
    if (normalize(label).empty()) throw InvalidLabel("label must not be blank");
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) {
        auto nit = by_normalized_.find(normalize(label));
        if (nit != by_normalized_.end()) it = by_label_.find(entities_[nit->second].label);
    }
    if (it != by_label_.end()) {
        EntityRecord& e = entities_[it->second];
        if (!kinds_compatible(e.category, kind))
            throw CategoryConflict(e.label, std::string(to_string(e.category)), std::string(to_string(kind)));
        e.category = merge_kinds(e.category, kind);
        return e.id;
    }
    EntityId id = static_cast<EntityId>(entities_.size());
    entities_.push_back({id, std::string(label), kind, {}});
    by_label_.emplace(label, id);
    by_normalized_.emplace(normalize(label), id);
    return id;
}

void GraphStore::add_alias(EntityId id, std::string_view alias) {
    check_field(alias, "alias", "\t\n\r,");
    EntityRecord& e = entities_.at(id);
    if (alias == e.label) return;
    std::string norm = normalize(alias);
    auto owner = by_normalized_.find(norm);
    if (owner != by_normalized_.end() && owner->second != id) return;  // already another entity's label
    e.aliases.emplace(alias);
    by_alias_.emplace(std::move(norm), id);
}

PredicateId GraphStore::intern_predicate(std::string_view name) {
    check_field(name, "predicate", "\t\n\r");
    auto it = predicate_ids_.find(std::string(name));
    if (it != predicate_ids_.end()) return it->second;
    PredicateId id = static_cast<PredicateId>(predicates_.size());
    predicates_.push_back(make_predicate(name));
    predicate_ids_.emplace(name, id);
    return id;
}

bool GraphStore::insert(EntityId s, std::string_view predicate, EntityId o, std::vector<Provenance> provenance,
                        bool derived) {
    if (!has_entity(s)) throw UnknownEntity(s);
    if (!has_entity(o)) throw UnknownEntity(o);
    if (s == o) throw InvalidLabel("self-loop on '" + entities_[s].label + "'");
    for (const auto& p : provenance) check_field(p.source_id, "provenance source", "\t\n\r;");

    PredicateId p = intern_predicate(predicate);
    if (predicates_[p].symmetric && entities_[o].label < entities_[s].label) std::swap(s, o);
    TripleKey key{s, p, o};

    auto it = spo_.find(key);
    if (it != spo_.end()) {
        Triple& t = it->second;
        if (derived && !t.derived) return false;
        if (!derived && t.derived) {
            t.derived = false;
            t.provenance.clear();
        }
        merge_provenance(t.provenance, std::move(provenance));
        return false;
    }
    Triple t{key, {}, derived};
    merge_provenance(t.provenance, std::move(provenance));
    spo_.emplace(key, std::move(t));
    pos_.insert({p, o, s});
    osp_.insert({o, s, p});
    return true;
}

bool GraphStore::insert(const CandidateTriple& t) {
    EntityId s = ensure_entity(t.subject.label, t.subject.kind);
    EntityId o = ensure_entity(t.object.label, t.object.kind);
    return insert(s, t.predicate.name, o, {t.provenance});
}

bool GraphStore::insert(const FusedTriple& t) {
    EntityId s = ensure_entity(t.subject.label, t.subject.kind);
    EntityId o = ensure_entity(t.object.label, t.object.kind);
    return insert(s, t.predicate.name, o, t.provenance);
}

std::optional<EntityId> GraphStore::find_label(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

std::optional<EntityId> GraphStore::find_normalized(std::string_view query) const {
    std::string norm = normalize(query);
    if (auto it = by_normalized_.find(norm); it != by_normalized_.end()) return it->second;
    if (auto it = by_alias_.find(norm); it != by_alias_.end()) return it->second;
    return std::nullopt;
}

const EntityRecord& GraphStore::entity(EntityId id) const {
    if (!has_entity(id)) throw UnknownEntity(id);
    return entities_[id];
}

std::optional<PredicateId> GraphStore::predicate_id(std::string_view name) const {
    auto it = predicate_ids_.find(std::string(name));
    if (it == predicate_ids_.end()) return std::nullopt;
    return it->second;
}

const Triple* GraphStore::find(const TripleKey& key) const {
    auto it = spo_.find(key);
    return it == spo_.end() ? nullptr : &it->second;
}

std::vector<const Triple*> GraphStore::match(std::optional<EntityId> s, std::optional<PredicateId> p,
                                             std::optional<EntityId> o) const {
    constexpr std::uint32_t kMax = UINT32_MAX;
    std::vector<const Triple*> out;
    auto accept = [&](const TripleKey& k) {
        if ((!s || k.s == *s) && (!p || k.p == *p) && (!o || k.o == *o)) out.push_back(&spo_.at(k));
    };
    if (s) {
        auto lo = spo_.lower_bound({*s, p.value_or(0), p ? o.value_or(0) : 0});
        auto hi = spo_.upper_bound({*s, p.value_or(kMax), p ? o.value_or(kMax) : kMax});
        for (auto it = lo; it != hi; ++it) accept(it->first);
    } else if (p) {
        auto lo = pos_.lower_bound({*p, o.value_or(0), 0});
        auto hi = pos_.upper_bound({*p, o.value_or(kMax), kMax});
        for (auto it = lo; it != hi; ++it) accept({(*it)[2], (*it)[0], (*it)[1]});
    } else if (o) {
        auto lo = osp_.lower_bound({*o, 0, 0});
        auto hi = osp_.upper_bound({*o, kMax, kMax});
        for (auto it = lo; it != hi; ++it) accept({(*it)[1], (*it)[2], (*it)[0]});
    } else {
        for (const auto& [k, t] : spo_) out.push_back(&t);
    }
    return out;
}

std::vector<Neighbor> GraphStore::neighbors(EntityId id) const {
    if (!has_entity(id)) throw UnknownEntity(id);
    std::vector<Neighbor> out;
    for (const Triple* t : match(id, std::nullopt, std::nullopt)) out.push_back({t, Direction::Out, t->key.o});
    for (const Triple* t : match(std::nullopt, std::nullopt, id)) {
        Direction d = predicates_[t->key.p].symmetric ? Direction::Out : Direction::In;
        out.push_back({t, d, t->key.s});
    }
    std::sort(out.begin(), out.end(), [this](const Neighbor& a, const Neighbor& b) {
        return std::forward_as_tuple(predicates_[a.triple->key.p].name, entities_[a.other].label, a.direction) <
               std::forward_as_tuple(predicates_[b.triple->key.p].name, entities_[b.other].label, b.direction);
    });
    return out;
}

std::size_t GraphStore::derived_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(spo_.begin(), spo_.end(), [](const auto& kv) { return kv.second.derived; }));
}

void GraphStore::remove_derived() {
    for (auto it = spo_.begin(); it != spo_.end();) {
        if (it->second.derived) {
            const TripleKey& k = it->first;
            pos_.erase({k.p, k.o, k.s});
            osp_.erase({k.o, k.s, k.p});
            it = spo_.erase(it);
        } else {
            ++it;
        }
    }
}

bool GraphStore::indexes_coherent() const {
    if (pos_.size() != spo_.size() || osp_.size() != spo_.size()) return false;
    for (const auto& [k, t] : spo_) {
        if (!pos_.count({k.p, k.o, k.s}) || !osp_.count({k.o, k.s, k.p})) return false;
        if (!(t.key == k)) return false;
    }
    return true;
}

std::string format_graph(const GraphStore& store, bool include_derived) {
    std::vector<const EntityRecord*> ents;
    for (const auto& e : store.entities()) ents.push_back(&e);
    std::sort(ents.begin(), ents.end(), [](auto* a, auto* b) { return a->label < b->label; });

    std::string out = "#entities\n";
    for (const auto* e : ents) {
        out += "E\t" + e->label + '\t' + std::string(to_string(e->category)) + '\t';
        bool first = true;
        for (const auto& a : e->aliases) {
            if (!first) out += ',';
            out += a;
            first = false;
        }
        out += '\n';
    }

    struct Row {
        const std::string* s;
        const std::string* p;
        const std::string* o;
        const Triple* t;
    };
    std::vector<Row> rows;
    for (const auto& [k, t] : store.triples()) {
        if (t.derived && !include_derived) continue;
        rows.push_back({&store.entity(k.s).label, &store.predicate_name(k.p), &store.entity(k.o).label, &t});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(*a.s, *a.p, *a.o) < std::tie(*b.s, *b.p, *b.o);
    });

    out += "#triples\n";
    for (const auto& r : rows) {
        out += "T\t" + *r.s + '\t' + *r.p + '\t' + *r.o + '\t';
        for (std::size_t i = 0; i < r.t->provenance.size(); ++i) {
            if (i) out += ';';
            out += std::string(to_string(r.t->provenance[i].kind)) + ':' + r.t->provenance[i].source_id;
        }
        out += r.t->derived ? "\t1\n" : "\t0\n";
    }
    return out;
}

void save_graph(const GraphStore& store, const std::string& path, bool include_derived) {
    write_file(path, format_graph(store, include_derived));
}

GraphStore parse_graph(std::string_view text) {
    GraphStore store;
    enum class Section { None, Entities, Triples } section = Section::None;
    std::size_t line_no = 0;
    for (std::string line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line == "#entities") { section = Section::Entities; continue; }
        if (line == "#triples") { section = Section::Triples; continue; }

        auto cols = split(line, '\t');
        try {
            if (section == Section::Entities) {
                if (cols.size() != 4 || cols[0] != "E") throw MalformedLine(line_no, "expected E<TAB>label<TAB>category<TAB>aliases");
                auto kind = parse_entity_kind(cols[2]);
                if (!kind) throw MalformedLine(line_no, "unknown category '" + cols[2] + "'");
                if (store.find_label(cols[1])) throw MalformedLine(line_no, "duplicate entity '" + cols[1] + "'");
                EntityId id = store.ensure_entity(cols[1], *kind);
                if (!cols[3].empty())
                    for (const auto& a : split(cols[3], ',')) store.add_alias(id, a);
            } else if (section == Section::Triples) {
                if (cols.size() != 6 || cols[0] != "T")
                    throw MalformedLine(line_no, "expected T<TAB>s<TAB>p<TAB>o<TAB>provenance<TAB>derived");
                auto s = store.find_label(cols[1]);
                auto o = store.find_label(cols[3]);
                if (!s || !o) throw MalformedLine(line_no, "triple references an undeclared entity");
                std::vector<Provenance> prov;
                if (!cols[4].empty()) {
                    for (const auto& item : split(cols[4], ';')) {
                        auto colon = item.find(':');
                        auto kind = colon == std::string::npos ? std::nullopt
                                                               : parse_provenance_kind(item.substr(0, colon));
                        if (!kind) throw MalformedLine(line_no, "bad provenance '" + item + "'");
                        prov.push_back({*kind, item.substr(colon + 1)});
                    }
                }
                if (cols[5] != "0" && cols[5] != "1") throw MalformedLine(line_no, "derived flag must be 0 or 1");
                store.insert(*s, cols[2], *o, std::move(prov), cols[5] == "1");
            } else {
                throw MalformedLine(line_no, "record outside of a section");
            }
        } catch (const MalformedLine&) {
            throw;
        } catch (const Error& e) {
            throw MalformedLine(line_no, e.what());
        }
    }
    return store;
}

GraphStore load_graph(const std::string& path) { return parse_graph(read_file(path)); }

}  // namespace pekg

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/fusion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "pekg/error.hpp"
#include "pekg/text.hpp"

namespace pekg {

using nlohmann::json;

namespace {

std::string required_string(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
        throw Error(std::string("station document: ") + where + " needs string field '" + key + "'");
    return j.at(key).get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_string()) throw Error(std::string("station document: field '") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

const json& required_array(const json& j, const char* key) {
    static const json empty = json::array();
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_array()) throw Error(std::string("station document: '") + key + "' must be a list");
    return j.at(key);
}

Provenance structured(const std::string& source_id) { return {ProvenanceKind::Structured, source_id}; }

}  // namespace

StationDocument parse_station_document(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("station document: ") + e.what());
    }
    if (!j.is_object()) throw Error("station document: top level must be an object");

    StationDocument doc;
    if (!j.contains("station")) throw Error("station document: missing 'station'");
    doc.station.label = required_string(j.at("station"), "label", "station");
    doc.station.voltage_class = optional_string(j.at("station"), "voltage_class").value_or("");

    for (const auto& c : required_array(j, "ontology_classes")) {
        if (c.is_string()) {
            doc.ontology_classes.push_back({c.get<std::string>(), std::nullopt});
        } else {
            doc.ontology_classes.push_back({required_string(c, "label", "ontology class"),
                                            optional_string(c, "parent")});
        }
    }
    for (const auto& c : required_array(j, "components")) {
        StationDocument::Component comp;
        comp.id = optional_string(c, "id").value_or("");
        comp.label = required_string(c, "label", "component");
        comp.ontology_class = required_string(c, "ontology_class", "component");
        comp.voltage_level = optional_string(c, "voltage_level").value_or("");
        comp.manufacturer = optional_string(c, "manufacturer");
        comp.operator_system = optional_string(c, "operator_system");
        comp.management_system = optional_string(c, "management_system");
        doc.components.push_back(std::move(comp));
    }
    for (const auto& pair : required_array(j, "connections")) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
            throw Error("station document: each connection must be a two-element list of labels");
        doc.connections.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
    for (const auto& s : required_array(j, "systems")) {
        StationDocument::System sys;
        sys.label = required_string(s, "label", "system");
        std::string kind = required_string(s, "kind", "system");
        if (kind == "Operation") {
            sys.kind = StationDocument::SystemKind::Operation;
        } else if (kind == "Management") {
            sys.kind = StationDocument::SystemKind::Management;
        } else {
            throw Error("station document: system kind must be Operation or Management");
        }
        sys.controlled_by = optional_string(s, "controlled_by");
        doc.systems.push_back(std::move(sys));
    }
    for (const auto& c : required_array(j, "companies")) {
        if (!c.is_string()) throw Error("station document: companies must be labels");
        doc.companies.push_back(c.get<std::string>());
    }
    return doc;
}

StationDocument load_station_document(const std::string& path) {
    return parse_station_document(read_file(path));
}

std::string format_station_document(const StationDocument& doc) {
    json j;
    j["station"] = {{"label", doc.station.label}, {"voltage_class", doc.station.voltage_class}};
    j["ontology_classes"] = json::array();
    for (const auto& c : doc.ontology_classes) {
        if (c.parent) {
            j["ontology_classes"].push_back({{"label", c.label}, {"parent", *c.parent}});
        } else {
            j["ontology_classes"].push_back(c.label);
        }
    }
    j["components"] = json::array();
    for (const auto& c : doc.components) {
        json o = {{"id", c.id}, {"label", c.label}, {"ontology_class", c.ontology_class},
                  {"voltage_level", c.voltage_level}};
        if (c.manufacturer) o["manufacturer"] = *c.manufacturer;
        if (c.operator_system) o["operator_system"] = *c.operator_system;
        if (c.management_system) o["management_system"] = *c.management_system;
        j["components"].push_back(std::move(o));
    }
    j["connections"] = json::array();
    for (const auto& [a, b] : doc.connections) j["connections"].push_back({a, b});
    j["systems"] = json::array();
    for (const auto& s : doc.systems) {
        json o = {{"label", s.label},
                  {"kind", s.kind == StationDocument::SystemKind::Operation ? "Operation" : "Management"}};
        if (s.controlled_by) o["controlled_by"] = *s.controlled_by;
        j["systems"].push_back(std::move(o));
    }
    j["companies"] = doc.companies;
    return j.dump(2) + "\n";
}

void validate(const StationDocument& doc) {
    std::set<std::string> classes, components, companies;
    std::map<std::string, StationDocument::SystemKind> systems;
    auto unique = [](std::set<std::string>& set, const std::string& label) {
        if (!set.insert(label).second) throw Error("station document: duplicate label '" + label + "'");
    };
    for (const auto& c : doc.ontology_classes) unique(classes, c.label);
    for (const auto& c : doc.components) unique(components, c.label);
    for (const auto& c : doc.companies) unique(companies, c);
    for (const auto& s : doc.systems)
        if (!systems.emplace(s.label, s.kind).second)
            throw Error("station document: duplicate label '" + s.label + "'");

    for (const auto& c : doc.ontology_classes)
        if (c.parent && !classes.count(*c.parent)) throw DanglingReference(*c.parent);
    for (const auto& c : doc.components) {
        if (!classes.count(c.ontology_class)) throw DanglingReference(c.ontology_class);
        auto check_system = [&](const std::optional<std::string>& label, StationDocument::SystemKind kind) {
            if (!label) return;
            auto it = systems.find(*label);
            if (it == systems.end() || it->second != kind) throw DanglingReference(*label);
        };
        check_system(c.operator_system, StationDocument::SystemKind::Operation);
        check_system(c.management_system, StationDocument::SystemKind::Management);
    }
    for (const auto& [a, b] : doc.connections) {
        if (!components.count(a)) throw DanglingReference(a);
        if (!components.count(b)) throw DanglingReference(b);
    }
    for (const auto& s : doc.systems)
        if (s.controlled_by && !companies.count(*s.controlled_by)) throw DanglingReference(*s.controlled_by);
}

std::vector<CandidateTriple> structured_to_triples(const StationDocument& doc, const std::string& source_id) {
    validate(doc);
    const std::string src = source_id.empty() ? doc.station.label : source_id;
    std::vector<CandidateTriple> out;
    auto emit = [&](Endpoint s, std::string_view pred, Endpoint o) {
        Predicate p = make_predicate(pred);
        if (p.symmetric && o.label < s.label) std::swap(s, o);
        out.push_back({std::move(s), std::move(p), std::move(o), structured(src)});
    };

    const Endpoint station{doc.station.label, EntityKind::Station};
    for (const auto& c : doc.ontology_classes) {
        Endpoint parent = c.parent ? Endpoint{*c.parent, EntityKind::Class} : station;
        emit({c.label, EntityKind::Class}, predicates::kBelongTo, parent);
    }
    for (const auto& c : doc.components) {
        Endpoint comp{c.label, EntityKind::E1};
        emit(comp, predicates::kBelongTo, {c.ontology_class, EntityKind::Class});
        if (c.operator_system) emit({*c.operator_system, EntityKind::System}, predicates::kOperate, comp);
        if (c.management_system) emit({*c.management_system, EntityKind::System}, predicates::kManage, comp);
        if (c.manufacturer) emit({*c.manufacturer, EntityKind::E3}, predicates::kManufacture, comp);
    }
    for (const auto& [a, b] : doc.connections)
        emit({a, EntityKind::E1}, predicates::kConnect, {b, EntityKind::E1});
    for (const auto& s : doc.systems)
        if (s.controlled_by)
            emit({*s.controlled_by, EntityKind::Company}, predicates::kControl, {s.label, EntityKind::System});
    return out;
}

std::vector<CandidateTriple> fold_coreferences(const std::vector<CandidateTriple>& triples,
                                               const Lexicon& lexicon) {
    auto resolve = [&](const Endpoint& e) {
        const LexiconEntry* entry = lexicon.lookup(e.label);
        if (!entry) return e.label;
        const LexiconEntry* target = entry->canonical ? lexicon.lookup(*entry->canonical) : entry;
        if (target && is_entity_category(target->category)) {
            EntityKind k = entity_kind_of(target->category);
            if (!kinds_compatible(e.kind, k))
                throw CategoryConflict(lexicon.canonical_of(*entry), std::string(to_string(e.kind)),
                                       std::string(to_string(k)));
        }
        return entry->canonical ? *entry->canonical : e.label;
    };

    struct Group {
        std::set<std::string> structured_labels;
        std::set<std::string> labels;
        std::optional<EntityKind> kind;
    };
    std::map<std::string, Group> groups;
    std::vector<std::pair<std::string, std::string>> resolved;
    resolved.reserve(triples.size());

    auto note = [&](const std::string& label, EntityKind kind, bool is_structured) {
        Group& g = groups[normalize(label)];
        g.labels.insert(label);
        if (is_structured) g.structured_labels.insert(label);
        if (!g.kind) {
            g.kind = kind;
        } else if (!kinds_compatible(*g.kind, kind)) {
            throw CategoryConflict(label, std::string(to_string(*g.kind)), std::string(to_string(kind)));
        } else {
            g.kind = merge_kinds(*g.kind, kind);
        }
    };

    for (const auto& t : triples) {
        std::string s = resolve(t.subject);
        std::string o = resolve(t.object);
        bool is_structured = t.provenance.kind == ProvenanceKind::Structured;
        note(s, t.subject.kind, is_structured);
        note(o, t.object.kind, is_structured);
        resolved.emplace_back(std::move(s), std::move(o));
    }

    auto representative = [&](const std::string& label) {
        const Group& g = groups.at(normalize(label));
        const auto& pool = g.structured_labels.empty() ? g.labels : g.structured_labels;
        return Endpoint{*pool.begin(), *g.kind};
    };

    std::vector<CandidateTriple> out;
    out.reserve(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i) {
        CandidateTriple t = triples[i];
        t.subject = representative(resolved[i].first);
        t.object = representative(resolved[i].second);
        if (t.subject.label == t.object.label) continue;
        if (t.predicate.symmetric && t.object.label < t.subject.label) std::swap(t.subject, t.object);
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

using Key = std::tuple<std::string, std::string, std::string>;

void merge_into(std::map<Key, FusedTriple>& groups, const Endpoint& s, const Predicate& p,
                const Endpoint& o, const std::vector<Provenance>& prov) {
    Key key{s.label, p.name, o.label};
    auto [it, inserted] = groups.try_emplace(key, FusedTriple{s, p, o, {}});
    FusedTriple& f = it->second;
    if (!inserted) {
        f.subject.kind = merge_kinds(f.subject.kind, s.kind);
        f.object.kind = merge_kinds(f.object.kind, o.kind);
    }
    f.provenance.insert(f.provenance.end(), prov.begin(), prov.end());
}

std::vector<FusedTriple> finish(std::map<Key, FusedTriple>& groups) {
    std::vector<FusedTriple> out;
    out.reserve(groups.size());
    for (auto& [key, f] : groups) {
        std::sort(f.provenance.begin(), f.provenance.end());
        f.provenance.erase(std::unique(f.provenance.begin(), f.provenance.end()), f.provenance.end());
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

std::vector<FusedTriple> filter_redundant(const std::vector<CandidateTriple>& triples) {
    std::map<Key, FusedTriple> groups;
    for (const auto& t : triples) merge_into(groups, t.subject, t.predicate, t.object, {t.provenance});
    return finish(groups);
}

std::vector<FusedTriple> filter_redundant(const std::vector<FusedTriple>& triples) {
    std::map<Key, FusedTriple> groups;
    for (const auto& t : triples) merge_into(groups, t.subject, t.predicate, t.object, t.provenance);
    return finish(groups);
}

}  // namespace pekg

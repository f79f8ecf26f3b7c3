// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/lexicon.hpp"

#include <algorithm>
#include <set>

#include "pekg/error.hpp"
#include "pekg/text.hpp"

namespace pekg {

std::vector<LexiconEntry> parse_lexicon(std::string_view text, Source source) {
    std::vector<LexiconEntry> out;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    for (std::string line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (trim(line).empty()) continue;

        auto cols = split(line, '\t');
        if (cols.size() < 2 || cols.size() > 4)
            throw MalformedLine(line_no, "expected 2-4 tab-separated columns");
        LexiconEntry e;
        e.surface = cols[0].rfind("\\#", 0) == 0 ? cols[0].substr(1) : cols[0];
        e.source = source;
        if (e.surface.empty()) throw MalformedLine(line_no, "empty surface");
        auto cat = parse_category(cols[1]);
        if (!cat) throw MalformedLine(line_no, "unknown category '" + cols[1] + "'");
        e.category = *cat;
        if (source == Source::Common && e.category != Category::None)
            throw MalformedLine(line_no, "common dictionary entries cannot carry a category");
        if (cols.size() >= 3 && !cols[2].empty()) e.canonical = cols[2];
        if (cols.size() == 4) e.comment = cols[3];
        if (!seen.insert(e.surface).second) throw DuplicateSurface(e.surface);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<LexiconEntry> load_lexicon(const std::string& path, Source source) {
    return parse_lexicon(read_file(path), source);
}

std::string format_lexicon(const std::vector<LexiconEntry>& entries) {
    std::string out;
    for (const auto& e : entries) {
        if (!e.surface.empty() && e.surface.front() == '#') out += '\\';
        out += e.surface;
        out += '\t';
        out += to_string(e.category);
        if (e.canonical || !e.comment.empty()) {
            out += '\t';
            out += e.canonical.value_or("");
        }
        if (!e.comment.empty()) {
            out += '\t';
            out += e.comment;
        }
        out += '\n';
    }
    return out;
}

void save_lexicon(const std::vector<LexiconEntry>& entries, const std::string& path) {
    write_file(path, format_lexicon(entries));
}

Lexicon::Lexicon(std::vector<LexiconEntry> common, std::vector<LexiconEntry> power)
    : common_(std::move(common)), power_(std::move(power)) {
    auto index = [this](const std::vector<LexiconEntry>& entries,
                        std::unordered_map<std::string, std::size_t>& exact,
                        std::unordered_map<std::string, std::size_t>& norm) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            if (!exact.emplace(e.surface, i).second) throw DuplicateSurface(e.surface);
            // First entry wins when two surfaces normalize alike.
            norm.emplace(normalize(e.surface), i);
            max_surface_len_ = std::max(max_surface_len_, split_graphemes(e.surface).size());
        }
    };
    index(common_, common_exact_, common_norm_);
    index(power_, power_exact_, power_norm_);

    for (std::size_t i = 0; i < power_.size(); ++i) {
        Graphemes g = split_graphemes(power_[i].surface);
        std::string folded;
        for (const auto& gr : g) folded += fold_grapheme(gr);
        power_folds_.emplace(folded, i);
        max_power_len_ = std::max(max_power_len_, g.size());
    }

    for (const auto* entries : {&common_, &power_}) {
        for (const auto& e : *entries) {
            if (!e.canonical) continue;
            const LexiconEntry* target = lookup(*e.canonical);
            if (!target || target->category == Category::None)
                throw DanglingReference(*e.canonical);
            aliases_.emplace(*e.canonical, e.surface);
        }
    }
}

const LexiconEntry* Lexicon::find_in(const std::unordered_map<std::string, std::size_t>& index,
                                     const std::vector<LexiconEntry>& entries,
                                     const std::string& key) const {
    auto it = index.find(key);
    return it == index.end() ? nullptr : &entries[it->second];
}

const LexiconEntry* Lexicon::lookup(std::string_view surface) const {
    std::string key(surface);
    if (auto* e = find_in(power_exact_, power_, key)) return e;
    if (auto* e = find_in(common_exact_, common_, key)) return e;
    std::string norm = normalize(surface);
    if (auto* e = find_in(power_norm_, power_, norm)) return e;
    return find_in(common_norm_, common_, norm);
}

std::string Lexicon::canonical_of(const LexiconEntry& entry) const {
    return entry.canonical.value_or(entry.surface);
}

std::vector<std::string> Lexicon::aliases_of(std::string_view canonical) const {
    std::vector<std::string> out;
    auto [b, e] = aliases_.equal_range(std::string(canonical));
    for (auto it = b; it != e; ++it) out.push_back(it->second);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pekg

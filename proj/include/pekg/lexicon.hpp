// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pekg/types.hpp"

namespace pekg {

enum class Source { Common, Power };

struct LexiconEntry {
    std::string surface;
    Source source = Source::Power;
    Category category = Category::None;
    std::optional<std::string> canonical;  // alias target; absent = self-canonical
    std::string comment;

    bool operator==(const LexiconEntry&) const = default;
};

// Parses one dictionary file: `surface<TAB>category[<TAB>canonical[<TAB>comment]]`.
// Lines starting with '#' and blank lines are skipped; a surface that itself
// starts with '#' is written with a leading backslash (`\#2016`).
std::vector<LexiconEntry> load_lexicon(const std::string& path, Source source);
std::vector<LexiconEntry> parse_lexicon(std::string_view text, Source source);
std::string format_lexicon(const std::vector<LexiconEntry>& entries);
void save_lexicon(const std::vector<LexiconEntry>& entries, const std::string& path);

// The merged common and electric-power dictionaries. Immutable once built.
class Lexicon {
public:
    Lexicon() = default;
    Lexicon(std::vector<LexiconEntry> common, std::vector<LexiconEntry> power);

    // Exact surface first, then normalized surface. Power shadows Common.
    const LexiconEntry* lookup(std::string_view surface) const;

    // Alias target if the entry names one, otherwise the entry's own surface.
    std::string canonical_of(const LexiconEntry& entry) const;

    // Surfaces of Power entries whose explicit canonical is `canonical`.
    std::vector<std::string> aliases_of(std::string_view canonical) const;

    // True when some Power surface folds (per grapheme) to exactly `folded`.
    bool has_power_fold(std::string_view folded) const { return power_folds_.count(std::string(folded)) > 0; }

    std::size_t max_surface_len() const noexcept { return max_surface_len_; }
    std::size_t max_power_len() const noexcept { return max_power_len_; }
    std::size_t size() const noexcept { return common_.size() + power_.size(); }
    const std::vector<LexiconEntry>& common() const noexcept { return common_; }
    const std::vector<LexiconEntry>& power() const noexcept { return power_; }

private:
    const LexiconEntry* find_in(const std::unordered_map<std::string, std::size_t>& index,
                                const std::vector<LexiconEntry>& entries,
                                const std::string& key) const;

    std::vector<LexiconEntry> common_;
    std::vector<LexiconEntry> power_;
    std::unordered_map<std::string, std::size_t> common_exact_, power_exact_;
    std::unordered_map<std::string, std::size_t> common_norm_, power_norm_;
    std::unordered_map<std::string, std::size_t> power_folds_;
    std::multimap<std::string, std::string> aliases_;
    std::size_t max_surface_len_ = 0;
    std::size_t max_power_len_ = 0;
};

}  // namespace pekg

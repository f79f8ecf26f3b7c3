// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The pekg Authors

#include "pekg/text.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <unicode/brkiter.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "pekg/error.hpp"

namespace pekg {

namespace {

icu::UnicodeString to_icu(std::string_view s) {
    return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::string from_icu(const icu::UnicodeString& u) {
    std::string out;
    u.toUTF8String(out);
    return out;
}

UChar32 width_fold(UChar32 c) {
    if (c >= 0xFF01 && c <= 0xFF5E) return c - 0xFEE0;
    if (c == 0x3000) return 0x20;
    return c;
}

bool is_sentence_delimiter(UChar32 c) {
    switch (c) {
        case 0x3002:  // 。
        case 0xFF0E:  // ．
        case '.':
        case '!':
        case '?':
        case ';':
        case 0xFF1B:  // ；
        case '\n':
            return true;
        default:
            return false;
    }
}

}  // namespace

Graphemes split_graphemes(std::string_view utf8) {
    Graphemes out;
    if (utf8.empty()) return out;
    icu::UnicodeString text = to_icu(utf8);
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> it(
        icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status)) throw Error("ICU grapheme iterator unavailable");
    it->setText(text);
    int32_t start = it->first();
    for (int32_t end = it->next(); end != icu::BreakIterator::DONE; start = end, end = it->next()) {
        icu::UnicodeString piece(text, start, end - start);
        out.push_back(from_icu(piece));
    }
    return out;
}

std::string join(const Graphemes& g, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end && i < g.size(); ++i) out += g[i];
    return out;
}

bool is_whitespace_grapheme(std::string_view grapheme) {
    icu::UnicodeString u = to_icu(grapheme);
    if (u.isEmpty()) return false;
    for (int32_t i = 0; i < u.length();) {
        UChar32 c = u.char32At(i);
        if (!u_isUWhiteSpace(c)) return false;
        i += U16_LENGTH(c);
    }
    return true;
}

std::string fold_grapheme(std::string_view grapheme) {
    icu::UnicodeString u = to_icu(grapheme);
    icu::UnicodeString widened;
    for (int32_t i = 0; i < u.length();) {
        UChar32 c = u.char32At(i);
        widened.append(width_fold(c));
        i += U16_LENGTH(c);
    }
    widened.foldCase();
    return from_icu(widened);
}

std::string normalize(std::string_view surface) {
    icu::UnicodeString u = to_icu(surface);
    icu::UnicodeString folded;
    for (int32_t i = 0; i < u.length();) {
        UChar32 c = u.char32At(i);
        folded.append(width_fold(c));
        i += U16_LENGTH(c);
    }
    folded.foldCase();

    icu::UnicodeString out;
    bool pending_space = false;
    for (int32_t i = 0; i < folded.length();) {
        UChar32 c = folded.char32At(i);
        i += U16_LENGTH(c);
        if (u_isUWhiteSpace(c)) {
            pending_space = !out.isEmpty();
            continue;
        }
        if (pending_space) out.append(static_cast<UChar>(' '));
        pending_space = false;
        out.append(c);
    }
    return from_icu(out);
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    icu::UnicodeString u = to_icu(text);
    icu::UnicodeString current;
    auto flush = [&] {
        std::string s(trim(from_icu(current)));
        if (!s.empty()) out.push_back(std::move(s));
        current.remove();
    };
    for (int32_t i = 0; i < u.length();) {
        UChar32 c = u.char32At(i);
        i += U16_LENGTH(c);
        if (is_sentence_delimiter(c)) {
            flush();
        } else {
            current.append(c);
        }
    }
    flush();
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoFailure(path);
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure(path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoFailure(path);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n\f\v";
    std::size_t b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace pekg

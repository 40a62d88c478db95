// Copyright 2026 The Lexometer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared value types of the counting pipeline.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexometer/errors.hpp"
#include "lexometer/rational.hpp"

namespace lexometer {

enum class SourceFormat { XHTML, SRC };

inline constexpr int kFirstYear = 1991;
inline constexpr int kLastYear = 2024;
inline constexpr int kFirstXhtmlYear = 1994;
inline constexpr int kLastSrcYear = 2009;

/// Edition years for which a format exists in the official archives.
inline bool year_in_span(SourceFormat format, int year) {
    if (format == SourceFormat::XHTML) return year >= kFirstXhtmlYear && year <= kLastYear;
    return year >= kFirstYear && year <= kLastSrcYear;
}

inline std::string_view to_string(SourceFormat format) {
    return format == SourceFormat::XHTML ? "xhtml" : "src";
}

inline SourceFormat parse_source_format(std::string_view text) {
    std::string lower;
    for (char c : text) lower += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    if (lower == "xhtml" || lower == "htm") return SourceFormat::XHTML;
    if (lower == "src" || lower == "iso") return SourceFormat::SRC;
    throw InputError("unknown source format '" + std::string(text) + "'");
}

/// One member of a year container. Contents are fetched lazily so that a
/// multi-gigabyte archive is never resident at once.
struct ArchiveMember {
    std::string path;
    std::uint64_t byte_length = 0;
    std::function<std::string()> read;
};

struct YearArchive {
    int year = 0;
    SourceFormat format = SourceFormat::XHTML;
    std::vector<ArchiveMember> files;    // sorted by path
    std::vector<std::string> ignored;    // members that are not candidate documents

    std::uint64_t total_bytes() const {
        std::uint64_t sum = 0;
        for (const auto& f : files) sum += f.byte_length;
        return sum;
    }
};

/// Countable span of one section: headline plus statutory body, with every
/// excluded block already removed. Whitespace runs are collapsed to a single
/// space and the text starts at the headline's first character.
struct SectionText {
    std::string title_number;
    std::string section_id;
    std::string countable_text;

    bool operator==(const SectionText&) const = default;
};

struct TokenStats {
    std::uint64_t words = 0;
    std::uint64_t chars = 0;

    std::optional<Rational> chars_per_word() const {
        if (words == 0) return std::nullopt;
        return Rational(BigInt(chars), BigInt(words));
    }

    bool operator==(const TokenStats&) const = default;
};

/// Component-wise sum. Associative and commutative.
inline TokenStats merge(const TokenStats& a, const TokenStats& b) {
    return {a.words + b.words, a.chars + b.chars};
}

inline TokenStats& operator+=(TokenStats& a, const TokenStats& b) {
    a = merge(a, b);
    return a;
}

/// Raw per-format result of counting one year.
struct FormatCounts {
    std::int64_t words = 0;
    Rational chars_per_word;

    bool operator==(const FormatCounts&) const = default;
};

using CountsByYear = std::map<int, FormatCounts>;

struct YearMetrics {
    int year = 0;
    std::map<SourceFormat, std::int64_t> raw_word_count;
    std::map<SourceFormat, Rational> raw_chars_per_word;
    std::int64_t adjusted_word_count = 0;
    Rational chosen_chars_per_word;
};

struct SeriesRow {
    int year = 0;
    std::int64_t word_count = 0;
    Rational chars_per_word;
    std::optional<Rational> growth_word_percent;
    std::optional<Rational> growth_chars_permille;
};

/// Consecutive years, earliest first; growth fields are absent only on the
/// first row.
struct SeriesReport {
    std::vector<SeriesRow> rows;
};

}  // namespace lexometer

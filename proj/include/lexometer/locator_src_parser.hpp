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

// Section extraction from the plain-text SRC payloads of the 1991-2009 ISO
// images. Every line is one block. A line may start with typesetting
// locator codes (a control character, optionally followed by a code such as
// `I11`, or a short bracketed code such as `[G2]`), which are split off
// before classification.
//
// Lines are classified by the `line`/`code` rules of the RuleTable; lines
// no rule matches take the current field context, which `marker` rules set
// (-HEAD-, -STATUTE-, -SOURCE-, ...) and which defaults to StatutoryBody.
// An excluded field context outranks a headline match, so acts quoted inside
// notes never open sections.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lexometer/corpus_model.hpp"
#include "lexometer/diagnostics.hpp"
#include "lexometer/encoding.hpp"
#include "lexometer/rules.hpp"
#include "lexometer/section_assembler.hpp"
#include "lexometer/token_counter.hpp"
#include "lexometer/xhtml_section_parser.hpp"

namespace lexometer {

struct LocatorLine {
    std::string control_prefix;
    std::string payload;

    bool operator==(const LocatorLine&) const = default;
};

namespace detail {

inline bool is_control(char c) {
    auto b = static_cast<unsigned char>(c);
    return (b < 0x20 && b != '\t') || b == 0x7F;
}

inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Length of a bracketed code such as "[G2]" at `pos`, or 0.
inline std::size_t bracket_code_length(std::string_view line, std::size_t pos) {
    if (pos + 2 >= line.size() || line[pos] != '[' || !is_upper(line[pos + 1])) return 0;
    std::size_t p = pos + 2;
    while (p < line.size() && p - pos <= 6 && (is_upper(line[p]) || is_digit(line[p]))) ++p;
    if (p < line.size() && line[p] == ']') return p + 1 - pos;
    return 0;
}

}  // namespace detail

/// Splits the leading locator-code run off a raw line. prefix + payload is
/// always the original line.
inline LocatorLine split_locator(std::string_view line) {
    std::size_t p = 0;
    while (p < line.size()) {
        if (detail::is_control(line[p])) {
            ++p;
            if (p < line.size() && detail::is_upper(line[p])) {
                ++p;
                while (p < line.size() && detail::is_digit(line[p])) ++p;
            }
        } else if (std::size_t n = detail::bracket_code_length(line, p)) {
            p += n;
        } else {
            break;
        }
    }
    return {std::string(line.substr(0, p)), std::string(line.substr(p))};
}

struct SrcOptions {
    const RuleTable* rules = &RuleTable::defaults();
    std::string member;
};

namespace detail {

/// "TITLE 42—THE PUBLIC ..." -> "42"; "42 USC Sec. 1983" -> ("42", "1983").
inline std::string leading_title_number(std::string_view s) {
    std::string out;
    std::size_t p = 0;
    while (p < s.size() && is_digit(s[p])) out += s[p++];
    if (out.empty()) return out;
    if (p < s.size() && ((s[p] >= 'a' && s[p] <= 'z') || is_upper(s[p])) &&
        (p + 1 == s.size() || !((s[p + 1] >= 'a' && s[p + 1] <= 'z') || is_upper(s[p + 1])))) {
        out += static_cast<char>(s[p] >= 'A' && s[p] <= 'Z' ? s[p] - 'A' + 'a' : s[p]);
    }
    out.erase(0, std::min(out.find_first_not_of('0'), out.size() - 1));
    return out;
}

}  // namespace detail

inline std::vector<SectionText> extract_sections_src(std::string_view document, Diagnostics& diagnostics,
                                                     const SrcOptions& options = {}) {
    const RuleTable& rules = *options.rules;
    SectionAssembler assembler;
    BlockKind context = BlockKind::StatutoryBody;
    BlockKind previous = BlockKind::Other;
    std::string title;
    std::string cite_section;
    bool orphan_run = false;

    std::size_t pos = 0;
    while (pos < document.size()) {
        std::size_t end = document.find('\n', pos);
        if (end == std::string_view::npos) end = document.size();
        std::string_view raw = document.substr(pos, end - pos);
        std::size_t offset = pos;
        pos = end + 1;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        LocatorLine line = split_locator(raw);
        std::string_view text = detail::trim(line.payload);
        if (text.empty()) continue;

        if (auto marker = rules.match_marker(text)) {
            context = *marker;
            previous = BlockKind::Other;
            continue;
        }

        if (text.rfind("TITLE ", 0) == 0) {
            if (auto t = detail::leading_title_number(detail::trim(text.substr(6))); !t.empty()) title = t;
        } else if (context == BlockKind::Other) {
            auto usc = text.find(" USC Sec. ");
            if (usc != std::string_view::npos) {
                if (auto t = detail::leading_title_number(text.substr(0, usc)); !t.empty()) title = t;
                cite_section = std::string(detail::trim(text.substr(usc + 10)));
                cite_section = cite_section.substr(0, cite_section.find_first_of(" \t"));
            }
        }

        auto explicit_kind = rules.match_line(line.control_prefix, text);
        BlockKind kind = explicit_kind.value_or(context);
        if (ends_law_text(context) || context == BlockKind::Other) {
            // Excluded fields swallow headlines and body alike; structural
            // headings still close the section.
            if (kind != BlockKind::StructuralHead) kind = context;
        }

        switch (kind) {
            case BlockKind::SectionHead: {
                bool continuation = !explicit_kind && previous == BlockKind::SectionHead && assembler.is_open();
                if (!continuation) {
                    std::string id = section_id_from_headline(text);
                    if (id.empty()) id = cite_section;
                    assembler.open(title, id);
                    cite_section.clear();
                }
                assembler.boundary();
                assembler.append(text);
                orphan_run = false;
                break;
            }
            case BlockKind::StatutoryBody:
                if (assembler.is_open()) {
                    assembler.boundary();
                    assembler.append(text);
                } else if (!orphan_run) {
                    orphan_run = true;
                    diagnostics.add(options.member, offset,
                                    assembler.interrupted() ? "orphan statutory text after excluded block skipped"
                                                            : "text outside any section skipped");
                }
                break;
            case BlockKind::StructuralHead:
                assembler.close();
                orphan_run = false;
                break;
            case BlockKind::SourceCredit:
            case BlockKind::Note:
            case BlockKind::AmendmentHistory:
                if (assembler.is_open()) orphan_run = false;
                assembler.interrupt();
                break;
            case BlockKind::ChartOrFigure:
            case BlockKind::Other:
                break;
        }
        previous = kind;
    }
    return assembler.finish();
}

/// Word and character totals over one SRC year.
inline YearCount count_year_src(const YearArchive& archive, const TokenCounter& counter,
                                const CountOptions& options = {}) {
    if (archive.format != SourceFormat::SRC) throw InputError("count_year_src needs an SRC archive");
    return detail::count_members(archive, options.jobs, [&](const ArchiveMember& member) {
        YearCount part;
        DecodedText decoded = decode_text(member.read(), SourceFormat::SRC);
        part.replacements = decoded.replacements;
        SrcOptions so{options.rules, member.path};
        for (const auto& section : extract_sections_src(decoded.text, part.diagnostics, so)) {
            if (!options.include_appendix_titles && is_appendix_title(section.title_number)) continue;
            TokenStats s = counter.count_text(section.countable_text);
            part.total += s;
            part.per_title[section.title_number] += s;
        }
        return part;
    });
}

}  // namespace lexometer

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

// Block classification rules shared by the XHTML and SRC extractors.
//
// A rule file holds one rule per line:
//
//   subject:regex<TAB>BlockKind
//
// Subjects for XHTML are `element`, `class` and `field` (the open
// comment-delimited fields, innermost last, joined by '/'). Subjects for
// SRC are `line` (trimmed payload), `code` (locator prefix) and `marker`
// (a line that switches the field context for the lines after it).
// Rules are tried in order and the first match wins; user rules are placed
// ahead of the built-in table. `#` starts a comment. The directive
// `separators.extra<TAB>U+2013,...` adds audit-only word separators.

#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lexometer/errors.hpp"
#include "lexometer/token_counter.hpp"

namespace lexometer {

enum class BlockKind {
    SectionHead,
    StatutoryBody,
    Note,
    SourceCredit,
    AmendmentHistory,
    ChartOrFigure,
    StructuralHead,
    Other,
};

inline constexpr std::array<std::string_view, 8> kBlockKindNames = {
    "SectionHead", "StatutoryBody", "Note", "SourceCredit",
    "AmendmentHistory", "ChartOrFigure", "StructuralHead", "Other",
};

inline std::string_view to_string(BlockKind kind) { return kBlockKindNames[static_cast<std::size_t>(kind)]; }

inline BlockKind parse_block_kind(std::string_view text) {
    for (std::size_t i = 0; i < kBlockKindNames.size(); ++i) {
        if (kBlockKindNames[i] == text) return static_cast<BlockKind>(i);
    }
    throw InputError("unknown BlockKind '" + std::string(text) + "'");
}

inline bool is_countable(BlockKind kind) {
    return kind == BlockKind::SectionHead || kind == BlockKind::StatutoryBody;
}

/// Kinds whose appearance ends the law text of the open section.
inline bool ends_law_text(BlockKind kind) {
    return kind == BlockKind::SourceCredit || kind == BlockKind::Note || kind == BlockKind::AmendmentHistory;
}

enum class RuleSubject { Element, Class, Field, Line, Code, Marker };

struct Rule {
    RuleSubject subject;
    std::string pattern;
    BlockKind kind;
    std::regex compiled;
    bool anchored = false;

    bool matches(std::string_view value) const {
        auto flags = anchored ? std::regex_constants::match_continuous : std::regex_constants::match_default;
        return std::regex_search(value.begin(), value.end(), compiled, flags);
    }
};

namespace detail {

inline RuleSubject parse_subject(std::string_view s) {
    if (s == "element") return RuleSubject::Element;
    if (s == "class") return RuleSubject::Class;
    if (s == "field") return RuleSubject::Field;
    if (s == "line") return RuleSubject::Line;
    if (s == "code") return RuleSubject::Code;
    if (s == "marker") return RuleSubject::Marker;
    throw InputError("unknown rule subject '" + std::string(s) + "'");
}

inline Rule make_rule(std::string_view spec, BlockKind kind) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw InputError("rule pattern lacks a subject: '" + std::string(spec) + "'");
    Rule r{parse_subject(spec.substr(0, colon)), std::string(spec.substr(colon + 1)), kind, {}, false};
    std::string body = r.pattern;
    // A leading '^' is served by match_continuous, which avoids retrying
    // the pattern at every offset of long lines.
    if (!body.empty() && body[0] == '^') {
        r.anchored = true;
        body.erase(0, 1);
    }
    try {
        r.compiled = std::regex(body, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
        throw InputError("bad rule regex '" + r.pattern + "': " + e.what());
    }
    return r;
}

}  // namespace detail

inline constexpr std::string_view kDefaultRules = R"(# Built-in classification table.
# --- XHTML: field context dominates block class -----------------------
field:amendment	AmendmentHistory
field:note	Note
field:source-?credit	SourceCredit
field:repealsummary	Note
field:analysis	Other
element:^(img|svg|figure|object|embed|canvas|map)$	ChartOrFigure
class:graphic|figure|chart|(^|[\s-])image	ChartOrFigure
class:section-head	SectionHead
class:statutory-body	StatutoryBody
class:source-?credit	SourceCredit
class:amendment	AmendmentHistory
class:(^|\s)note-	Note
class:(^|[\s-])(title|subtitle|chapter|subchapter|part|subpart|division|subdivision)-head	StructuralHead
field:statute	StatutoryBody
# --- SRC: field markers ------------------------------------------------
marker:^-HEAD-$	SectionHead
marker:^-STATUTE-$	StatutoryBody
marker:^-SOURCE-$	SourceCredit
marker:^-(MISC[0-9]*|REFTEXT|COD|CHANGE|TRANS|EXEC|FOOTNOTE|SECREF|NOTES?)-$	Note
marker:^-[A-Za-z0-9]+-$	Other
# --- SRC: single lines ------------------------------------------------
line:^((?:§){1,2}|Secs?\.)\s*[0-9][0-9A-Za-z\-–]*(\s*(,|to|and|through)\s*[0-9][0-9A-Za-z\-–]*)*\.	SectionHead
line:^(TITLE|SUBTITLE|CHAPTER|SUBCHAPTER|PART|SUBPART|DIVISION)\s+[0-9A-Z]+\b	StructuralHead
line:^\((R\.S\.|Pub\. ?L\.|[A-Z][a-z]{2,4}\.? [0-9]{1,2}, [0-9]{4}, ch\.)	SourceCredit
line:^Amendments$	AmendmentHistory
line:^[0-9]{4} (Subsec|Amendment)	AmendmentHistory
line:^(Historical and Revision Notes|References in Text|Codification|Prior Provisions|Derivation|Change of Name|Transfer of Functions|Editorial Notes|Statutory Notes.*|Miscellaneous Notes|(Effective Date|Short Title|Termination Date|Savings Provision)( of [0-9]{4} Amendments?)?)$	Note
line:^\[?(Graphic|Figure|Chart|Illustration)\b	ChartOrFigure
)";

/// Ordered rule list plus tokenizer extras picked up from the same file.
class RuleTable {
public:
    /// The built-in table.
    static const RuleTable& defaults() {
        static const RuleTable table = parse(kDefaultRules);
        return table;
    }

    static RuleTable parse(std::string_view text) {
        RuleTable table;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string_view::npos || line[first] == '#') continue;
            auto tab = line.rfind('\t');
            if (tab == std::string_view::npos) {
                throw InputError("rules line " + std::to_string(line_no) + ": expected pattern<TAB>BlockKind");
            }
            std::string_view pattern = line.substr(0, tab);
            std::string_view kind = line.substr(tab + 1);
            while (!kind.empty() && (kind.back() == ' ' || kind.back() == '\t')) kind.remove_suffix(1);
            if (pattern == "separators.extra") {
                auto extra = parse_code_point_list(kind);
                table.separators_extra_.insert(table.separators_extra_.end(), extra.begin(), extra.end());
                continue;
            }
            try {
                table.rules_.push_back(detail::make_rule(pattern, parse_block_kind(kind)));
            } catch (const InputError& e) {
                throw InputError("rules line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        return table;
    }

    static RuleTable load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open rules file " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    /// `overrides` first, then the built-in rules.
    static RuleTable with_overrides(const RuleTable& overrides) {
        RuleTable merged = overrides;
        const auto& base = defaults();
        merged.rules_.insert(merged.rules_.end(), base.rules_.begin(), base.rules_.end());
        merged.separators_extra_.insert(merged.separators_extra_.end(), base.separators_extra_.begin(),
                                        base.separators_extra_.end());
        return merged;
    }

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const std::vector<char32_t>& separators_extra() const noexcept { return separators_extra_; }

    /// First matching rule among the XHTML subjects, if any.
    std::optional<BlockKind> match_xhtml(std::string_view element, std::string_view class_attribute,
                                         std::string_view field_context) const {
        for (const auto& r : rules_) {
            switch (r.subject) {
                case RuleSubject::Element:
                    if (r.matches(element)) return r.kind;
                    break;
                case RuleSubject::Class:
                    if (!class_attribute.empty() && r.matches(class_attribute)) return r.kind;
                    break;
                case RuleSubject::Field:
                    if (!field_context.empty() && r.matches(field_context)) return r.kind;
                    break;
                default:
                    break;
            }
        }
        return std::nullopt;
    }

    std::optional<BlockKind> match_marker(std::string_view payload) const {
        for (const auto& r : rules_) {
            if (r.subject == RuleSubject::Marker && r.matches(payload)) return r.kind;
        }
        return std::nullopt;
    }

    std::optional<BlockKind> match_line(std::string_view code, std::string_view payload) const {
        for (const auto& r : rules_) {
            if (r.subject == RuleSubject::Line && r.matches(payload)) return r.kind;
            if (r.subject == RuleSubject::Code && !code.empty() && r.matches(code)) return r.kind;
        }
        return std::nullopt;
    }

private:
    std::vector<Rule> rules_;
    std::vector<char32_t> separators_extra_;
};

/// Total classification of one XHTML block; anything unmatched is Other.
inline BlockKind classify_block(std::string_view element_name, std::optional<std::string_view> class_attribute,
                                std::optional<std::string_view> field_context,
                                const RuleTable& rules = RuleTable::defaults()) {
    return rules.match_xhtml(element_name, class_attribute.value_or(""), field_context.value_or(""))
        .value_or(BlockKind::Other);
}

}  // namespace lexometer

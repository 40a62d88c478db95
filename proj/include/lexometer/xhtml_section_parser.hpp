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

// Section extraction from the annual XHTML editions.
//
// Each block element is classified once, when it opens, from its tag name,
// its class attribute and the comment-delimited field it sits in
// (`<!-- field-start:notes -->` ... `<!-- field-end:notes -->`). A block no
// rule matches takes the kind of its enclosing block, which is how table
// cells and nested paragraphs inside a statute inherit StatutoryBody.
// Inline markup contributes its text with no separator; every block
// boundary contributes one space.

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "lexometer/archive_ingest.hpp"
#include "lexometer/corpus_model.hpp"
#include "lexometer/diagnostics.hpp"
#include "lexometer/encoding.hpp"
#include "lexometer/html_lexer.hpp"
#include "lexometer/rules.hpp"
#include "lexometer/section_assembler.hpp"
#include "lexometer/token_counter.hpp"

namespace lexometer {

struct XhtmlOptions {
    const RuleTable* rules = &RuleTable::defaults();
    std::string member;          // used for diagnostics and as a title fallback
};

namespace detail {

inline bool is_block_element(std::string_view name) {
    static constexpr std::string_view kBlocks[] = {
        "address", "article", "aside", "blockquote", "body", "caption", "center", "dd", "div", "dl",
        "dt", "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "head",
        "header", "html", "li", "main", "nav", "ol", "p", "pre", "section", "table", "tbody", "td",
        "tfoot", "th", "thead", "title", "tr", "ul",
    };
    return std::find(std::begin(kBlocks), std::end(kBlocks), name) != std::end(kBlocks);
}

inline bool is_void_element(std::string_view name) {
    static constexpr std::string_view kVoid[] = {
        "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source", "wbr",
    };
    return std::find(std::begin(kVoid), std::end(kVoid), name) != std::end(kVoid);
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

/// "usc42.htm" -> "42", "usc05a.htm" -> "5a", "1994/USC18A.htm" -> "18a".
inline std::string title_from_member(std::string_view member) {
    auto slash = member.find_last_of('/');
    std::string_view base = slash == std::string_view::npos ? member : member.substr(slash + 1);
    std::string lower;
    for (char c : base) lower += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    auto pos = lower.find("usc");
    if (pos == std::string::npos) return {};
    std::size_t p = pos + 3;
    std::string digits;
    while (p < lower.size() && lower[p] >= '0' && lower[p] <= '9') digits += lower[p++];
    if (digits.empty()) return {};
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    while (p < lower.size() && lower[p] >= 'a' && lower[p] <= 'z') digits += lower[p++];
    return digits;
}

/// Title and section from `documentid:42_USC_1983`.
inline std::pair<std::string, std::string> ids_from_documentid(std::string_view value) {
    auto sep = value.find("_USC_");
    if (sep == std::string_view::npos) return {};
    std::string title(value.substr(0, sep));
    title.erase(0, std::min(title.find_first_not_of('0'), title.size() > 0 ? title.size() - 1 : 0));
    return {title, std::string(value.substr(sep + 5))};
}

class XhtmlClassifier {
public:
    explicit XhtmlClassifier(const RuleTable& rules) : rules_(rules) {}

    std::optional<BlockKind> match(std::string_view element, std::string_view cls, std::string_view field) {
        key_.assign(element);
        key_ += '\x1f';
        key_ += cls;
        key_ += '\x1f';
        key_ += field;
        auto it = memo_.find(key_);
        if (it != memo_.end()) return it->second;
        auto kind = rules_.match_xhtml(element, cls, field);
        memo_.emplace(key_, kind);
        return kind;
    }

private:
    const RuleTable& rules_;
    std::string key_;
    std::unordered_map<std::string, std::optional<BlockKind>> memo_;
};

}  // namespace detail

/// Splits one decoded XHTML document into countable sections.
inline std::vector<SectionText> extract_sections(std::string_view document, Diagnostics& diagnostics,
                                                 const XhtmlOptions& options = {}) {
    detail::XhtmlClassifier classifier(*options.rules);
    SectionAssembler assembler;
    HtmlLexer lexer(document);

    struct OpenBlock {
        std::string name;
        BlockKind kind;
        bool orphan_reported;
    };
    std::vector<OpenBlock> blocks;
    std::vector<std::string> fields;
    std::string field_context;
    std::string file_title = detail::title_from_member(options.member);
    std::string pending_title;
    std::string pending_section;

    auto current_kind = [&] { return blocks.empty() ? BlockKind::Other : blocks.back().kind; };
    auto rebuild_field_context = [&] {
        field_context.clear();
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) field_context += '/';
            field_context += fields[i];
        }
    };

    for (HtmlToken tok = lexer.next(); tok.type != HtmlToken::Type::End; tok = lexer.next()) {
        switch (tok.type) {
            case HtmlToken::Type::Comment: {
                std::string_view body = detail::trim(tok.raw);
                if (body.rfind("field-start:", 0) == 0) {
                    fields.emplace_back(detail::trim(body.substr(12)));
                    rebuild_field_context();
                } else if (body.rfind("field-end:", 0) == 0) {
                    std::string_view name = detail::trim(body.substr(10));
                    auto it = std::find(fields.rbegin(), fields.rend(), name);
                    if (it != fields.rend()) {
                        fields.erase(std::next(it).base(), fields.end());
                        rebuild_field_context();
                    } else {
                        diagnostics.add(options.member, tok.offset, "field-end without field-start: " + std::string(name));
                    }
                } else if (body.rfind("documentid:", 0) == 0) {
                    std::string_view id = body.substr(11);
                    id = id.substr(0, id.find_first_of(" \t\r\n"));
                    std::tie(pending_title, pending_section) = detail::ids_from_documentid(id);
                }
                break;
            }
            case HtmlToken::Type::StartTag: {
                const std::string& name = tok.name;
                if (name == "br") {
                    assembler.boundary();
                    break;
                }
                bool block = detail::is_block_element(name);
                auto matched = classifier.match(name, tok.has_class ? std::string_view(tok.class_attr) : "",
                                                field_context);
                if (!block) {
                    // Inline elements matter only when they are figures.
                    if (matched == BlockKind::ChartOrFigure && !detail::is_void_element(name) && !tok.self_closing) {
                        blocks.push_back({name, BlockKind::ChartOrFigure, false});
                    }
                    break;
                }
                BlockKind parent = current_kind();
                BlockKind kind = matched.value_or(parent);
                assembler.boundary();
                if (kind == BlockKind::SectionHead && parent != BlockKind::SectionHead) {
                    std::string title = pending_title.empty() ? file_title : pending_title;
                    assembler.open(std::move(title), std::move(pending_section));
                    pending_title.clear();
                    pending_section.clear();
                } else if (kind == BlockKind::StructuralHead && parent != BlockKind::StructuralHead) {
                    assembler.close();
                } else if (ends_law_text(kind) && !ends_law_text(parent)) {
                    assembler.interrupt();
                }
                if (!tok.self_closing) blocks.push_back({name, kind, false});
                break;
            }
            case HtmlToken::Type::EndTag: {
                if (tok.name == "br") {
                    assembler.boundary();
                    break;
                }
                auto it = std::find_if(blocks.rbegin(), blocks.rend(),
                                       [&](const OpenBlock& b) { return b.name == tok.name; });
                if (it != blocks.rend()) {
                    blocks.erase(std::next(it).base(), blocks.end());
                    if (detail::is_block_element(tok.name)) assembler.boundary();
                }
                break;
            }
            case HtmlToken::Type::Text: {
                BlockKind kind = current_kind();
                if (!is_countable(kind)) break;
                std::string text = lexer.last_text_was_cdata() ? std::string(tok.raw) : decode_entities(tok.raw);
                if (assembler.append(text)) break;
                if (kind == BlockKind::StatutoryBody && !blocks.empty() && !blocks.back().orphan_reported &&
                    !detail::trim(text).empty()) {
                    blocks.back().orphan_reported = true;
                    diagnostics.add(options.member, tok.offset,
                                    assembler.interrupted() ? "orphan statutory text after excluded block skipped"
                                                            : "statutory text outside any section skipped");
                }
                break;
            }
            case HtmlToken::Type::Malformed:
                diagnostics.add(options.member, tok.offset,
                                "unparseable markup skipped (" + std::string(lexer.last_malformed_reason()) + ")");
                break;
            case HtmlToken::Type::End:
                break;
        }
    }
    return assembler.finish();
}

inline bool is_appendix_title(std::string_view title) {
    return !title.empty() && (title.back() == 'a' || title.back() == 'A');
}

struct YearCount {
    TokenStats total;
    std::map<std::string, TokenStats> per_title;
    Diagnostics diagnostics;
    std::size_t replacements = 0;
};

struct CountOptions {
    const RuleTable* rules = &RuleTable::defaults();
    bool include_appendix_titles = true;
    unsigned jobs = 1;
};

namespace detail {

template <typename PerMember>
YearCount count_members(const YearArchive& archive, unsigned jobs, PerMember&& per_member) {
    std::vector<YearCount> partial(archive.files.size());
    std::vector<std::exception_ptr> errors(archive.files.size());
    auto work = [&](std::size_t i) {
        try {
            partial[i] = per_member(archive.files[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (jobs <= 1 || archive.files.size() <= 1) {
        for (std::size_t i = 0; i < archive.files.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(archive.files.size()));
        for (unsigned t = 0; t < n; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < archive.files.size(); i = next++) work(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    YearCount result;
    for (std::size_t i = 0; i < partial.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        result.total += partial[i].total;
        for (const auto& [title, stats] : partial[i].per_title) result.per_title[title] += stats;
        result.diagnostics.append(partial[i].diagnostics);
        result.replacements += partial[i].replacements;
    }
    return result;
}

}  // namespace detail

/// Word and character totals over every candidate member of one XHTML year.
inline YearCount count_year_xhtml(const YearArchive& archive, const TokenCounter& counter,
                                  const CountOptions& options = {}) {
    if (archive.format != SourceFormat::XHTML) throw InputError("count_year_xhtml needs an XHTML archive");
    YearCount result = detail::count_members(archive, options.jobs, [&](const ArchiveMember& member) {
        YearCount part;
        std::string raw = member.read();
        DecodedText decoded = decode_text(raw, SourceFormat::XHTML);
        raw.clear();
        raw.shrink_to_fit();
        part.replacements = decoded.replacements;
        if (decoded.unknown_charset) part.diagnostics.add(member.path, 0, "unrecognized charset; Western fallback used");
        XhtmlOptions xo{options.rules, member.path};
        for (const auto& section : extract_sections(decoded.text, part.diagnostics, xo)) {
            if (!options.include_appendix_titles && is_appendix_title(section.title_number)) continue;
            TokenStats s = counter.count_text(section.countable_text);
            part.total += s;
            part.per_title[section.title_number] += s;
        }
        return part;
    });
    YearCount ordered;
    for (const auto& name : archive.ignored) ordered.diagnostics.add(name, 0, "ignored: not an .htm/.html member");
    ordered.diagnostics.append(result.diagnostics);
    result.diagnostics = std::move(ordered.diagnostics);
    return result;
}

}  // namespace lexometer

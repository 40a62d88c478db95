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

// A forgiving (X)HTML tokenizer. It knows just enough to separate tags,
// comments and character data; there is no tree construction.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "lexometer/utf8.hpp"

namespace lexometer {

namespace detail {

struct NamedEntity {
    std::string_view name;
    char32_t code_point;
};

// Sorted by name for binary search.
inline constexpr NamedEntity kEntities[] = {
    {"AElig", 0xC6}, {"Aacute", 0xC1}, {"Agrave", 0xC0}, {"Auml", 0xC4}, {"Ccedil", 0xC7},
    {"Dagger", 0x2021}, {"Eacute", 0xC9}, {"Egrave", 0xC8}, {"Iacute", 0xCD}, {"Ntilde", 0xD1},
    {"Oacute", 0xD3}, {"Ouml", 0xD6}, {"Prime", 0x2033}, {"Uacute", 0xDA}, {"Uuml", 0xDC},
    {"aacute", 0xE1}, {"acirc", 0xE2}, {"aelig", 0xE6}, {"agrave", 0xE0}, {"amp", 0x26},
    {"apos", 0x27}, {"auml", 0xE4}, {"bull", 0x2022}, {"ccedil", 0xE7}, {"cent", 0xA2},
    {"copy", 0xA9}, {"dagger", 0x2020}, {"darr", 0x2193}, {"deg", 0xB0}, {"divide", 0xF7},
    {"eacute", 0xE9}, {"ecirc", 0xEA}, {"egrave", 0xE8}, {"emsp", 0x2003}, {"ensp", 0x2002},
    {"euro", 0x20AC}, {"frac12", 0xBD}, {"frac14", 0xBC}, {"frac34", 0xBE}, {"ge", 0x2265},
    {"gt", 0x3E}, {"hellip", 0x2026}, {"iacute", 0xED}, {"iexcl", 0xA1}, {"iquest", 0xBF},
    {"laquo", 0xAB}, {"larr", 0x2190}, {"ldquo", 0x201C}, {"le", 0x2264}, {"lsquo", 0x2018},
    {"lt", 0x3C}, {"mdash", 0x2014}, {"micro", 0xB5}, {"middot", 0xB7}, {"minus", 0x2212},
    {"nbsp", 0xA0}, {"ndash", 0x2013}, {"ne", 0x2260}, {"ntilde", 0xF1}, {"oacute", 0xF3},
    {"ocirc", 0xF4}, {"ordf", 0xAA}, {"ordm", 0xBA}, {"ouml", 0xF6}, {"para", 0xB6},
    {"plusmn", 0xB1}, {"pound", 0xA3}, {"prime", 0x2032}, {"quot", 0x22}, {"raquo", 0xBB},
    {"rarr", 0x2192}, {"rdquo", 0x201D}, {"reg", 0xAE}, {"rsquo", 0x2019}, {"sect", 0xA7},
    {"shy", 0xAD}, {"sup1", 0xB9}, {"sup2", 0xB2}, {"sup3", 0xB3}, {"szlig", 0xDF},
    {"thinsp", 0x2009}, {"times", 0xD7}, {"trade", 0x2122}, {"uacute", 0xFA}, {"uarr", 0x2191},
    {"uuml", 0xFC}, {"yen", 0xA5},
};

inline std::optional<char32_t> lookup_entity(std::string_view name) {
    auto it = std::lower_bound(std::begin(kEntities), std::end(kEntities), name,
                               [](const NamedEntity& e, std::string_view n) { return e.name < n; });
    if (it != std::end(kEntities) && it->name == name) return it->code_point;
    return std::nullopt;
}

}  // namespace detail

/// Replaces character references. Unknown or malformed references are kept
/// verbatim.
inline std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        auto amp = text.find('&', i);
        if (amp == std::string_view::npos) {
            out.append(text.substr(i));
            break;
        }
        out.append(text.substr(i, amp - i));
        auto semi = text.find(';', amp + 1);
        if (semi == std::string_view::npos || semi - amp > 12) {
            out += '&';
            i = amp + 1;
            continue;
        }
        std::string_view ref = text.substr(amp + 1, semi - amp - 1);
        std::optional<char32_t> cp;
        if (ref.size() > 1 && ref[0] == '#') {
            unsigned long v = 0;
            bool ok = true;
            bool hex = ref[1] == 'x' || ref[1] == 'X';
            std::string_view digits = ref.substr(hex ? 2 : 1);
            if (digits.empty()) ok = false;
            for (char c : digits) {
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else { ok = false; break; }
                v = v * (hex ? 16 : 10) + static_cast<unsigned long>(d);
                if (v > 0x10FFFF) { ok = false; break; }
            }
            if (ok) cp = (v >= 0xD800 && v <= 0xDFFF) || v == 0 ? utf8::kReplacement : static_cast<char32_t>(v);
        } else {
            cp = detail::lookup_entity(ref);
        }
        if (cp) {
            utf8::append(out, *cp);
        } else {
            out.append(text.substr(amp, semi - amp + 1));
        }
        i = semi + 1;
    }
    return out;
}

struct HtmlToken {
    enum class Type { Text, StartTag, EndTag, Comment, Malformed, End };
    Type type = Type::End;
    std::string name;          // lower-cased tag name
    std::string class_attr;    // entity-decoded class attribute, if any
    bool has_class = false;
    bool self_closing = false;
    std::string_view raw;      // text/comment body, or the skipped region for Malformed
    std::size_t offset = 0;    // byte offset in the document
};

class HtmlLexer {
public:
    explicit HtmlLexer(std::string_view doc) : doc_(doc) {}

    HtmlToken next() {
        HtmlToken tok;
        tok.offset = pos_;
        if (pos_ >= doc_.size()) return tok;
        if (!raw_text_end_tag_.empty()) return raw_text(tok);
        if (doc_[pos_] != '<') return text(tok);
        if (starts_with("<!--")) {
            auto end = doc_.find("-->", pos_ + 4);
            if (end == std::string_view::npos) return malformed(tok, "unterminated comment");
            tok.type = HtmlToken::Type::Comment;
            tok.raw = doc_.substr(pos_ + 4, end - pos_ - 4);
            pos_ = end + 3;
            return tok;
        }
        if (starts_with("<![CDATA[")) {
            auto end = doc_.find("]]>", pos_ + 9);
            if (end == std::string_view::npos) return malformed(tok, "unterminated CDATA section");
            tok.type = HtmlToken::Type::Text;
            tok.raw = doc_.substr(pos_ + 9, end - pos_ - 9);
            pos_ = end + 3;
            cdata_ = true;
            return tok;
        }
        cdata_ = false;
        if (starts_with("<!") || starts_with("<?")) {
            auto end = doc_.find('>', pos_ + 2);
            if (end == std::string_view::npos) return malformed(tok, "unterminated declaration");
            pos_ = end + 1;
            return next();
        }
        bool closing = pos_ + 1 < doc_.size() && doc_[pos_ + 1] == '/';
        std::size_t name_start = pos_ + (closing ? 2 : 1);
        if (name_start >= doc_.size() || !is_name_start(doc_[name_start])) {
            // A bare '<' in character data.
            return text(tok, 1);
        }
        return tag(tok, closing, name_start);
    }

    /// True when the last Text token came from a CDATA section (no entity
    /// decoding applies).
    bool last_text_was_cdata() const noexcept { return cdata_; }

    std::string_view last_malformed_reason() const noexcept { return malformed_reason_; }

private:
    static bool is_name_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
    static bool is_name_char(char c) {
        return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == ':' || c == '_' || c == '.';
    }
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

    bool starts_with(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

    HtmlToken text(HtmlToken& tok, std::size_t min_len = 0) {
        auto end = doc_.find('<', pos_ + min_len);
        if (end == std::string_view::npos) end = doc_.size();
        tok.type = HtmlToken::Type::Text;
        tok.raw = doc_.substr(pos_, end - pos_);
        pos_ = end;
        cdata_ = false;
        return tok;
    }

    HtmlToken raw_text(HtmlToken& tok) {
        std::size_t search = pos_;
        std::size_t end = doc_.size();
        while (true) {
            auto lt = doc_.find("</", search);
            if (lt == std::string_view::npos) break;
            std::string_view candidate = doc_.substr(lt + 2, raw_text_end_tag_.size());
            bool match = candidate.size() == raw_text_end_tag_.size();
            for (std::size_t i = 0; match && i < candidate.size(); ++i) {
                char c = candidate[i];
                if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
                match = c == raw_text_end_tag_[i];
            }
            if (match) {
                end = lt;
                break;
            }
            search = lt + 2;
        }
        // Script and style bodies carry no countable text; report as a comment.
        tok.type = HtmlToken::Type::Comment;
        tok.raw = {};
        pos_ = end;
        raw_text_end_tag_.clear();
        if (pos_ >= doc_.size()) return next();
        return tok;
    }

    HtmlToken malformed(HtmlToken& tok, std::string_view reason) {
        tok.type = HtmlToken::Type::Malformed;
        tok.raw = doc_.substr(pos_);
        malformed_reason_ = reason;
        pos_ = doc_.size();
        return tok;
    }

    HtmlToken tag(HtmlToken& tok, bool closing, std::size_t name_start) {
        std::size_t p = name_start;
        while (p < doc_.size() && is_name_char(doc_[p])) ++p;
        tok.name.assign(doc_.substr(name_start, p - name_start));
        for (char& c : tok.name) {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        tok.type = closing ? HtmlToken::Type::EndTag : HtmlToken::Type::StartTag;
        // Attributes.
        while (true) {
            while (p < doc_.size() && is_space(doc_[p])) ++p;
            if (p >= doc_.size()) return malformed(tok, "unterminated tag");
            char c = doc_[p];
            if (c == '>') {
                ++p;
                break;
            }
            if (c == '/' && p + 1 < doc_.size() && doc_[p + 1] == '>') {
                tok.self_closing = true;
                p += 2;
                break;
            }
            if (c == '<') {
                // Tag never closed; resume at the next tag.
                malformed_reason_ = "unterminated tag";
                tok.type = HtmlToken::Type::Malformed;
                tok.raw = doc_.substr(pos_, p - pos_);
                pos_ = p;
                return tok;
            }
            std::size_t an = p;
            while (p < doc_.size() && !is_space(doc_[p]) && doc_[p] != '=' && doc_[p] != '>' &&
                   !(doc_[p] == '/' && p + 1 < doc_.size() && doc_[p + 1] == '>')) {
                ++p;
            }
            std::string_view attr_name = doc_.substr(an, p - an);
            while (p < doc_.size() && is_space(doc_[p])) ++p;
            std::string_view value;
            if (p < doc_.size() && doc_[p] == '=') {
                ++p;
                while (p < doc_.size() && is_space(doc_[p])) ++p;
                if (p >= doc_.size()) return malformed(tok, "unterminated tag");
                char q = doc_[p];
                if (q == '"' || q == '\'') {
                    auto close = doc_.find(q, p + 1);
                    if (close == std::string_view::npos) return malformed(tok, "unterminated attribute value");
                    value = doc_.substr(p + 1, close - p - 1);
                    p = close + 1;
                } else {
                    std::size_t vs = p;
                    while (p < doc_.size() && !is_space(doc_[p]) && doc_[p] != '>') ++p;
                    value = doc_.substr(vs, p - vs);
                }
            }
            if (attr_name.size() == 5) {
                std::string lower(attr_name);
                for (char& ch : lower) {
                    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
                }
                if (lower == "class") {
                    tok.class_attr = decode_entities(value);
                    tok.has_class = true;
                }
            }
        }
        pos_ = p;
        if (tok.type == HtmlToken::Type::StartTag && !tok.self_closing &&
            (tok.name == "script" || tok.name == "style")) {
            raw_text_end_tag_ = tok.name;
        }
        return tok;
    }

    std::string_view doc_;
    std::size_t pos_ = 0;
    bool cdata_ = false;
    std::string raw_text_end_tag_;
    std::string_view malformed_reason_;
};

}  // namespace lexometer

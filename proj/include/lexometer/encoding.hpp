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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "lexometer/corpus_model.hpp"
#include "lexometer/utf8.hpp"

namespace lexometer {

struct DecodedText {
    std::string text;  // UTF-8
    std::size_t replacements = 0;
    bool unknown_charset = false;  // a declared charset was not recognized; fallback used
};

namespace detail {

// windows-1252 as the WHATWG encoding standard defines it: the five bytes
// Microsoft leaves unassigned decode to the matching C1 control.
inline constexpr std::array<char16_t, 32> kCp1252High = {
    0x20AC, 0x0081, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0x008D, 0x017D, 0x008F,
    0x0090, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0x009D, 0x017E, 0x0178,
};

inline char32_t cp1252_decode(unsigned char b) {
    if (b >= 0x80 && b <= 0x9F) return kCp1252High[b - 0x80];
    return b;
}

inline std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

enum class Charset { Utf8, Western, Unknown };

inline Charset classify_charset(std::string_view name) {
    std::string n = lower_ascii(name);
    if (n == "utf-8" || n == "utf8" || n == "unicode-1-1-utf-8") return Charset::Utf8;
    if (n == "iso-8859-1" || n == "iso8859-1" || n == "latin1" || n == "l1" || n == "iso_8859-1" ||
        n == "us-ascii" || n == "ascii" || n == "windows-1252" || n == "cp1252" || n == "x-cp1252") {
        return Charset::Western;
    }
    return Charset::Unknown;
}

inline std::optional<std::string> value_after(std::string_view head, std::string_view key) {
    std::string lower = lower_ascii(head);
    auto pos = lower.find(key);
    if (pos == std::string::npos) return std::nullopt;
    pos += key.size();
    while (pos < head.size() && (head[pos] == ' ' || head[pos] == '=')) ++pos;
    if (pos < head.size() && (head[pos] == '"' || head[pos] == '\'')) ++pos;
    std::size_t end = pos;
    while (end < head.size()) {
        char c = head[end];
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.' || c == ':';
        if (!ok) break;
        ++end;
    }
    if (end == pos) return std::nullopt;
    return std::string(head.substr(pos, end - pos));
}

}  // namespace detail

/// Charset declared by a UTF-8 BOM, the XML prolog, or an HTML meta tag within
/// the first 2 KiB of a document.
inline std::optional<std::string> sniff_declared_charset(std::string_view raw) {
    if (raw.substr(0, 3) == "\xEF\xBB\xBF") return std::string("utf-8");
    std::string_view head = raw.substr(0, 2048);
    if (head.substr(0, 5) == "<?xml") {
        auto close = head.find("?>");
        if (auto v = detail::value_after(head.substr(0, close), "encoding")) return v;
    }
    if (auto v = detail::value_after(head, "charset")) return v;
    return std::nullopt;
}

/// Decodes archive bytes to UTF-8. Never fails: undecodable bytes become
/// U+FFFD and are tallied.
inline DecodedText decode_text(std::string_view raw, SourceFormat format,
                               std::optional<std::string> declared_charset = std::nullopt) {
    DecodedText out;
    if (!declared_charset && format == SourceFormat::XHTML) declared_charset = sniff_declared_charset(raw);
    auto charset = detail::Charset::Western;
    if (declared_charset) {
        charset = detail::classify_charset(*declared_charset);
        if (charset == detail::Charset::Unknown) {
            out.unknown_charset = true;
            charset = detail::Charset::Western;
        }
    }
    out.text.reserve(raw.size());
    if (charset == detail::Charset::Utf8) {
        std::size_t i = 0;
        if (raw.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
        while (i < raw.size()) {
            auto d = utf8::next(raw, i);
            if (!d.valid) ++out.replacements;
            if (d.valid && d.code_point < 0x80) {
                out.text += raw[i];
            } else {
                utf8::append(out.text, d.code_point);
            }
            i += d.length;
        }
    } else {
        for (char c : raw) {
            auto b = static_cast<unsigned char>(c);
            if (b < 0x80) {
                out.text += c;
            } else {
                utf8::append(out.text, detail::cp1252_decode(b));
            }
        }
    }
    return out;
}

}  // namespace lexometer

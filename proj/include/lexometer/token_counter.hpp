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

// Word segmentation and character accounting.
//
// A word is a maximal run of code points that are neither whitespace nor a
// long dash. Mixed runs such as " — " form one boundary. Hyphens, en dashes
// and other punctuation stay inside words. Each word is charged its own
// length plus exactly one separator character, so "a bb" is 2 words and
// 5 characters.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexometer/corpus_model.hpp"
#include "lexometer/errors.hpp"
#include "lexometer/utf8.hpp"

namespace lexometer {

enum class SeparatorClass { Whitespace, EmDash };

/// Classifies a code point; nullopt for word characters.
inline std::optional<SeparatorClass> separator_class(char32_t cp) {
    switch (cp) {
        case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
        case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return SeparatorClass::Whitespace;
        case 0x2014: case 0x2015:
            return SeparatorClass::EmDash;
        default:
            if (cp >= 0x2000 && cp <= 0x200A) return SeparatorClass::Whitespace;
            return std::nullopt;
    }
}

/// How separator characters are charged. `OnePerToken` is the counting rule;
/// `LiteralRuns` charges the separator characters actually present before
/// each word (at least one) and exists only for audit comparisons.
enum class SeparatorCharge { OnePerToken, LiteralRuns };

struct TokenizerConfig {
    std::vector<char32_t> separators_extra;  // audit use only
    SeparatorCharge charge = SeparatorCharge::OnePerToken;
};

/// Parses "U+2013,U+2012" / "2013 2012" into code points.
inline std::vector<char32_t> parse_code_point_list(std::string_view text) {
    std::vector<char32_t> out;
    std::string item;
    auto flush = [&] {
        if (item.empty()) return;
        std::string hex = item;
        if (hex.size() > 2 && (hex[0] == 'U' || hex[0] == 'u') && hex[1] == '+') hex = hex.substr(2);
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(hex, &used, 16);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != hex.size() || v > 0x10FFFF) throw InputError("bad code point '" + item + "'");
        out.push_back(static_cast<char32_t>(v));
        item.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t') {
            flush();
        } else {
            item += c;
        }
    }
    flush();
    return out;
}

class TokenCounter {
public:
    TokenCounter() = default;
    explicit TokenCounter(TokenizerConfig config) : config_(std::move(config)) {
        std::sort(config_.separators_extra.begin(), config_.separators_extra.end());
    }

    const TokenizerConfig& config() const noexcept { return config_; }

    bool is_separator(char32_t cp) const {
        if (separator_class(cp)) return true;
        return !config_.separators_extra.empty() &&
               std::binary_search(config_.separators_extra.begin(), config_.separators_extra.end(), cp);
    }

    std::vector<std::string_view> segment_words(std::string_view text) const {
        std::vector<std::string_view> tokens;
        scan(text, [&](std::string_view token, std::size_t, std::size_t) { tokens.push_back(token); });
        return tokens;
    }

    TokenStats count_text(std::string_view text) const {
        TokenStats stats;
        scan(text, [&](std::string_view, std::size_t code_points, std::size_t preceding_separators) {
            ++stats.words;
            std::size_t charge = 1;
            if (config_.charge == SeparatorCharge::LiteralRuns && preceding_separators > 0) {
                charge = preceding_separators;
            }
            stats.chars += code_points + charge;
        });
        return stats;
    }

private:
    // Calls emit(token, token_code_points, separator_code_points_before_token).
    template <typename Emit>
    void scan(std::string_view text, Emit&& emit) const {
        std::size_t i = 0;
        std::size_t sep_run = 0;
        std::size_t start = 0;
        std::size_t token_cps = 0;
        bool in_token = false;
        while (i < text.size()) {
            unsigned char b = static_cast<unsigned char>(text[i]);
            char32_t cp;
            std::size_t len;
            if (b < 0x80) {
                cp = b;
                len = 1;
            } else {
                auto d = utf8::next(text, i);
                cp = d.code_point;
                len = d.length;
            }
            if (is_separator(cp)) {
                if (in_token) {
                    emit(text.substr(start, i - start), token_cps, sep_run);
                    in_token = false;
                    sep_run = 0;
                }
                ++sep_run;
            } else {
                if (!in_token) {
                    in_token = true;
                    start = i;
                    token_cps = 0;
                }
                ++token_cps;
            }
            i += len;
        }
        if (in_token) emit(text.substr(start), token_cps, sep_run);
    }

    TokenizerConfig config_;
};

inline std::vector<std::string_view> segment_words(std::string_view text) {
    return TokenCounter{}.segment_words(text);
}

inline TokenStats count_text(std::string_view text) { return TokenCounter{}.count_text(text); }

}  // namespace lexometer

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

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "lexometer/corpus_model.hpp"

namespace lexometer {

/// Extracts the designator from a headline such as "§ 101. Definitions" or
/// "Sec. 7a. Repealed"; empty when the headline carries none.
inline std::string section_id_from_headline(std::string_view headline) {
    static const std::regex designator(R"(^\s*(?:(?:§)+|Secs?\.)\s*([0-9A-Za-z][0-9A-Za-z\-]*))");
    std::match_results<std::string_view::const_iterator> m;
    auto head = headline.substr(0, 200);
    if (std::regex_search(head.begin(), head.end(), m, designator)) return m[1].str();
    return {};
}

/// Accumulates countable text into sections. The law text of a section runs
/// from its headline until the next headline, a structural heading, or the
/// first excluded block (credit, note, amendment history); countable text
/// seen after that point and before the next headline is an orphan.
class SectionAssembler {
public:
    void open(std::string title, std::string section_id) {
        close();
        current_ = SectionText{std::move(title), std::move(section_id), {}};
        interrupted_ = false;
    }

    void close() {
        if (current_) {
            while (!current_->countable_text.empty() && current_->countable_text.back() == ' ') {
                current_->countable_text.pop_back();
            }
            if (current_->section_id.empty()) current_->section_id = section_id_from_headline(current_->countable_text);
            sections_.push_back(std::move(*current_));
            current_.reset();
        }
        interrupted_ = false;
    }

    /// An excluded block follows: the open section's law text is complete.
    void interrupt() {
        if (current_) {
            close();
            interrupted_ = true;
        }
    }

    bool is_open() const noexcept { return current_.has_value(); }
    bool interrupted() const noexcept { return interrupted_; }

    /// Appends text with ASCII whitespace runs collapsed to one space.
    /// Returns false when no section is open (the text is dropped).
    bool append(std::string_view text) {
        if (!current_) return false;
        std::string& out = current_->countable_text;
        for (char c : text) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                if (!out.empty() && out.back() != ' ') out += ' ';
            } else {
                out += c;
            }
        }
        return true;
    }

    /// Block boundary: contributes one whitespace character.
    void boundary() {
        if (current_ && !current_->countable_text.empty() && current_->countable_text.back() != ' ') {
            current_->countable_text += ' ';
        }
    }

    std::vector<SectionText> finish() {
        close();
        return std::move(sections_);
    }

private:
    std::optional<SectionText> current_;
    bool interrupted_ = false;
    std::vector<SectionText> sections_;
};

}  // namespace lexometer

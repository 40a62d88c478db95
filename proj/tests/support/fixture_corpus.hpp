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

// Deterministic synthetic corpus in the on-disk layout the tools read.

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "support/tempdir.hpp"
#include "support/zip_writer.hpp"

namespace lexometer::testing {

struct FixtureSection {
    int title;
    int number;
    std::string heading;
    std::vector<std::string> body;   // countable paragraphs
    std::string credit;              // excluded
    std::vector<std::string> notes;  // excluded
};

class FixtureWriter {
public:
    explicit FixtureWriter(std::uint32_t seed) : rng_(seed) {}

    std::string sentence(std::size_t words) {
        static const char* kPool[] = {"the", "Secretary", "shall", "prescribe", "regulations", "under",
                                      "this", "section", "not", "later", "than", "days", "after", "on-line",
                                      "State", "agency", "fiscal", "year", "amounts", "appropriated",
                                      "§ 552(b)", "such", "person", "who", "report—", "including"};
        std::string out;
        for (std::size_t i = 0; i < words; ++i) {
            if (i) out += pick(6) == 0 ? "\xE2\x80\x94" : " ";
            out += kPool[pick(std::size(kPool))];
        }
        return out + ".";
    }

    std::vector<FixtureSection> sections(int title, int count, int year) {
        std::vector<FixtureSection> out;
        for (int n = 1; n <= count; ++n) {
            FixtureSection s;
            s.title = title;
            s.number = n;
            s.heading = fmt::format("Definitions for part {} of {}", n, year);
            std::size_t paras = 1 + pick(3) + static_cast<std::size_t>((year - 1990) % 3);
            for (std::size_t p = 0; p < paras; ++p) s.body.push_back(sentence(5 + pick(20)));
            s.credit = fmt::format("(Pub. L. {}-{}, Sept. 6, {}, 80 Stat. 378.)", 80 + n, 100 + title, year);
            s.notes.push_back(sentence(8));
            s.notes.push_back(sentence(4));
            out.push_back(std::move(s));
        }
        return out;
    }

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

private:
    std::mt19937 rng_;
};

inline std::string xhtml_document(const std::vector<FixtureSection>& sections) {
    std::string d =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<html><head><title>x</title></head><body>\n";
    if (!sections.empty()) {
        d += fmt::format("<h1 class=\"usc-title-head\">TITLE {}&mdash;FIXTURE</h1>\n", sections.front().title);
    }
    for (const auto& s : sections) {
        d += fmt::format("<!-- documentid:{}_USC_{} -->\n", s.title, s.number);
        d += fmt::format("<h3 class=\"section-head\">&sect;{}. {}</h3>\n", s.number, s.heading);
        d += "<!-- field-start:statute -->\n";
        for (const auto& p : s.body) d += "<p class=\"statutory-body\">" + p + "</p>\n";
        d += "<!-- field-end:statute -->\n<!-- field-start:sourcecredit -->\n";
        d += "<p class=\"source-credit\">" + s.credit + "</p>\n";
        d += "<!-- field-end:sourcecredit -->\n<!-- field-start:notes -->\n";
        d += "<h4 class=\"note-head\">Historical and Revision Notes</h4>\n";
        for (const auto& n : s.notes) d += "<p class=\"note-body\">" + n + "</p>\n";
        d += "<!-- field-end:notes -->\n";
    }
    return d + "</body></html>\n";
}

/// Re-encodes the two non-ASCII characters the fixtures use.
inline std::string to_cp1252(const std::string& utf8) {
    std::string out;
    for (std::size_t i = 0; i < utf8.size(); ++i) {
        if (utf8.compare(i, 3, "\xE2\x80\x94") == 0) {
            out += '\x97';
            i += 2;
        } else if (utf8.compare(i, 2, "\xC2\xA7") == 0) {
            out += '\xA7';
            i += 1;
        } else {
            out += utf8[i];
        }
    }
    return out;
}

/// SRC text with locator codes; the body is repeated with an extra clause
/// so SRC years count more words than the XHTML years.
inline std::string src_document(const std::vector<FixtureSection>& sections) {
    const std::string c = "\x07I11";
    std::string d;
    if (!sections.empty()) d += fmt::format("\x07I01TITLE {}\xE2\x80\x94" "FIXTURE\n", sections.front().title);
    for (const auto& s : sections) {
        d += c + "-CITE-\n" + c + fmt::format("    {} USC Sec. {}\n", s.title, s.number);
        d += c + "-HEAD-\n" + c + fmt::format("Sec. {}. {}\n", s.number, s.heading);
        d += c + "-STATUTE-\n";
        for (const auto& p : s.body) d += c + p + "\n" + c + "and also " + p + "\n";
        d += c + "-SOURCE-\n" + c + s.credit + "\n";
        d += c + "-MISC1-\n";
        for (const auto& n : s.notes) d += c + n + "\n";
    }
    return to_cp1252(d);
}

struct FixtureCorpusOptions {
    std::vector<int> src_years = {1991, 1992, 1993, 1994, 1995, 1996};
    std::vector<int> xhtml_years = {1994, 1995, 1996};
    int titles = 3;
    int sections_per_title = 6;
    std::uint32_t seed = 20240104;
};

inline void write_fixture_corpus(const std::filesystem::path& root, const FixtureCorpusOptions& o = {}) {
    for (int year : o.xhtml_years) {
        FixtureWriter w(o.seed + static_cast<std::uint32_t>(year));
        std::vector<ZipInput> members;
        for (int t = 1; t <= o.titles; ++t) {
            members.push_back({fmt::format("usc{:02}.htm", t), xhtml_document(w.sections(t, o.sections_per_title, year)),
                               t % 2 == 1});
        }
        members.push_back({"readme.txt", "not a document", false});
        write_bytes(root / fmt::format("{}.zip", year), make_zip(members));
    }
    for (int year : o.src_years) {
        FixtureWriter w(o.seed + static_cast<std::uint32_t>(year));
        std::string doc;
        for (int t = 1; t <= o.titles; ++t) doc += src_document(w.sections(t, o.sections_per_title, year));
        // One extra title exists only in the SRC image.
        doc += src_document(w.sections(o.titles + 1, 1, year));
        write_bytes(root / fmt::format("USC{}", year) / fmt::format("USC{}.SRC", year), doc);
    }
}

}  // namespace lexometer::testing

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

// The count / report / audit commands behind tools/lexometer. Each takes
// parsed arguments plus output streams and returns the process exit code.
//
// Exit codes: 0 success, 1 audit found nothing, 2 corpus layout or argument
// error, 3 some years failed, 4 not enough years to calibrate.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "lexometer/archive_ingest.hpp"
#include "lexometer/calibration_stats.hpp"
#include "lexometer/corpus_model.hpp"
#include "lexometer/locator_src_parser.hpp"
#include "lexometer/report_emitter.hpp"
#include "lexometer/rules.hpp"
#include "lexometer/token_counter.hpp"
#include "lexometer/xhtml_section_parser.hpp"

namespace lexometer::cli {

enum ExitCode : int {
    kOk = 0,
    kNoMatch = 1,
    kLayoutError = 2,
    kPartialFailure = 3,
    kCalibrationCoverage = 4,
};

enum class FormatFilter { Xhtml, Src, Both };

inline FormatFilter parse_format_filter(std::string_view s) {
    if (s == "xhtml") return FormatFilter::Xhtml;
    if (s == "src") return FormatFilter::Src;
    if (s == "both") return FormatFilter::Both;
    throw InputError("--format must be xhtml, src or both");
}

/// "2018", "1994,1995", "1994-1996", "1991-1993,2018".
inline std::vector<int> parse_years(std::string_view text) {
    std::set<int> years;
    std::string item;
    auto to_year = [](const std::string& s) {
        std::size_t used = 0;
        int y = 0;
        try {
            y = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) throw InputError("bad year '" + s + "'");
        return y;
    };
    auto flush = [&] {
        if (item.empty()) return;
        auto dash = item.find('-');
        if (dash == std::string::npos) {
            years.insert(to_year(item));
        } else {
            int a = to_year(item.substr(0, dash));
            int b = to_year(item.substr(dash + 1));
            if (b < a) throw InputError("bad year range '" + item + "'");
            for (int y = a; y <= b; ++y) years.insert(y);
        }
        item.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else if (c != ' ') {
            item += c;
        }
    }
    flush();
    return {years.begin(), years.end()};
}

/// Settings shared by every command that parses documents.
struct ParseSettings {
    std::optional<std::filesystem::path> rules_file;  // falls back to $LEXOMETER_RULES
    std::vector<char32_t> separators_extra;
    bool include_appendix_titles = true;

    RuleTable load_rules() const {
        std::optional<std::filesystem::path> file = rules_file;
        if (!file) {
            if (const char* env = std::getenv("LEXOMETER_RULES"); env && *env) file = env;
        }
        if (!file) return RuleTable::defaults();
        return RuleTable::with_overrides(RuleTable::load(*file));
    }

    TokenCounter make_counter(const RuleTable& rules, SeparatorCharge charge = SeparatorCharge::OnePerToken) const {
        TokenizerConfig config;
        config.separators_extra = separators_extra;
        config.separators_extra.insert(config.separators_extra.end(), rules.separators_extra().begin(),
                                       rules.separators_extra().end());
        config.charge = charge;
        return TokenCounter(config);
    }
};

struct CountRow {
    int year = 0;
    SourceFormat format = SourceFormat::XHTML;
    TokenStats stats;
    std::size_t replacements = 0;
    Diagnostics diagnostics;
};

inline std::string counts_header() { return "year\tformat\twords\tchars\tchars_per_word"; }

inline std::string format_count_row(int year, SourceFormat format, const TokenStats& s) {
    auto cpw = s.chars_per_word();
    return fmt::format("{}\t{}\t{}\t{}\t{}", year, to_string(format), s.words, s.chars,
                       cpw ? to_fixed(*cpw, 5) : std::string("-"));
}

struct CountsTable {
    CountsByYear src;
    CountsByYear xhtml;
};

/// Reads a counts TSV as written by `count`. When the chars column is `-`
/// the chars_per_word column is taken as the exact value.
inline CountsTable parse_counts(std::string_view text) {
    CountsTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || line.rfind("year\t", 0) == 0) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) f.push_back(field);
        auto where = "counts line " + std::to_string(line_no) + ": ";
        if (f.size() != 5) throw InputError(where + "expected year, format, words, chars, chars_per_word");
        FormatCounts c;
        int year = 0;
        try {
            year = std::stoi(f[0]);
            c.words = std::stoll(f[2]);
        } catch (const std::exception&) {
            throw InputError(where + "bad integer");
        }
        if (f[3] != "-" && c.words > 0) {
            c.chars_per_word = Rational(BigInt(std::stoll(f[3])), BigInt(c.words));
        } else if (f[4] != "-") {
            c.chars_per_word = parse_decimal(f[4]);
        }
        SourceFormat format = parse_source_format(f[1]);
        (format == SourceFormat::SRC ? table.src : table.xhtml)[year] = c;
    }
    return table;
}

/// Counts (year, format) pairs with up to `jobs` workers. Results come back
/// sorted by (year, format); failures are collected as messages.
inline std::vector<CountRow> count_pairs(const CorpusLayout& layout, const std::vector<LayoutEntry>& pairs,
                                         const ParseSettings& settings, unsigned jobs,
                                         std::vector<std::string>& failures) {
    RuleTable rules = settings.load_rules();
    TokenCounter counter = settings.make_counter(rules);
    jobs = std::max(1u, jobs);
    std::vector<std::optional<CountRow>> rows(pairs.size());
    std::vector<std::string> errors(pairs.size());
    unsigned member_jobs = std::max(1u, jobs / static_cast<unsigned>(std::max<std::size_t>(1, pairs.size())));
    auto work = [&](std::size_t i) {
        const auto& p = pairs[i];
        try {
            YearArchive archive = load_year(layout, p.year, p.format);
            CountOptions options{&rules, settings.include_appendix_titles, member_jobs};
            YearCount yc = p.format == SourceFormat::XHTML ? count_year_xhtml(archive, counter, options)
                                                           : count_year_src(archive, counter, options);
            rows[i] = CountRow{p.year, p.format, yc.total, yc.replacements, std::move(yc.diagnostics)};
        } catch (const std::exception& e) {
            errors[i] = fmt::format("{}\t{}\t{}", p.year, to_string(p.format), e.what());
        }
    };
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(pairs.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i) work(i);
    } else {
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < pairs.size(); i = next++) work(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    std::vector<CountRow> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (rows[i]) out.push_back(std::move(*rows[i]));
        if (!errors[i].empty()) failures.push_back(errors[i]);
    }
    return out;
}

struct CountArgs {
    std::filesystem::path root;
    std::optional<std::string> years;
    FormatFilter format = FormatFilter::Both;
    unsigned jobs = 1;
    ParseSettings settings;
    bool diagnostics = false;
};

inline int run_count(const CountArgs& args, std::ostream& out, std::ostream& err) {
    CorpusLayout layout;
    std::vector<LayoutEntry> selected;
    try {
        layout = discover_years(args.root);
        std::vector<int> years;
        if (args.years) {
            years = parse_years(*args.years);
        } else {
            for (const auto& e : layout.entries) years.push_back(e.year);
            years.erase(std::unique(years.begin(), years.end()), years.end());
        }
        std::vector<int> missing;
        for (int y : years) {
            bool any = false;
            for (const auto& e : layout.entries) {
                if (e.year != y) continue;
                bool wanted = args.format == FormatFilter::Both ||
                              (args.format == FormatFilter::Xhtml) == (e.format == SourceFormat::XHTML);
                if (wanted) {
                    selected.push_back(e);
                    any = true;
                }
            }
            if (!any) missing.push_back(y);
        }
        if (!missing.empty()) {
            std::string list;
            for (int y : missing) list += (list.empty() ? "" : ",") + std::to_string(y);
            err << "error: no such year in corpus for the requested format: " << list << '\n';
            return kLayoutError;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kLayoutError;
    }

    std::vector<std::string> failures;
    auto rows = count_pairs(layout, selected, args.settings, args.jobs, failures);
    out << counts_header() << '\n';
    for (const auto& r : rows) out << format_count_row(r.year, r.format, r.stats) << '\n';
    if (args.diagnostics) {
        for (const auto& r : rows) err << r.year << '\t' << to_string(r.format) << '\t' << r.replacements << '\n';
        for (const auto& r : rows) r.diagnostics.write(err);
    }
    if (!failures.empty()) {
        for (const auto& f : failures) err << "failed\t" << f << '\n';
        return kPartialFailure;
    }
    return kOk;
}

struct ReportArgs {
    std::optional<std::filesystem::path> root;
    std::optional<std::filesystem::path> counts;
    std::filesystem::path out_dir = ".";
    DivisorMode divisor = DivisorMode::Rounded;
    unsigned jobs = 1;
    ParseSettings settings;
    std::optional<std::filesystem::path> reference_file;
};

inline void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("cannot write " + path.string());
}

inline YearValues word_values(const CountsByYear& counts) {
    YearValues v;
    for (const auto& [year, c] : counts) v[year] = c.words;
    return v;
}

inline int run_report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
    if (args.root.has_value() == args.counts.has_value()) {
        err << "error: give exactly one of --root or --counts\n";
        return kLayoutError;
    }
    CountsTable table;
    std::string counts_text;
    if (args.counts) {
        try {
            counts_text = detail::slurp(*args.counts);
            table = parse_counts(counts_text);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return kLayoutError;
        }
    } else {
        CorpusLayout layout;
        try {
            layout = discover_years(*args.root);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return kLayoutError;
        }
        std::vector<std::string> failures;
        auto rows = count_pairs(layout, layout.entries, args.settings, args.jobs, failures);
        if (!failures.empty()) {
            for (const auto& f : failures) err << "failed\t" << f << '\n';
            return kPartialFailure;
        }
        counts_text = counts_header() + "\n";
        for (const auto& r : rows) {
            counts_text += format_count_row(r.year, r.format, r.stats) + "\n";
            auto cpw = r.stats.chars_per_word();
            FormatCounts c{static_cast<std::int64_t>(r.stats.words), cpw.value_or(Rational(0))};
            (r.format == SourceFormat::SRC ? table.src : table.xhtml)[r.year] = c;
        }
    }

    CalibrationFactor factor;
    try {
        factor = compute_multiplier(word_values(table.src), word_values(table.xhtml), args.divisor);
    } catch (const InputError& e) {
        err << "error: insufficient year coverage for calibration: " << e.what() << '\n';
        return kCalibrationCoverage;
    }

    try {
        std::vector<ReferenceCount> refs =
            args.reference_file ? load_reference_counts(*args.reference_file) : builtin_reference_counts();
        Consolidated c = consolidate(table.src, table.xhtml, factor);
        ValidationReport v = validate(word_values(table.src), word_values(table.xhtml), factor, c.report, refs);
        std::filesystem::create_directories(args.out_dir);
        write_file(args.out_dir / "results.tsv", emit_tsv(c.report));
        write_file(args.out_dir / "fig1.svg", emit_word_count_chart(c.report));
        write_file(args.out_dir / "fig2.svg", emit_chars_per_word_chart(c.report));
        write_file(args.out_dir / "validation.txt", emit_validation(v, c.report));
        if (args.root) write_file(args.out_dir / "counts.tsv", counts_text);
        out << "wrote " << c.report.rows.size() << " rows to " << (args.out_dir / "results.tsv").string() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kLayoutError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kLayoutError;
    }
    return kOk;
}

struct AuditArgs {
    std::filesystem::path root;
    int year = 0;
    std::optional<SourceFormat> format;
    std::string pattern;  // ECMAScript regex over "title:section"
    ParseSettings settings;
};

/// Prints every matching section's countable text with its counts, for
/// comparison against a manual count.
inline int run_audit(const AuditArgs& args, std::ostream& out, std::ostream& err) {
    YearArchive archive;
    RuleTable rules;
    std::regex pattern;
    try {
        CorpusLayout layout = discover_years(args.root);
        SourceFormat format = SourceFormat::XHTML;
        if (args.format) {
            format = *args.format;
        } else if (!layout.find(args.year, SourceFormat::XHTML)) {
            format = SourceFormat::SRC;
        }
        archive = load_year(layout, args.year, format);
        rules = args.settings.load_rules();
        pattern = std::regex(args.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        err << "error: bad pattern: " << e.what() << '\n';
        return kLayoutError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kLayoutError;
    }
    TokenCounter counter = args.settings.make_counter(rules);
    TokenCounter literal = args.settings.make_counter(rules, SeparatorCharge::LiteralRuns);
    std::size_t matched = 0;
    for (const auto& member : archive.files) {
        Diagnostics diags;
        DecodedText decoded = decode_text(member.read(), archive.format);
        std::vector<SectionText> sections =
            archive.format == SourceFormat::XHTML
                ? extract_sections(decoded.text, diags, XhtmlOptions{&rules, member.path})
                : extract_sections_src(decoded.text, diags, SrcOptions{&rules, member.path});
        for (const auto& s : sections) {
            std::string key = s.title_number + ":" + s.section_id;
            if (!std::regex_search(key, pattern)) continue;
            ++matched;
            TokenStats st = counter.count_text(s.countable_text);
            TokenStats lit = literal.count_text(s.countable_text);
            out << "== " << key << '\t' << member.path << '\n';
            out << "words\t" << st.words << "\tchars\t" << st.chars << "\tchars_literal_separators\t" << lit.chars
                << '\n';
            out << s.countable_text << "\n\n";
        }
    }
    if (matched == 0) {
        err << "no section matches '" << args.pattern << "'\n";
        return kNoMatch;
    }
    return kOk;
}

}  // namespace lexometer::cli

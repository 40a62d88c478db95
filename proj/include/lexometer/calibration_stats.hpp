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

// Splicing of the SRC (1991-1993) and XHTML (1994-2024) series, growth
// columns, and the cross-checks run against the consolidated numbers.
//
// All arithmetic is exact; rounding happens only when values are printed.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexometer/corpus_model.hpp"
#include "lexometer/errors.hpp"
#include "lexometer/rational.hpp"

namespace lexometer {

using YearValues = std::map<int, std::int64_t>;
using Series = std::vector<std::pair<int, Rational>>;
using GrowthSeries = std::vector<std::pair<int, std::optional<Rational>>>;

inline constexpr int kCalibrationYears[] = {1994, 1995, 1996};

/// The rounded multiplier used for the published 1991-1993 values.
inline Rational published_divisor() { return Rational(145, 100); }

enum class DivisorMode { Rounded, Exact };

struct CalibrationFactor {
    std::int64_t iso_sum_1994_96 = 0;
    std::int64_t htm_sum_1994_96 = 0;
    Rational exact_ratio;
    Rational applied_divisor;
};

inline CalibrationFactor compute_multiplier(const YearValues& src_counts, const YearValues& htm_counts,
                                            DivisorMode mode = DivisorMode::Rounded) {
    CalibrationFactor f;
    for (int year : kCalibrationYears) {
        auto s = src_counts.find(year);
        auto h = htm_counts.find(year);
        if (s == src_counts.end()) throw InputError("calibration needs SRC counts for " + std::to_string(year));
        if (h == htm_counts.end()) throw InputError("calibration needs XHTML counts for " + std::to_string(year));
        f.iso_sum_1994_96 += s->second;
        f.htm_sum_1994_96 += h->second;
    }
    if (f.htm_sum_1994_96 <= 0) throw InputError("XHTML calibration counts sum to zero");
    f.exact_ratio = Rational(f.iso_sum_1994_96, f.htm_sum_1994_96);
    f.applied_divisor = mode == DivisorMode::Rounded ? published_divisor() : f.exact_ratio;
    if (f.applied_divisor <= 1) throw InputError("calibration divisor must exceed 1, got " + to_fixed(f.applied_divisor, 5));
    return f;
}

/// Each raw count divided by the applied divisor, rounded half-up.
inline YearValues adjust_src_series(const YearValues& raw, const Rational& divisor) {
    if (divisor <= 0) throw InputError("divisor must be positive");
    YearValues out;
    for (const auto& [year, value] : raw) out[year] = round_to_integer(Rational(value) / divisor);
    return out;
}

inline YearValues adjust_src_series(const YearValues& raw, const CalibrationFactor& factor) {
    return adjust_src_series(raw, factor.applied_divisor);
}

namespace detail {

inline GrowthSeries growth(const Series& series, const Rational& scale) {
    if (series.empty()) throw InputError("growth needs at least one value");
    GrowthSeries out;
    out.reserve(series.size());
    out.emplace_back(series.front().first, std::nullopt);
    for (std::size_t i = 1; i < series.size(); ++i) {
        const auto& [prev_year, prev] = series[i - 1];
        const auto& [year, value] = series[i];
        if (year <= prev_year) throw InputError("series must be sorted by strictly increasing year");
        if (prev <= 0) throw DomainError("growth over nonpositive value in " + std::to_string(prev_year));
        out.emplace_back(year, (value / prev - 1) * scale);
    }
    return out;
}

}  // namespace detail

/// (v_y / v_{y-1} - 1) * 100; absent for the first year.
inline GrowthSeries growth_percent(const Series& series) { return detail::growth(series, Rational(100)); }

/// (v_y / v_{y-1} - 1) * 1000; absent for the first year.
inline GrowthSeries growth_permille(const Series& series) { return detail::growth(series, Rational(1000)); }

struct GrowthCount {
    int positive = 0;
    int total = 0;
    bool operator==(const GrowthCount&) const = default;
};

inline GrowthCount count_growth_years(const Series& series) {
    if (series.size() < 2) throw InputError("count_growth_years needs at least two values");
    GrowthCount c;
    c.total = static_cast<int>(series.size()) - 1;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].second > series[i - 1].second) ++c.positive;
    }
    return c;
}

/// Years whose value fell relative to the year before.
inline std::vector<int> negative_growth_years(const Series& series) {
    std::vector<int> out;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].second < series[i - 1].second) out.push_back(series[i].first);
    }
    return out;
}

inline constexpr int kCrossValidationYears[] = {2007, 2008, 2009};

/// Tolerance between the two extractors in the last ISO years.
inline Rational cross_validation_tolerance() { return Rational(31, 1000); }

/// Maximum deviation from the external reference counts.
inline Rational external_tolerance() { return Rational(185, 1000); }

struct RatioCheck {
    std::map<int, Rational> ratios;
    bool pass = false;
};

/// SRC / XHTML per year; passes when every ratio deviates from 1 by at most
/// 3.1%.
inline RatioCheck cross_validate(const YearValues& src, const YearValues& htm, const std::set<int>& years) {
    RatioCheck check;
    check.pass = true;
    for (int year : years) {
        auto s = src.find(year);
        auto h = htm.find(year);
        if (s == src.end() || h == htm.end()) throw InputError("cross validation lacks counts for " + std::to_string(year));
        if (h->second <= 0) throw DomainError("zero XHTML count in " + std::to_string(year));
        Rational r(s->second, h->second);
        check.ratios[year] = r;
        if (abs(r - 1) > cross_validation_tolerance()) check.pass = false;
    }
    return check;
}

struct ReferenceCount {
    int aligned_year;        // edition year the measurement is compared with
    std::int64_t words;
    std::string dated;       // when the reference measurement was taken
};

/// Published whole-Code word counts, each aligned to the edition year before
/// its measurement date.
inline std::vector<ReferenceCount> builtin_reference_counts() {
    return {
        {2007, 22823405, "2008, October"},
        {2008, 23919248, "2009, November"},
        {2009, 24224985, "2010, March"},
    };
}

inline YearValues reference_values(const std::vector<ReferenceCount>& refs) {
    YearValues out;
    for (const auto& r : refs) out[r.aligned_year] = r.words;
    return out;
}

/// Reads `aligned_year<TAB>word_count` lines; `#` comments allowed.
inline std::vector<ReferenceCount> load_reference_counts(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open reference data " + path.string());
    std::vector<ReferenceCount> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        try {
            if (tab == std::string::npos) throw std::invalid_argument("no tab");
            std::size_t used = 0;
            int year = std::stoi(line.substr(0, tab), &used);
            if (used != tab) throw std::invalid_argument("year");
            std::string count = line.substr(tab + 1);
            long long words = std::stoll(count, &used);
            if (used != count.size() || words < 0) throw std::invalid_argument("count");
            out.push_back({year, words, ""});
        } catch (const std::exception&) {
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected aligned_year<TAB>word_count");
        }
    }
    return out;
}

/// reference / XHTML per year present in both; passes when every ratio
/// deviates from 1 by less than 18.5%.
inline RatioCheck compare_external(const YearValues& htm, const YearValues& reference) {
    RatioCheck check;
    check.pass = true;
    for (const auto& [year, ref] : reference) {
        auto h = htm.find(year);
        if (h == htm.end()) continue;
        if (h->second <= 0) throw DomainError("zero XHTML count in " + std::to_string(year));
        Rational r(ref, h->second);
        check.ratios[year] = r;
        if (abs(r - 1) >= external_tolerance()) check.pass = false;
    }
    if (check.ratios.empty()) check.pass = false;
    return check;
}

/// Bounds on average letters per word: between 1.01 and 1.5 characters of
/// every word are separator or attached punctuation.
inline std::pair<Rational, Rational> letters_per_word_interval(const Rational& chars_per_word) {
    if (chars_per_word <= Rational(3, 2)) throw InputError("chars_per_word must exceed 1.5");
    return {chars_per_word - Rational(3, 2), chars_per_word - Rational(101, 100)};
}

struct Consolidated {
    std::vector<YearMetrics> metrics;
    SeriesReport report;
};

/// One row per year: SRC-derived (adjusted) values for years before the
/// XHTML editions, XHTML values from 1994 on.
inline Consolidated consolidate(const CountsByYear& src, const CountsByYear& htm, const CalibrationFactor& factor) {
    std::map<int, YearMetrics> by_year;
    for (const auto& [year, c] : htm) {
        if (!year_in_span(SourceFormat::XHTML, year)) throw InputError("XHTML counts for " + std::to_string(year) + " are out of span");
        auto& m = by_year[year];
        m.year = year;
        m.raw_word_count[SourceFormat::XHTML] = c.words;
        m.raw_chars_per_word[SourceFormat::XHTML] = c.chars_per_word;
        m.adjusted_word_count = c.words;
        m.chosen_chars_per_word = c.chars_per_word;
    }
    for (const auto& [year, c] : src) {
        if (!year_in_span(SourceFormat::SRC, year)) throw InputError("SRC counts for " + std::to_string(year) + " are out of span");
        if (year >= kFirstXhtmlYear && !by_year.count(year)) continue;  // overlap years are XHTML-led
        auto& m = by_year[year];
        m.year = year;
        m.raw_word_count[SourceFormat::SRC] = c.words;
        m.raw_chars_per_word[SourceFormat::SRC] = c.chars_per_word;
        if (year < kFirstXhtmlYear) {
            m.adjusted_word_count = round_to_integer(Rational(c.words) / factor.applied_divisor);
            m.chosen_chars_per_word = c.chars_per_word;
        }
    }
    if (by_year.empty()) throw InputError("nothing to consolidate");

    Consolidated out;
    Series words;
    Series cpw;
    int expected = by_year.begin()->first;
    for (auto& [year, m] : by_year) {
        if (year != expected) throw InputError("year coverage has a gap before " + std::to_string(year));
        ++expected;
        words.emplace_back(year, Rational(m.adjusted_word_count));
        cpw.emplace_back(year, m.chosen_chars_per_word);
        out.metrics.push_back(std::move(m));
    }
    auto gw = growth_percent(words);
    auto gc = growth_permille(cpw);
    for (std::size_t i = 0; i < out.metrics.size(); ++i) {
        const auto& m = out.metrics[i];
        out.report.rows.push_back({m.year, m.adjusted_word_count, m.chosen_chars_per_word, gw[i].second, gc[i].second});
    }
    return out;
}

inline Series word_series(const SeriesReport& report) {
    Series s;
    for (const auto& r : report.rows) s.emplace_back(r.year, Rational(r.word_count));
    return s;
}

inline Series chars_per_word_series(const SeriesReport& report) {
    Series s;
    for (const auto& r : report.rows) s.emplace_back(r.year, r.chars_per_word);
    return s;
}

/// Everything the validation report shows. Pass flags are computed here and
/// nowhere else.
struct ValidationReport {
    CalibrationFactor factor;
    bool multiplier_rounds_to_published = false;
    std::map<int, Rational> cross_ratios;   // every year with both formats
    std::optional<RatioCheck> cross_check;  // 2007-2009, when all present
    RatioCheck external;
    std::vector<ReferenceCount> references;
    std::optional<GrowthCount> word_growth;
    std::optional<GrowthCount> chars_growth;
    std::vector<int> negative_word_growth_years;
};

inline ValidationReport validate(const YearValues& src, const YearValues& htm, const CalibrationFactor& factor,
                                 const SeriesReport& report, const std::vector<ReferenceCount>& references) {
    ValidationReport v;
    v.factor = factor;
    v.multiplier_rounds_to_published = round_to(factor.exact_ratio, 2) == published_divisor();
    std::set<int> overlap;
    for (const auto& [year, words] : src) {
        if (htm.count(year)) overlap.insert(year);
    }
    if (!overlap.empty()) v.cross_ratios = cross_validate(src, htm, overlap).ratios;
    std::set<int> late;
    for (int y : kCrossValidationYears) {
        if (overlap.count(y)) late.insert(y);
    }
    if (late.size() == std::size(kCrossValidationYears)) v.cross_check = cross_validate(src, htm, late);
    v.references = references;
    v.external = compare_external(htm, reference_values(references));
    if (report.rows.size() >= 2) {
        v.word_growth = count_growth_years(word_series(report));
        v.chars_growth = count_growth_years(chars_per_word_series(report));
        v.negative_word_growth_years = negative_growth_years(word_series(report));
    }
    return v;
}

}  // namespace lexometer

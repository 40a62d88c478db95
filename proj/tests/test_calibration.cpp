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


#include <gtest/gtest.h>

#include "lexometer/calibration_stats.hpp"
#include "support/table3.hpp"
#include "support/tempdir.hpp"

namespace lexometer {
namespace {

using testing::kLateYears;
using testing::kPublishedSeries;
using testing::kRawSrcEarlyYears;

Series published_words() {
    Series s;
    for (const auto& r : kPublishedSeries) s.emplace_back(r.year, Rational(r.words));
    return s;
}

Series published_cpw() {
    Series s;
    for (const auto& r : kPublishedSeries) s.emplace_back(r.year, parse_decimal(r.chars_per_word));
    return s;
}

TEST(Calibration, ConstructedExactRatio) {
    YearValues src{{1994, 145}, {1995, 290}, {1996, 435}};
    YearValues htm{{1994, 100}, {1995, 200}, {1996, 300}};
    CalibrationFactor f = compute_multiplier(src, htm, DivisorMode::Exact);
    EXPECT_EQ(f.exact_ratio, Rational(145, 100));
    EXPECT_EQ(f.applied_divisor, Rational(145, 100));
    EXPECT_EQ(f.iso_sum_1994_96, 870);
    EXPECT_EQ(f.htm_sum_1994_96, 600);
}

TEST(Calibration, RoundedModeAppliesPublishedDivisor) {
    YearValues src{{1994, 1460}, {1995, 1460}, {1996, 1460}};
    YearValues htm{{1994, 1000}, {1995, 1000}, {1996, 1000}};
    CalibrationFactor f = compute_multiplier(src, htm);
    EXPECT_EQ(f.exact_ratio, Rational(146, 100));
    EXPECT_EQ(f.applied_divisor, Rational(145, 100));
}

TEST(Calibration, MissingYearIsInputError) {
    YearValues src{{1994, 1}, {1996, 1}};
    YearValues htm{{1994, 1}, {1995, 1}, {1996, 1}};
    EXPECT_THROW(compute_multiplier(src, htm), InputError);
    EXPECT_THROW(compute_multiplier(htm, src), InputError);
}

TEST(Calibration, ExactDivisorMustExceedOne) {
    YearValues same{{1994, 5}, {1995, 5}, {1996, 5}};
    EXPECT_THROW(compute_multiplier(same, same, DivisorMode::Exact), InputError);
}

TEST(Calibration, AdjustSeries) {
    YearValues raw;
    for (auto [y, v] : kRawSrcEarlyYears) raw[y] = v;
    YearValues adj = adjust_src_series(raw, Rational(145, 100));
    EXPECT_EQ(adj.at(1991), 18447706);
    EXPECT_EQ(adj.at(1992), 17048645);
    EXPECT_EQ(adj.at(1993), 15053688);
    EXPECT_EQ(adjust_src_series({{1991, 12345}}, Rational(1)).at(1991), 12345);
    EXPECT_EQ(adjust_src_series({{1991, 1450}}, Rational(145, 100)).at(1991), 1000);
}

TEST(Calibration, AdjustedEarlyYearsMatchPublishedRows) {
    // Brute-force check of the raw values: v/1.45 lands in [published - 0.5, published + 0.5).
    for (std::size_t i = 0; i < kRawSrcEarlyYears.size(); ++i) {
        auto [year, raw] = kRawSrcEarlyYears[i];
        std::int64_t published = kPublishedSeries[i].words;
        EXPECT_EQ(kPublishedSeries[i].year, year);
        EXPECT_GE(raw * 200, (2 * published - 1) * 145);
        EXPECT_LT(raw * 200, (2 * published + 1) * 145);
    }
}

TEST(Growth, PublishedExamples) {
    auto g = growth_percent({{1991, Rational(18447706)}, {1992, Rational(17048645)}});
    EXPECT_FALSE(g[0].second.has_value());
    EXPECT_EQ(to_fixed(*g[1].second, 2), "-7.58");
    EXPECT_EQ(to_fixed(*growth_percent({{2007, Rational(19519644)}, {2008, Rational(20188975)}})[1].second, 2), "3.43");
    EXPECT_EQ(to_fixed(*growth_permille({{1, parse_decimal("6.09994")}, {2, parse_decimal("6.11779")}})[1].second, 2),
              "2.93");
    EXPECT_EQ(to_fixed(*growth_permille({{1, parse_decimal("6.26076")}, {2, parse_decimal("6.26367")}})[1].second, 2),
              "0.46");
}

TEST(Growth, ConstantSeriesIsZero) {
    auto g = growth_percent({{1, Rational(5)}, {2, Rational(5)}, {3, Rational(5)}});
    EXPECT_EQ(*g[1].second, 0);
    EXPECT_EQ(*g[2].second, 0);
    EXPECT_EQ(to_fixed(*growth_permille({{1, Rational(7)}, {2, Rational(7)}})[1].second, 2), "0.00");
}

TEST(Growth, Preconditions) {
    EXPECT_THROW(growth_percent({}), InputError);
    EXPECT_THROW(growth_percent({{2, Rational(1)}, {1, Rational(2)}}), InputError);
    EXPECT_THROW(growth_percent({{1, Rational(0)}, {2, Rational(2)}}), DomainError);
    EXPECT_EQ(growth_percent({{1, Rational(3)}}).size(), 1u);
}

TEST(Growth, WordColumnOfPublishedSeries) {
    auto g = growth_percent(published_words());
    for (std::size_t i = 1; i < kPublishedSeries.size(); ++i) {
        EXPECT_EQ(to_fixed(*g[i].second, 2), kPublishedSeries[i].growth_word_pct) << kPublishedSeries[i].year;
    }
}

TEST(Growth, CharsColumnOfPublishedSeriesFromRoundedInputs) {
    // The printed chars/word inputs carry 5 decimals; 1998 and 2014 do not
    // reproduce from them and are checked against their input intervals
    // in the acceptance suite.
    auto g = growth_permille(published_cpw());
    int mismatches = 0;
    for (std::size_t i = 1; i < kPublishedSeries.size(); ++i) {
        const auto& r = kPublishedSeries[i];
        std::string got = to_fixed(*g[i].second, 2);
        if (r.year == 1998 || r.year == 2014) {
            ++mismatches;
            EXPECT_NE(got, r.growth_chars_permille) << r.year;
        } else {
            EXPECT_EQ(got, r.growth_chars_permille) << r.year;
        }
    }
    EXPECT_EQ(mismatches, 2);
}

TEST(GrowthCount, PublishedSeries) {
    EXPECT_EQ(count_growth_years(published_words()), (GrowthCount{30, 33}));
    EXPECT_EQ(count_growth_years(published_cpw()), (GrowthCount{33, 33}));
    EXPECT_EQ(negative_growth_years(published_words()), (std::vector<int>{1992, 1993, 2015}));
    EXPECT_TRUE(negative_growth_years(published_cpw()).empty());
}

TEST(GrowthCount, Trivial) {
    EXPECT_EQ(count_growth_years({{1, Rational(3)}, {2, Rational(2)}, {3, Rational(1)}}), (GrowthCount{0, 2}));
    EXPECT_THROW(count_growth_years({{1, Rational(3)}}), InputError);
}

TEST(CrossValidate, PublishedLateYears) {
    YearValues src, htm;
    for (const auto& r : kLateYears) {
        src[r.year] = r.src;
        htm[r.year] = r.xhtml;
    }
    RatioCheck c = cross_validate(src, htm, {2007, 2008, 2009});
    for (const auto& r : kLateYears) EXPECT_EQ(to_fixed(c.ratios.at(r.year) * 100, 3) + "%", r.cross_pct);
    EXPECT_TRUE(c.pass);
}

TEST(CrossValidate, EqualCountsPass) {
    RatioCheck c = cross_validate({{2007, 10}}, {{2007, 10}}, {2007});
    EXPECT_EQ(c.ratios.at(2007), 1);
    EXPECT_TRUE(c.pass);
}

TEST(CrossValidate, BandEdges) {
    EXPECT_TRUE(cross_validate({{1, 1031}}, {{1, 1000}}, {1}).pass);
    EXPECT_FALSE(cross_validate({{1, 1032}}, {{1, 1000}}, {1}).pass);
    EXPECT_TRUE(cross_validate({{1, 969}}, {{1, 1000}}, {1}).pass);
    EXPECT_FALSE(cross_validate({{1, 968}}, {{1, 1000}}, {1}).pass);
    EXPECT_THROW(cross_validate({{1, 1}}, {}, {1}), InputError);
}

TEST(CompareExternal, PublishedReferences) {
    YearValues htm;
    for (const auto& r : kLateYears) htm[r.year] = r.xhtml;
    RatioCheck c = compare_external(htm, reference_values(builtin_reference_counts()));
    ASSERT_EQ(c.ratios.size(), 3u);
    for (const auto& r : kLateYears) {
        EXPECT_EQ(to_fixed(c.ratios.at(r.year) * 100, 3) + "%", r.external_pct);
        EXPECT_EQ(reference_values(builtin_reference_counts()).at(r.year), r.reference);
    }
    EXPECT_TRUE(c.pass);
}

TEST(CompareExternal, IdenticalAndDisjointMaps) {
    YearValues m{{2007, 5}, {2008, 6}};
    RatioCheck same = compare_external(m, m);
    for (const auto& [y, r] : same.ratios) EXPECT_EQ(r, 1);
    EXPECT_TRUE(same.pass);
    EXPECT_FALSE(compare_external(m, {{1999, 5}}).pass);
    EXPECT_FALSE(compare_external({{1, 1000}}, {{1, 1185}}).pass);
    EXPECT_TRUE(compare_external({{1, 1000}}, {{1, 1184}}).pass);
}

TEST(References, LoadFromFile) {
    testing::TempDir dir;
    testing::write_bytes(dir / "ref.tsv", "# aligned year, words\n2010\t100\r\n2011\t200\n");
    auto refs = load_reference_counts(dir / "ref.tsv");
    ASSERT_EQ(refs.size(), 2u);
    EXPECT_EQ(refs[1].aligned_year, 2011);
    EXPECT_EQ(refs[1].words, 200);
    testing::write_bytes(dir / "bad.tsv", "2010 100\n");
    EXPECT_THROW(load_reference_counts(dir / "bad.tsv"), InputError);
    EXPECT_THROW(load_reference_counts(dir / "none.tsv"), IoError);
}

TEST(LettersPerWord, Interval) {
    auto [lo, hi] = letters_per_word_interval(parse_decimal("6.35444"));
    EXPECT_EQ(lo, parse_decimal("4.85444"));
    EXPECT_EQ(hi, parse_decimal("5.34444"));
    auto [lo2, hi2] = letters_per_word_interval(parse_decimal("2.51"));
    EXPECT_EQ(lo2, parse_decimal("1.01"));
    EXPECT_EQ(hi2, parse_decimal("1.50"));
    EXPECT_THROW(letters_per_word_interval(parse_decimal("1.4")), InputError);
}

CountsByYear counts(std::initializer_list<std::tuple<int, std::int64_t, const char*>> rows) {
    CountsByYear c;
    for (auto [y, w, cpw] : rows) c[y] = FormatCounts{w, parse_decimal(cpw)};
    return c;
}

TEST(Consolidate, SpliceAndAdjust) {
    CountsByYear src = counts({{1991, 1450, "6.0"}, {1992, 2900, "6.1"}, {1993, 2900, "6.2"},
                               {1994, 4000, "5.0"}, {1995, 4000, "5.0"}, {1996, 4000, "5.0"}});
    CountsByYear htm = counts({{1994, 3000, "6.3"}, {1995, 3300, "6.3"}, {1996, 3300, "6.4"}});
    CalibrationFactor f = compute_multiplier({{1994, 4000}, {1995, 4000}, {1996, 4000}},
                                             {{1994, 3000}, {1995, 3300}, {1996, 3300}});
    Consolidated c = consolidate(src, htm, f);
    ASSERT_EQ(c.report.rows.size(), 6u);
    const auto& r = c.report.rows;
    EXPECT_EQ(r[0].word_count, 1000);
    EXPECT_EQ(r[1].word_count, 2000);
    EXPECT_EQ(r[2].word_count, 2000);
    EXPECT_EQ(r[3].word_count, 3000);
    EXPECT_EQ(r[0].chars_per_word, parse_decimal("6.0"));
    EXPECT_EQ(r[3].chars_per_word, parse_decimal("6.3"));
    EXPECT_FALSE(r[0].growth_word_percent.has_value());
    EXPECT_EQ(*r[1].growth_word_percent, 100);
    EXPECT_EQ(*r[2].growth_word_percent, 0);
    EXPECT_EQ(*r[3].growth_word_percent, 50);
    EXPECT_EQ(*r[4].growth_word_percent, 10);
    EXPECT_EQ(*r[5].growth_chars_permille, (parse_decimal("6.4") / parse_decimal("6.3") - 1) * 1000);
    EXPECT_EQ(c.metrics[3].raw_word_count.at(SourceFormat::SRC), 4000);
}

TEST(Consolidate, SingleYearHasNoGrowth) {
    Consolidated c = consolidate({}, counts({{2018, 10, "6.0"}}), CalibrationFactor{0, 0, 1, Rational(145, 100)});
    ASSERT_EQ(c.report.rows.size(), 1u);
    EXPECT_FALSE(c.report.rows[0].growth_word_percent.has_value());
    EXPECT_FALSE(c.report.rows[0].growth_chars_permille.has_value());
}

TEST(Consolidate, GapsAndEmptyInputAreErrors) {
    CalibrationFactor f{0, 0, 1, Rational(145, 100)};
    EXPECT_THROW(consolidate({}, counts({{2018, 10, "6.0"}, {2020, 10, "6.0"}}), f), InputError);
    EXPECT_THROW(consolidate({}, {}, f), InputError);
    EXPECT_THROW(consolidate(counts({{2012, 10, "6"}}), {}, f), InputError);
}

TEST(Validate, ReportsEverything) {
    YearValues src{{1994, 1450}, {1995, 1450}, {1996, 1450}};
    YearValues htm{{1994, 1000}, {1995, 1000}, {1996, 1000}};
    for (const auto& r : kLateYears) {
        src[r.year] = r.src;
        htm[r.year] = r.xhtml;
    }
    CalibrationFactor f = compute_multiplier(src, htm);
    SeriesReport report;
    report.rows = {{1994, 10, Rational(6), {}, {}}, {1995, 9, Rational(7), {}, {}}};
    ValidationReport v = validate(src, htm, f, report, builtin_reference_counts());
    EXPECT_TRUE(v.multiplier_rounds_to_published);
    ASSERT_TRUE(v.cross_check.has_value());
    EXPECT_TRUE(v.cross_check->pass);
    EXPECT_EQ(v.cross_ratios.size(), 6u);
    EXPECT_TRUE(v.external.pass);
    EXPECT_EQ(v.word_growth, (GrowthCount{0, 1}));
    EXPECT_EQ(v.negative_word_growth_years, std::vector<int>{1995});
}

}  // namespace
}  // namespace lexometer

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


#include <sstream>
#include <string>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "lexometer/commands.hpp"
#include "support/fixture_corpus.hpp"
#include "support/table3.hpp"

namespace lexometer::cli {
namespace {

using lexometer::testing::FixtureCorpusOptions;
using lexometer::testing::kPublishedSeries;
using lexometer::testing::kRawSrcEarlyYears;
using lexometer::testing::read_bytes;
using lexometer::testing::TempDir;
using lexometer::testing::write_bytes;
using lexometer::testing::write_fixture_corpus;

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

TEST(ParseYears, Forms) {
    EXPECT_EQ(parse_years("2018"), std::vector<int>{2018});
    EXPECT_EQ(parse_years("1995,1994"), (std::vector<int>{1994, 1995}));
    EXPECT_EQ(parse_years("1994-1996"), (std::vector<int>{1994, 1995, 1996}));
    EXPECT_EQ(parse_years("1991-1992, 2018,1992"), (std::vector<int>{1991, 1992, 2018}));
    EXPECT_THROW(parse_years("abc"), InputError);
    EXPECT_THROW(parse_years("1996-1994"), InputError);
}

TEST(CountCommand, UnknownYearExitsTwo) {
    TempDir dir;
    write_fixture_corpus(dir.path());
    CountArgs args;
    args.root = dir.path();
    args.years = "1990";
    std::ostringstream out, err;
    EXPECT_EQ(run_count(args, out, err), kLayoutError);
    EXPECT_NE(err.str().find("1990"), std::string::npos);
}

TEST(CountCommand, MissingRootExitsTwo) {
    TempDir dir;
    CountArgs args;
    args.root = dir / "absent";
    std::ostringstream out, err;
    EXPECT_EQ(run_count(args, out, err), kLayoutError);
}

TEST(CountCommand, BothFormatsGiveSixRows) {
    TempDir dir;
    write_fixture_corpus(dir.path());
    CountArgs args;
    args.root = dir.path();
    args.years = "1994-1996";
    std::ostringstream out, err;
    ASSERT_EQ(run_count(args, out, err), kOk) << err.str();
    auto l = lines(out.str());
    ASSERT_EQ(l.size(), 7u);
    EXPECT_EQ(l[0], counts_header());
    EXPECT_EQ(l[1].substr(0, 11), "1994\txhtml\t");
    EXPECT_EQ(l[2].substr(0, 9), "1994\tsrc\t");
    EXPECT_EQ(l[6].substr(0, 9), "1996\tsrc\t");
}

TEST(CountCommand, FormatFilterAndDiagnostics) {
    TempDir dir;
    write_fixture_corpus(dir.path());
    CountArgs args;
    args.root = dir.path();
    args.years = "1994";
    args.format = FormatFilter::Xhtml;
    args.diagnostics = true;
    std::ostringstream out, err;
    ASSERT_EQ(run_count(args, out, err), kOk);
    EXPECT_EQ(lines(out.str()).size(), 2u);
    EXPECT_NE(err.str().find("1994\txhtml\t0"), std::string::npos);
    EXPECT_NE(err.str().find("readme.txt"), std::string::npos);
}

TEST(CountCommand, SrcOnlyYearWithXhtmlFilterIsMissing) {
    TempDir dir;
    write_fixture_corpus(dir.path());
    CountArgs args;
    args.root = dir.path();
    args.years = "1991";
    args.format = FormatFilter::Xhtml;
    std::ostringstream out, err;
    EXPECT_EQ(run_count(args, out, err), kLayoutError);
}

TEST(CountCommand, CorruptArchiveIsPartialFailure) {
    TempDir dir;
    write_fixture_corpus(dir.path());
    std::string zip = read_bytes(dir / "1995.zip");
    zip[60] ^= 0x55;
    write_bytes(dir / "1995.zip", zip);
    CountArgs args;
    args.root = dir.path();
    args.years = "1994-1995";
    args.format = FormatFilter::Xhtml;
    std::ostringstream out, err;
    EXPECT_EQ(run_count(args, out, err), kPartialFailure);
    EXPECT_EQ(lines(out.str()).size(), 2u);
    EXPECT_NE(err.str().find("failed\t1995\txhtml"), std::string::npos);
}

TEST(CountCommand, MatchesLibraryTotals) {
    TempDir dir;
    write_fixture_corpus(dir.path());
    CountArgs args;
    args.root = dir.path();
    args.years = "1994";
    args.format = FormatFilter::Xhtml;
    std::ostringstream out, err;
    ASSERT_EQ(run_count(args, out, err), kOk);
    YearCount direct = count_year_xhtml(load_year(discover_years(dir.path()), 1994, SourceFormat::XHTML),
                                        TokenCounter{});
    EXPECT_EQ(lines(out.str())[1], format_count_row(1994, SourceFormat::XHTML, direct.total));
    EXPECT_GT(direct.total.words, 100u);
}

TEST(CountsFile, ParsesBothChartsForms) {
    CountsTable t = parse_counts(
        "year\tformat\twords\tchars\tchars_per_word\n"
        "# comment\n"
        "1991\tsrc\t10\t-\t6.09994\n"
        "1994\txhtml\t4\t10\t2.50000\n");
    EXPECT_EQ(t.src.at(1991).words, 10);
    EXPECT_EQ(t.src.at(1991).chars_per_word, parse_decimal("6.09994"));
    EXPECT_EQ(t.xhtml.at(1994).chars_per_word, Rational(10, 4));
    EXPECT_THROW(parse_counts("1991\tsrc\t10\n"), InputError);
    EXPECT_THROW(parse_counts("1991\tpdf\t10\t-\t1\n"), InputError);
}

std::string published_counts_file() {
    std::string s = counts_header() + "\n";
    for (std::size_t i = 0; i < kRawSrcEarlyYears.size(); ++i) {
        s += fmt::format("{}\tsrc\t{}\t-\t{}\n", kRawSrcEarlyYears[i].first, kRawSrcEarlyYears[i].second,
                         kPublishedSeries[i].chars_per_word);
    }
    for (const auto& r : kPublishedSeries) {
        if (r.year >= 1994) s += fmt::format("{}\txhtml\t{}\t-\t{}\n", r.year, r.words, r.chars_per_word);
        if (r.year >= 1994 && r.year <= 1996) s += fmt::format("{}\tsrc\t{}\t-\t6.1\n", r.year, r.words * 145 / 100);
    }
    return s;
}

TEST(ReportCommand, PublishedCountsReproduceTheSeries) {
    TempDir dir;
    write_bytes(dir / "counts.tsv", published_counts_file());
    ReportArgs args;
    args.counts = dir / "counts.tsv";
    args.out_dir = dir / "out";
    std::ostringstream out, err;
    ASSERT_EQ(run_report(args, out, err), kOk) << err.str();
    SeriesReport got = parse_tsv(read_bytes(dir / "out" / "results.tsv"));
    ASSERT_EQ(got.rows.size(), kPublishedSeries.size());
    for (std::size_t i = 0; i < got.rows.size(); ++i) {
        const auto& p = kPublishedSeries[i];
        const auto& r = got.rows[i];
        EXPECT_EQ(r.year, p.year);
        EXPECT_EQ(r.word_count, p.words) << p.year;
        EXPECT_EQ(to_fixed(r.chars_per_word, 5), p.chars_per_word) << p.year;
        if (i == 0) continue;
        EXPECT_EQ(to_fixed(*r.growth_word_percent, 2), p.growth_word_pct) << p.year;
        if (p.year != 1998 && p.year != 2014) {
            EXPECT_EQ(to_fixed(*r.growth_chars_permille, 2), p.growth_chars_permille) << p.year;
        }
    }
    for (const char* f : {"fig1.svg", "fig2.svg", "validation.txt"}) EXPECT_TRUE(std::filesystem::exists(dir / "out" / f));
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / "counts.tsv"));
}

TEST(ReportCommand, MissingCalibrationYearExitsFour) {
    TempDir dir;
    std::string counts = published_counts_file();
    auto pos = counts.find("1995\tsrc");
    counts.erase(pos, counts.find('\n', pos) + 1 - pos);
    write_bytes(dir / "counts.tsv", counts);
    ReportArgs args;
    args.counts = dir / "counts.tsv";
    args.out_dir = dir / "out";
    std::ostringstream out, err;
    EXPECT_EQ(run_report(args, out, err), kCalibrationCoverage);
    EXPECT_NE(err.str().find("1995"), std::string::npos);
}

TEST(ReportCommand, NeedsExactlyOneInput) {
    ReportArgs args;
    std::ostringstream out, err;
    EXPECT_EQ(run_report(args, out, err), kLayoutError);
}

TEST(ReportCommand, FullCorpusRunWritesEveryArtifact) {
    TempDir dir;
    write_fixture_corpus(dir / "corpus");
    ReportArgs args;
    args.root = dir / "corpus";
    args.out_dir = dir / "out";
    std::ostringstream out, err;
    ASSERT_EQ(run_report(args, out, err), kOk) << err.str();
    for (const char* f : {"results.tsv", "fig1.svg", "fig2.svg", "validation.txt", "counts.tsv"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / "out" / f)) << f;
    }
    SeriesReport r = parse_tsv(read_bytes(dir / "out" / "results.tsv"));
    ASSERT_EQ(r.rows.size(), 6u);
    EXPECT_EQ(r.rows.front().year, 1991);
    // The report's counts file feeds back into an identical report.
    ReportArgs again;
    again.counts = dir / "out" / "counts.tsv";
    again.out_dir = dir / "again";
    ASSERT_EQ(run_report(again, out, err), kOk) << err.str();
    EXPECT_EQ(read_bytes(dir / "again" / "results.tsv"), read_bytes(dir / "out" / "results.tsv"));
    EXPECT_EQ(read_bytes(dir / "again" / "fig1.svg"), read_bytes(dir / "out" / "fig1.svg"));
}

TEST(ReportCommand, ExactDivisorChangesEarlyYearsOnly) {
    TempDir dir;
    write_fixture_corpus(dir / "corpus");
    ReportArgs a;
    a.root = dir / "corpus";
    a.out_dir = dir / "rounded";
    ReportArgs b = a;
    b.out_dir = dir / "exact";
    b.divisor = DivisorMode::Exact;
    std::ostringstream out, err;
    ASSERT_EQ(run_report(a, out, err), kOk);
    ASSERT_EQ(run_report(b, out, err), kOk);
    auto ra = parse_tsv(read_bytes(dir / "rounded" / "results.tsv"));
    auto rb = parse_tsv(read_bytes(dir / "exact" / "results.tsv"));
    for (std::size_t i = 0; i < ra.rows.size(); ++i) {
        if (ra.rows[i].year >= 1994) {
            EXPECT_EQ(ra.rows[i].word_count, rb.rows[i].word_count);
        }
    }
}

TEST(ReportCommand, JobsDoNotChangeOutputBytes) {
    TempDir dir;
    FixtureCorpusOptions o;
    o.src_years = {1991, 1992, 1993, 1994, 1995, 1996, 2007, 2008, 2009};
    o.xhtml_years = {1994, 1995, 1996, 1997, 1998, 1999, 2000, 2001, 2002, 2003, 2004, 2005, 2006, 2007, 2008, 2009};
    o.titles = 5;
    write_fixture_corpus(dir / "corpus", o);
    ReportArgs one;
    one.root = dir / "corpus";
    one.out_dir = dir / "j1";
    one.jobs = 1;
    ReportArgs eight = one;
    eight.out_dir = dir / "j8";
    eight.jobs = 8;
    std::ostringstream out, err;
    ASSERT_EQ(run_report(one, out, err), kOk) << err.str();
    ASSERT_EQ(run_report(eight, out, err), kOk) << err.str();
    for (const char* f : {"results.tsv", "fig1.svg", "fig2.svg", "validation.txt", "counts.tsv"}) {
        EXPECT_EQ(read_bytes(dir / "j1" / f), read_bytes(dir / "j8" / f)) << f;
    }
}

TEST(AuditCommand, PrintsSectionWithHandCount) {
    TempDir dir;
    write_bytes(dir / "USC1993" / "USC1993.SRC",
                "TITLE 7\x97" "AGRICULTURE\n"
                "-HEAD-\nSec. 12. Short  title\n-STATUTE-\nThis Act\x97may be cited.\n"
                "-SOURCE-\n(Pub. L. 1-2, 3 Stat. 4.)\n");
    AuditArgs args;
    args.root = dir.path();
    args.year = 1993;
    args.pattern = "^7:12$";
    std::ostringstream out, err;
    ASSERT_EQ(run_audit(args, out, err), kOk) << err.str();
    // "Sec. 12. Short title This Act—may be cited." -> 9 words,
    // letters 4+3+5+5+4+3+3+2+6 = 35, plus 9 separators.
    EXPECT_NE(out.str().find("== 7:12\tUSC1993.SRC"), std::string::npos);
    EXPECT_NE(out.str().find("words\t9\tchars\t44\t"), std::string::npos);
    EXPECT_NE(out.str().find("Sec. 12. Short title This Act\xE2\x80\x94may be cited."), std::string::npos);
}

TEST(AuditCommand, NoMatchExitsOne) {
    TempDir dir;
    write_fixture_corpus(dir.path());
    AuditArgs args;
    args.root = dir.path();
    args.year = 1994;
    args.pattern = "^99:";
    std::ostringstream out, err;
    EXPECT_EQ(run_audit(args, out, err), kNoMatch);
}

TEST(AuditCommand, RuleOverrideIsReflected) {
    TempDir dir;
    write_fixture_corpus(dir / "corpus");
    write_bytes(dir / "rules.tsv", "class:^statutory-body$\tNote\n");
    AuditArgs args;
    args.root = dir / "corpus";
    args.year = 1994;
    args.pattern = "^1:1$";
    std::ostringstream plain, err;
    ASSERT_EQ(run_audit(args, plain, err), kOk);
    args.settings.rules_file = dir / "rules.tsv";
    std::ostringstream overridden;
    ASSERT_EQ(run_audit(args, overridden, err), kOk);
    EXPECT_LT(overridden.str().size(), plain.str().size());
    EXPECT_NE(overridden.str().find("words\t7\t"), std::string::npos);
}

}  // namespace
}  // namespace lexometer::cli

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

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "lexometer/calibration_stats.hpp"
#include "lexometer/corpus_model.hpp"
#include "lexometer/errors.hpp"
#include "lexometer/rational.hpp"

namespace lexometer {

inline constexpr std::string_view kTsvHeader = "Year\tWordCount\tCharsPerWord\tGrowthWordPct\tGrowthCharsPermille";

inline std::string emit_tsv(const SeriesReport& report, RoundingMode mode = RoundingMode::HalfUp) {
    std::string out(kTsvHeader);
    out += '\n';
    auto growth = [&](const std::optional<Rational>& g) { return g ? to_fixed(*g, 2, mode) : std::string("-"); };
    for (const auto& r : report.rows) {
        out += std::to_string(r.year);
        out += '\t';
        out += std::to_string(r.word_count);
        out += '\t';
        out += to_fixed(r.chars_per_word, 5, mode);
        out += '\t';
        out += growth(r.growth_word_percent);
        out += '\t';
        out += growth(r.growth_chars_permille);
        out += '\n';
    }
    return out;
}

/// Inverse of emit_tsv. Decimal fields are read exactly, so values come back
/// at the precision they were printed with.
inline SeriesReport parse_tsv(std::string_view text) {
    SeriesReport report;
    std::size_t pos = 0;
    bool header = true;
    int line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (header) {
            if (line != kTsvHeader) throw InputError("results TSV: unexpected header");
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::size_t s = 0;
        while (true) {
            auto tab = line.find('\t', s);
            f.push_back(line.substr(s, tab == std::string_view::npos ? std::string_view::npos : tab - s));
            if (tab == std::string_view::npos) break;
            s = tab + 1;
        }
        if (f.size() != 5) throw InputError("results TSV line " + std::to_string(line_no) + ": expected 5 fields");
        SeriesRow row;
        try {
            row.year = std::stoi(std::string(f[0]));
            row.word_count = std::stoll(std::string(f[1]));
        } catch (const std::exception&) {
            throw InputError("results TSV line " + std::to_string(line_no) + ": bad integer");
        }
        row.chars_per_word = parse_decimal(f[2]);
        if (f[3] != "-") row.growth_word_percent = parse_decimal(f[3]);
        if (f[4] != "-") row.growth_chars_permille = parse_decimal(f[4]);
        report.rows.push_back(std::move(row));
    }
    if (header) throw InputError("results TSV: missing header");
    return report;
}

// ---------------------------------------------------------------------------
// SVG line charts

enum class ColorRole { Src, Xhtml };

inline std::string_view color_of(ColorRole role) { return role == ColorRole::Src ? "blue" : "black"; }

struct ChartGroup {
    std::string label;
    ColorRole role = ColorRole::Xhtml;
    std::vector<std::pair<int, double>> points;  // (year, value), sorted by year
};

struct ChartGeometry {
    int width = 960;
    int height = 540;
    int margin_top = 60;
    int margin_right = 20;
    int margin_bottom = 40;
    int margin_left = 70;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string coord(double v) {
    std::string s = fmt::format("{:.2f}", v);
    if (s == "-0.00") s = "0.00";
    return s;
}

inline std::string with_thousands(long long v) {
    std::string digits = std::to_string(v < 0 ? -v : v);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i && (digits.size() - i) % 3 == 0) out += ',';
        out += digits[i];
    }
    return v < 0 ? "-" + out : out;
}

struct Ticks {
    double lo;
    double hi;
    double step;
    int decimals;
};

inline Ticks nice_ticks(double min, double max, int target = 5) {
    if (!(max > min)) {
        double pad = min == 0 ? 1.0 : std::abs(min) * 0.05;
        min -= pad;
        max += pad;
    }
    double raw = (max - min) / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double norm = raw / mag;
    double step = (norm < 1.5 ? 1 : norm < 3 ? 2 : norm < 7 ? 5 : 10) * mag;
    int decimals = std::max(0, -static_cast<int>(std::floor(std::log10(step) + 1e-9)));
    return {std::floor(min / step + 1e-9) * step, std::ceil(max / step - 1e-9) * step, step, decimals};
}

}  // namespace detail

/// Standalone SVG 1.1 line chart with one x tick per year. A dashed
/// connector links the last SRC point to the first XHTML point when the SRC
/// series precedes it.
inline std::string emit_svg_chart(const std::vector<ChartGroup>& groups, std::string_view title,
                                  std::string_view y_axis, const ChartGeometry& g = {}) {
    if (groups.empty()) throw InputError("chart needs at least one series group");
    int first_year = 0, last_year = 0;
    double vmin = 0, vmax = 0;
    bool any = false;
    bool integral = true;
    for (const auto& grp : groups) {
        if (grp.points.empty()) throw InputError("chart group '" + grp.label + "' has no points");
        for (const auto& [year, value] : grp.points) {
            if (!any) {
                first_year = last_year = year;
                vmin = vmax = value;
                any = true;
            }
            first_year = std::min(first_year, year);
            last_year = std::max(last_year, year);
            vmin = std::min(vmin, value);
            vmax = std::max(vmax, value);
            if (value != std::floor(value)) integral = false;
        }
    }
    const double left = g.margin_left;
    const double top = g.margin_top;
    const double plot_w = g.width - g.margin_left - g.margin_right;
    const double plot_h = g.height - g.margin_top - g.margin_bottom;
    const double bottom = top + plot_h;
    auto ticks = detail::nice_ticks(vmin, vmax);
    auto x_of = [&](int year) {
        if (last_year == first_year) return left + plot_w / 2;
        return left + plot_w * (year - first_year) / static_cast<double>(last_year - first_year);
    };
    auto y_of = [&](double v) { return bottom - plot_h * (v - ticks.lo) / (ticks.hi - ticks.lo); };
    auto label_of = [&](double v) {
        if (integral && ticks.decimals == 0) return detail::with_thousands(std::llround(v));
        return fmt::format("{:.{}f}", v, ticks.decimals);
    };
    using detail::coord;

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    s += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\">\n",
        g.width, g.height);
    s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", g.width, g.height);
    s += fmt::format("<text x=\"{}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
                     coord(g.width / 2.0), detail::xml_escape(title));
    s += fmt::format(
        "<text x=\"14\" y=\"{0}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 {0})\">{1}</text>\n",
        coord(top + plot_h / 2), detail::xml_escape(y_axis));

    // Value grid and ticks.
    s += "<g class=\"y-axis\" font-size=\"10\" text-anchor=\"end\">\n";
    int n_ticks = static_cast<int>(std::lround((ticks.hi - ticks.lo) / ticks.step));
    for (int i = 0; i <= n_ticks; ++i) {
        double v = ticks.lo + i * ticks.step;
        double y = y_of(v);
        s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\"/>\n", coord(left), coord(y),
                         coord(left + plot_w), coord(y));
        s += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", coord(left - 4), coord(y + 3), label_of(v));
    }
    s += "</g>\n";

    // One tick per year.
    s += "<g class=\"x-axis\" font-size=\"9\" text-anchor=\"end\">\n";
    for (int year = first_year; year <= last_year; ++year) {
        double x = x_of(year);
        s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", coord(x),
                         coord(bottom), coord(bottom + 4));
        s += fmt::format("<text x=\"{0}\" y=\"{1}\" transform=\"rotate(-45 {0} {1})\">{2}</text>\n", coord(x + 3),
                         coord(bottom + 12), year);
    }
    s += "</g>\n";
    s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", coord(left),
                     coord(bottom), coord(left + plot_w));
    s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", coord(left),
                     coord(top), coord(bottom));

    // Splice connectors.
    for (const auto& a : groups) {
        for (const auto& b : groups) {
            if (a.role != ColorRole::Src || b.role != ColorRole::Xhtml) continue;
            if (a.points.back().first >= b.points.front().first) continue;
            s += fmt::format(
                "<line class=\"splice\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#666666\" "
                "stroke-width=\"1.5\" stroke-dasharray=\"5 4\"/>\n",
                coord(x_of(a.points.back().first)), coord(y_of(a.points.back().second)),
                coord(x_of(b.points.front().first)), coord(y_of(b.points.front().second)));
        }
    }

    for (const auto& grp : groups) {
        std::string_view color = color_of(grp.role);
        s += fmt::format("<g class=\"series\" data-label=\"{}\">\n", detail::xml_escape(grp.label));
        if (grp.points.size() >= 2) {
            s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"", color);
            for (std::size_t k = 0; k < grp.points.size(); ++k) {
                if (k) s += ' ';
                s += coord(x_of(grp.points[k].first)) + "," + coord(y_of(grp.points[k].second));
            }
            s += "\"/>\n";
        }
        for (const auto& [year, value] : grp.points) {
            s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{}\"/>\n", coord(x_of(year)),
                             coord(y_of(value)), color);
        }
        s += "</g>\n";
    }

    // Legend.
    double lx = left + plot_w - 150;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        double ly = 40 + 14.0 * i - 14.0 * (groups.size() - 1);
        s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                         coord(lx), coord(ly), coord(lx + 18), coord(ly), color_of(groups[i].role));
        s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n", coord(lx + 24), coord(ly + 4),
                         detail::xml_escape(groups[i].label));
    }
    s += "</svg>\n";
    return s;
}

/// SRC-derived rows (before the first XHTML edition) in blue, the rest in
/// black.
inline std::vector<ChartGroup> chart_groups(const SeriesReport& report, bool chars_per_word) {
    ChartGroup src{"from ISO (SRC)", ColorRole::Src, {}};
    ChartGroup htm{"from HTM (XHTML)", ColorRole::Xhtml, {}};
    for (const auto& r : report.rows) {
        double v = chars_per_word ? r.chars_per_word.convert_to<double>() : static_cast<double>(r.word_count);
        (r.year < kFirstXhtmlYear ? src : htm).points.emplace_back(r.year, v);
    }
    std::vector<ChartGroup> groups;
    if (!src.points.empty()) groups.push_back(std::move(src));
    if (!htm.points.empty()) groups.push_back(std::move(htm));
    return groups;
}

inline std::string emit_word_count_chart(const SeriesReport& report) {
    return emit_svg_chart(chart_groups(report, false), "Word count by year", "Words");
}

inline std::string emit_chars_per_word_chart(const SeriesReport& report) {
    return emit_svg_chart(chart_groups(report, true), "Characters per word by year", "Characters per word");
}

// ---------------------------------------------------------------------------
// Validation report

inline std::string format_percent(const Rational& ratio) { return to_fixed(ratio * 100, 3) + "%"; }

inline std::string emit_validation(const ValidationReport& v, const SeriesReport& report) {
    auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
    std::string s;
    s += "# calibration multiplier (SRC / XHTML words, 1994-1996)\n";
    s += fmt::format("src_sum_1994_1996\t{}\n", v.factor.iso_sum_1994_96);
    s += fmt::format("xhtml_sum_1994_1996\t{}\n", v.factor.htm_sum_1994_96);
    s += fmt::format("exact_ratio\t{}\n", to_fixed(v.factor.exact_ratio, 5));
    s += fmt::format("exact_ratio_2dp\t{}\t{} (expected 1.45)\n", to_fixed(v.factor.exact_ratio, 2),
                     verdict(v.multiplier_rounds_to_published));
    s += fmt::format("applied_divisor\t{}\n", to_fixed(v.factor.applied_divisor, 5));
    s += "\n# cross validation (SRC / XHTML words)\n";
    for (const auto& [year, r] : v.cross_ratios) s += fmt::format("{}\t{}\n", year, format_percent(r));
    if (v.cross_check) {
        s += fmt::format("within_3.1%_2007_2009\t{}\n", verdict(v.cross_check->pass));
    } else {
        s += "within_3.1%_2007_2009\tnot available (needs both formats for 2007-2009)\n";
    }
    s += "\n# external reference (reference words / XHTML words)\n";
    for (const auto& ref : v.references) {
        auto it = v.external.ratios.find(ref.aligned_year);
        s += fmt::format("{}\t{}\t{}\t{}\n", ref.aligned_year, ref.words, ref.dated.empty() ? "-" : ref.dated,
                         it == v.external.ratios.end() ? std::string("n/a") : format_percent(it->second));
    }
    if (v.external.ratios.empty()) {
        s += "within_18.5%\tnot available (no overlapping years)\n";
    } else {
        s += fmt::format("within_18.5%\t{}\n", verdict(v.external.pass));
    }
    s += "\n# growth\n";
    if (v.word_growth) {
        s += fmt::format("word_count_grew\t{}/{}\n", v.word_growth->positive, v.word_growth->total);
        s += fmt::format("chars_per_word_grew\t{}/{}\n", v.chars_growth->positive, v.chars_growth->total);
        std::string years;
        for (int y : v.negative_word_growth_years) years += (years.empty() ? "" : ",") + std::to_string(y);
        s += fmt::format("negative_word_growth_years\t{}\n", years.empty() ? "-" : years);
    }
    if (!report.rows.empty()) {
        const auto& last = report.rows.back();
        if (last.chars_per_word > Rational(3, 2)) {
            auto [lo, hi] = letters_per_word_interval(last.chars_per_word);
            s += fmt::format("letters_per_word_{}\t{}\t{}\n", last.year, to_fixed(lo, 5), to_fixed(hi, 5));
        }
    }
    return s;
}

}  // namespace lexometer

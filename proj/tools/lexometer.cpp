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

#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "lexometer/commands.hpp"

namespace {

void add_parse_options(CLI::App* cmd, lexometer::cli::ParseSettings& settings, std::string& separators,
                       bool& no_appendix) {
    cmd->add_option("--rules", settings.rules_file, "Classification rules file (default: $LEXOMETER_RULES)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--separators-extra", separators, "Extra word separators, e.g. U+2013,U+2012");
    cmd->add_flag("--no-appendix", no_appendix, "Leave out appendix titles such as 5a");
}

void finish_parse_options(lexometer::cli::ParseSettings& settings, const std::string& separators,
                          bool no_appendix) {
    if (!separators.empty()) settings.separators_extra = lexometer::parse_code_point_list(separators);
    settings.include_appendix_titles = !no_appendix;
}

}  // namespace

int main(int argc, char** argv) {
    namespace cli = lexometer::cli;
    CLI::App app{"Word and character counts for annual code releases"};
    app.require_subcommand(1);
    unsigned default_jobs = std::max(1u, std::thread::hardware_concurrency());

    cli::CountArgs count;
    count.jobs = default_jobs;
    std::string count_format = "both";
    std::string count_seps;
    bool count_no_app = false;
    auto* count_cmd = app.add_subcommand("count", "Count words and characters per year and format");
    count_cmd->add_option("--root", count.root, "Corpus root directory")->required();
    count_cmd->add_option("--years", count.years, "Years: 2018, 1994,1995, 1991-1996");
    count_cmd->add_option("--format", count_format, "xhtml, src or both")
        ->check(CLI::IsMember({"xhtml", "src", "both"}));
    count_cmd->add_option("--jobs,-j", count.jobs, "Worker threads")->check(CLI::PositiveNumber);
    count_cmd->add_flag("--diagnostics", count.diagnostics, "Print decoding and parse diagnostics to stderr");
    add_parse_options(count_cmd, count.settings, count_seps, count_no_app);

    cli::ReportArgs report;
    report.jobs = default_jobs;
    std::string divisor = "1.45";
    std::string report_seps;
    bool report_no_app = false;
    auto* report_cmd = app.add_subcommand("report", "Build the series, charts and validation report");
    auto* root_opt = report_cmd->add_option("--root", report.root, "Corpus root directory");
    auto* counts_opt = report_cmd->add_option("--counts", report.counts, "Counts TSV written by `count`")
                           ->check(CLI::ExistingFile);
    root_opt->excludes(counts_opt);
    report_cmd->add_option("--out", report.out_dir, "Output directory");
    report_cmd->add_option("--divisor", divisor, "1.45 or exact")->check(CLI::IsMember({"1.45", "exact"}));
    report_cmd->add_option("--reference", report.reference_file, "Reference counts TSV")
        ->check(CLI::ExistingFile);
    report_cmd->add_option("--jobs,-j", report.jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_parse_options(report_cmd, report.settings, report_seps, report_no_app);

    cli::AuditArgs audit;
    std::string audit_format;
    std::string audit_seps;
    bool audit_no_app = false;
    auto* audit_cmd = app.add_subcommand("audit", "Print the countable text of matching sections");
    audit_cmd->add_option("--root", audit.root, "Corpus root directory")->required();
    audit_cmd->add_option("--year", audit.year, "Year")->required();
    audit_cmd->add_option("--format", audit_format, "xhtml or src")->check(CLI::IsMember({"xhtml", "src"}));
    audit_cmd->add_option("--section", audit.pattern, "Regex over title:section, e.g. ^42:1983$")->required();
    add_parse_options(audit_cmd, audit.settings, audit_seps, audit_no_app);

    CLI11_PARSE(app, argc, argv);

    try {
        if (count_cmd->parsed()) {
            count.format = cli::parse_format_filter(count_format);
            finish_parse_options(count.settings, count_seps, count_no_app);
            return cli::run_count(count, std::cout, std::cerr);
        }
        if (report_cmd->parsed()) {
            report.divisor = divisor == "exact" ? lexometer::DivisorMode::Exact : lexometer::DivisorMode::Rounded;
            finish_parse_options(report.settings, report_seps, report_no_app);
            return cli::run_report(report, std::cout, std::cerr);
        }
        if (!audit_format.empty()) audit.format = lexometer::parse_source_format(audit_format);
        finish_parse_options(audit.settings, audit_seps, audit_no_app);
        return cli::run_audit(audit, std::cout, std::cerr);
    } catch (const lexometer::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kLayoutError;
    }
}

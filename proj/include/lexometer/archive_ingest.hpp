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

// Corpus root convention:
//
//   <root>/<year>.zip            annual XHTML archive (1994-2024)
//   <root>/USC<year>/...*.SRC    extracted ISO payload (1991-2009)
//   <root>/USC<year>.SRC         same, as a bare file

#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "lexometer/corpus_model.hpp"
#include "lexometer/encoding.hpp"
#include "lexometer/errors.hpp"
#include "lexometer/zip_reader.hpp"

namespace lexometer {

struct LayoutEntry {
    int year = 0;
    SourceFormat format = SourceFormat::XHTML;
    std::filesystem::path container;

    bool operator==(const LayoutEntry&) const = default;
};

struct CorpusLayout {
    std::filesystem::path root;
    std::vector<LayoutEntry> entries;  // sorted by (year, format), unique

    const LayoutEntry* find(int year, SourceFormat format) const {
        for (const auto& e : entries) {
            if (e.year == year && e.format == format) return &e;
        }
        return nullptr;
    }
    bool has_year(int year) const {
        return std::any_of(entries.begin(), entries.end(), [&](const LayoutEntry& e) { return e.year == year; });
    }
};

namespace detail {

inline bool iends_with(std::string_view s, std::string_view suffix) {
    if (s.size() < suffix.size()) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[s.size() - suffix.size() + i])) !=
            std::tolower(static_cast<unsigned char>(suffix[i]))) {
            return false;
        }
    }
    return true;
}

inline bool istarts_with(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) {
            return false;
        }
    }
    return true;
}

inline std::optional<int> four_digit_year(std::string_view s) {
    if (s.size() != 4) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

inline bool is_src_name(std::string_view name) { return iends_with(name, ".src"); }

inline bool is_candidate_document(std::string_view name) {
    return iends_with(name, ".htm") || iends_with(name, ".html");
}

inline std::vector<std::filesystem::path> src_files_under(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> found;
    std::error_code ec;
    for (std::filesystem::recursive_directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
        if (it->is_regular_file(ec) && is_src_name(it->path().filename().string())) found.push_back(it->path());
    }
    if (ec) throw IoError("cannot read " + dir.string() + ": " + ec.message());
    return found;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

/// Finds every year container directly under `root`. Containers whose year
/// lies outside the format's published span are not recognized.
inline CorpusLayout discover_years(const std::filesystem::path& root) {
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec)) throw IoError("corpus root is not a readable directory: " + root.string());
    CorpusLayout layout;
    layout.root = root;
    std::filesystem::directory_iterator it(root, ec);
    if (ec) throw IoError("cannot read " + root.string() + ": " + ec.message());
    for (const auto& entry : it) {
        std::string name = entry.path().filename().string();
        std::optional<LayoutEntry> found;
        if (entry.is_regular_file() && detail::iends_with(name, ".zip")) {
            if (auto y = detail::four_digit_year(std::string_view(name).substr(0, name.size() - 4))) {
                found = LayoutEntry{*y, SourceFormat::XHTML, entry.path()};
            }
        } else if (detail::istarts_with(name, "USC")) {
            std::string_view rest = std::string_view(name).substr(3);
            if (entry.is_directory()) {
                auto y = detail::four_digit_year(rest);
                if (y && !detail::src_files_under(entry.path()).empty()) {
                    found = LayoutEntry{*y, SourceFormat::SRC, entry.path()};
                }
            } else if (entry.is_regular_file() && detail::is_src_name(rest)) {
                if (auto y = detail::four_digit_year(rest.substr(0, rest.size() - 4))) {
                    found = LayoutEntry{*y, SourceFormat::SRC, entry.path()};
                }
            }
        }
        if (!found || !year_in_span(found->format, found->year)) continue;
        if (const auto* dup = layout.find(found->year, found->format)) {
            throw LayoutConflictError("both " + dup->container.filename().string() + " and " + name + " claim " +
                                      std::to_string(found->year) + "/" + std::string(to_string(found->format)));
        }
        layout.entries.push_back(std::move(*found));
    }
    std::sort(layout.entries.begin(), layout.entries.end(), [](const LayoutEntry& a, const LayoutEntry& b) {
        return std::tie(a.year, a.format) < std::tie(b.year, b.format);
    });
    return layout;
}

/// Builds a YearArchive over an already-indexed ZIP.
inline YearArchive archive_from_zip(int year, SourceFormat format, std::shared_ptr<const ZipFile> zip) {
    YearArchive archive{year, format, {}, {}};
    for (std::size_t i = 0; i < zip->entries().size(); ++i) {
        const auto& e = zip->entries()[i];
        if (e.is_directory()) continue;
        bool candidate = format == SourceFormat::XHTML ? detail::is_candidate_document(e.name)
                                                       : detail::is_src_name(e.name);
        if (!candidate) {
            archive.ignored.push_back(e.name);
            continue;
        }
        archive.files.push_back({e.name, e.uncompressed_size, [zip, i] { return zip->read(zip->entries()[i]); }});
    }
    std::sort(archive.files.begin(), archive.files.end(),
              [](const ArchiveMember& a, const ArchiveMember& b) { return a.path < b.path; });
    std::sort(archive.ignored.begin(), archive.ignored.end());
    return archive;
}

inline YearArchive load_year(const CorpusLayout& layout, int year, SourceFormat format) {
    const LayoutEntry* entry = layout.find(year, format);
    if (!entry) {
        throw NotFoundError("no " + std::string(to_string(format)) + " container for " + std::to_string(year));
    }
    if (format == SourceFormat::XHTML) return archive_from_zip(year, format, ZipFile::open(entry->container));

    YearArchive archive{year, format, {}, {}};
    std::vector<std::filesystem::path> files;
    std::filesystem::path base;
    if (std::filesystem::is_directory(entry->container)) {
        files = detail::src_files_under(entry->container);
        base = entry->container;
    } else {
        files.push_back(entry->container);
        base = entry->container.parent_path();
    }
    for (const auto& f : files) {
        std::error_code ec;
        auto size = std::filesystem::file_size(f, ec);
        if (ec) throw IoError("cannot stat " + f.string());
        archive.files.push_back({std::filesystem::relative(f, base).generic_string(), size,
                                 [f] { return detail::slurp(f); }});
    }
    std::sort(archive.files.begin(), archive.files.end(),
              [](const ArchiveMember& a, const ArchiveMember& b) { return a.path < b.path; });
    return archive;
}

/// Test and tooling helper: an archive whose members live in memory.
inline YearArchive in_memory_archive(int year, SourceFormat format,
                                     std::vector<std::pair<std::string, std::string>> members) {
    YearArchive archive{year, format, {}, {}};
    for (auto& [path, bytes] : members) {
        auto shared = std::make_shared<const std::string>(std::move(bytes));
        archive.files.push_back({path, shared->size(), [shared] { return *shared; }});
    }
    std::sort(archive.files.begin(), archive.files.end(),
              [](const ArchiveMember& a, const ArchiveMember& b) { return a.path < b.path; });
    return archive;
}

}  // namespace lexometer

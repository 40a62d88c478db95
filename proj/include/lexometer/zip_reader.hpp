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

// Minimal read-only ZIP support: central directory (with ZIP64 records),
// stored and deflated members, CRC and size verification. Reads are
// positional, so one ZipFile may serve several threads.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "lexometer/errors.hpp"

namespace lexometer {

struct ZipEntry {
    std::string name;
    std::uint16_t flags = 0;
    std::uint16_t method = 0;
    std::uint32_t crc32 = 0;
    std::uint64_t compressed_size = 0;
    std::uint64_t uncompressed_size = 0;
    std::uint64_t local_header_offset = 0;

    bool is_directory() const { return !name.empty() && name.back() == '/'; }
};

class ZipFile {
public:
    static std::shared_ptr<const ZipFile> open(const std::filesystem::path& path) {
        std::error_code ec;
        auto size = std::filesystem::file_size(path, ec);
        if (ec) throw IoError("cannot stat " + path.string() + ": " + ec.message());
        std::shared_ptr<ZipFile> zip(new ZipFile());
        zip->path_ = path;
        zip->size_ = size;
        zip->index();
        return zip;
    }

    static std::shared_ptr<const ZipFile> from_bytes(std::string bytes, std::string label = "<memory>") {
        std::shared_ptr<ZipFile> zip(new ZipFile());
        zip->buffer_ = std::make_shared<const std::string>(std::move(bytes));
        zip->size_ = zip->buffer_->size();
        zip->path_ = label;
        zip->index();
        return zip;
    }

    const std::vector<ZipEntry>& entries() const noexcept { return entries_; }
    const std::filesystem::path& path() const noexcept { return path_; }

    /// Decompressed contents of one member; verifies length and CRC-32.
    std::string read(const ZipEntry& entry) const {
        std::string local = read_range(entry.local_header_offset, 30, entry.name);
        if (le32(local, 0) != 0x04034b50) throw ArchiveError(entry.name, "bad local header signature");
        std::uint64_t data_offset = entry.local_header_offset + 30 + le16(local, 26) + le16(local, 28);
        if (entry.flags & 0x1) throw ArchiveError(entry.name, "encrypted members are not supported");
        std::string compressed = read_range(data_offset, entry.compressed_size, entry.name);
        std::string out;
        if (entry.method == 0) {
            out = std::move(compressed);
        } else if (entry.method == 8) {
            out = inflate_raw(compressed, entry);
        } else {
            throw ArchiveError(entry.name, "unsupported compression method " + std::to_string(entry.method));
        }
        if (out.size() != entry.uncompressed_size) throw ArchiveError(entry.name, "size mismatch");
        auto crc = ::crc32(0L, reinterpret_cast<const Bytef*>(out.data()), 0);
        std::size_t done = 0;
        while (done < out.size()) {
            auto chunk = static_cast<uInt>(std::min<std::size_t>(out.size() - done, 1u << 30));
            crc = ::crc32(crc, reinterpret_cast<const Bytef*>(out.data() + done), chunk);
            done += chunk;
        }
        if (crc != entry.crc32) throw ArchiveError(entry.name, "CRC mismatch");
        return out;
    }

private:
    ZipFile() = default;

    static std::uint16_t le16(std::string_view b, std::size_t at) {
        return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                          (static_cast<unsigned char>(b[at + 1]) << 8));
    }
    static std::uint32_t le32(std::string_view b, std::size_t at) {
        return static_cast<std::uint32_t>(le16(b, at)) | (static_cast<std::uint32_t>(le16(b, at + 2)) << 16);
    }
    static std::uint64_t le64(std::string_view b, std::size_t at) {
        return static_cast<std::uint64_t>(le32(b, at)) | (static_cast<std::uint64_t>(le32(b, at + 4)) << 32);
    }

    std::string read_range(std::uint64_t offset, std::uint64_t length, const std::string& member) const {
        if (offset > size_ || length > size_ - offset) throw ArchiveError(member, "truncated archive");
        if (buffer_) return buffer_->substr(offset, length);
        std::ifstream in(path_, std::ios::binary);
        if (!in) throw IoError("cannot open " + path_.string());
        in.seekg(static_cast<std::streamoff>(offset));
        std::string out(length, '\0');
        in.read(out.data(), static_cast<std::streamsize>(length));
        if (static_cast<std::uint64_t>(in.gcount()) != length) throw ArchiveError(member, "short read");
        return out;
    }

    void index() {
        std::uint64_t tail_len = std::min<std::uint64_t>(size_, 65535 + 22);
        std::string tail = read_range(size_ - tail_len, tail_len, "");
        std::size_t eocd = std::string::npos;
        for (std::size_t i = tail.size() >= 22 ? tail.size() - 22 + 1 : 0; i-- > 0;) {
            if (le32(tail, i) == 0x06054b50) {
                eocd = i;
                break;
            }
        }
        if (eocd == std::string::npos) throw ArchiveError("", path_.string() + ": no end of central directory record");
        std::uint64_t count = le16(tail, eocd + 10);
        std::uint64_t cd_size = le32(tail, eocd + 12);
        std::uint64_t cd_offset = le32(tail, eocd + 16);
        if (count == 0xFFFF || cd_size == 0xFFFFFFFF || cd_offset == 0xFFFFFFFF) {
            std::uint64_t eocd_abs = size_ - tail_len + eocd;
            if (eocd_abs < 20) throw ArchiveError("", "missing ZIP64 locator");
            std::string locator = read_range(eocd_abs - 20, 20, "");
            if (le32(locator, 0) != 0x07064b50) throw ArchiveError("", "missing ZIP64 locator");
            std::string rec = read_range(le64(locator, 8), 56, "");
            if (le32(rec, 0) != 0x06064b50) throw ArchiveError("", "bad ZIP64 end record");
            count = le64(rec, 32);
            cd_size = le64(rec, 40);
            cd_offset = le64(rec, 48);
        }
        std::string cd = read_range(cd_offset, cd_size, "");
        std::size_t p = 0;
        for (std::uint64_t n = 0; n < count; ++n) {
            if (p + 46 > cd.size() || le32(cd, p) != 0x02014b50) {
                throw ArchiveError("", "corrupt central directory at entry " + std::to_string(n));
            }
            ZipEntry e;
            e.flags = le16(cd, p + 8);
            e.method = le16(cd, p + 10);
            e.crc32 = le32(cd, p + 16);
            e.compressed_size = le32(cd, p + 20);
            e.uncompressed_size = le32(cd, p + 24);
            std::size_t name_len = le16(cd, p + 28);
            std::size_t extra_len = le16(cd, p + 30);
            std::size_t comment_len = le16(cd, p + 32);
            e.local_header_offset = le32(cd, p + 42);
            if (p + 46 + name_len + extra_len + comment_len > cd.size()) {
                throw ArchiveError("", "corrupt central directory at entry " + std::to_string(n));
            }
            e.name = cd.substr(p + 46, name_len);
            std::string_view extra(cd.data() + p + 46 + name_len, extra_len);
            apply_zip64_extra(e, extra);
            entries_.push_back(std::move(e));
            p += 46 + name_len + extra_len + comment_len;
        }
    }

    static void apply_zip64_extra(ZipEntry& e, std::string_view extra) {
        std::size_t q = 0;
        while (q + 4 <= extra.size()) {
            std::uint16_t id = le16(extra, q);
            std::uint16_t len = le16(extra, q + 2);
            if (q + 4 + len > extra.size()) break;
            if (id == 0x0001) {
                std::size_t f = q + 4;
                auto take = [&](std::uint64_t& field) {
                    if (field == 0xFFFFFFFF && f + 8 <= q + 4 + len) {
                        field = le64(extra, f);
                        f += 8;
                    }
                };
                take(e.uncompressed_size);
                take(e.compressed_size);
                take(e.local_header_offset);
            }
            q += 4 + len;
        }
    }

    static std::string inflate_raw(const std::string& in, const ZipEntry& entry) {
        z_stream zs{};
        if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw ArchiveError(entry.name, "inflateInit failed");
        std::string out(entry.uncompressed_size, '\0');
        zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
        zs.avail_in = static_cast<uInt>(in.size());
        zs.next_out = reinterpret_cast<Bytef*>(out.data());
        zs.avail_out = static_cast<uInt>(out.size());
        int rc = Z_OK;
        // Members larger than 4 GiB are not expected in the corpus.
        if (in.size() > 0xFFFFFFFFu || out.size() > 0xFFFFFFFFu) {
            inflateEnd(&zs);
            throw ArchiveError(entry.name, "member too large");
        }
        rc = inflate(&zs, Z_FINISH);
        std::uint64_t produced = zs.total_out;
        inflateEnd(&zs);
        if (rc != Z_STREAM_END) {
            throw ArchiveError(entry.name, rc == Z_BUF_ERROR ? "size mismatch" : "corrupt deflate stream");
        }
        out.resize(produced);
        return out;
    }

    std::filesystem::path path_;
    std::uint64_t size_ = 0;
    std::shared_ptr<const std::string> buffer_;
    std::vector<ZipEntry> entries_;
};

}  // namespace lexometer

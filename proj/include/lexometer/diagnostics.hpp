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

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace lexometer {

struct Diagnostic {
    std::string member;
    std::uint64_t offset = 0;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

/// Append-only sink. One per worker; merged in a fixed order afterwards.
class Diagnostics {
public:
    void add(std::string member, std::uint64_t offset, std::string message) {
        items_.push_back({std::move(member), offset, std::move(message)});
    }
    void append(const Diagnostics& other) {
        items_.insert(items_.end(), other.items_.begin(), other.items_.end());
    }
    const std::vector<Diagnostic>& items() const noexcept { return items_; }
    bool empty() const noexcept { return items_.empty(); }
    std::size_t size() const noexcept { return items_.size(); }

    /// `member<TAB>byte-offset<TAB>message` lines.
    void write(std::ostream& out) const {
        for (const auto& d : items_) out << d.member << '\t' << d.offset << '\t' << d.message << '\n';
    }

private:
    std::vector<Diagnostic> items_;
};

}  // namespace lexometer

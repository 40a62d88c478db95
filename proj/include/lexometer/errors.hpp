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

#include <stdexcept>
#include <string>

namespace lexometer {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Two containers claim the same (year, format) slot.
class LayoutConflictError : public Error {
public:
    using Error::Error;
};

/// Corrupt or unsupported ZIP data. `member()` is empty for container-level
/// damage (missing end-of-central-directory and the like).
class ArchiveError : public Error {
public:
    ArchiveError(std::string member, const std::string& what)
        : Error(member.empty() ? what : member + ": " + what), member_(std::move(member)) {}
    const std::string& member() const noexcept { return member_; }

private:
    std::string member_;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

/// A precondition on caller-provided data failed.
class InputError : public Error {
public:
    using Error::Error;
};

/// Arithmetic outside its domain (growth over a nonpositive predecessor).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace lexometer

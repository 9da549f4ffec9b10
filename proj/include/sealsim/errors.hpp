// Copyright 2026 The sealsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sealsim {

/// Caller passed arguments outside an operation's domain (bad index, nu
/// outside [0, 1], mismatched dimensions, ...).
class UsageError : public std::invalid_argument {
  public:
    explicit UsageError(const std::string &what) : std::invalid_argument(what) {}
};

/// Input data violates a numeric invariant (non-normalized state or row,
/// malformed lambda file, angle out of range).
class ValidationError : public std::domain_error {
  public:
    explicit ValidationError(const std::string &what) : std::domain_error(what) {}
};

/// Requested dimension exceeds the configured dense cap.
class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace sealsim

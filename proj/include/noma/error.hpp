// noma-sim: system-level simulator for large-scale power-domain NOMA
// Copyright (C) 2026 The noma-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace noma
{

// Precondition violations on library calls throw std::invalid_argument.
// The types below carry failures that callers are expected to tell apart.

/// Invalid experiment configuration. field() is the dotted path of the offending key.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// An estimator could not produce a trustworthy number (e.g. zero outage events).
class EstimationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace noma

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

#include <cstddef>
#include <span>
#include <vector>

namespace noma
{

/// A NOMA cluster in canonical order: index 0 has the largest channel gain,
/// receives the smallest power share and cancels every other user's signal.
class OrderedCluster
{
  public:
    std::size_t size() const noexcept { return gammas_.size(); }
    double bandwidth() const noexcept { return bandwidth_; }

    /// gamma of the user at canonical position k; non-increasing in k.
    double gamma(std::size_t k) const { return gammas_.at(k); }
    std::span<const double> gammas() const noexcept { return gammas_; }

    /// Original user id placed at canonical position k.
    std::size_t original_id(std::size_t k) const { return order_.at(k); }
    std::span<const std::size_t> order() const noexcept { return order_; }

  private:
    friend OrderedCluster order_by_gain(std::span<const double> gammas, double bandwidth);

    std::vector<double> gammas_;
    std::vector<std::size_t> order_;
    double bandwidth_ = 1.0;
};

/// Sorts users by gamma, largest first; ties keep the smaller original id first.
/// Throws std::invalid_argument on an empty list, a negative or non-finite gamma,
/// or a bandwidth that is not finite and > 0.
OrderedCluster order_by_gain(std::span<const double> gammas, double bandwidth = 1.0);

} // namespace noma

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

// NOMA power shares and the SIC sensitivity check.
//
// All vectors follow the canonical cluster order (position 0 = strongest user,
// smallest power). The SIC check requires that every signal a user has to
// decode arrives with enough margin over what is still superimposed on it.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "noma/cluster.hpp"

namespace noma
{

class PowerAllocation
{
  public:
    /// Throws std::invalid_argument unless fractions is non-empty, every f is
    /// finite and >= 0, fractions are non-decreasing, their sum is <= 1 (with
    /// 1e-12 slack for rounding) and budget is finite and > 0.
    PowerAllocation(std::vector<double> fractions, double budget);

    std::size_t size() const noexcept { return fractions_.size(); }
    double budget() const noexcept { return budget_; }
    double fraction(std::size_t i) const { return fractions_.at(i); }
    double power(std::size_t i) const { return fractions_.at(i) * budget_; }
    std::span<const double> fractions() const noexcept { return fractions_; }

    PowerAllocation with_budget(double budget) const { return PowerAllocation(fractions_, budget); }

  private:
    std::vector<double> fractions_;
    double budget_;
};

/// f_i = r^(i-1) (r - 1) / (r^m - 1), i = 1..m. Channel independent, sums to one
/// and strictly increases with i. Throws std::invalid_argument for m == 0 or r <= 1.
std::vector<double> geometric_fractions(std::size_t m, double ratio);

inline PowerAllocation geometric_allocation(std::size_t m, double ratio, double budget)
{
    return PowerAllocation(geometric_fractions(m, ratio), budget);
}

enum class GapMode
{
    aggregate, // decoded power minus the sum of all weaker-power signals
    pairwise,  // decoded power minus the next weaker-power signal
};

struct SicConstraint
{
    double delta = 0.0; // received power gap, linear, >= 0
    GapMode mode = GapMode::aggregate;
};

struct SicViolation
{
    std::size_t user;  // canonical position of the decoding user
    std::size_t level; // canonical position of the signal that fails
};

struct SicVerdict
{
    bool feasible = true;
    std::optional<SicViolation> first_violation;
};

/// Received power margin of signal `level` at a user with normalized SNR `gamma`.
double sic_gap(const PowerAllocation& alloc, std::size_t level, double gamma, GapMode mode);

/// User i decodes signals i..m-1 (largest power first). Feasible iff every
/// margin is >= delta; otherwise reports the violation with the smallest user,
/// then the smallest level. Throws std::invalid_argument on a size mismatch or
/// negative delta.
SicVerdict validate_sic_gaps(const PowerAllocation& alloc, const OrderedCluster& cluster, const SicConstraint& c);

/// Per-user smallest gap coefficient: user i decodes everything it must iff
/// gamma_i * coeff[i] >= delta. Lets per-trial loops skip the level scan.
std::vector<double> sic_gap_coefficients(const PowerAllocation& alloc, GapMode mode);

} // namespace noma

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

// Experiment files and curve output.
//
// An experiment file is a JSON object. Every key is checked: unknown keys and
// keys that do not apply to the chosen scenario are rejected with the dotted
// path of the key in the message.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noma/montecarlo.hpp"
#include "noma/scenario.hpp"

namespace noma
{

enum class ScenarioKind
{
    siso,
    mimo,
    comp,
    coop,
};

enum class OutputFormat
{
    csv,
    json,
};

struct SweepConfig
{
    double start_db = 0.0;
    double stop_db = 30.0;
    std::size_t points = 7;
};

struct ExperimentConfig
{
    ScenarioKind scenario = ScenarioKind::siso;

    std::size_t m = 1;            // users per cluster (siso, mimo, comp)
    std::size_t K = 1;            // cooperating transmitters (coop)
    std::size_t M = 1;            // users (coop)
    std::size_t clusters = 2;     // mimo
    std::size_t num_bs = 2;       // comp
    double r = 2.0;
    double delta = 0.0;
    GapMode gap_mode = GapMode::aggregate;
    double leakage = 0.1;
    std::optional<double> cross_gain; // scenario default when unset
    IniMode ini_mode = IniMode::own_channel;
    CombiningMode combining = CombiningMode::power_sum;
    CoopBudget coop_budget = CoopBudget::shared;
    Metric metric;
    double epsilon = 0.1;
    double mean_gain = 1.0;
    double bandwidth = 1.0;

    SweepConfig sweep;
    std::vector<double> budgets;  // linear, one per sweep point
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    std::size_t bootstrap = 1000;

    std::string output;           // empty or "-": standard output
    OutputFormat format = OutputFormat::csv;
};

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(std::string_view text);

/// Rebuilds the linear sweep after sweep fields change. Throws ConfigError.
void set_sweep(ExperimentConfig& cfg, const SweepConfig& sweep);

std::unique_ptr<Scenario> make_scenario(const ExperimentConfig& cfg);
TrialPlan make_plan(const ExperimentConfig& cfg, unsigned workers = 0);

OutageCurve run_experiment(const ExperimentConfig& cfg, unsigned workers = 0);

/// Throws std::invalid_argument on an empty curve.
std::string emit_curve(const OutageCurve& curve, OutputFormat format);

/// Decimal with 9 significant digits, as used in CSV output.
std::string format_sig9(double value);

/// Writes bytes to cfg.output, or to standard output. Throws IoError.
void write_artifact(const ExperimentConfig& cfg, std::string_view bytes);

} // namespace noma

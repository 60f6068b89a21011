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

// noma run <config> [--output PATH] [--format csv|json] [--seed N] [--trials N] [--workers N]
//
// Exit status: 0 success, 2 config error, 3 estimation failure, 4 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "noma/error.hpp"
#include "noma/experiment.hpp"

namespace
{

constexpr int kExitConfig = 2;
constexpr int kExitEstimation = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw noma::IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in && !in.eof())
        throw noma::IoError("read of config file '" + path + "' failed");
    return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"noma-sim: outage-capacity sweeps for power-domain NOMA"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "Run the sweep described by an experiment file");
    std::string config_path;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    unsigned workers = 0;
    run->add_option("config", config_path, "Experiment file (JSON)")->required();
    run->add_option("--output,-o", output, "Output path, '-' for standard output");
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--seed", seed, "Override the seed");
    run->add_option("--trials", trials, "Override the trial count")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{std::numeric_limits<std::uint32_t>::max()}));
    run->add_option("--workers", workers, "Worker threads, 0 for one per hardware thread");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try
    {
        noma::ExperimentConfig cfg = noma::parse_config(read_file(config_path));
        if (output)
            cfg.output = *output;
        if (format)
            cfg.format = *format == "json" ? noma::OutputFormat::json : noma::OutputFormat::csv;
        if (seed)
            cfg.seed = *seed;
        if (trials)
            cfg.trials = *trials;

        const noma::OutageCurve curve = noma::run_experiment(cfg, workers);
        noma::write_artifact(cfg, noma::emit_curve(curve, cfg.format));
        return 0;
    }
    catch (const noma::ConfigError& e)
    {
        std::cerr << "noma: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const noma::IoError& e)
    {
        std::cerr << "noma: " << e.what() << '\n';
        return kExitIo;
    }
    catch (const std::exception& e)
    {
        std::cerr << "noma: estimation failed: " << e.what() << '\n';
        return kExitEstimation;
    }
}

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

#include "noma/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "noma/error.hpp"

namespace noma
{

namespace
{

using json = nlohmann::json;

template <class Enum>
struct EnumName
{
    const char* name;
    Enum value;
};

constexpr EnumName<ScenarioKind> kScenarios[] = {
    {"siso", ScenarioKind::siso},
    {"mimo", ScenarioKind::mimo},
    {"comp", ScenarioKind::comp},
    {"coop", ScenarioKind::coop},
};
constexpr EnumName<GapMode> kGapModes[] = {{"aggregate", GapMode::aggregate}, {"pairwise", GapMode::pairwise}};
constexpr EnumName<IniMode> kIniModes[] = {{"own_channel", IniMode::own_channel}, {"literal", IniMode::literal}};
constexpr EnumName<CombiningMode> kCombining[] = {{"power_sum", CombiningMode::power_sum},
                                                  {"coherent", CombiningMode::coherent}};
constexpr EnumName<CoopBudget> kCoopBudgets[] = {{"shared", CoopBudget::shared}, {"per_tx", CoopBudget::per_tx}};
constexpr EnumName<MetricKind> kMetrics[] = {{"min_user_rate", MetricKind::min_user_rate},
                                             {"per_user", MetricKind::per_user},
                                             {"sum_rate", MetricKind::sum_rate}};
constexpr EnumName<OutputFormat> kFormats[] = {{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};

template <class Enum, std::size_t N>
Enum read_enum(const json& v, const std::string& field, const EnumName<Enum> (&names)[N])
{
    std::string options;
    for (const auto& n : names)
        options += (options.empty() ? "" : ", ") + std::string(n.name);
    if (!v.is_string())
        throw ConfigError(field, "expected one of " + options);
    const auto& s = v.get_ref<const std::string&>();
    for (const auto& n : names)
        if (s == n.name)
            return n.value;
    throw ConfigError(field, "'" + s + "' is not one of " + options);
}

std::uint64_t read_count(const json& v, const std::string& field, std::uint64_t min_value)
{
    if (!v.is_number_integer())
        throw ConfigError(field, "expected an integer");
    if (v.is_number_unsigned())
    {
        const auto u = v.get<std::uint64_t>();
        if (u >= min_value)
            return u;
    }
    else if (v.get<std::int64_t>() >= 0 && static_cast<std::uint64_t>(v.get<std::int64_t>()) >= min_value)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError(field, "must be an integer >= " + std::to_string(min_value));
}

double read_number(const json& v, const std::string& field)
{
    if (!v.is_number())
        throw ConfigError(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ConfigError(field, "must be finite");
    return d;
}

double read_positive(const json& v, const std::string& field)
{
    const double d = read_number(v, field);
    if (!(d > 0.0))
        throw ConfigError(field, "must be > 0");
    return d;
}

double read_nonnegative(const json& v, const std::string& field)
{
    const double d = read_number(v, field);
    if (!(d >= 0.0))
        throw ConfigError(field, "must be >= 0");
    return d;
}

std::string read_string(const json& v, const std::string& field)
{
    if (!v.is_string())
        throw ConfigError(field, "expected a string");
    return v.get<std::string>();
}

const char* scenario_name(ScenarioKind kind)
{
    for (const auto& n : kScenarios)
        if (n.value == kind)
            return n.name;
    return "?";
}

// Keys each scenario accepts beyond the common ones.
bool applies(ScenarioKind kind, const std::string& key)
{
    using K = ScenarioKind;
    if (key == "m")
        return kind != K::coop;
    if (key == "K" || key == "M" || key == "combining" || key == "coop_budget")
        return kind == K::coop;
    if (key == "clusters" || key == "leakage")
        return kind == K::mimo;
    if (key == "num_bs")
        return kind == K::comp;
    if (key == "cross_gain")
        return kind == K::mimo || kind == K::comp;
    if (key == "ini_mode")
        return kind == K::siso || kind == K::mimo;
    if (key == "delta" || key == "gap_mode")
        return kind != K::comp;
    return true;
}

bool known_key(const std::string& key)
{
    static const char* const keys[] = {
        "scenario", "m",         "K",       "M",         "clusters", "num_bs", "r",      "delta",
        "gap_mode", "leakage",   "cross_gain", "ini_mode", "combining", "coop_budget", "metric", "user",
        "epsilon",  "mean_gain", "bandwidth", "sweep",   "trials",   "seed",   "bootstrap", "output",
        "format",
    };
    for (const char* k : keys)
        if (key == k)
            return true;
    return false;
}

void read_sweep(const json& v, ExperimentConfig& cfg)
{
    if (!v.is_object())
        throw ConfigError("sweep", "expected an object with start_db, stop_db, points");
    SweepConfig sweep = cfg.sweep;
    for (auto it = v.begin(); it != v.end(); ++it)
    {
        const std::string field = "sweep." + it.key();
        if (it.key() == "start_db")
            sweep.start_db = read_number(it.value(), field);
        else if (it.key() == "stop_db")
            sweep.stop_db = read_number(it.value(), field);
        else if (it.key() == "points")
            sweep.points = read_count(it.value(), field, 2);
        else
            throw ConfigError(field, "unknown field");
    }
    set_sweep(cfg, sweep);
}

void read_field(const std::string& key, const json& v, ExperimentConfig& cfg)
{
    if (key == "m")
        cfg.m = read_count(v, key, 1);
    else if (key == "K")
        cfg.K = read_count(v, key, 1);
    else if (key == "M")
        cfg.M = read_count(v, key, 1);
    else if (key == "clusters")
        cfg.clusters = read_count(v, key, 1);
    else if (key == "num_bs")
        cfg.num_bs = read_count(v, key, 1);
    else if (key == "r")
    {
        cfg.r = read_number(v, key);
        if (!(cfg.r > 1.0))
            throw ConfigError(key, "power ratio must be > 1");
    }
    else if (key == "delta")
        cfg.delta = read_nonnegative(v, key);
    else if (key == "gap_mode")
        cfg.gap_mode = read_enum(v, key, kGapModes);
    else if (key == "leakage")
        cfg.leakage = read_nonnegative(v, key);
    else if (key == "cross_gain")
        cfg.cross_gain = read_nonnegative(v, key);
    else if (key == "ini_mode")
        cfg.ini_mode = read_enum(v, key, kIniModes);
    else if (key == "combining")
        cfg.combining = read_enum(v, key, kCombining);
    else if (key == "coop_budget")
        cfg.coop_budget = read_enum(v, key, kCoopBudgets);
    else if (key == "metric")
        cfg.metric.kind = read_enum(v, key, kMetrics);
    else if (key == "user")
        cfg.metric.user = read_count(v, key, 0);
    else if (key == "epsilon")
    {
        cfg.epsilon = read_number(v, key);
        if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
            throw ConfigError(key, "must lie in (0, 1)");
    }
    else if (key == "mean_gain")
        cfg.mean_gain = read_positive(v, key);
    else if (key == "bandwidth")
        cfg.bandwidth = read_positive(v, key);
    else if (key == "sweep")
        read_sweep(v, cfg);
    else if (key == "trials")
    {
        cfg.trials = read_count(v, key, 1);
        if (cfg.trials > std::numeric_limits<std::uint32_t>::max())
            throw ConfigError(key, "at most 4294967295 trials");
    }
    else if (key == "seed")
        cfg.seed = read_count(v, key, 0);
    else if (key == "bootstrap")
        cfg.bootstrap = read_count(v, key, 1);
    else if (key == "output")
        cfg.output = read_string(v, key);
    else if (key == "format")
        cfg.format = read_enum(v, key, kFormats);
}

} // namespace

void set_sweep(ExperimentConfig& cfg, const SweepConfig& sweep)
{
    if (!(sweep.start_db < sweep.stop_db))
        throw ConfigError("sweep.stop_db", "must exceed sweep.start_db");
    if (sweep.points < 2)
        throw ConfigError("sweep.points", "must be >= 2");
    cfg.sweep = sweep;
    cfg.budgets.resize(sweep.points);
    const double step = (sweep.stop_db - sweep.start_db) / static_cast<double>(sweep.points - 1);
    for (std::size_t i = 0; i < sweep.points; ++i)
    {
        const double db = i + 1 == sweep.points ? sweep.stop_db : sweep.start_db + step * static_cast<double>(i);
        cfg.budgets[i] = db_to_linear(db);
    }
}

ExperimentConfig parse_config(std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError("<document>", std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("<document>", "top level must be an object");

    ExperimentConfig cfg;
    set_sweep(cfg, cfg.sweep);
    if (!doc.contains("scenario"))
        throw ConfigError("scenario", "required field missing");
    cfg.scenario = read_enum(doc["scenario"], "scenario", kScenarios);

    for (auto it = doc.begin(); it != doc.end(); ++it)
    {
        const std::string& key = it.key();
        if (!known_key(key))
            throw ConfigError(key, "unknown field");
        if (!applies(cfg.scenario, key))
            throw ConfigError(key, std::string("not used by scenario '") + scenario_name(cfg.scenario) + "'");
        if (key != "scenario")
            read_field(key, it.value(), cfg);
    }

    if (cfg.scenario == ScenarioKind::coop)
    {
        if (!doc.contains("K"))
            throw ConfigError("K", "required for scenario 'coop'");
        if (!doc.contains("M"))
            throw ConfigError("M", "required for scenario 'coop'");
    }
    else if (!doc.contains("m"))
        throw ConfigError("m", std::string("required for scenario '") + scenario_name(cfg.scenario) + "'");

    if (doc.contains("user") && cfg.metric.kind != MetricKind::per_user)
        throw ConfigError("user", "only used with metric 'per_user'");

    std::unique_ptr<Scenario> scenario;
    try
    {
        scenario = make_scenario(cfg);
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError("scenario", e.what());
    }
    if (cfg.metric.kind == MetricKind::per_user && cfg.metric.user >= scenario->num_slots())
        throw ConfigError("user", "index " + std::to_string(cfg.metric.user) + " but the scenario has " +
                                      std::to_string(scenario->num_slots()) + " users");
    return cfg;
}

std::unique_ptr<Scenario> make_scenario(const ExperimentConfig& cfg)
{
    const SicConstraint sic{cfg.delta, cfg.gap_mode};
    switch (cfg.scenario)
    {
    case ScenarioKind::siso:
    {
        SisoParams p;
        p.m = cfg.m;
        p.ratio = cfg.r;
        p.ini_mode = cfg.ini_mode;
        p.sic = sic;
        p.mean_gain = cfg.mean_gain;
        p.bandwidth = cfg.bandwidth;
        return make_siso_scenario(p);
    }
    case ScenarioKind::mimo:
    {
        MimoParams p;
        p.clusters = cfg.clusters;
        p.m = cfg.m;
        p.ratio = cfg.r;
        p.leakage = cfg.leakage;
        p.cross_gain = cfg.cross_gain.value_or(p.cross_gain);
        p.ini_mode = cfg.ini_mode;
        p.sic = sic;
        p.mean_gain = cfg.mean_gain;
        p.bandwidth = cfg.bandwidth;
        return make_mimo_scenario(p);
    }
    case ScenarioKind::comp:
    {
        CompParams p;
        p.num_bs = cfg.num_bs;
        p.m = cfg.m;
        p.ratio = cfg.r;
        p.cross_gain = cfg.cross_gain.value_or(p.cross_gain);
        p.mean_gain = cfg.mean_gain;
        p.bandwidth = cfg.bandwidth;
        return make_comp_scenario(p);
    }
    case ScenarioKind::coop:
    {
        CoopParams p;
        p.transmitters = cfg.K;
        p.users = cfg.M;
        p.ratio = cfg.r;
        p.combining = cfg.combining;
        p.budget = cfg.coop_budget;
        p.sic = sic;
        p.mean_gain = cfg.mean_gain;
        p.bandwidth = cfg.bandwidth;
        return make_coop_scenario(p);
    }
    }
    throw std::invalid_argument("make_scenario: unknown scenario");
}

TrialPlan make_plan(const ExperimentConfig& cfg, unsigned workers)
{
    TrialPlan plan;
    plan.num_trials = cfg.trials;
    plan.epsilon = cfg.epsilon;
    plan.metric = cfg.metric;
    plan.power_sweep = cfg.budgets;
    plan.seed = cfg.seed;
    plan.workers = workers;
    plan.bootstrap_resamples = cfg.bootstrap;
    return plan;
}

OutageCurve run_experiment(const ExperimentConfig& cfg, unsigned workers)
{
    const std::unique_ptr<Scenario> scenario = make_scenario(cfg);
    return outage_curve(*scenario, make_plan(cfg, workers));
}

std::string format_sig9(double value)
{
    if (value == 0.0)
        return "0.000000000";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8e", value);
    const char* e = std::strchr(buf, 'e');
    const int exponent = std::atoi(e + 1);
    const double rounded = std::strtod(buf, nullptr);
    const int decimals = exponent < 8 ? 8 - exponent : 0;
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    return buf;
}

std::string emit_curve(const OutageCurve& curve, OutputFormat format)
{
    if (curve.points.empty())
        throw std::invalid_argument("emit_curve: empty curve");
    if (format == OutputFormat::json)
    {
        json points = json::array();
        for (const CapacityPoint& p : curve.points)
            points.push_back({{"power_db", linear_to_db(p.budget)},
                              {"c_eps_bpshz", p.c_eps},
                              {"ci_halfwidth", p.ci_halfwidth},
                              {"outage_at_ceps", p.outage_at_c_eps}});
        return json{{"points", points}}.dump(2);
    }
    std::string out = "power_db,c_eps_bpshz,ci_halfwidth,outage_at_ceps";
    for (const CapacityPoint& p : curve.points)
    {
        out += '\n';
        out += format_sig9(linear_to_db(p.budget));
        out += ',';
        out += format_sig9(p.c_eps);
        out += ',';
        out += format_sig9(p.ci_halfwidth);
        out += ',';
        out += format_sig9(p.outage_at_c_eps);
    }
    return out;
}

void write_artifact(const ExperimentConfig& cfg, std::string_view bytes)
{
    if (cfg.output.empty() || cfg.output == "-")
    {
        std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        if (!std::cout)
            throw IoError("write to standard output failed");
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file)
        throw IoError("cannot open '" + cfg.output + "' for writing");
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    file.close();
    if (!file)
        throw IoError("write to '" + cfg.output + "' failed");
}

} // namespace noma

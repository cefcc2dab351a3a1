// SPDX-License-Identifier: Apache-2.0
//
// ra-beamkit: rotatable-antenna array beamforming toolkit
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


// Command-line driver: run | sweep | pattern

#include "ra_beamkit/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace
{
    using namespace ra_beamkit;

    constexpr int exit_schema = 1;
    constexpr int exit_solver = 2;
    constexpr int exit_io = 3;

    void print_summary(const ScenarioOutcome &outcome)
    {
        std::printf("%-5s %14s %10s %10s %14s %6s\n", "scheme", "min_gain", "min_dB", "frac_full", "max_interf", "seed");
        for (const auto &s : outcome.schemes)
        {
            const RunReport &r = s.best;
            std::printf("%-5s %14.6f %10.4f %10.4f %14.6g %6llu\n", to_string(s.scheme), r.min_desired_gain, linear_to_db(r.min_desired_gain),
                        r.min_desired_gain / outcome.full_gain, r.max_interference_gain, static_cast<unsigned long long>(r.seed));
        }
    }

    int cmd_run(const std::string &path, const std::string &out_dir, int seed_count, const std::vector<std::string> &schemes)
    {
        ScenarioFile file = load_scenario_file(path);
        require_directions(file);
        if (seed_count > 0)
        {
            file.seeds.clear();
            for (int i = 1; i <= seed_count; ++i)
                file.seeds.push_back(static_cast<std::uint64_t>(i));
        }
        if (!schemes.empty())
        {
            file.schemes.clear();
            for (const auto &name : schemes)
            {
                try
                {
                    file.schemes.push_back(parse_scheme(name));
                }
                catch (const std::invalid_argument &e)
                {
                    throw SchemaError(std::string("--schemes: ") + e.what());
                }
            }
        }
        try
        {
            file.scenario.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw SchemaError(std::string("scenario: ") + e.what());
        }

        const ScenarioOutcome outcome = run_scenario(file, worker_count());
        write_run_outputs(file, outcome, out_dir);
        print_summary(outcome);
        return 0;
    }

    int cmd_sweep(const std::string &path, const std::string &field, const std::vector<double> &values, int scenarios,
                  const std::string &out_dir)
    {
        ScenarioFile file = load_scenario_file(path);
        if (scenarios > 0)
            file.random_scenarios.count = scenarios;
        const auto rows = run_sweep(file, SweepSpec{field, values}, worker_count());

        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec)
            throw IoError("cannot create " + out_dir + ": " + ec.message());
        const std::string csv = sweep_csv(rows);
        write_text_file(std::filesystem::path(out_dir) / "sweep.csv", csv);
        std::cout << csv;
        return 0;
    }

    int cmd_pattern(const std::string &path, const std::string &state_path, double step, const std::string &out_file)
    {
        const ScenarioFile file = load_scenario_file(path);
        const auto [scheme, state] = state_from_report(read_json_file(state_path));
        if (static_cast<std::size_t>(state.weights.size()) != file.geometry.num_antennas)
            throw SchemaError("final_state: report has " + std::to_string(state.weights.size()) + " elements but num_antennas is " +
                              std::to_string(file.geometry.num_antennas));
        const double step_deg = step > 0.0 ? step : file.pattern_sample_step_deg;
        const auto samples = sample_pattern(model_for(scheme, file.pattern, file.geometry), state, step_deg);
        std::ostringstream csv;
        write_pattern_csv(csv, samples);
        if (out_file.empty())
            std::cout << csv.str();
        else
            write_text_file(out_file, csv.str());
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Rotatable-antenna array max-min beamforming"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "results", state_path, out_file, field;
    int seed_count = 0, scenarios = 0;
    double step = 0.0;
    std::vector<std::string> schemes;
    std::vector<double> values;

    auto *run = app.add_subcommand("run", "Optimize every scheme of a scenario and write reports, pattern CSVs and a summary");
    run->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--seed-count", seed_count, "Use seeds 1..M instead of the file's seed list")->check(CLI::PositiveNumber);
    run->add_option("--schemes", schemes, "Comma-separated subset of ra,foa,ia")->delimiter(',');

    auto *sweep = app.add_subcommand("sweep", "Mean max-min gain over random scenarios for each value of one field");
    sweep->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
    sweep->add_option("--field", field, "num_antennas, spacing_wavelengths or eta_max_db")->required();
    sweep->add_option("--values", values, "Comma-separated values")->delimiter(',')->required();
    sweep->add_option("--scenarios", scenarios, "Random scenarios per value")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_dir, "Output directory");

    auto *pattern = app.add_subcommand("pattern", "Sample the array gain pattern of a stored state");
    pattern->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
    pattern->add_option("--state", state_path, "Report JSON written by run")->required();
    pattern->add_option("--step", step, "Sampling step in degrees")->check(CLI::PositiveNumber);
    pattern->add_option("--out", out_file, "Output CSV (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_schema;
    }

    try
    {
        if (*run)
            return cmd_run(scenario_path, out_dir, seed_count, schemes);
        if (*sweep)
            return cmd_sweep(scenario_path, field, values, scenarios, out_dir);
        return cmd_pattern(scenario_path, state_path, step, out_file);
    }
    catch (const SchemaError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_schema;
    }
    catch (const IoError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const std::filesystem::filesystem_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const std::exception &e)
    {
        std::cerr << "solver failure: " << e.what() << '\n';
        return exit_solver;
    }
}

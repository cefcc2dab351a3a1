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


#ifndef RA_BEAMKIT_EXPERIMENT_HPP
#define RA_BEAMKIT_EXPERIMENT_HPP

#include "ra_beamkit/scenario_io.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ra_beamkit
{
    // RA_BEAMKIT_THREADS if set to a positive integer, otherwise the hardware concurrency
    int worker_count();

    // Runs body(0) ... body(count - 1) on up to `threads` workers. If any call throws, the
    // exception of the lowest index is rethrown after all workers finish.
    void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &body);

    struct SchemeOutcome
    {
        Scheme scheme = Scheme::ra;
        RunReport best;               // Highest min desired gain among feasible runs, earliest seed on ties
        std::vector<RunReport> runs;  // One per seed, in seed-list order
    };

    struct ScenarioOutcome
    {
        std::vector<SchemeOutcome> schemes; // In scenario-file order
        double full_gain = 0.0;
    };

    // Runs every scheme for every seed of the file
    ScenarioOutcome run_scenario(const ScenarioFile &file, int threads);

    // Header: scheme,min_desired_gain_linear,min_desired_gain_db,fraction_of_full_gain,max_interference_gain_linear,best_seed,outer_iterations
    std::string summary_csv(const ScenarioOutcome &outcome);

    // report_<scheme>.json, pattern_<scheme>.csv and summary.csv under out_dir (created if missing)
    void write_run_outputs(const ScenarioFile &file, const ScenarioOutcome &outcome, const std::filesystem::path &out_dir);

    // Directions uniform on [0, 180] drawn from (spec.base_seed, index)
    Scenario random_scenario(const RandomScenarioSpec &spec, int index, double eta_max_db);

    struct SweepSpec
    {
        std::string field; // num_antennas, spacing_wavelengths or eta_max_db
        std::vector<double> values;
    };

    struct SweepRow
    {
        double sweep_value = 0.0;
        Scheme scheme = Scheme::ra;
        double mean_maxmin_gain_db = 0.0;
        std::optional<double> delta_vs_ra_db; // RA mean minus this scheme's mean; empty when RA is not run
    };

    // Returns a copy of the file with the named field set; throws SchemaError for unknown fields or bad values
    ScenarioFile apply_sweep_value(ScenarioFile file, const std::string &field, double value);

    // For every sweep value, runs each scheme on the same random_scenarios.count random scenarios and
    // averages the max-min gain in dB. Scenario j is run with seed base_seed + j.
    std::vector<SweepRow> run_sweep(const ScenarioFile &file, const SweepSpec &spec, int threads);

    // Header: sweep_value,scheme,mean_maxmin_gain_db,delta_vs_ra_db
    std::string sweep_csv(const std::vector<SweepRow> &rows);
}

#endif

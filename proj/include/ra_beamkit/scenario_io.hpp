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


#ifndef RA_BEAMKIT_SCENARIO_IO_HPP
#define RA_BEAMKIT_SCENARIO_IO_HPP

#include "ra_beamkit/ao_optimizer.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ra_beamkit
{
    // Scenario document problems. The message always starts with the offending key.
    class SchemaError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Unreadable inputs or unwritable outputs
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Random scenario generation used by sweeps
    struct RandomScenarioSpec
    {
        int count = 30;              // Scenarios per sweep value
        std::uint64_t base_seed = 1; // Scenario j uses angles drawn from (base_seed, j) and run seed base_seed + j
        int num_desired = 2;
        int num_interference = 2;
    };

    struct ScenarioFile
    {
        ArrayGeometry geometry;
        RadiationPattern pattern;
        Scenario scenario;
        std::vector<Scheme> schemes{Scheme::ra, Scheme::foa, Scheme::ia};
        AoConfig solver;
        std::vector<std::uint64_t> seeds{1};
        double pattern_sample_step_deg = 0.1;
        RandomScenarioSpec random_scenarios;
    };

    // Parses and validates a scenario document. Unknown keys are rejected. desired_angles_deg may be
    // omitted (sweeps draw their own directions); require_directions() checks it when needed.
    ScenarioFile parse_scenario(const nlohmann::json &doc);
    ScenarioFile load_scenario_file(const std::filesystem::path &path);
    void require_directions(const ScenarioFile &file);

    // Inverse of parse_scenario, with every default spelled out
    nlohmann::json scenario_to_json(const ScenarioFile &file);

    // Shortest decimal text that reads back to the same double
    std::string format_number(double value);

    struct PatternSample
    {
        double psi_deg = 0.0;
        double gain_linear = 0.0;
        double gain_db = 0.0; // 10 log10(gain_linear), floored at -300
    };

    // Samples psi = 0, step, 2 step, ... up to and including 180
    std::vector<PatternSample> sample_pattern(const ArrayModel &model, const BeamformerState &state, double step_deg);

    // Header: psi_deg,gain_linear,gain_db
    void write_pattern_csv(std::ostream &os, const std::vector<PatternSample> &samples);

    nlohmann::json report_to_json(const RunReport &report, double full_gain);

    // Recovers the scheme and the beamformer state from a report document
    std::pair<Scheme, BeamformerState> state_from_report(const nlohmann::json &doc);

    nlohmann::json read_json_file(const std::filesystem::path &path);
    void write_text_file(const std::filesystem::path &path, const std::string &content);
}

#endif

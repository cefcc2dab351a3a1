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


#include "ra_beamkit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

namespace ra_beamkit
{
    namespace
    {
        constexpr double feasibility_slack = 1e-8;
        constexpr std::uint64_t desired_stream = 10;
        constexpr std::uint64_t interference_stream = 11;

        bool feasible(const RunReport &r, const Scenario &scenario)
        {
            return r.interference_gains.empty() || r.max_interference_gain <= scenario.eta_max_linear() + feasibility_slack;
        }

        std::string lower_name(Scheme s)
        {
            std::string name = to_string(s);
            std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            return name;
        }
    }

    int worker_count()
    {
        if (const char *env = std::getenv("RA_BEAMKIT_THREADS"))
        {
            char *end = nullptr;
            const long value = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && value > 0)
                return static_cast<int>(value);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &body)
    {
        std::vector<std::exception_ptr> errors(count);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < count; i = next++)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    errors[i] = std::current_exception();
                }
            }
        };

        const auto num_workers = static_cast<std::size_t>(std::clamp<long long>(threads, 1, static_cast<long long>(std::max<std::size_t>(count, 1))));
        if (num_workers <= 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            for (std::size_t t = 0; t < num_workers; ++t)
                pool.emplace_back(worker);
        }

        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    ScenarioOutcome run_scenario(const ScenarioFile &file, int threads)
    {
        require_directions(file);
        const std::size_t num_seeds = file.seeds.size();
        const std::size_t num_schemes = file.schemes.size();

        std::vector<RunReport> runs(num_seeds * num_schemes);
        parallel_for(runs.size(), threads, [&](std::size_t i) {
            const Scheme scheme = file.schemes[i / num_seeds];
            runs[i] = solve_scheme(scheme, file.scenario, file.pattern, file.geometry, file.seeds[i % num_seeds], file.solver);
        });

        ScenarioOutcome out;
        out.full_gain = full_array_gain(file.pattern, file.geometry);
        for (std::size_t s = 0; s < num_schemes; ++s)
        {
            SchemeOutcome so;
            so.scheme = file.schemes[s];
            so.runs.assign(runs.begin() + static_cast<std::ptrdiff_t>(s * num_seeds), runs.begin() + static_cast<std::ptrdiff_t>((s + 1) * num_seeds));
            const RunReport *best = nullptr;
            for (const auto &r : so.runs)
            {
                if (!best)
                {
                    best = &r;
                    continue;
                }
                const bool rf = feasible(r, file.scenario), bf = feasible(*best, file.scenario);
                if ((rf && !bf) || (rf == bf && r.min_desired_gain > best->min_desired_gain))
                    best = &r;
            }
            so.best = *best;
            out.schemes.push_back(std::move(so));
        }
        return out;
    }

    std::string summary_csv(const ScenarioOutcome &outcome)
    {
        std::ostringstream os;
        os << "scheme,min_desired_gain_linear,min_desired_gain_db,fraction_of_full_gain,max_interference_gain_linear,best_seed,outer_iterations\n";
        for (const auto &s : outcome.schemes)
        {
            const RunReport &r = s.best;
            os << to_string(s.scheme) << ',' << format_number(r.min_desired_gain) << ',' << format_number(linear_to_db(r.min_desired_gain))
               << ',' << format_number(r.min_desired_gain / outcome.full_gain) << ',' << format_number(r.max_interference_gain) << ','
               << r.seed << ',' << r.outer_iterations << '\n';
        }
        return os.str();
    }

    void write_run_outputs(const ScenarioFile &file, const ScenarioOutcome &outcome, const std::filesystem::path &out_dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec)
            throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

        for (const auto &s : outcome.schemes)
        {
            nlohmann::json doc = report_to_json(s.best, outcome.full_gain);
            nlohmann::json seeds = nlohmann::json::array();
            for (const auto &r : s.runs)
                seeds.push_back({{"seed", r.seed}, {"min_desired_gain", r.min_desired_gain}, {"max_interference_gain", r.max_interference_gain},
                                 {"outer_iterations", r.outer_iterations}});
            doc["seed_results"] = seeds;
            doc["config"] = scenario_to_json(file);
            const std::string name = lower_name(s.scheme);
            write_text_file(out_dir / ("report_" + name + ".json"), doc.dump(2) + "\n");

            const ArrayModel model = model_for(s.scheme, file.pattern, file.geometry);
            std::ostringstream csv;
            write_pattern_csv(csv, sample_pattern(model, s.best.final_state, file.pattern_sample_step_deg));
            write_text_file(out_dir / ("pattern_" + name + ".csv"), csv.str());
        }
        write_text_file(out_dir / "summary.csv", summary_csv(outcome));
    }

    Scenario random_scenario(const RandomScenarioSpec &spec, int index, double eta_max_db)
    {
        Scenario sc;
        sc.eta_max_db = eta_max_db;
        const auto j = static_cast<std::uint64_t>(index);
        for (int k = 0; k < spec.num_desired; ++k)
            sc.desired_angles_deg.push_back(180.0 * counter_uniform(spec.base_seed, desired_stream, j, static_cast<std::uint64_t>(k)));
        for (int l = 0; l < spec.num_interference; ++l)
            sc.interference_angles_deg.push_back(180.0 * counter_uniform(spec.base_seed, interference_stream, j, static_cast<std::uint64_t>(l)));
        return sc;
    }

    ScenarioFile apply_sweep_value(ScenarioFile file, const std::string &field, double value)
    {
        if (field == "num_antennas")
        {
            if (!(value >= 1.0) || value != std::floor(value))
                throw SchemaError("num_antennas: sweep value " + format_number(value) + " is not a positive integer");
            file.geometry.num_antennas = static_cast<std::size_t>(value);
        }
        else if (field == "spacing_wavelengths")
        {
            if (!(value > 0.0))
                throw SchemaError("spacing_wavelengths: sweep value must be positive");
            file.geometry.spacing_wavelengths = value;
        }
        else if (field == "eta_max_db")
        {
            if (!std::isfinite(value))
                throw SchemaError("eta_max_db: sweep value must be finite");
            file.scenario.eta_max_db = value;
        }
        else
            throw SchemaError(field + ": not a sweepable field (num_antennas, spacing_wavelengths, eta_max_db)");
        return file;
    }

    std::vector<SweepRow> run_sweep(const ScenarioFile &file, const SweepSpec &spec, int threads)
    {
        if (spec.values.empty())
            throw SchemaError("values: at least one sweep value is required");
        std::vector<ScenarioFile> cells;
        for (double v : spec.values)
            cells.push_back(apply_sweep_value(file, spec.field, v));

        const auto num_scenarios = static_cast<std::size_t>(file.random_scenarios.count);
        const std::size_t num_schemes = file.schemes.size();
        const std::size_t per_cell = num_scenarios * num_schemes;
        std::vector<double> gains_db(cells.size() * per_cell);

        parallel_for(gains_db.size(), threads, [&](std::size_t i) {
            const ScenarioFile &cell = cells[i / per_cell];
            const std::size_t rest = i % per_cell;
            const Scheme scheme = cell.schemes[rest / num_scenarios];
            const auto j = static_cast<int>(rest % num_scenarios);
            const Scenario sc = random_scenario(cell.random_scenarios, j, cell.scenario.eta_max_db);
            const RunReport r = solve_scheme(scheme, sc, cell.pattern, cell.geometry, cell.random_scenarios.base_seed + static_cast<std::uint64_t>(j), cell.solver);
            gains_db[i] = linear_to_db(r.min_desired_gain);
        });

        std::vector<SweepRow> rows;
        for (std::size_t c = 0; c < cells.size(); ++c)
        {
            std::vector<double> means(num_schemes);
            std::optional<double> ra_mean;
            for (std::size_t s = 0; s < num_schemes; ++s)
            {
                double sum = 0.0;
                for (std::size_t j = 0; j < num_scenarios; ++j)
                    sum += gains_db[c * per_cell + s * num_scenarios + j];
                means[s] = sum / static_cast<double>(num_scenarios);
                if (file.schemes[s] == Scheme::ra)
                    ra_mean = means[s];
            }
            for (std::size_t s = 0; s < num_schemes; ++s)
            {
                SweepRow row{spec.values[c], file.schemes[s], means[s], std::nullopt};
                if (ra_mean)
                    row.delta_vs_ra_db = *ra_mean - means[s];
                rows.push_back(row);
            }
        }
        return rows;
    }

    std::string sweep_csv(const std::vector<SweepRow> &rows)
    {
        std::ostringstream os;
        os << "sweep_value,scheme,mean_maxmin_gain_db,delta_vs_ra_db\n";
        for (const auto &r : rows)
        {
            os << format_number(r.sweep_value) << ',' << to_string(r.scheme) << ',' << format_number(r.mean_maxmin_gain_db) << ',';
            if (r.delta_vs_ra_db)
                os << format_number(*r.delta_vs_ra_db);
            os << '\n';
        }
        return os.str();
    }
}

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


#include "ra_beamkit/ao_optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ra_beamkit
{
    namespace
    {
        constexpr double feasibility_slack = 1e-8;
        constexpr std::uint64_t initial_weight_stream = 3;

        std::uint64_t round_seed(std::uint64_t seed, int round)
        {
            return seed ^ (0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(round));
        }

        void fill_gains(RunReport &report, const ArrayModel &model, const Scenario &scenario)
        {
            const auto gains = direction_gains(model, report.final_state, scenario);
            report.desired_gains = gains.desired;
            report.interference_gains = gains.interference;
            report.min_desired_gain = gains.min_desired();
            report.max_interference_gain = gains.max_interference();
        }

        RunReport alternate(const Scenario &scenario, const ArrayModel &model, BeamformerState state, const AoConfig &config,
                            Scheme scheme)
        {
            config.validate();
            scenario.validate();
            model.validate();
            const auto n = static_cast<Eigen::Index>(model.size());
            if (state.weights.size() != n || state.rotations_deg.size() != n)
                throw std::invalid_argument("solve: initial state size does not match the array");
            const RotationBounds bounds = model.bounds();
            for (double theta : state.rotations_deg)
                if (!bounds.contains(theta))
                    throw std::invalid_argument("solve: initial rotation outside the admissible interval");

            const bool rotate = scheme == Scheme::ra;
            const double cap = scenario.eta_max_linear();

            RunReport report;
            report.scheme = scheme;
            report.seed = config.pso.rng_seed;
            double previous = -std::numeric_limits<double>::infinity();

            for (int m = 1; m <= config.max_outer_iterations; ++m)
            {
                state.weights = optimize_weights(state, scenario, model, config.sca).weights;

                if (rotate)
                {
                    PsoConfig pso = config.pso;
                    pso.rng_seed = round_seed(config.pso.rng_seed, m);
                    const PsoResult found = optimize_rotations(state.weights, state.rotations_deg, scenario, model, pso);

                    // Elitism keeps the incoming rotations in the swarm, so this only rejects numerical noise
                    const BeamformerState candidate{state.weights, found.rotations_deg};
                    const auto now = direction_gains(model, state, scenario);
                    const auto next = direction_gains(model, candidate, scenario);
                    if (next.max_interference() <= cap + feasibility_slack && next.min_desired() >= now.min_desired())
                        state.rotations_deg = found.rotations_deg;
                }

                const double objective = direction_gains(model, state, scenario).min_desired();
                report.objective_history.push_back(objective);
                report.outer_iterations = m;
                if (objective - previous < config.delta_threshold)
                {
                    report.converged = true;
                    break;
                }
                previous = objective;
            }

            report.final_state = std::move(state);
            fill_gains(report, model, scenario);
            return report;
        }
    }

    void AoConfig::validate() const
    {
        sca.validate();
        pso.validate();
        if (!(delta_threshold > 0.0))
            throw std::invalid_argument("AoConfig: delta_threshold must be positive");
        if (max_outer_iterations < 1)
            throw std::invalid_argument("AoConfig: max_outer_iterations must be at least 1");
    }

    const char *to_string(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::ra:
            return "RA";
        case Scheme::foa:
            return "FOA";
        case Scheme::ia:
            return "IA";
        }
        return "?";
    }

    Scheme parse_scheme(std::string_view name)
    {
        std::string lower(name);
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (lower == "ra")
            return Scheme::ra;
        if (lower == "foa")
            return Scheme::foa;
        if (lower == "ia")
            return Scheme::ia;
        throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected RA, FOA or IA)");
    }

    Eigen::VectorXcd random_phase_weights(std::size_t num_antennas, std::uint64_t seed)
    {
        Eigen::VectorXd phases(static_cast<Eigen::Index>(num_antennas));
        for (Eigen::Index n = 0; n < phases.size(); ++n)
            phases[n] = 2.0 * std::numbers::pi * counter_uniform(seed, initial_weight_stream, 0, static_cast<std::uint64_t>(n));
        return weights_from_phases(phases);
    }

    BeamformerState default_initial_state(const ArrayGeometry &geometry, std::uint64_t seed)
    {
        return {random_phase_weights(geometry.num_antennas, seed), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(geometry.num_antennas))};
    }

    BeamformerState solve_single_beam(double theta_desired_deg, const RadiationPattern &pattern, const ArrayGeometry &geometry)
    {
        if (!(theta_desired_deg >= 0.0 && theta_desired_deg <= 180.0))
            throw std::invalid_argument("solve_single_beam: desired angle must lie in [0, 180]");
        pattern.validate();
        geometry.validate();

        const Eigen::VectorXcd a = steering_vector(geometry, theta_desired_deg);
        const RotationBounds bounds = rotation_bounds(pattern);
        BeamformerState state;
        state.weights = a / a.norm();
        state.rotations_deg = Eigen::VectorXd::Constant(a.size(), bounds.clamp(theta_desired_deg - 90.0));
        return state;
    }

    ArrayModel model_for(Scheme scheme, const RadiationPattern &pattern, const ArrayGeometry &geometry)
    {
        return {pattern, geometry, scheme == Scheme::ia ? ElementKind::isotropic : ElementKind::directional};
    }

    RunReport solve_ra(const Scenario &scenario, const RadiationPattern &pattern, const ArrayGeometry &geometry,
                       const BeamformerState &initial, const AoConfig &config)
    {
        return alternate(scenario, model_for(Scheme::ra, pattern, geometry), initial, config, Scheme::ra);
    }

    RunReport solve_foa(const Scenario &scenario, const RadiationPattern &pattern, const ArrayGeometry &geometry,
                        const Eigen::VectorXcd &initial_weights, const AoConfig &config)
    {
        BeamformerState start{initial_weights, Eigen::VectorXd::Zero(initial_weights.size())};
        return alternate(scenario, model_for(Scheme::foa, pattern, geometry), std::move(start), config, Scheme::foa);
    }

    RunReport solve_ia(const Scenario &scenario, const ArrayGeometry &geometry, const Eigen::VectorXcd &initial_weights,
                       const AoConfig &config)
    {
        BeamformerState start{initial_weights, Eigen::VectorXd::Zero(initial_weights.size())};
        return alternate(scenario, model_for(Scheme::ia, RadiationPattern{}, geometry), std::move(start), config, Scheme::ia);
    }

    RunReport solve_scheme(Scheme scheme, const Scenario &scenario, const RadiationPattern &pattern, const ArrayGeometry &geometry,
                           std::uint64_t seed, AoConfig config)
    {
        config.pso.rng_seed = seed;
        const BeamformerState initial = default_initial_state(geometry, seed);
        RunReport report;
        switch (scheme)
        {
        case Scheme::ra:
            report = solve_ra(scenario, pattern, geometry, initial, config);
            break;
        case Scheme::foa:
            report = solve_foa(scenario, pattern, geometry, initial.weights, config);
            break;
        case Scheme::ia:
            report = solve_ia(scenario, geometry, initial.weights, config);
            break;
        }
        report.seed = seed;
        return report;
    }
}

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


#include "ra_beamkit/pso_rotation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ra_beamkit
{
    namespace
    {
        // splitmix64 finalizer
        std::uint64_t mix(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        void check_shapes(const Eigen::VectorXcd &weights, const ArrayModel &model)
        {
            if (static_cast<std::size_t>(weights.size()) != model.size())
                throw std::invalid_argument("pso: weight vector length does not match the array size");
        }
    }

    void PsoConfig::validate() const
    {
        if (num_particles < 1)
            throw std::invalid_argument("PsoConfig: num_particles must be at least 1");
        if (max_iterations < 1)
            throw std::invalid_argument("PsoConfig: max_iterations must be at least 1");
        if (!(inertia_final > 0.0) || inertia_initial < inertia_final)
            throw std::invalid_argument("PsoConfig: need inertia_initial >= inertia_final > 0");
        if (learn_local < 0.0 || learn_global < 0.0)
            throw std::invalid_argument("PsoConfig: learning factors must be non-negative");
        if (!(penalty_factor >= 0.0))
            throw std::invalid_argument("PsoConfig: penalty_factor must be non-negative");
        if (!(delta_threshold > 0.0))
            throw std::invalid_argument("PsoConfig: delta_threshold must be positive");
        if (stall_patience < 1)
            throw std::invalid_argument("PsoConfig: stall_patience must be at least 1");
    }

    double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b)
    {
        std::uint64_t h = mix(seed);
        h = mix(h ^ stream);
        h = mix(h ^ a);
        h = mix(h ^ b);
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }

    double fitness(const Eigen::VectorXd &rotations_deg, const Eigen::VectorXcd &weights, const Scenario &scenario,
                   const ArrayModel &model, double penalty_factor)
    {
        double min_gain = std::numeric_limits<double>::infinity();
        for (double psi : scenario.desired_angles_deg)
            min_gain = std::min(min_gain, model.gain(weights, rotations_deg, psi));

        const double cap = scenario.eta_max_linear();
        double violating = 0.0;
        for (double psi : scenario.interference_angles_deg)
        {
            const double g = model.gain(weights, rotations_deg, psi);
            if (g > cap)
                violating += g;
        }
        return min_gain - penalty_factor * violating;
    }

    double update_inertia(int t, const PsoConfig &config)
    {
        return config.inertia_initial - (config.inertia_initial - config.inertia_final) * static_cast<double>(t) /
                                            static_cast<double>(config.max_iterations);
    }

    Swarm initialize_swarm(const Eigen::VectorXd &initial_best, const Eigen::VectorXcd &weights, const Scenario &scenario,
                           const ArrayModel &model, const PsoConfig &config)
    {
        config.validate();
        check_shapes(weights, model);
        const auto n = static_cast<Eigen::Index>(model.size());
        if (initial_best.size() != n)
            throw std::invalid_argument("initialize_swarm: initial rotation vector length mismatch");

        const RotationBounds bounds = model.bounds();
        const Eigen::Index num = config.num_particles;

        Swarm swarm;
        swarm.positions.resize(num, n);
        for (Eigen::Index j = 0; j < n; ++j)
            swarm.positions(0, j) = bounds.clamp(initial_best[j]);
        for (Eigen::Index s = 1; s < num; ++s)
            for (Eigen::Index j = 0; j < n; ++j)
                swarm.positions(s, j) = bounds.theta_min_deg +
                                        bounds.width() * counter_uniform(config.rng_seed, 0, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(j));
        swarm.velocities = Eigen::MatrixXd::Zero(num, n);
        swarm.local_best_positions = swarm.positions;
        swarm.local_best_fitness.resize(num);
        for (Eigen::Index s = 0; s < num; ++s)
            swarm.local_best_fitness[s] = fitness(swarm.positions.row(s).transpose(), weights, scenario, model, config.penalty_factor);

        swarm.global_best_index = 0;
        for (Eigen::Index s = 1; s < num; ++s)
            if (swarm.local_best_fitness[s] > swarm.local_best_fitness[swarm.global_best_index])
                swarm.global_best_index = s;
        swarm.global_best_position = swarm.positions.row(swarm.global_best_index).transpose();
        swarm.global_best_fitness = swarm.local_best_fitness[swarm.global_best_index];
        return swarm;
    }

    Swarm step(Swarm swarm, int t, const Eigen::VectorXcd &weights, const Scenario &scenario, const ArrayModel &model,
               const PsoConfig &config)
    {
        const RotationBounds bounds = model.bounds();
        const double v_max = bounds.width();
        const double inertia = update_inertia(t, config);
        const Eigen::Index num = swarm.positions.rows();
        const auto iter = static_cast<std::uint64_t>(t);

        // Every particle moves relative to the bests known at the start of the update
        const Eigen::VectorXd global_best = swarm.global_best_position;
        Eigen::VectorXd new_fitness(num);
        for (Eigen::Index s = 0; s < num; ++s)
        {
            const double r_loc = counter_uniform(config.rng_seed, 1, iter, static_cast<std::uint64_t>(s));
            const double r_glo = counter_uniform(config.rng_seed, 2, iter, static_cast<std::uint64_t>(s));
            for (Eigen::Index j = 0; j < swarm.positions.cols(); ++j)
            {
                const double x = swarm.positions(s, j);
                double v = inertia * swarm.velocities(s, j) +
                           config.learn_local * r_loc * (swarm.local_best_positions(s, j) - x) +
                           config.learn_global * r_glo * (global_best[j] - x);
                v = std::clamp(v, -v_max, v_max);
                swarm.velocities(s, j) = v;
                swarm.positions(s, j) = bounds.clamp(x + v);
            }
            new_fitness[s] = fitness(swarm.positions.row(s).transpose(), weights, scenario, model, config.penalty_factor);
        }

        for (Eigen::Index s = 0; s < num; ++s)
        {
            if (new_fitness[s] > swarm.local_best_fitness[s])
            {
                swarm.local_best_fitness[s] = new_fitness[s];
                swarm.local_best_positions.row(s) = swarm.positions.row(s);
            }
            if (new_fitness[s] > swarm.global_best_fitness)
            {
                swarm.global_best_fitness = new_fitness[s];
                swarm.global_best_position = swarm.positions.row(s).transpose();
                swarm.global_best_index = s;
            }
        }
        return swarm;
    }

    PsoResult optimize_rotations(const Eigen::VectorXcd &weights, const Eigen::VectorXd &initial_best, const Scenario &scenario,
                                 const ArrayModel &model, const PsoConfig &config)
    {
        Swarm swarm = initialize_swarm(initial_best, weights, scenario, model, config);

        PsoResult result;
        double last_best = -std::numeric_limits<double>::infinity();
        int stalled = 0;
        for (int t = 1; t <= config.max_iterations; ++t)
        {
            swarm = step(std::move(swarm), t, weights, scenario, model, config);
            result.iterations = t;
            const double current_best = swarm.global_best_fitness;
            if (current_best - last_best < config.delta_threshold)
            {
                if (++stalled >= config.stall_patience)
                    break;
            }
            else
            {
                last_best = current_best;
                stalled = 0;
            }
        }
        result.rotations_deg = swarm.global_best_position;
        result.fitness = swarm.global_best_fitness;
        return result;
    }
}

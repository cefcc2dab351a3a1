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


#ifndef RA_BEAMKIT_PSO_ROTATION_HPP
#define RA_BEAMKIT_PSO_ROTATION_HPP

#include "ra_beamkit/array_model.hpp"

#include <cstdint>

namespace ra_beamkit
{
    struct PsoConfig
    {
        int num_particles = 200;      // Swarm size S
        int max_iterations = 100;     // T_max
        double inertia_initial = 0.9; // Inertia weight at t = 0
        double inertia_final = 0.2;   // Inertia weight at t = T_max
        double learn_local = 1.4;     // Cognitive factor
        double learn_global = 1.4;    // Social factor
        double penalty_factor = 1e6;  // tau, multiplies the summed violating interference gains
        double delta_threshold = 1e-2;
        int stall_patience = 10;      // Consecutive updates without a delta_threshold rise before stopping
        std::uint64_t rng_seed = 0;

        void validate() const;
    };

    // Positions are stored one particle per row, in degrees
    struct Swarm
    {
        Eigen::MatrixXd positions;
        Eigen::MatrixXd velocities;
        Eigen::MatrixXd local_best_positions;
        Eigen::VectorXd local_best_fitness;
        Eigen::VectorXd global_best_position;
        double global_best_fitness = 0.0;
        Eigen::Index global_best_index = 0;
    };

    struct PsoResult
    {
        Eigen::VectorXd rotations_deg;
        double fitness = 0.0;
        int iterations = 0; // Completed swarm updates
    };

    // Uniform draw on [0, 1) addressed by (seed, stream, a, b). Stateless, so particle updates can
    // be evaluated in any order. Streams used by the swarm:
    //   0: initial positions,  a = particle, b = element
    //   1: cognitive factor,   a = iteration, b = particle
    //   2: social factor,      a = iteration, b = particle
    double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b);

    // Min desired gain minus tau times the sum of interference gains that strictly exceed the cap
    double fitness(const Eigen::VectorXd &rotations_deg, const Eigen::VectorXcd &weights, const Scenario &scenario,
                   const ArrayModel &model, double penalty_factor);

    // Linear decay from inertia_initial (t = 0) to inertia_final (t = T_max)
    double update_inertia(int t, const PsoConfig &config);

    // Particle 0 starts at initial_best (clamped into the rotation bounds); the others are uniform
    // in the bounds. Velocities start at zero.
    Swarm initialize_swarm(const Eigen::VectorXd &initial_best, const Eigen::VectorXcd &weights, const Scenario &scenario,
                           const ArrayModel &model, const PsoConfig &config);

    // One synchronous swarm update at iteration t (1-based). Velocities are clamped to the width of
    // the rotation interval and positions are projected onto it. Bests are replaced only on strict
    // improvement, folding in particle-index order.
    Swarm step(Swarm swarm, int t, const Eigen::VectorXcd &weights, const Scenario &scenario, const ArrayModel &model,
               const PsoConfig &config);

    // Full swarm search over the rotation box for fixed weights. Stops after T_max updates or once
    // stall_patience consecutive updates pass without the global best rising delta_threshold above
    // the last recorded level. stall_patience = 1 stops at the first such update.
    PsoResult optimize_rotations(const Eigen::VectorXcd &weights, const Eigen::VectorXd &initial_best, const Scenario &scenario,
                                 const ArrayModel &model, const PsoConfig &config);
}

#endif

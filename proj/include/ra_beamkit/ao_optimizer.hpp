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


#ifndef RA_BEAMKIT_AO_OPTIMIZER_HPP
#define RA_BEAMKIT_AO_OPTIMIZER_HPP

#include "ra_beamkit/array_model.hpp"
#include "ra_beamkit/pso_rotation.hpp"
#include "ra_beamkit/sca_beamformer.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace ra_beamkit
{
    struct AoConfig
    {
        ScaConfig sca;
        PsoConfig pso;
        double delta_threshold = 1e-2; // Outer stop: increase of the min desired gain per round
        int max_outer_iterations = 50;

        void validate() const;
    };

    enum class Scheme
    {
        ra,  // Rotatable antennas: weights and rotations optimized
        foa, // Fixed orientation: rotations pinned at 0
        ia   // Isotropic elements: unit directive gain
    };

    const char *to_string(Scheme scheme);

    // Accepts "RA"/"FOA"/"IA" in any case; throws std::invalid_argument otherwise
    Scheme parse_scheme(std::string_view name);

    struct RunReport
    {
        BeamformerState final_state;
        double min_desired_gain = 0.0;      // Linear
        double max_interference_gain = 0.0; // Linear, 0 without interference directions
        std::vector<double> desired_gains;
        std::vector<double> interference_gains;
        std::vector<double> objective_history; // True min desired gain after each outer round
        int outer_iterations = 0;
        bool converged = false;
        Scheme scheme = Scheme::ra;
        std::uint64_t seed = 0;
    };

    // Equal-magnitude weights (1/sqrt(N) each) with phases uniform on [0, 2 pi), drawn from seed
    Eigen::VectorXcd random_phase_weights(std::size_t num_antennas, std::uint64_t seed);

    // Random-phase weights with every rotation at 0
    BeamformerState default_initial_state(const ArrayGeometry &geometry, std::uint64_t seed);

    // Closed form for one desired direction and no interference: MRC weights a/||a|| and every
    // element's boresight turned towards the target, clamped into the rotation bounds.
    BeamformerState solve_single_beam(double theta_desired_deg, const RadiationPattern &pattern, const ArrayGeometry &geometry);

    // Alternates SCA weight updates and PSO rotation updates. The PSO seed of round m is derived
    // from config.pso.rng_seed, which is also reported as the run seed.
    RunReport solve_ra(const Scenario &scenario, const RadiationPattern &pattern, const ArrayGeometry &geometry,
                       const BeamformerState &initial, const AoConfig &config);

    RunReport solve_foa(const Scenario &scenario, const RadiationPattern &pattern, const ArrayGeometry &geometry,
                        const Eigen::VectorXcd &initial_weights, const AoConfig &config);

    RunReport solve_ia(const Scenario &scenario, const ArrayGeometry &geometry, const Eigen::VectorXcd &initial_weights,
                       const AoConfig &config);

    // Runs one scheme from the default initial state for the given seed
    RunReport solve_scheme(Scheme scheme, const Scenario &scenario, const RadiationPattern &pattern, const ArrayGeometry &geometry,
                           std::uint64_t seed, AoConfig config);

    // Model the given scheme evaluates gains with (isotropic elements for IA)
    ArrayModel model_for(Scheme scheme, const RadiationPattern &pattern, const ArrayGeometry &geometry);
}

#endif

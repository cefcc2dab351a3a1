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


#ifndef RA_BEAMKIT_SCA_BEAMFORMER_HPP
#define RA_BEAMKIT_SCA_BEAMFORMER_HPP

#include "ra_beamkit/array_model.hpp"
#include "ra_beamkit/convex_core.hpp"

#include <vector>

namespace ra_beamkit
{
    struct ScaConfig
    {
        double delta_threshold = 1e-2;     // Stop once the subproblem optimum rises by less than this
        int max_iterations = 100;
        double subproblem_tolerance = 1e-7; // Duality gap target of each convex solve

        void validate() const;
    };

    struct ScaReport
    {
        Eigen::VectorXcd weights;
        std::vector<double> objective_history; // Optimal t of each convex subproblem
        int iterations = 0;
        bool converged = false;
    };

    // First-order minorant of |v^H w|^2 around the expansion point w0:
    //   2 Re{w0^H v v^H w} - |v^H w0|^2
    // Tight at w = w0; the gap to the true gain is |v^H (w - w0)|^2.
    double surrogate_gain(const Eigen::VectorXcd &weights, const Eigen::VectorXcd &expansion_point, const Eigen::VectorXcd &composite_v);

    // Builds the convex subproblem for fixed rotations, linearized at expansion_point
    EpigraphProblem build_subproblem(const Eigen::VectorXcd &expansion_point, const Eigen::VectorXd &rotations_deg,
                                     const Scenario &scenario, const ArrayModel &model);

    // Successive convex approximation of the max-min weight problem with the rotations held fixed.
    // The initial weights must be nonzero with norm <= 1; a zero expansion point makes every
    // minorant vanish and is rejected with std::invalid_argument.
    // Throws std::runtime_error if a subproblem is reported infeasible.
    ScaReport optimize_weights(const BeamformerState &state, const Scenario &scenario, const ArrayModel &model, const ScaConfig &config);
}

#endif

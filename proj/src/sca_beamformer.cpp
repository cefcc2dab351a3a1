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


#include "ra_beamkit/sca_beamformer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ra_beamkit
{
    namespace
    {
        constexpr double feasibility_slack = 1e-8;

        struct TrueObjective
        {
            double min_desired;
            bool feasible;
        };

        TrueObjective evaluate(const Eigen::VectorXcd &w, const Eigen::VectorXd &rotations, const Scenario &scenario, const ArrayModel &model)
        {
            const BeamformerState state{w, rotations};
            const auto gains = direction_gains(model, state, scenario);
            const bool feasible = w.norm() <= 1.0 + feasibility_slack &&
                                  gains.max_interference() <= scenario.eta_max_linear() + feasibility_slack;
            return {gains.min_desired(), feasible};
        }
    }

    void ScaConfig::validate() const
    {
        if (!(delta_threshold > 0.0))
            throw std::invalid_argument("ScaConfig: delta_threshold must be positive");
        if (max_iterations < 1)
            throw std::invalid_argument("ScaConfig: max_iterations must be at least 1");
        if (!(subproblem_tolerance > 0.0))
            throw std::invalid_argument("ScaConfig: subproblem_tolerance must be positive");
    }

    double surrogate_gain(const Eigen::VectorXcd &weights, const Eigen::VectorXcd &expansion_point, const Eigen::VectorXcd &composite_v)
    {
        if (weights.size() != expansion_point.size() || weights.size() != composite_v.size())
            throw std::invalid_argument("surrogate_gain: vector length mismatch");
        // w0^H v v^H w = conj(v^H w0) * (v^H w)
        const std::complex<double> vw0 = composite_v.dot(expansion_point);
        const std::complex<double> vw = composite_v.dot(weights);
        return 2.0 * (std::conj(vw0) * vw).real() - std::norm(vw0);
    }

    EpigraphProblem build_subproblem(const Eigen::VectorXcd &expansion_point, const Eigen::VectorXd &rotations_deg,
                                     const Scenario &scenario, const ArrayModel &model)
    {
        EpigraphProblem problem;
        problem.quad_cap = scenario.eta_max_linear();
        problem.ball_radius = 1.0;
        for (double psi : scenario.desired_angles_deg)
        {
            const Eigen::VectorXcd v = model.response(rotations_deg, psi);
            const std::complex<double> vw0 = v.dot(expansion_point);
            // c_k = v v^H w0 so that Re{c_k^H w} = Re{w0^H v v^H w}
            problem.linear_terms.push_back(v * vw0);
            problem.offsets.push_back(std::norm(vw0));
        }
        for (double psi : scenario.interference_angles_deg)
            problem.quad_vectors.push_back(model.response(rotations_deg, psi));
        return problem;
    }

    ScaReport optimize_weights(const BeamformerState &state, const Scenario &scenario, const ArrayModel &model, const ScaConfig &config)
    {
        config.validate();
        scenario.validate();
        if (static_cast<std::size_t>(state.weights.size()) != model.size() ||
            static_cast<std::size_t>(state.rotations_deg.size()) != model.size())
            throw std::invalid_argument("optimize_weights: state size does not match the array");
        if (state.weights.norm() == 0.0)
            throw std::invalid_argument("optimize_weights: initial weights must be nonzero");
        if (state.weights.norm() > 1.0 + feasibility_slack)
            throw std::invalid_argument("optimize_weights: initial weights exceed unit norm");

        EpigraphSolver solver;
        ScaReport report;
        Eigen::VectorXcd current = state.weights;
        double previous_t = -std::numeric_limits<double>::infinity();

        for (int i = 1; i <= config.max_iterations; ++i)
        {
            const EpigraphProblem problem = build_subproblem(current, state.rotations_deg, scenario, model);
            const ConvexSolution sol = solver.solve(problem, current, config.subproblem_tolerance);
            if (sol.status == SolveStatus::infeasible)
                throw std::runtime_error("optimize_weights: convex subproblem reported infeasible");

            current = sol.weights;
            report.objective_history.push_back(sol.objective);
            report.iterations = i;
            if (sol.objective - previous_t < config.delta_threshold)
            {
                report.converged = true;
                break;
            }
            previous_t = sol.objective;
        }

        // Never hand back something worse than a feasible starting point
        const TrueObjective start = evaluate(state.weights, state.rotations_deg, scenario, model);
        const TrueObjective result = evaluate(current, state.rotations_deg, scenario, model);
        if (start.feasible && (!result.feasible || result.min_desired < start.min_desired))
            current = state.weights;

        report.weights = std::move(current);
        return report;
    }
}

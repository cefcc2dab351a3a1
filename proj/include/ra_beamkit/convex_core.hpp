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


#ifndef RA_BEAMKIT_CONVEX_CORE_HPP
#define RA_BEAMKIT_CONVEX_CORE_HPP

#include <Eigen/Dense>

#include <vector>

namespace ra_beamkit
{
    // Epigraph form of the per-iteration beamforming subproblem:
    //
    //   maximize    t
    //   subject to  2 Re{c_k^H w} - b_k >= t,   k = 1..K
    //               |v_l^H w|^2 <= quad_cap,    l = 1..L
    //               ||w||_2 <= ball_radius
    struct EpigraphProblem
    {
        std::vector<Eigen::VectorXcd> linear_terms; // c_k
        std::vector<double> offsets;                // b_k
        std::vector<Eigen::VectorXcd> quad_vectors; // v_l
        double quad_cap = 1.0;                      // eta
        double ball_radius = 1.0;

        Eigen::Index dimension() const;

        // Throws std::invalid_argument on empty K, mismatched counts or vector lengths
        void validate() const;

        // Affine value 2 Re{c_k^H w} - b_k for every k
        std::vector<double> linear_values(const Eigen::VectorXcd &w) const;

        // Largest violation of the quadratic and ball constraints (0 when feasible)
        double constraint_violation(const Eigen::VectorXcd &w) const;
    };

    enum class SolveStatus
    {
        optimal,
        max_iterations,
        infeasible
    };

    const char *to_string(SolveStatus status);

    struct ConvexSolution
    {
        Eigen::VectorXcd weights;
        double objective = 0.0;            // min_k (2 Re{c_k^H w} - b_k) at the returned weights
        double feasibility_residual = 0.0; // constraint_violation() at the returned weights
        double duality_gap = 0.0;          // Upper bound on (optimum - objective) from the barrier path
        SolveStatus status = SolveStatus::optimal;
        int newton_steps = 0;
    };

    struct BarrierOptions
    {
        double barrier_growth = 20.0;  // Multiplier applied to the barrier weight after each centering
        int max_newton_steps = 600;    // Total budget across all centering steps
        double centering_tolerance = 1e-10;
    };

    // Log-barrier interior point solver working on the real-stacked variables [Re w; Im w; t].
    // Every iterate is strictly feasible, so the returned weights satisfy all constraints and the
    // returned objective is a lower bound on the optimum within duality_gap.
    // Each instance owns its scratch buffers; use one instance per thread.
    class EpigraphSolver
    {
    public:
        explicit EpigraphSolver(BarrierOptions options = {}) : options_(options) {}

        // warm_start may be any vector of length N (it is shrunk into the interior if needed).
        // tolerance bounds the final duality gap. Returns status infeasible, with zero weights,
        // when the constraint set has no interior (quad_cap <= 0 or ball_radius <= 0).
        ConvexSolution solve(const EpigraphProblem &problem, const Eigen::VectorXcd &warm_start, double tolerance);

    private:
        struct Workspace
        {
            Eigen::MatrixXd lin_dirs;  // 2N x K, real stacking of c_k
            Eigen::MatrixXd quad_re;   // 2N x L, p_l with Re{v_l^H w} = p_l^T x
            Eigen::MatrixXd quad_im;   // 2N x L, q_l with Im{v_l^H w} = q_l^T x
            Eigen::VectorXd offsets;   // K
            Eigen::MatrixXd hessian;   // (2N+1)^2
            Eigen::VectorXd gradient;  // 2N+1
        };

        // Barrier value -sum(log(-f_i)) at z, or +inf outside the interior
        double barrier(const Eigen::VectorXd &z, double quad_cap, double radius_sq) const;
        void assemble(const Eigen::VectorXd &z, double weight, double quad_cap, double radius_sq);

        BarrierOptions options_;
        Workspace ws_;
    };

    ConvexSolution solve_epigraph(const EpigraphProblem &problem, const Eigen::VectorXcd &warm_start, double tolerance);
}

#endif

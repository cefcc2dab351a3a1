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


#include "ra_beamkit/convex_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ra_beamkit
{
    namespace
    {
        constexpr double inf = std::numeric_limits<double>::infinity();

        Eigen::VectorXd stack(const Eigen::VectorXcd &w)
        {
            Eigen::VectorXd x(2 * w.size());
            x << w.real(), w.imag();
            return x;
        }

        Eigen::VectorXcd unstack(const Eigen::VectorXd &z, Eigen::Index n)
        {
            Eigen::VectorXcd w(n);
            for (Eigen::Index i = 0; i < n; ++i)
                w[i] = {z[i], z[n + i]};
            return w;
        }
    }

    const char *to_string(SolveStatus status)
    {
        switch (status)
        {
        case SolveStatus::optimal:
            return "optimal";
        case SolveStatus::max_iterations:
            return "max_iterations";
        case SolveStatus::infeasible:
            return "infeasible";
        }
        return "unknown";
    }

    Eigen::Index EpigraphProblem::dimension() const
    {
        return linear_terms.empty() ? 0 : linear_terms.front().size();
    }

    void EpigraphProblem::validate() const
    {
        if (linear_terms.empty())
            throw std::invalid_argument("EpigraphProblem: at least one linear term is required");
        if (offsets.size() != linear_terms.size())
            throw std::invalid_argument("EpigraphProblem: offsets and linear_terms differ in length");
        const Eigen::Index n = dimension();
        if (n < 1)
            throw std::invalid_argument("EpigraphProblem: vectors must be non-empty");
        for (const auto &c : linear_terms)
            if (c.size() != n)
                throw std::invalid_argument("EpigraphProblem: linear term length mismatch");
        for (const auto &v : quad_vectors)
            if (v.size() != n)
                throw std::invalid_argument("EpigraphProblem: quadratic vector length mismatch");
    }

    std::vector<double> EpigraphProblem::linear_values(const Eigen::VectorXcd &w) const
    {
        std::vector<double> out(linear_terms.size());
        for (std::size_t k = 0; k < linear_terms.size(); ++k)
            out[k] = 2.0 * linear_terms[k].dot(w).real() - offsets[k];
        return out;
    }

    double EpigraphProblem::constraint_violation(const Eigen::VectorXcd &w) const
    {
        double worst = std::max(0.0, w.norm() - ball_radius);
        for (const auto &v : quad_vectors)
            worst = std::max(worst, std::norm(v.dot(w)) - quad_cap);
        return worst;
    }

    double EpigraphSolver::barrier(const Eigen::VectorXd &z, double quad_cap, double radius_sq) const
    {
        const Eigen::Index nx = z.size() - 1;
        const auto x = z.head(nx);
        const double t = z[nx];

        double value = 0.0;
        for (Eigen::Index k = 0; k < ws_.lin_dirs.cols(); ++k)
        {
            const double slack = 2.0 * ws_.lin_dirs.col(k).dot(x) - ws_.offsets[k] - t;
            if (!(slack > 0.0))
                return inf;
            value -= std::log(slack);
        }
        for (Eigen::Index l = 0; l < ws_.quad_re.cols(); ++l)
        {
            const double re = ws_.quad_re.col(l).dot(x);
            const double im = ws_.quad_im.col(l).dot(x);
            const double slack = quad_cap - re * re - im * im;
            if (!(slack > 0.0))
                return inf;
            value -= std::log(slack);
        }
        const double slack = radius_sq - x.squaredNorm();
        if (!(slack > 0.0))
            return inf;
        return value - std::log(slack);
    }

    void EpigraphSolver::assemble(const Eigen::VectorXd &z, double weight, double quad_cap, double radius_sq)
    {
        const Eigen::Index nz = z.size();
        const Eigen::Index nx = nz - 1;
        const auto x = z.head(nx);
        const double t = z[nx];

        auto &H = ws_.hessian;
        auto &g = ws_.gradient;
        H.setZero(nz, nz);
        g.setZero(nz);
        g[nx] = -weight;

        // Linear constraints f_k = t - 2 a_k^T x + b_k, gradient d_k = [-2 a_k; 1]
        Eigen::VectorXd d(nz);
        for (Eigen::Index k = 0; k < ws_.lin_dirs.cols(); ++k)
        {
            const double slack = 2.0 * ws_.lin_dirs.col(k).dot(x) - ws_.offsets[k] - t;
            d.head(nx) = -2.0 * ws_.lin_dirs.col(k);
            d[nx] = 1.0;
            g += d / slack;
            H.selfadjointView<Eigen::Lower>().rankUpdate(d, 1.0 / (slack * slack));
        }

        // Interference constraints g_l = (p^T x)^2 + (q^T x)^2 - eta
        Eigen::VectorXd grad_x(nx);
        for (Eigen::Index l = 0; l < ws_.quad_re.cols(); ++l)
        {
            const auto p = ws_.quad_re.col(l);
            const auto q = ws_.quad_im.col(l);
            const double re = p.dot(x);
            const double im = q.dot(x);
            const double slack = quad_cap - re * re - im * im;
            grad_x = 2.0 * (re * p + im * q);
            g.head(nx) += grad_x / slack;
            auto Hx = H.topLeftCorner(nx, nx).selfadjointView<Eigen::Lower>();
            Hx.rankUpdate(grad_x, 1.0 / (slack * slack));
            Hx.rankUpdate(p, 2.0 / slack);
            Hx.rankUpdate(q, 2.0 / slack);
        }

        // Ball constraint x^T x - R^2
        const double slack = radius_sq - x.squaredNorm();
        g.head(nx) += 2.0 * x / slack;
        H.topLeftCorner(nx, nx).selfadjointView<Eigen::Lower>().rankUpdate(x, 4.0 / (slack * slack));
        H.topLeftCorner(nx, nx).diagonal().array() += 2.0 / slack;
    }

    ConvexSolution EpigraphSolver::solve(const EpigraphProblem &problem, const Eigen::VectorXcd &warm_start, double tolerance)
    {
        problem.validate();
        const Eigen::Index n = problem.dimension();
        if (warm_start.size() != n)
            throw std::invalid_argument("EpigraphSolver: warm start length mismatch");
        if (!(tolerance > 0.0))
            throw std::invalid_argument("EpigraphSolver: tolerance must be positive");

        ConvexSolution out;
        if (!(problem.quad_cap > 0.0) || !(problem.ball_radius > 0.0))
        {
            out.weights = Eigen::VectorXcd::Zero(n);
            out.feasibility_residual = std::max({0.0, -problem.quad_cap, -problem.ball_radius});
            out.objective = -inf;
            out.duality_gap = inf;
            out.status = SolveStatus::infeasible;
            return out;
        }

        const std::size_t num_lin = problem.linear_terms.size();
        const std::size_t num_quad = problem.quad_vectors.size();
        const Eigen::Index nx = 2 * n;

        ws_.lin_dirs.resize(nx, static_cast<Eigen::Index>(num_lin));
        ws_.offsets.resize(static_cast<Eigen::Index>(num_lin));
        for (std::size_t k = 0; k < num_lin; ++k)
        {
            ws_.lin_dirs.col(static_cast<Eigen::Index>(k)) = stack(problem.linear_terms[k]);
            ws_.offsets[static_cast<Eigen::Index>(k)] = problem.offsets[k];
        }
        ws_.quad_re.resize(nx, static_cast<Eigen::Index>(num_quad));
        ws_.quad_im.resize(nx, static_cast<Eigen::Index>(num_quad));
        for (std::size_t l = 0; l < num_quad; ++l)
        {
            const auto &v = problem.quad_vectors[l];
            const auto col = static_cast<Eigen::Index>(l);
            ws_.quad_re.col(col) << v.real(), v.imag();
            ws_.quad_im.col(col) << -v.imag(), v.real();
        }

        const double quad_cap = problem.quad_cap;
        const double radius_sq = problem.ball_radius * problem.ball_radius;

        // Shrink the warm start into the strict interior; w = 0 is always interior
        Eigen::VectorXcd w0 = warm_start;
        double shrink = 1.0;
        const double w0_norm = w0.norm();
        if (w0_norm >= 0.99 * problem.ball_radius)
            shrink = 0.99 * problem.ball_radius / w0_norm;
        for (const auto &v : problem.quad_vectors)
        {
            const double q = std::norm(v.dot(w0));
            if (shrink * shrink * q >= 0.98 * quad_cap)
                shrink = std::min(shrink, std::sqrt(0.98 * quad_cap / q));
        }
        w0 *= shrink;

        const auto lin0 = problem.linear_values(w0);
        const double min_lin0 = *std::min_element(lin0.begin(), lin0.end());

        Eigen::VectorXd z(nx + 1);
        z.head(nx) = stack(w0);
        z[nx] = min_lin0 - std::max(1.0, 0.1 * std::abs(min_lin0));

        const double num_constraints = static_cast<double>(num_lin + num_quad + 1);
        double weight = num_constraints / std::max(1.0, std::abs(min_lin0));
        int steps = 0;
        bool budget_exhausted = false;

        Eigen::VectorXd dz(nx + 1), z_try(nx + 1);
        Eigen::LDLT<Eigen::MatrixXd> ldlt;
        while (true)
        {
            // Centering: Newton's method on -weight * t + barrier
            double last_decrement = inf;
            while (steps < options_.max_newton_steps)
            {
                assemble(z, weight, quad_cap, radius_sq);
                ldlt.compute(ws_.hessian.selfadjointView<Eigen::Lower>());
                dz = ldlt.solve(-ws_.gradient);
                const double slope = ws_.gradient.dot(dz);
                ++steps;
                const double decrement = -slope / 2.0;
                if (!std::isfinite(slope) || decrement <= options_.centering_tolerance)
                    break;
                // Past the quadratic phase the decrement only stalls at the rounding floor
                if (decrement < 1e-6 && decrement > 0.5 * last_decrement)
                    break;
                last_decrement = decrement;

                const double b0 = barrier(z, quad_cap, radius_sq);
                double alpha = 1.0;
                bool accepted = false;
                while (alpha > 1e-14)
                {
                    z_try = z + alpha * dz;
                    const double b1 = barrier(z_try, quad_cap, radius_sq);
                    if (std::isfinite(b1))
                    {
                        const double change = -weight * alpha * dz[nx] + (b1 - b0);
                        if (change <= 0.25 * alpha * slope)
                        {
                            accepted = true;
                            break;
                        }
                    }
                    alpha *= 0.5;
                }
                if (!accepted)
                    break; // no further progress at working precision
                z = z_try;
            }
            if (steps >= options_.max_newton_steps)
            {
                budget_exhausted = true;
                break;
            }
            if (num_constraints / weight <= tolerance)
                break;
            weight *= options_.barrier_growth;
        }

        out.weights = unstack(z, n);
        const auto lin = problem.linear_values(out.weights);
        out.objective = *std::min_element(lin.begin(), lin.end());
        out.feasibility_residual = problem.constraint_violation(out.weights);
        out.duality_gap = num_constraints / weight;
        out.newton_steps = steps;
        out.status = budget_exhausted ? SolveStatus::max_iterations : SolveStatus::optimal;
        return out;
    }

    ConvexSolution solve_epigraph(const EpigraphProblem &problem, const Eigen::VectorXcd &warm_start, double tolerance)
    {
        EpigraphSolver solver;
        return solver.solve(problem, warm_start, tolerance);
    }
}

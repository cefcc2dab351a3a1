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


#include "ra_beamkit/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ra_beamkit
{
    namespace
    {
        constexpr double deg_to_rad = std::numbers::pi / 180.0;
        constexpr double db_floor = -300.0;

        void check_angle(double angle_deg, const char *what)
        {
            if (!std::isfinite(angle_deg) || angle_deg < 0.0 || angle_deg > 180.0)
                throw std::invalid_argument(std::string(what) + " angle " + std::to_string(angle_deg) + " is outside [0, 180] degrees");
        }
    }

    void RadiationPattern::validate() const
    {
        if (!(max_gain_dbi > 0.0) || !(beamwidth_3db_deg > 0.0) || !(sidelobe_limit_db > 0.0) || !(front_to_back_db > 0.0))
            throw std::invalid_argument("RadiationPattern: all fields must be strictly positive");
    }

    void ArrayGeometry::validate() const
    {
        if (num_antennas < 1)
            throw std::invalid_argument("ArrayGeometry: num_antennas must be at least 1");
        if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
            throw std::invalid_argument("ArrayGeometry: spacing_wavelengths must be positive");
    }

    double RotationBounds::clamp(double theta_deg) const
    {
        return std::clamp(theta_deg, theta_min_deg, theta_max_deg);
    }

    double Scenario::eta_max_linear() const
    {
        return db_to_linear(eta_max_db);
    }

    void Scenario::validate() const
    {
        if (desired_angles_deg.empty())
            throw std::invalid_argument("Scenario: at least one desired direction is required");
        for (double a : desired_angles_deg)
            check_angle(a, "desired");
        for (double a : interference_angles_deg)
            check_angle(a, "interference");
        for (double a : desired_angles_deg)
            if (std::find(interference_angles_deg.begin(), interference_angles_deg.end(), a) != interference_angles_deg.end())
                throw std::invalid_argument("Scenario: angle " + std::to_string(a) + " is both desired and interference");
        if (!std::isfinite(eta_max_db))
            throw std::invalid_argument("Scenario: eta_max_db must be finite");
    }

    double db_to_linear(double db)
    {
        return std::pow(10.0, db / 10.0);
    }

    double linear_to_db(double linear)
    {
        if (!(linear > 0.0))
            return db_floor;
        return std::max(10.0 * std::log10(linear), db_floor);
    }

    double element_gain_dbi(const RadiationPattern &pattern, double steer_deg)
    {
        const double x = (steer_deg - 90.0) / pattern.beamwidth_3db_deg;
        const double vertical_attenuation = std::min(12.0 * x * x, pattern.sidelobe_limit_db);
        return pattern.max_gain_dbi - std::min(vertical_attenuation, pattern.front_to_back_db);
    }

    double element_gain_linear(const RadiationPattern &pattern, double steer_deg)
    {
        return db_to_linear(element_gain_dbi(pattern, steer_deg));
    }

    RotationBounds rotation_bounds(const RadiationPattern &pattern)
    {
        const double half_range = pattern.beamwidth_3db_deg * std::sqrt(pattern.sidelobe_limit_db / 12.0);
        return {90.0 - half_range, 90.0 + half_range};
    }

    Eigen::VectorXd effective_gain_vector(const RadiationPattern &pattern, const Eigen::VectorXd &rotations_deg, double psi_deg)
    {
        Eigen::VectorXd g(rotations_deg.size());
        for (Eigen::Index n = 0; n < rotations_deg.size(); ++n)
        {
            // sqrt(10^(G/10)) = 10^(G/20)
            g[n] = std::pow(10.0, element_gain_dbi(pattern, psi_deg - rotations_deg[n]) / 20.0);
        }
        return g;
    }

    Eigen::VectorXcd steering_vector(const ArrayGeometry &geometry, double psi_deg)
    {
        const auto n_el = static_cast<Eigen::Index>(geometry.num_antennas);
        const double phase_step = 2.0 * std::numbers::pi * geometry.spacing_wavelengths * std::cos(psi_deg * deg_to_rad);
        Eigen::VectorXcd a(n_el);
        for (Eigen::Index n = 0; n < n_el; ++n)
            a[n] = std::polar(1.0, phase_step * static_cast<double>(n));
        return a;
    }

    Eigen::VectorXcd composite_response(const RadiationPattern &pattern, const ArrayGeometry &geometry,
                                        const Eigen::VectorXd &rotations_deg, double psi_deg)
    {
        if (static_cast<std::size_t>(rotations_deg.size()) != geometry.num_antennas)
            throw std::invalid_argument("composite_response: rotation vector length does not match the array size");
        const Eigen::VectorXd g = effective_gain_vector(pattern, rotations_deg, psi_deg);
        return steering_vector(geometry, psi_deg).cwiseProduct(g.cast<std::complex<double>>());
    }

    double array_gain(const Eigen::VectorXcd &weights, const RadiationPattern &pattern, const ArrayGeometry &geometry,
                      const Eigen::VectorXd &rotations_deg, double psi_deg)
    {
        if (static_cast<std::size_t>(weights.size()) != geometry.num_antennas)
            throw std::invalid_argument("array_gain: weight vector length does not match the array size");
        return std::norm(weights.dot(composite_response(pattern, geometry, rotations_deg, psi_deg)));
    }

    double full_array_gain(const RadiationPattern &pattern, const ArrayGeometry &geometry)
    {
        return static_cast<double>(geometry.num_antennas) * db_to_linear(pattern.max_gain_dbi);
    }

    Eigen::VectorXcd ArrayModel::response(const Eigen::VectorXd &rotations_deg, double psi_deg) const
    {
        if (kind == ElementKind::isotropic)
            return steering_vector(geometry, psi_deg);
        return composite_response(pattern, geometry, rotations_deg, psi_deg);
    }

    double ArrayModel::gain(const Eigen::VectorXcd &weights, const Eigen::VectorXd &rotations_deg, double psi_deg) const
    {
        if (static_cast<std::size_t>(weights.size()) != geometry.num_antennas)
            throw std::invalid_argument("ArrayModel::gain: weight vector length does not match the array size");
        return std::norm(weights.dot(response(rotations_deg, psi_deg)));
    }

    void ArrayModel::validate() const
    {
        pattern.validate();
        geometry.validate();
    }

    double DirectionGains::min_desired() const
    {
        if (desired.empty())
            return 0.0;
        return *std::min_element(desired.begin(), desired.end());
    }

    double DirectionGains::max_interference() const
    {
        if (interference.empty())
            return 0.0;
        return *std::max_element(interference.begin(), interference.end());
    }

    DirectionGains direction_gains(const ArrayModel &model, const BeamformerState &state, const Scenario &scenario)
    {
        DirectionGains out;
        out.desired.reserve(scenario.desired_angles_deg.size());
        out.interference.reserve(scenario.interference_angles_deg.size());
        for (double psi : scenario.desired_angles_deg)
            out.desired.push_back(model.gain(state, psi));
        for (double psi : scenario.interference_angles_deg)
            out.interference.push_back(model.gain(state, psi));
        return out;
    }

    Eigen::VectorXcd weights_from_phases(const Eigen::VectorXd &phases_rad)
    {
        const double scale = 1.0 / std::sqrt(static_cast<double>(phases_rad.size()));
        Eigen::VectorXcd w(phases_rad.size());
        for (Eigen::Index n = 0; n < phases_rad.size(); ++n)
            w[n] = std::polar(scale, phases_rad[n]);
        return w;
    }
}

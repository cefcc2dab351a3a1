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

#ifndef RA_BEAMKIT_ARRAY_MODEL_HPP
#define RA_BEAMKIT_ARRAY_MODEL_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace ra_beamkit
{
    // All public angles are in degrees. All gains are linear unless the name says dB.

    // Vertical cut of the 3GPP element pattern (quadratic roll-off, side-lobe clamp, front-to-back clamp)
    struct RadiationPattern
    {
        double max_gain_dbi = 8.0;       // Boresight gain [dBi]
        double beamwidth_3db_deg = 65.0; // Vertical 3 dB beamwidth [deg]
        double sidelobe_limit_db = 30.0; // Side-lobe level limit [dB]
        double front_to_back_db = 30.0;  // Front-to-back ratio [dB]

        // Throws std::invalid_argument unless all fields are strictly positive
        void validate() const;
    };

    // Uniform linear array
    struct ArrayGeometry
    {
        std::size_t num_antennas = 15;
        double spacing_wavelengths = 0.5; // Element spacing d / lambda

        void validate() const;
    };

    // Admissible rotation interval, derived from the pattern only
    struct RotationBounds
    {
        double theta_min_deg = 0.0;
        double theta_max_deg = 0.0;

        bool contains(double theta_deg) const { return theta_deg >= theta_min_deg && theta_deg <= theta_max_deg; }
        double clamp(double theta_deg) const;
        double width() const { return theta_max_deg - theta_min_deg; }
    };

    // Antenna weight vector (AWV) and antenna rotation angle vector (ARAV)
    struct BeamformerState
    {
        Eigen::VectorXcd weights;
        Eigen::VectorXd rotations_deg;
    };

    struct Scenario
    {
        std::vector<double> desired_angles_deg;      // Signal directions, each in [0, 180]
        std::vector<double> interference_angles_deg; // Interference directions, each in [0, 180]
        double eta_max_db = -10.0;                   // Cap on the array gain towards each interference direction

        double eta_max_linear() const;

        // Throws std::invalid_argument if the desired set is empty, an angle is outside [0, 180]
        // or the two sets share an angle
        void validate() const;
    };

    double db_to_linear(double db);

    // 10*log10(x), floored at -300 dB so that zero gain stays finite
    double linear_to_db(double linear);

    // Element gain for a relative steering angle (psi - theta_n). Applied verbatim, no angle wrapping.
    double element_gain_dbi(const RadiationPattern &pattern, double steer_deg);
    double element_gain_linear(const RadiationPattern &pattern, double steer_deg);

    RotationBounds rotation_bounds(const RadiationPattern &pattern);

    // Entry n is sqrt(element_gain_linear(psi - theta_n))
    Eigen::VectorXd effective_gain_vector(const RadiationPattern &pattern, const Eigen::VectorXd &rotations_deg, double psi_deg);

    // Entry n (0-based) is exp(j * 2 pi * d/lambda * n * cos(psi)); element 0 is the phase reference
    Eigen::VectorXcd steering_vector(const ArrayGeometry &geometry, double psi_deg);

    // Element-wise product of effective gain vector and steering vector
    Eigen::VectorXcd composite_response(const RadiationPattern &pattern, const ArrayGeometry &geometry,
                                        const Eigen::VectorXd &rotations_deg, double psi_deg);

    // |w^H (g .* a)|^2
    double array_gain(const Eigen::VectorXcd &weights, const RadiationPattern &pattern, const ArrayGeometry &geometry,
                      const Eigen::VectorXd &rotations_deg, double psi_deg);

    // N * 10^(G_max / 10): full beamforming gain times full directive gain
    double full_array_gain(const RadiationPattern &pattern, const ArrayGeometry &geometry);

    enum class ElementKind
    {
        directional, // 3GPP element pattern, rotation-dependent
        isotropic    // Unit directive gain in every direction, rotation ignored
    };

    // Array description shared by all optimizers. The isotropic kind backs the IA baseline.
    struct ArrayModel
    {
        RadiationPattern pattern;
        ArrayGeometry geometry;
        ElementKind kind = ElementKind::directional;

        std::size_t size() const { return geometry.num_antennas; }
        RotationBounds bounds() const { return rotation_bounds(pattern); }

        Eigen::VectorXcd response(const Eigen::VectorXd &rotations_deg, double psi_deg) const;
        double gain(const Eigen::VectorXcd &weights, const Eigen::VectorXd &rotations_deg, double psi_deg) const;
        double gain(const BeamformerState &state, double psi_deg) const { return gain(state.weights, state.rotations_deg, psi_deg); }

        void validate() const;
    };

    // Array gains towards each desired and each interference direction of a scenario
    struct DirectionGains
    {
        std::vector<double> desired;
        std::vector<double> interference;

        double min_desired() const;
        double max_interference() const; // 0 when there are no interference directions
    };

    DirectionGains direction_gains(const ArrayModel &model, const BeamformerState &state, const Scenario &scenario);

    // Unit-modulus weights with the given phases, scaled to unit Euclidean norm
    Eigen::VectorXcd weights_from_phases(const Eigen::VectorXd &phases_rad);
}

#endif

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
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ra_beamkit;
using doctest::Approx;

// Constants from tests/oracles/scalar_reference.py (40-digit evaluation)
constexpr double gain_dbi_at_0 = -15.005917159763313609;
constexpr double gain_lin_at_300 = 0.0063095734448019324943;
constexpr double theta_min_default = -12.77402395547232829;
constexpr double theta_max_default = 192.77402395547232829;
constexpr double boresight_amplitude = 2.5118864315095801111;
constexpr double amplitude_at_offset_65 = 0.63095734448019324943;
constexpr double amplitude_at_0 = 0.17770683907297724238;
constexpr double full_gain_15 = 94.643601672028987415;

TEST_CASE("element gain in dBi")
{
    const RadiationPattern p;
    CHECK(element_gain_dbi(p, 90.0) == 8.0);
    CHECK(element_gain_dbi(p, 155.0) == Approx(-4.0).epsilon(1e-14));
    CHECK(element_gain_dbi(p, 0.0) == Approx(gain_dbi_at_0).epsilon(1e-14));
    // quadratic beyond the side-lobe limit: 8 - 30
    CHECK(element_gain_dbi(p, 300.0) == Approx(-22.0).epsilon(1e-14));
    CHECK(element_gain_dbi(p, -400.0) == Approx(-22.0).epsilon(1e-14));
}

TEST_CASE("front-to-back ratio clamps below the side-lobe limit")
{
    RadiationPattern p;
    p.front_to_back_db = 20.0;
    CHECK(element_gain_dbi(p, 300.0) == Approx(-12.0));
    CHECK(element_gain_dbi(p, 90.0) == 8.0);
}

TEST_CASE("element gain linear")
{
    const RadiationPattern p;
    CHECK(element_gain_linear(p, 90.0) == Approx(std::pow(10.0, 0.8)).epsilon(1e-14));
    CHECK(element_gain_linear(p, 155.0) == Approx(std::pow(10.0, -0.4)).epsilon(1e-14));
    CHECK(element_gain_linear(p, 300.0) == Approx(gain_lin_at_300).epsilon(1e-14));
}

TEST_CASE("rotation bounds")
{
    const auto b = rotation_bounds(RadiationPattern{});
    CHECK(b.theta_min_deg == Approx(theta_min_default).epsilon(1e-14));
    CHECK(b.theta_max_deg == Approx(theta_max_default).epsilon(1e-14));
    CHECK(b.theta_min_deg < b.theta_max_deg);

    RadiationPattern p;
    p.sidelobe_limit_db = 12.0;
    auto b12 = rotation_bounds(p);
    CHECK(b12.theta_min_deg == Approx(25.0));
    CHECK(b12.theta_max_deg == Approx(155.0));

    p.beamwidth_3db_deg = 30.0;
    b12 = rotation_bounds(p);
    CHECK(b12.theta_min_deg == Approx(60.0));
    CHECK(b12.theta_max_deg == Approx(120.0));

    CHECK(b12.clamp(10.0) == Approx(60.0));
    CHECK(b12.clamp(130.0) == Approx(120.0));
    CHECK(b12.clamp(100.0) == 100.0);
}

TEST_CASE("effective gain vector")
{
    const RadiationPattern p;
    const Eigen::VectorXd g0 = effective_gain_vector(p, Eigen::VectorXd::Zero(4), 90.0);
    for (double x : g0)
        CHECK(x == Approx(boresight_amplitude).epsilon(1e-14));

    const Eigen::VectorXd g = effective_gain_vector(p, Eigen::Vector2d(0.0, 65.0), 90.0);
    CHECK(g[0] == Approx(boresight_amplitude).epsilon(1e-14));
    CHECK(g[1] == Approx(amplitude_at_offset_65).epsilon(1e-14));

    for (double psi : {0.0, 33.0, 90.0, 147.5, 180.0})
    {
        const Eigen::VectorXd aligned = effective_gain_vector(p, Eigen::VectorXd::Constant(3, psi - 90.0), psi);
        for (double x : aligned)
            CHECK(x == Approx(boresight_amplitude).epsilon(1e-14));
    }
}

TEST_CASE("steering vector")
{
    ArrayGeometry geo{4, 0.5};
    const Eigen::VectorXcd a90 = steering_vector(geo, 90.0);
    for (auto x : a90)
    {
        CHECK(x.real() == Approx(1.0));
        CHECK(std::abs(x.imag()) < 1e-15);
    }

    geo.num_antennas = 2;
    const Eigen::VectorXcd a0 = steering_vector(geo, 0.0);
    CHECK(a0[0] == std::complex<double>(1.0, 0.0));
    CHECK(a0[1].real() == Approx(-1.0));
    CHECK(std::abs(a0[1].imag()) < 1e-15);

    geo.num_antennas = 3;
    const Eigen::VectorXcd a60 = steering_vector(geo, 60.0);
    CHECK(std::abs(a60[1] - std::complex<double>(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(a60[2] - std::complex<double>(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("composite response")
{
    const RadiationPattern p;
    ArrayGeometry geo{2, 0.5};
    const Eigen::VectorXcd v = composite_response(p, geo, Eigen::VectorXd::Zero(2), 90.0);
    CHECK(v[0].real() == Approx(boresight_amplitude));
    CHECK(v[1].real() == Approx(boresight_amplitude));

    geo.num_antennas = 1;
    const Eigen::VectorXcd v0 = composite_response(p, geo, Eigen::VectorXd::Zero(1), 0.0);
    CHECK(std::abs(v0[0]) == Approx(amplitude_at_0).epsilon(1e-14));

    CHECK_THROWS_AS(composite_response(p, geo, Eigen::VectorXd::Zero(3), 0.0), std::invalid_argument);
}

TEST_CASE("array gain")
{
    const RadiationPattern p;
    const ArrayGeometry geo{15, 0.5};
    const Eigen::VectorXcd a = steering_vector(geo, 90.0);
    const Eigen::VectorXcd w = a / std::sqrt(15.0);
    CHECK(array_gain(w, p, geo, Eigen::VectorXd::Zero(15), 90.0) == Approx(full_gain_15).epsilon(1e-13));
    CHECK(full_array_gain(p, geo) == Approx(full_gain_15).epsilon(1e-14));
    CHECK(array_gain(Eigen::VectorXcd::Zero(15), p, geo, Eigen::VectorXd::Zero(15), 90.0) == 0.0);

    const ArrayGeometry single{1, 0.5};
    CHECK(array_gain(Eigen::VectorXcd::Ones(1), p, single, Eigen::VectorXd::Zero(1), 90.0) == Approx(std::pow(10.0, 0.8)));

    CHECK_THROWS_AS(array_gain(Eigen::VectorXcd::Ones(3), p, geo, Eigen::VectorXd::Zero(15), 90.0), std::invalid_argument);
}

TEST_CASE("isotropic model ignores rotations")
{
    const ArrayModel iso{RadiationPattern{}, ArrayGeometry{5, 0.5}, ElementKind::isotropic};
    const Eigen::VectorXcd w = iso.response(Eigen::VectorXd::Zero(5), 70.0) / std::sqrt(5.0);
    CHECK(iso.gain(w, Eigen::VectorXd::Constant(5, 40.0), 70.0) == Approx(5.0));
}

TEST_CASE("validation")
{
    RadiationPattern p;
    p.beamwidth_3db_deg = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS((ArrayGeometry{0, 0.5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ArrayGeometry{4, -1.0}.validate()), std::invalid_argument);

    Scenario s{{}, {}, -10.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.desired_angles_deg = {200.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.desired_angles_deg = {60.0};
    s.interference_angles_deg = {60.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.interference_angles_deg = {20.0};
    CHECK_NOTHROW(s.validate());
    CHECK(s.eta_max_linear() == Approx(0.1));
}

TEST_CASE("dB conversion floor")
{
    CHECK(linear_to_db(0.0) == -300.0);
    CHECK(linear_to_db(1e-40) == -300.0);
    CHECK(linear_to_db(100.0) == Approx(20.0));
}

TEST_CASE("property: pattern symmetric about 90 degrees and bounded")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> offset(-500.0, 500.0);
    const RadiationPattern p;
    for (int i = 0; i < 10000; ++i)
    {
        const double x = offset(rng);
        const double up = element_gain_dbi(p, 90.0 + x);
        CHECK(up == Approx(element_gain_dbi(p, 90.0 - x)).epsilon(1e-14));
        CHECK(up <= 8.0);
        CHECK(up >= -22.0);
    }
}

TEST_CASE("property: steering vector has unit-modulus entries")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> angle(0.0, 180.0), spacing(0.05, 3.0);
    std::uniform_int_distribution<int> count(1, 64);
    for (int i = 0; i < 2000; ++i)
    {
        const ArrayGeometry geo{static_cast<std::size_t>(count(rng)), spacing(rng)};
        const Eigen::VectorXcd a = steering_vector(geo, angle(rng));
        CHECK(a.squaredNorm() == Approx(static_cast<double>(geo.num_antennas)).epsilon(1e-12));
        CHECK(a[0] == std::complex<double>(1.0, 0.0));
    }
}

TEST_CASE("property: phase invariance and Cauchy-Schwarz bound")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> angle(0.0, 180.0), phase(0.0, 2.0 * std::numbers::pi);
    const ArrayModel model{RadiationPattern{}, ArrayGeometry{8, 0.5}, ElementKind::directional};
    const auto bounds = model.bounds();
    std::uniform_real_distribution<double> rot(bounds.theta_min_deg, bounds.theta_max_deg);
    for (int i = 0; i < 2000; ++i)
    {
        Eigen::VectorXd theta(8);
        for (auto &t : theta)
            t = rot(rng);
        const double psi = angle(rng);
        const Eigen::VectorXcd w = testing::random_complex(rng, 8);
        const double gain = model.gain(w, theta, psi);
        CHECK(model.gain(std::polar(1.0, phase(rng)) * w, theta, psi) == Approx(gain).epsilon(1e-10));

        const Eigen::VectorXd g = effective_gain_vector(model.pattern, theta, psi);
        CHECK(gain <= w.squaredNorm() * g.squaredNorm() * (1.0 + 1e-12));

        // Equality for the conjugate-matched direction
        const Eigen::VectorXcd v = model.response(theta, psi);
        CHECK(model.gain(v / v.norm(), theta, psi) == Approx(g.squaredNorm()).epsilon(1e-12));
    }
}

TEST_CASE("property: degree round trip")
{
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> angle(-360.0, 360.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double deg = angle(rng);
        const double back = (deg * std::numbers::pi / 180.0) * 180.0 / std::numbers::pi;
        CHECK(std::abs(back - deg) <= 1e-12 * std::max(1.0, std::abs(deg)));
    }
}

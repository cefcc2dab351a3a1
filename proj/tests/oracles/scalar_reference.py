# SPDX-License-Identifier: Apache-2.0
#
# ra-beamkit: rotatable-antenna array beamforming toolkit
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""Independent scalar evaluations of the element pattern used to freeze test constants.

Run: python3 tests/oracles/scalar_reference.py
"""
from mpmath import mp, mpf, sqrt, power

mp.dps = 40
GMAX, TH3, SLA, AMAX = mpf(8), mpf(65), mpf(30), mpf(30)


def gain_dbi(steer):
    steer = mpf(steer)
    vert = min(12 * ((steer - 90) / TH3) ** 2, SLA)
    return GMAX - min(vert, AMAX)


def lin(db):
    return power(10, db / 10)


half = TH3 * sqrt(SLA / 12)
print("gain_dbi(0)            =", mp.nstr(gain_dbi(0), 20))
print("gain_lin(300)          =", mp.nstr(lin(gain_dbi(300)), 20))
print("theta_min              =", mp.nstr(90 - half, 20))
print("theta_max              =", mp.nstr(90 + half, 20))
print("eff_gain(psi=90,th=65) =", mp.nstr(sqrt(lin(gain_dbi(90 - 65))), 20))
print("eff_gain boresight     =", mp.nstr(sqrt(lin(GMAX)), 20))
print("composite |v| psi=0    =", mp.nstr(sqrt(lin(gain_dbi(0))), 20))
print("full gain N=15         =", mp.nstr(15 * lin(GMAX), 20))
# Single beam at 60 deg: every element clamped at theta_min, MRC weights -> N * Ge(60 - theta_min)
print("single beam 60 clamped =", mp.nstr(15 * lin(gain_dbi(60 - (90 - half))), 20))
# Single element, theta = 0, |w|^2 = 0.2 / 10^0.8: interference gain at 90 deg is exactly 0.2,
# desired gain at 60 deg is 0.2 * 10^((Ge(-30) - Gmax) / 10); fitness = G_min - 1e6 * 0.2
gmin = mpf("0.2") * lin(gain_dbi(60) - GMAX)
print("violation case G_min   =", mp.nstr(gmin, 20))
print("violation case fitness =", mp.nstr(gmin - mpf(10) ** 6 * mpf("0.2"), 20))

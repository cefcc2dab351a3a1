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

"""Hand-stepped swarm trace for a 3-particle, 2-element instance.

Recomputes swarm initialization and one synchronous update from the documented
counter-based random stream and writes tests/data/pso_step_golden.txt.

Run: python3 tests/oracles/pso_step_reference.py
"""
import cmath
import math
import pathlib

MASK = (1 << 64) - 1

GMAX, TH3, SLA, AMAX = 8.0, 65.0, 30.0, 30.0
HALF = TH3 * math.sqrt(SLA / 12.0)
TMIN, TMAX = 90.0 - HALF, 90.0 + HALF

N = 2
SPACING = 0.5
WEIGHTS = [1 / math.sqrt(2), cmath.exp(0.3j) / math.sqrt(2)]
DESIRED = [70.0, 110.0]
INTERFERENCE = [20.0]
ETA = 10 ** (-10 / 10)
TAU = 1e6
S = 3
SEED = 42
INITIAL_BEST = [10.0, -5.0]
W_INI, W_FIN, T_MAX = 0.9, 0.2, 100
S_LOC, S_GLO = 1.4, 1.4


def mix(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


def uniform(seed, stream, a, b):
    h = mix(seed)
    h = mix(h ^ stream)
    h = mix(h ^ a)
    h = mix(h ^ b)
    return (h >> 11) * 2.0 ** -53


def element_db(steer):
    return GMAX - min(min(12 * ((steer - 90) / TH3) ** 2, SLA), AMAX)


def gain(theta, psi):
    acc = 0j
    for n in range(N):
        g = math.sqrt(10 ** (element_db(psi - theta[n]) / 10))
        a = cmath.exp(2j * math.pi * SPACING * n * math.cos(math.radians(psi)))
        acc += WEIGHTS[n].conjugate() * g * a
    return abs(acc) ** 2


def fitness(theta):
    gmin = min(gain(theta, p) for p in DESIRED)
    rho = sum(g for g in (gain(theta, p) for p in INTERFERENCE) if g > ETA)
    return gmin - TAU * rho


def clamp(x, lo, hi):
    return min(max(x, lo), hi)


pos = [[clamp(x, TMIN, TMAX) for x in INITIAL_BEST]]
for s in range(1, S):
    pos.append([TMIN + (TMAX - TMIN) * uniform(SEED, 0, s, j) for j in range(N)])
vel = [[0.0] * N for _ in range(S)]
lbest = [p[:] for p in pos]
lfit = [fitness(p) for p in pos]
gidx = max(range(S), key=lambda s: (lfit[s], -s))
gbest, gfit = pos[gidx][:], lfit[gidx]

lines = ["# stage particle/field values"]
for s in range(S):
    lines.append(f"init position {s} " + " ".join(repr(x) for x in pos[s]))
    lines.append(f"init fitness {s} {lfit[s]!r}")
lines.append(f"init global {gidx} {gfit!r} " + " ".join(repr(x) for x in gbest))

t = 1
inertia = W_INI - (W_INI - W_FIN) * t / T_MAX
vmax = TMAX - TMIN
frozen_global = gbest[:]
new_fit = []
for s in range(S):
    r_loc = uniform(SEED, 1, t, s)
    r_glo = uniform(SEED, 2, t, s)
    for j in range(N):
        x = pos[s][j]
        v = inertia * vel[s][j] + S_LOC * r_loc * (lbest[s][j] - x) + S_GLO * r_glo * (frozen_global[j] - x)
        v = clamp(v, -vmax, vmax)
        vel[s][j] = v
        pos[s][j] = clamp(x + v, TMIN, TMAX)
    new_fit.append(fitness(pos[s]))
for s in range(S):
    if new_fit[s] > lfit[s]:
        lfit[s] = new_fit[s]
        lbest[s] = pos[s][:]
    if new_fit[s] > gfit:
        gfit, gbest, gidx = new_fit[s], pos[s][:], s

for s in range(S):
    lines.append(f"step position {s} " + " ".join(repr(x) for x in pos[s]))
    lines.append(f"step velocity {s} " + " ".join(repr(x) for x in vel[s]))
    lines.append(f"step local {s} {lfit[s]!r} " + " ".join(repr(x) for x in lbest[s]))
lines.append(f"step global {gidx} {gfit!r} " + " ".join(repr(x) for x in gbest))

out = pathlib.Path(__file__).resolve().parent.parent / "data" / "pso_step_golden.txt"
out.write_text("\n".join(lines) + "\n")
print(out.read_text(), end="")

# Copyright 2026 The kinetic-fp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import kinetic_fp as kfp


def test_params_and_sampler():
    p = kfp.derive_params([0.1, -0.2, 0.3], 2.0, 6)
    assert p.n_particles == 6
    assert math.isclose(p.eps0, 2.0 - 0.5 * 0.14)
    v = kfp.sample_uniform(p, seed=3)
    assert v.shape == (6, 3)
    dp, de = kfp.manifold_residuals(v, p)
    assert dp < 1e-10 and abs(de) < 1e-10
    assert np.allclose(kfp.sample_uniform(p, seed=3), v)


def test_bad_params_raise():
    with pytest.raises(ValueError):
        kfp.derive_params([0.0, 0.0, 0.0], -1.0, 4)


def test_two_particle_spectrum():
    for j in range(21):
        assert kfp.eigenvalue(j, 2, 1.0) == j * (j + 1) / 4.0
        assert kfp.degeneracy(j, 2) == 2 * j + 1
    assert kfp.degeneracy(30, 100) > 2**63


def test_legendre_limit():
    err = [kfp.asymptotic_error(2, 1, 0.7, 1.0, 3, n) for n in (400, 1600)]
    assert err[1] < err[0]
    assert kfp.hermite(3, 0.5) == pytest.approx(8 * 0.125 - 12 * 0.5)


def test_moment_flow_and_kernel():
    m, p, e = kfp.moment_flow(1.0, [1.0, 0.0, 0.0], 1.0, [0.0, 0.0, 0.0], 0.5, 1.0)
    assert m == 1.0
    assert p[0] == pytest.approx(math.exp(-1.0))
    with pytest.raises(ArithmeticError):
        kfp.mehler_kernel([0, 0, 0], [0, 0, 0], [0, 0, 0], 1.0, 0.0)


def test_simulate_matches_axis_density():
    p = kfp.derive_params([0.0, 0.0, 0.0], 1.0, 2)
    start = kfp.pole_state(p)
    stats = kfp.simulate(p, [0.5], n_traj=4000, dtau=5e-3, start=start, bins=24, threads=1)
    hist = stats[0]["hist_v11"]
    centres = np.array(hist["nodes"][0])
    width = hist["weights"][0][0]
    assert sum(hist["values"]) * width == pytest.approx(1.0)
    offsets = width * (np.arange(8) + 0.5) / 8 - 0.5 * width
    oracle = np.array([np.mean([kfp.axis_density(start, p, 0.5, 20, x + o) for o in offsets]) for x in centres])
    assert np.abs(np.array(hist["values"]) - oracle).sum() * width < 0.1
    assert stats[0]["max_energy_residual"] < 1e-10


def test_gap_and_order():
    tau = np.linspace(0, 2, 20)
    rate, _ = kfp.gap_estimate(list(tau), list(np.exp(-1.5 * tau)), 0.0, 1.5)
    assert rate == pytest.approx(1.5, abs=1e-10)
    slope, _ = kfp.convergence_order([1, 2, 4], [1.0, 0.25, 0.0625])
    assert slope == pytest.approx(-2.0)


def test_cli_entry_point(tmp_path):
    code = kfp.run_cli(["asymptotics", "--quiet", "--set", f"cli.output_dir={tmp_path}"])
    assert code == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["command"] == "asymptotics"
    assert kfp.run_cli(["simulate", "--set", "markov.nope=1"]) == 2

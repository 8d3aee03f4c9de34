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

"""Brownian motion on the energy/momentum sphere and its kinetic limit."""

from ._kfp import (
    SystemParams,
    __version__,
    assoc_legendre_qdim,
    asymptotic_error,
    axis_density,
    convergence_order,
    degeneracy,
    derive_params,
    eigenvalue,
    gap_estimate,
    hermite,
    legendre_limit,
    limit_eigenvalue,
    manifold_residuals,
    mehler_kernel,
    moment_flow,
    pole_state,
    run_cli,
    sample_uniform,
    simulate,
)

__all__ = [
    "SystemParams",
    "__version__",
    "assoc_legendre_qdim",
    "asymptotic_error",
    "axis_density",
    "convergence_order",
    "degeneracy",
    "derive_params",
    "eigenvalue",
    "gap_estimate",
    "hermite",
    "legendre_limit",
    "limit_eigenvalue",
    "manifold_residuals",
    "mehler_kernel",
    "moment_flow",
    "pole_state",
    "run_cli",
    "sample_uniform",
    "simulate",
]

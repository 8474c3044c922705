#!/usr/bin/env python3
"""Demonstrate linear-in-spacing convergence of the lattice simulation.

For a shrinking sequence of lattice spacings the script runs the
reflecting simulation, extrapolates the outside wall density, and prints
it against both the exact lattice law (1 - lam) / (2 eps) and the
continuum limit sqrt(beta / 2).  The exact-law column should agree
within noise at every spacing; the continuum discrepancy should shrink
roughly linearly in eps.

Run from the repository root:  python3 scripts/eps_convergence.py
"""

import math

from casimirlab.lattice import SimParams, bulk_site_parity, simulate
from casimirlab.model import Boundary, ModelParams


def wall_density(estimate):
    edge = estimate.n_bins_outside - 1
    rho = estimate.density.rho
    se = estimate.density.rho_se
    value = 0.5 * (3.0 * rho[edge] - rho[edge - 1])
    error = 0.5 * math.hypot(3.0 * se[edge], se[edge - 1])
    return value, error


def main():
    beta = 1.0
    model = ModelParams(beta=beta, L=1.0, boundary=Boundary.REFLECTING)
    continuum = math.sqrt(beta / 2.0)
    print(f"continuum wall density: {continuum:.6f}")
    print(f"{'eps':>6} {'simulated':>12} {'std err':>9} {'lattice law':>12} {'continuum gap':>14}")
    for eps in (0.2, 0.1, 0.05):
        params = SimParams(
            model=model,
            eps=eps,
            W_out=8.0,
            t_sample=100.0,
            replicas=32,
            seed=7007,
        )
        estimate = simulate(params)
        value, error = wall_density(estimate)
        lam = bulk_site_parity(beta, params.eps_eff)
        exact = (1.0 - lam) / (2.0 * params.eps_eff)
        print(
            f"{eps:6.3f} {value:12.6f} {error:9.6f} {exact:12.6f} "
            f"{abs(value - continuum):14.6f}"
        )


if __name__ == "__main__":
    main()

"""Veronese solutions under evaluation and the scaling flow.

Evaluates the full-flag Veronese harmonic map at sample points (the
unitarity residual comes from the numerical Iwasawa splitting), then
pushes the n=3 solution along the lambda -> e^{-t} lambda flow.  The
Veronese potential is already lambda-free, so it is a fixed point: the
energy stays at sum k_i^2 = 5 and the distance to the homomorphism
limit is rounding noise at every t.  A generic U_3 build is flowed for
comparison; its distance to the limit decays like e^{-t}.
"""

import numpy as np

from unitons import (
    RatFun,
    build_from_free_functions,
    cstar_flow,
    energy,
    flow_limit,
    harmonic_map_at,
    veronese_solution,
)


def main():
    z0 = complex(0.5, 0.0)
    spec = veronese_solution(3)

    for w in (0.3 + 0.2j, -0.4 + 0.5j):
        phi = harmonic_map_at(spec, w)
        err = np.linalg.norm(phi @ phi.conj().T - np.eye(3))
        print(f"phi({w}): unitarity residual {err:.2e}")

    print("\nflowing the n=3 Veronese solution at z =", z0)
    for t in (0.0, 1.0, 2.0, 4.0):
        print(f"  t={t:3.1f}  energy {energy(cstar_flow(spec, t, z0)):.12f}")
    limit = flow_limit(spec)
    gap = (cstar_flow(spec, 6.0, z0) - cstar_flow(limit, 0.0, z0)).max_coeff_norm()
    print(f"  distance to limit at t=6: {gap:.2e} (fixed point)")

    z = RatFun.x()
    generic = build_from_free_functions(3, (2, 1, 0), [z, RatFun.one() + z, z])
    print("\nflowing a generic U_3 build at z =", z0)
    glim = flow_limit(generic)
    for t in (0.0, 2.0, 6.0, 10.0):
        gap = (cstar_flow(generic, t, z0) - cstar_flow(glim, 0.0, z0)).max_coeff_norm()
        print(f"  t={t:4.1f}  energy {energy(cstar_flow(generic, t, z0)):.9f}"
              f"  |Phi^t - limit| {gap:.2e}")


if __name__ == "__main__":
    main()

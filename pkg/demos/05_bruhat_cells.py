"""Cell detection: reading off exponents through unimodular dressing.

A loop of the form U gamma V with polynomial unimodular U, V lies in
the cell labeled by gamma's exponents, and exact Smith diagonalization
in lambda recovers them no matter how the dressing scrambles the
entries.  Loops whose determinant is not a monomial in lambda sit
outside every algebraic cell and are rejected.
"""

from unitons import (
    LoopMat,
    NonMonomialDeterminant,
    RatFun,
    assemble_loop,
    bruhat_cell,
    veronese_solution,
)
from unitons.exactmat import eye, zeros


def elementary(n, a, b, k, c):
    """I + c * lambda^k E_ab, the basic unimodular dressing factor."""
    blocks = [zeros(n) for _ in range(k + 1)]
    for i in range(n):
        blocks[0][i][i] = RatFun.one()
    blocks[k][a][b] = c
    return LoopMat.exact(blocks)


def main():
    gamma = LoopMat.diag_powers((3, 1, 0))
    left = elementary(3, 0, 1, 2, RatFun.const(2)) @ elementary(3, 1, 2, 0, RatFun.x())
    right = elementary(3, 2, 0, 3, RatFun.one()) @ elementary(3, 0, 2, 1, RatFun.const(-1))
    dressed = left @ gamma @ right
    print("gamma exponents      ", (3, 1, 0))
    print("dressed loop spread  ", (dressed.lo, dressed.hi))
    print("recovered exponents  ", bruhat_cell(dressed).exponents)

    print("\nbuilt solutions detect their own construction:")
    for n in (2, 3, 4):
        loop = assemble_loop(veronese_solution(n))
        print(f"  veronese n={n}: {bruhat_cell(loop).exponents}")

    bad = LoopMat.exact([[[RatFun.one(), RatFun.zero()], [RatFun.zero(), RatFun.one()]],
                         [[RatFun.one(), RatFun.zero()], [RatFun.zero(), RatFun.zero()]]])
    try:
        bruhat_cell(bad)
    except NonMonomialDeterminant as exc:
        print("\nnon-monomial determinant rejected:", exc)


if __name__ == "__main__":
    main()

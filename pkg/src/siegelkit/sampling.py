"""Seeded random generators for property suites.

Every function takes an explicit ``random.Random`` so that the CLI
selftest and the test suite are reproducible: one seed fixes the whole
transcript.
"""

import numpy as np

from .exact_linalg import IntegerMatrix
from .field_calculus import FieldStrengthSample, PointFrame, project_selfdual
from .polarization import SiegelPoint, Taming, taming_from_siegel_point
from .symplectic_lattices import LatticeType, sp_type_membership, standard_gram


def random_lattice_type(rng, n: int) -> LatticeType:
    """A random divisor chain of length n with small entries."""
    entries = [rng.choice([1, 1, 2])]
    for _ in range(n - 1):
        entries.append(entries[-1] * rng.choice([1, 1, 2, 3]))
    return LatticeType(entries)


def random_unimodular(rng, size: int, steps: int = 8, entry_bound: int = 60):
    """A random product of elementary row operations with bounded entries."""
    M = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        if size == 1:
            break
        if kind == 0:
            c = rng.choice([-2, -1, 1, 2])
            cand = [row[:] for row in M]
            cand[i] = [x + c * y for x, y in zip(cand[i], cand[j])]
            if max(abs(x) for row in cand for x in row) <= entry_bound:
                M = cand
        elif kind == 1:
            M[i], M[j] = M[j], [-x for x in M[i]]
        else:
            for r in range(size):
                M[r][i], M[r][j] = M[r][j], -M[r][i]
    return IntegerMatrix(M)


_SL2_S = IntegerMatrix([[0, -1], [1, 0]])
_SL2_T = IntegerMatrix([[1, 1], [0, 1]])


def random_sl2z(rng, length: int = 6) -> IntegerMatrix:
    """A random word in the standard generators of SL(2, Z)."""
    out = IntegerMatrix.identity(2)
    for _ in range(length):
        gen = rng.choice([_SL2_S, _SL2_T])
        power = rng.choice([-2, -1, 1, 2])
        step = gen if power > 0 else IntegerMatrix([[gen[1, 1], -gen[0, 1]],
                                                    [-gen[1, 0], gen[0, 0]]])
        for _ in range(abs(power)):
            out = out * step
    return out


def _lcm(a, b):
    from math import gcd

    return a * b // gcd(a, b)


def _shear_block(rng, t: LatticeType):
    """Symmetric seed M with t_i | M_{ij}; then T^{-1} M is an integer shear."""
    n = t.n
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            c = rng.choice([-1, 0, 0, 1])
            v = c * _lcm(t.entries[i], t.entries[j])
            M[i][j] = v
            M[j][i] = v
    return [[M[i][j] // t.entries[i] for j in range(n)] for i in range(n)]


def random_sp_t_element(
    rng, t: LatticeType, steps: int = 5, entry_bound: int = 40
) -> IntegerMatrix:
    """A random element of the Siegel modular group of type t.

    Built from generators that preserve Omega_t for every type: the
    standard rotation [[0,-I],[I,0]], upper and lower shears with T B
    symmetric, and diagonal blocks diag(A, T^{-1} A^{-T} T) for lower
    triangular unimodular A (integrality uses the divisor chain).
    Steps that would push entries past the bound are skipped so the
    float-mode taming tolerances stay meaningful.
    """
    n = t.n
    ident = IntegerMatrix.identity(n)
    zero = IntegerMatrix.zeros(n, n)

    def blocks(a, b, c, d):
        rows = []
        for i in range(n):
            rows.append(list(a.row(i)) + list(b.row(i)))
        for i in range(n):
            rows.append(list(c.row(i)) + list(d.row(i)))
        return IntegerMatrix(rows)

    out = IntegerMatrix.identity(2 * n)
    for _ in range(steps):
        kind = rng.randrange(4)
        if kind == 0:
            g = blocks(zero, -ident, ident, zero)
        elif kind == 1:
            g = blocks(ident, IntegerMatrix(_shear_block(rng, t)), zero, ident)
        elif kind == 2:
            g = blocks(ident, zero, IntegerMatrix(_shear_block(rng, t)), ident)
        else:
            A = [[0] * n for _ in range(n)]
            for i in range(n):
                A[i][i] = rng.choice([1, -1])
                for j in range(i):
                    A[i][j] = rng.choice([-1, 0, 0, 1])
            Am = IntegerMatrix(A)
            from .exact_linalg import inverse_unimodular

            Ainv_t = inverse_unimodular(Am).transpose()
            D = [
                [
                    Ainv_t[i, j] * t.entries[j] // t.entries[i]
                    for j in range(n)
                ]
                for i in range(n)
            ]
            g = blocks(Am, zero, zero, IntegerMatrix(D))
        cand = out * g
        if cand.max_abs() <= entry_bound:
            out = cand
    assert sp_type_membership(out, t), "generator construction broke symplecticity"
    return out


def random_gram_of_type(rng, t: LatticeType):
    """A Gram matrix U^T Omega_t U for a random unimodular U."""
    U = random_unimodular(rng, 2 * t.n, steps=10, entry_bound=40)
    return U.transpose() * standard_gram(t) * U, U


def random_lorentz_frame(rng) -> PointFrame:
    """A random metric sample of signature (-,+,+,+)."""
    while True:
        R = np.array(
            [[rng.uniform(-0.3, 0.3) for _ in range(4)] for _ in range(4)]
        )
        L = np.eye(4) + R
        g = L.T @ np.diag([-1.0, 1.0, 1.0, 1.0]) @ L
        try:
            return PointFrame(g, orientation=rng.choice([1, -1]))
        except Exception:
            continue


def random_siegel_point(rng, n: int, eps: float = 1e-3) -> SiegelPoint:
    """Siegel point with Y = A^T A + eps I; eps controls the conditioning."""
    X = np.array([[rng.uniform(-1, 1) for _ in range(n)] for _ in range(n)])
    X = (X + X.T) / 2.0
    A = np.array([[rng.uniform(-1, 1) for _ in range(n)] for _ in range(n)])
    Y = A.T @ A + eps * np.eye(n)
    return SiegelPoint(X, Y)


def random_taming(rng, t: LatticeType, eps: float = 1e-3) -> Taming:
    return taming_from_siegel_point(
        random_siegel_point(rng, t.n, eps), standard_gram(t)
    )


def random_field_sample(rng, n: int) -> FieldStrengthSample:
    F = np.array(
        [[rng.uniform(-1, 1) for _ in range(2 * n)] for _ in range(6)]
    )
    return FieldStrengthSample(F)


def random_selfdual_sample(rng, frame: PointFrame, taming: Taming) -> FieldStrengthSample:
    return project_selfdual(random_field_sample(rng, taming.n), frame, taming)

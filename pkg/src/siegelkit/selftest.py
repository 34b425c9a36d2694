"""Deterministic property suite behind ``siegel-kit selftest``.

Each suite draws from one seeded generator, so a fixed seed produces a
byte-identical transcript. The suites mirror the module invariants at a
size that keeps the whole run fast; the pytest acceptance module runs
the full-size versions.
"""

import random
from fractions import Fraction

import numpy as np

from . import sampling
from .exact_linalg import (
    IntegerMatrix,
    determinant,
    kernel_lattice,
    smith_normal_form,
)
from .field_calculus import (
    PolarizedStar,
    inner_contraction,
    maxwell_residual,
    duality_transform_sample,
    scalar_rhs,
    trace_g,
)
from .local_systems import (
    ChargeClass,
    circle_complex,
    dsz_check,
    charge_lattice_basis,
    four_torus_complex,
    twisted_cohomology,
    two_sphere_complex,
    two_torus_complex,
)
from .polarization import FundamentalFormSample, q_metric, validate_taming
from .siegel_group import AffineSymplectomorphism, aff_compose, aff_inverse
from .symplectic_lattices import (
    IntegralSymplecticSpace,
    LatticeType,
    frobenius_basis,
    standard_gram,
    type_of,
)
from .uduality import (
    HolonomySubgroup,
    centralizer_enumerate,
    FiniteScalarModel,
    uduality_fiber_product,
)


def _suite_snf(rng):
    for _ in range(120):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        A = IntegerMatrix(
            [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)]
        )
        snf = smith_normal_form(A)
        if snf.U * A * snf.V != snf.S:
            return False, "U A V != S"
        if abs(determinant(snf.U)) != 1 or abs(determinant(snf.V)) != 1:
            return False, "transforms not unimodular"
        diag = snf.diagonal()
        for a, b in zip(diag, diag[1:]):
            if b != 0 and (a == 0 or b % a != 0):
                return False, "divisibility chain broken"
        ker = kernel_lattice(A)
        for v in ker:
            if any(x != 0 for x in A.apply(v)):
                return False, "kernel vector not annihilated"
        if len(ker) != cols - snf.rank():
            return False, "kernel rank mismatch"
    return True, "120 random matrices"


def _suite_type_invariance(rng):
    for _ in range(60):
        n = rng.randint(1, 3)
        t = sampling.random_lattice_type(rng, n)
        gram, _ = sampling.random_gram_of_type(rng, t)
        space = IntegralSymplecticSpace(gram)
        if type_of(space) != t:
            return False, f"type changed under change of basis (t={t.entries})"
        fb = frobenius_basis(space)
        if fb.change_of_basis.transpose() * gram * fb.change_of_basis != standard_gram(t):
            return False, "Frobenius certificate failed"
        expected = tuple(sorted([x for ti in t.entries for x in (ti, ti)]))
        snf_diag = tuple(smith_normal_form(gram).invariant_factors())
        if tuple(sorted(snf_diag)) != expected:
            return False, "SNF oracle disagrees with type"
    return True, "60 random conjugated lattices"


def _suite_aff_group(rng):
    for _ in range(100):
        n = rng.randint(1, 2)
        t = sampling.random_lattice_type(rng, n)
        xs = []
        for _ in range(3):
            rot = sampling.random_sp_t_element(rng, t, steps=4)
            tr = [
                Fraction(rng.randint(-12, 12), rng.randint(1, 12))
                for _ in range(2 * n)
            ]
            xs.append(AffineSymplectomorphism(tr, rot, t))
        x, y, z = xs
        if aff_compose(aff_compose(x, y), z) != aff_compose(x, aff_compose(y, z)):
            return False, "associativity failed"
        e = AffineSymplectomorphism.identity(t)
        if aff_compose(x, e) != x or aff_compose(e, x) != x:
            return False, "identity failed"
        if aff_compose(x, aff_inverse(x)) != e:
            return False, "inverse failed"
    return True, "100 random triples"


def _suite_tamings(rng):
    for _ in range(50):
        n = rng.randint(1, 3)
        t = sampling.random_lattice_type(rng, n)
        tm = sampling.random_taming(rng, t)
        report = validate_taming(tm.J, tm.omega, tm.tol)
        if not report.passed:
            return False, "taming from Siegel point failed validation"
        Q = q_metric(tm)
        scale = max(1.0, float(np.max(np.abs(Q)))) * max(
            1.0, float(np.max(np.abs(tm.J))) ** 2
        )
        if np.max(np.abs(tm.J.T @ Q @ tm.J - Q)) > 1e-10 * scale:
            return False, "Q not J-invariant"
    return True, "50 random Siegel points"


def _suite_polarized_star(rng):
    for _ in range(20):
        n = rng.randint(1, 3)
        t = sampling.random_lattice_type(rng, n)
        frame = sampling.random_lorentz_frame(rng)
        tm = sampling.random_taming(rng, t, eps=0.5)
        op = PolarizedStar(frame, tm)
        K = op.as_matrix()
        if np.max(np.abs(K @ K - np.eye(12 * n))) > 1e-10:
            return False, "polarized star does not square to identity"
        plus, minus = op.eigenspace_dimensions()
        if plus != 6 * n or minus != 6 * n:
            return False, f"eigenspace split {plus}/{minus} != {6 * n}/{6 * n}"
    return True, "20 random frame and taming pairs"


def _suite_tracelessness(rng):
    for _ in range(30):
        n = rng.randint(1, 2)
        t = sampling.random_lattice_type(rng, n)
        frame = sampling.random_lorentz_frame(rng)
        tm = sampling.random_taming(rng, t, eps=0.5)
        F = sampling.random_selfdual_sample(rng, frame, tm)
        Q = q_metric(tm)
        stress = inner_contraction(F, F, frame, Q)
        if np.max(np.abs(stress - stress.T)) > 1e-12 * max(1.0, F.norm() ** 2):
            return False, "stress tensor not symmetric"
        if abs(trace_g(frame, stress)) > 1e-9 * max(1.0, F.norm() ** 2):
            return False, "self-dual stress tensor has nonzero trace"
    return True, "30 random self-dual samples"


def _suite_equivariance(rng):
    for _ in range(30):
        n = rng.randint(1, 2)
        t = sampling.random_lattice_type(rng, n)
        frame = sampling.random_lorentz_frame(rng)
        tm = sampling.random_taming(rng, t, eps=0.5)
        F = sampling.random_field_sample(rng, n)
        gamma = sampling.random_sp_t_element(rng, t, steps=4, entry_bound=8)
        F2, tm2 = duality_transform_sample(gamma, F, tm)
        r1 = maxwell_residual(F, frame, tm)
        r2 = maxwell_residual(F2, frame, tm2)
        if abs(r1 - r2) > 1e-9 * max(1.0, r1):
            return False, "Maxwell residual not duality invariant"
        s1 = inner_contraction(F, F, frame, q_metric(tm))
        s2 = inner_contraction(F2, F2, frame, q_metric(tm2))
        if np.max(np.abs(s1 - s2)) > 1e-9 * max(1.0, np.max(np.abs(s1))):
            return False, "stress tensor not duality invariant"
    return True, "30 random symplectic rotations"


def _suite_unitary_scalar(rng):
    for _ in range(30):
        n = rng.randint(1, 2)
        t = sampling.random_lattice_type(rng, n)
        frame = sampling.random_lorentz_frame(rng)
        tm = sampling.random_taming(rng, t)
        F = sampling.random_field_sample(rng, n)
        psi = FundamentalFormSample([np.zeros((2 * n, 2 * n))] * 2)
        values, _ = scalar_rhs(F, frame, q_metric(tm), psi)
        if any(v != 0.0 for v in values):
            return False, "unitary scalar right side is not exactly zero"
    return True, "30 random samples with vanishing fundamental form"


def _suite_circle_cohomology(rng):
    t = LatticeType((1,))
    for _ in range(20):
        gamma = sampling.random_sl2z(rng, length=5)
        c = circle_complex(gamma, t)
        h0 = twisted_cohomology(c, 0)
        h1 = twisted_cohomology(c, 1)
        gmi = gamma - IntegerMatrix.identity(2)
        snf = smith_normal_form(gmi)
        ker_rank = 2 - snf.rank()
        coker_tors = tuple(d for d in snf.invariant_factors() if d > 1)
        if h0.free_rank != ker_rank or h0.torsion != ():
            return False, "H0 differs from ker(gamma - 1)"
        if h1.free_rank != ker_rank or h1.torsion != coker_tors:
            return False, "H1 differs from coker(gamma - 1)"
    return True, "20 random circle monodromies"


def _suite_untwisted_models(rng):
    t = LatticeType((1,))
    sphere = two_sphere_complex(t)
    torus = two_torus_complex(None, None, t)
    t4 = four_torus_complex(t)
    expected = {
        "sphere": (2, 0, 2),
        "torus": (2, 4, 2),
    }
    for name, c, betti in (
        ("sphere", sphere, expected["sphere"]),
        ("torus", torus, expected["torus"]),
    ):
        for k, b in enumerate(betti):
            res = twisted_cohomology(c, k)
            if res.free_rank != b or res.torsion != ():
                return False, f"{name} H^{k} is {res.group_description()}"
    for k, binom in enumerate((1, 4, 6, 4, 1)):
        res = twisted_cohomology(t4, k)
        if res.free_rank != 2 * binom or res.torsion != ():
            return False, f"4-torus H^{k} is {res.group_description()}"
    return True, "sphere, torus and 4-torus with trivial transports"


def _suite_dsz(rng):
    t = LatticeType((1,))
    c = two_sphere_complex(t)
    basis = charge_lattice_basis(c)
    for _ in range(10):
        coeffs = [rng.randint(-4, 4) for _ in basis]
        vec = [Fraction(0)] * (2 * c.cells[2])
        for m, b in zip(coeffs, basis):
            vec = [x + m * Fraction(y) for x, y in zip(vec, b)]
        verdict = dsz_check(ChargeClass(vec), c)
        if not verdict.integral or list(verdict.coordinates) != coeffs:
            return False, "integer combination rejected"
        shifted = [x + Fraction(1, 2) * Fraction(basis[0][i]) for i, x in enumerate(vec)]
        verdict2 = dsz_check(ChargeClass(shifted), c)
        if verdict2.integral:
            return False, "half-integral class accepted"
    return True, "10 random charge combinations on the sphere"


def _suite_centralizer(rng):
    t = LatticeType((1,))
    S = IntegerMatrix([[0, -1], [1, 0]])
    h = HolonomySubgroup([S], t)
    found = centralizer_enumerate(h, bound=3)
    expected = {
        IntegerMatrix.identity(2),
        -IntegerMatrix.identity(2),
        S,
        -S,
    }
    if set(found) != expected:
        return False, f"centralizer of S has {len(found)} box elements"
    return True, "order-four rotation centralizer is {+-1, +-S}"


def _suite_fiber_product(rng):
    t = LatticeType((1,))
    tm0 = sampling.random_taming(rng, t)
    gamma = IntegerMatrix([[1, 1], [0, 1]])
    from .polarization import push_forward_taming

    tm1 = push_forward_taming(gamma, tm0)
    model = FiniteScalarModel(2, [(0, 1), (1, 0)], [tm0, tm1])
    elements = uduality_fiber_product(model, bound=2, t=t)
    if not elements:
        return False, "fiber product came back empty"
    for e in elements:
        perm = model.isometries[e.isometry]
        U = np.array(e.rotation.to_lists(), dtype=float)
        Uinv = np.linalg.inv(U)
        for p in range(2):
            J = model.tamings[p].J
            if np.max(np.abs(U @ J @ Uinv - model.tamings[perm[p]].J)) > 1e-8:
                return False, "fiber product element violates the condition"
    return True, f"two-point conjugated model, {len(elements)} elements"


SUITES = (
    ("exact_linalg.snf", _suite_snf),
    ("symplectic_lattices.type_invariance", _suite_type_invariance),
    ("siegel_group.group_laws", _suite_aff_group),
    ("polarization.tamings", _suite_tamings),
    ("field_calculus.polarized_star", _suite_polarized_star),
    ("field_calculus.tracelessness", _suite_tracelessness),
    ("field_calculus.equivariance", _suite_equivariance),
    ("field_calculus.unitary_scalar", _suite_unitary_scalar),
    ("local_systems.circle_oracle", _suite_circle_cohomology),
    ("local_systems.untwisted_models", _suite_untwisted_models),
    ("local_systems.dsz", _suite_dsz),
    ("uduality.centralizer", _suite_centralizer),
    ("uduality.fiber_product", _suite_fiber_product),
)


def run_selftest(seed: int, write=print):
    """Run every suite with a per-suite seeded generator; returns overall pass."""
    all_ok = True
    for name, suite in SUITES:
        # String seeding is stable across processes, unlike hash().
        rng = random.Random(f"{seed}:{name}")
        ok, detail = suite(rng)
        all_ok = all_ok and ok
        write(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    write(f"selftest {'passed' if all_ok else 'FAILED'} (seed {seed})")
    return all_ok

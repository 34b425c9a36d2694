"""JSON encoding and decoding for every value the CLI exchanges.

Integer matrices are written with entries as decimal strings so that
arbitrary precision survives the trip; rationals are "p/q" strings.
Decoders are lenient (plain JSON integers are accepted), encoders are
canonical, and every emitted document re-parses to an equal value.
"""

from fractions import Fraction

import numpy as np

from .errors import ParseError
from .exact_linalg import IntegerMatrix
from .field_calculus import (
    FieldStrengthSample,
    PointFrame,
    ScalarSectorSample,
)
from .local_systems import ChargeClass, TwistedComplex
from .polarization import (
    FundamentalFormSample,
    SiegelPoint,
    Taming,
    DEFAULT_TOL,
)
from .siegel_group import AffineSymplectomorphism, TorusPoint
from .symplectic_lattices import IntegralSymplecticSpace, LatticeType
from .uduality import FiniteScalarModel, HolonomySubgroup, UDualityElement


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r} in {where}")
    return obj[key]


def encode_integer_matrix(m: IntegerMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[str(x) for x in m.row(i)] for i in range(m.rows)],
    }


def decode_integer(x, where="integer"):
    try:
        if isinstance(x, str):
            return int(x, 10)
        if isinstance(x, bool):
            raise ValueError
        if isinstance(x, int):
            return x
        raise ValueError
    except ValueError:
        raise ParseError(f"bad integer {x!r} in {where}") from None


def decode_integer_matrix(obj, where="matrix") -> IntegerMatrix:
    entries = _need(obj, "entries", where)
    try:
        m = IntegerMatrix(
            [[decode_integer(x, where) for x in row] for row in entries]
        )
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad matrix in {where}: {exc}") from None
    if "rows" in obj and decode_integer(obj["rows"], where) != m.rows:
        raise ParseError(f"row count mismatch in {where}")
    if "cols" in obj and decode_integer(obj["cols"], where) != m.cols:
        raise ParseError(f"column count mismatch in {where}")
    return m


def encode_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def decode_rational(x, where="rational") -> Fraction:
    try:
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, bool):
            raise ValueError
        if isinstance(x, int):
            return Fraction(x)
        raise ValueError
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {x!r} in {where}") from None


def encode_rational_vector(v) -> list:
    return [encode_rational(x) for x in v]


def decode_rational_vector(obj, where="vector"):
    if not isinstance(obj, list):
        raise ParseError(f"expected a list in {where}")
    return tuple(decode_rational(x, where) for x in obj)


def encode_float_matrix(m) -> list:
    return [[float(x) for x in row] for row in np.asarray(m, dtype=float)]


def decode_float_matrix(obj, where="float matrix"):
    try:
        return np.array(obj, dtype=float)
    except (ValueError, TypeError):
        raise ParseError(f"bad float matrix in {where}") from None


def encode_lattice_type(t: LatticeType) -> list:
    return list(t.entries)


def decode_lattice_type(obj, where="type") -> LatticeType:
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"type must be a nonempty list in {where}")
    try:
        return LatticeType([decode_integer(x, where) for x in obj])
    except ValueError as exc:
        raise ParseError(f"bad lattice type in {where}: {exc}") from None


def encode_space(s: IntegralSymplecticSpace) -> dict:
    return {"n": s.n, "gram": encode_integer_matrix(s.gram)}


def decode_space(obj, where="space") -> IntegralSymplecticSpace:
    gram = decode_integer_matrix(_need(obj, "gram", where), where)
    try:
        space = IntegralSymplecticSpace(gram)
    except Exception as exc:
        raise ParseError(f"bad symplectic space in {where}: {exc}") from None
    if "n" in obj and decode_integer(obj["n"], where) != space.n:
        raise ParseError(f"rank mismatch in {where}")
    return space


def encode_aff(x: AffineSymplectomorphism) -> dict:
    return {
        "translation": encode_rational_vector(x.translation),
        "rotation": encode_integer_matrix(x.rotation),
        "t": encode_lattice_type(x.type),
    }


def decode_aff(obj, where="affine element") -> AffineSymplectomorphism:
    t = decode_lattice_type(_need(obj, "t", where), where)
    translation = decode_rational_vector(_need(obj, "translation", where), where)
    rotation = decode_integer_matrix(_need(obj, "rotation", where), where)
    try:
        return AffineSymplectomorphism(translation, rotation, t)
    except Exception as exc:
        raise ParseError(f"bad affine element in {where}: {exc}") from None


def encode_torus_point(p: TorusPoint) -> dict:
    return {
        "coords": encode_rational_vector(p.coords),
        "t": encode_lattice_type(p.type),
    }


def decode_torus_point(obj, where="torus point") -> TorusPoint:
    t = decode_lattice_type(_need(obj, "t", where), where)
    coords = decode_rational_vector(_need(obj, "coords", where), where)
    try:
        return TorusPoint(coords, t)
    except Exception as exc:
        raise ParseError(f"bad torus point in {where}: {exc}") from None


def encode_taming(tm: Taming) -> dict:
    return {
        "J": encode_float_matrix(tm.J),
        "omega": encode_integer_matrix(tm.omega),
        "tol": tm.tol,
    }


def decode_taming(obj, where="taming", tol_override=None) -> Taming:
    J = decode_float_matrix(_need(obj, "J", where), where)
    omega = decode_integer_matrix(_need(obj, "omega", where), where)
    tol = tol_override
    if tol is None:
        tol = float(obj.get("tol", DEFAULT_TOL))
    return Taming(J, omega, tol)


def decode_siegel_point(obj, where="siegel point") -> SiegelPoint:
    X = decode_float_matrix(_need(obj, "X", where), where)
    Y = decode_float_matrix(_need(obj, "Y", where), where)
    return SiegelPoint(X, Y)


def decode_frame(obj, where="frame") -> PointFrame:
    g = decode_float_matrix(_need(obj, "g", where), where)
    orientation = obj.get("orientation", 1)
    if orientation not in (1, -1):
        raise ParseError(f"orientation must be 1 or -1 in {where}")
    return PointFrame(g, orientation)


def encode_frame(frame: PointFrame) -> dict:
    return {"g": encode_float_matrix(frame.g), "orientation": frame.orientation}


def decode_field_sample(obj, where="field sample") -> FieldStrengthSample:
    F = decode_float_matrix(_need(obj, "F", where), where)
    try:
        return FieldStrengthSample(F)
    except Exception as exc:
        raise ParseError(f"bad field sample in {where}: {exc}") from None


def encode_field_sample(sample: FieldStrengthSample) -> dict:
    return {"F": encode_float_matrix(sample.F)}


def decode_fundamental_form(obj, where="fundamental form") -> FundamentalFormSample:
    comps = _need(obj, "components", where)
    if not isinstance(comps, list):
        raise ParseError(f"components must be a list in {where}")
    return FundamentalFormSample(
        [decode_float_matrix(c, where) for c in comps]
    )


def decode_scalar_sector(obj, where="scalar sector") -> ScalarSectorSample:
    pm = decode_float_matrix(_need(obj, "pullback_metric", where), where)
    einstein_lhs = obj.get("einstein_lhs")
    if einstein_lhs is not None:
        einstein_lhs = decode_float_matrix(einstein_lhs, where)
    scalar_lhs = obj.get("scalar_lhs")
    try:
        return ScalarSectorSample(pm, einstein_lhs, scalar_lhs)
    except Exception as exc:
        raise ParseError(f"bad scalar sector in {where}: {exc}") from None


def encode_complex(c: TwistedComplex) -> dict:
    out = {
        "cells": list(c.cells),
        "boundaries": [encode_integer_matrix(b) for b in c.boundaries],
        "transports": [
            {"cell": e, "gamma": encode_integer_matrix(g)}
            for e, g in enumerate(c.transports)
        ],
        "t": encode_lattice_type(c.type),
    }
    if c.words is not None:
        out["words"] = [
            None if w is None else {"cell": f, "word": [[e, s] for e, s in w]}
            for f, w in enumerate(c.words)
        ]
        out["words"] = [w for w in out["words"] if w is not None]
    return out


def decode_complex(obj, where="complex") -> TwistedComplex:
    cells = _need(obj, "cells", where)
    if not isinstance(cells, list):
        raise ParseError(f"cells must be a list in {where}")
    cells = [decode_integer(x, where) for x in cells]
    boundaries = [
        decode_integer_matrix(b, where) for b in _need(obj, "boundaries", where)
    ]
    t = decode_lattice_type(_need(obj, "t", where), where)
    n_edges = cells[1] if len(cells) > 1 else 0
    transports = [None] * n_edges
    for item in obj.get("transports", []):
        e = decode_integer(_need(item, "cell", where), where)
        if not 0 <= e < n_edges:
            raise ParseError(f"transport for unknown 1-cell {e} in {where}")
        transports[e] = decode_integer_matrix(_need(item, "gamma", where), where)
    words = None
    if "words" in obj:
        n_faces = cells[2] if len(cells) > 2 else 0
        words = [None] * n_faces
        for item in obj["words"]:
            f = decode_integer(_need(item, "cell", where), where)
            if not 0 <= f < n_faces:
                raise ParseError(f"word for unknown 2-cell {f} in {where}")
            raw = _need(item, "word", where)
            try:
                words[f] = tuple(
                    (decode_integer(e, where), decode_integer(s, where))
                    for e, s in raw
                )
            except (TypeError, ValueError):
                raise ParseError(f"bad attaching word in {where}") from None
    try:
        return TwistedComplex(cells, boundaries, transports, t, words)
    except Exception as exc:
        raise ParseError(f"bad twisted complex in {where}: {exc}") from None


def decode_charge_class(obj, where="charge class") -> ChargeClass:
    coeffs = decode_rational_vector(_need(obj, "coefficients", where), where)
    return ChargeClass(coeffs)


def encode_charge_class(cls: ChargeClass) -> dict:
    return {"coefficients": encode_rational_vector(cls.coefficients)}


def decode_holonomy(obj, where="holonomy") -> HolonomySubgroup:
    t = decode_lattice_type(_need(obj, "t", where), where)
    gens = [
        decode_integer_matrix(g, where) for g in _need(obj, "generators", where)
    ]
    try:
        return HolonomySubgroup(gens, t)
    except Exception as exc:
        raise ParseError(f"bad holonomy subgroup in {where}: {exc}") from None


def decode_scalar_model(obj, where="scalar model") -> FiniteScalarModel:
    points = decode_integer(_need(obj, "points", where), where)
    isometries = _need(obj, "isometries", where)
    omega = decode_integer_matrix(_need(obj, "omega", where), where)
    tol = float(obj.get("tol", DEFAULT_TOL))
    tamings = [
        Taming(decode_float_matrix(J, where), omega, tol)
        for J in _need(obj, "tamings", where)
    ]
    try:
        return FiniteScalarModel(points, isometries, tamings)
    except Exception as exc:
        raise ParseError(f"bad scalar model in {where}: {exc}") from None


def encode_uduality_element(e: UDualityElement) -> dict:
    out = {
        "isometry": e.isometry,
        "rotation": encode_integer_matrix(e.rotation),
    }
    if e.torus is not None:
        out["torus"] = encode_rational_vector(e.torus)
    return out


def decode_uduality_element(obj, where="uduality element") -> UDualityElement:
    iso = decode_integer(_need(obj, "isometry", where), where)
    rotation = decode_integer_matrix(_need(obj, "rotation", where), where)
    torus = obj.get("torus")
    if torus is not None:
        torus = decode_rational_vector(torus, where)
    return UDualityElement(iso, rotation, torus)

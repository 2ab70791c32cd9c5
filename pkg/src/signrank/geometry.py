"""Exact point-hyperplane configurations and their sign-pattern encodings.

A configuration lives in dimension d with coordinates in Q(sqrt(field_d)).
Hyperplanes are oriented: the coefficient vector (c0, c1, ..., cd) denotes
{x : c0 + c1 x1 + ... + cd xd = 0} with the positive side where the
evaluation is positive.  Coefficient vectors differing by a positive scalar
denote the same oriented hyperplane, so construction canonicalizes by a
positive scale making |cd| = 1 when cd != 0 (cd = +1 is the rightward
presentation: the positive side is then "above" in the xd sense).  Reversing
an orientation negates the corresponding column of the encoded pattern.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DomainError, VerticalHyperplane
from .exactnum import QuadElem, format_scalar, parse_scalar, quad_sign
from .pattern import SignPattern, condense

Point = Tuple[QuadElem, ...]


def _lift_all(values, d: int) -> tuple:
    return tuple(QuadElem.lift(v, d) for v in values)


@dataclass(frozen=True, eq=False)
class OrientedHyperplane:
    """Oriented hyperplane with d+1 exact coefficients (c0, c1, ..., cd)."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable, field_d: int = 1):
        coeffs = _lift_all(coeffs, field_d)
        if len(coeffs) < 2:
            raise DomainError("a hyperplane needs at least two coefficients")
        if all(c.is_zero() for c in coeffs[1:]):
            raise DomainError("degenerate hyperplane: all direction coefficients are zero")
        # canonical positive scaling: |last nonzero of c1..cd| becomes 1,
        # preferring cd itself so non-vertical hyperplanes end with cd = +-1
        scale_ref = coeffs[-1]
        if scale_ref.is_zero():
            scale_ref = next(c for c in reversed(coeffs[1:]) if not c.is_zero())
        scale = scale_ref if scale_ref.sign() > 0 else -scale_ref
        object.__setattr__(self, "coeffs", tuple(c / scale for c in coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    @property
    def field_d(self) -> int:
        return max(c.d for c in self.coeffs)

    def is_vertical(self) -> bool:
        return self.coeffs[-1].is_zero()

    def is_rightward(self) -> bool:
        return self.coeffs[-1].sign() > 0

    def evaluate(self, point: Sequence) -> QuadElem:
        if len(point) != self.dim:
            raise DomainError(
                f"point of dimension {len(point)} against hyperplane of dimension {self.dim}"
            )
        acc = self.coeffs[0]
        for c, x in zip(self.coeffs[1:], point):
            acc = acc + c * x
        return acc

    def reversed_orientation(self) -> "OrientedHyperplane":
        return OrientedHyperplane([-c for c in self.coeffs])

    def rightward(self) -> tuple["OrientedHyperplane", bool]:
        """Rightward presentation (cd = +1) and whether a flip was needed."""
        if self.is_vertical():
            raise DomainError("a vertical hyperplane has no rightward presentation")
        if self.is_rightward():
            return self, False
        return self.reversed_orientation(), True

    def __eq__(self, other):
        return isinstance(other, OrientedHyperplane) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"OrientedHyperplane({[str(float(c)) for c in self.coeffs]})"


@dataclass(frozen=True, eq=False)
class Configuration:
    """Labeled points and oriented hyperplanes sharing one field context."""

    dim: int
    field_d: int
    points: tuple
    hyperplanes: tuple

    def __init__(self, dim: int, points: Iterable, hyperplanes: Iterable, field_d: int = 1):
        if dim < 1:
            raise DomainError(f"configuration dimension must be >= 1, got {dim}")
        pts = tuple(_lift_all(p, field_d) for p in points)
        for p in pts:
            if len(p) != dim:
                raise DomainError(f"point {p} does not have dimension {dim}")
        hyps = []
        for h in hyperplanes:
            if not isinstance(h, OrientedHyperplane):
                h = OrientedHyperplane(h, field_d)
            if h.dim != dim:
                raise DomainError(f"hyperplane of dimension {h.dim}, expected {dim}")
            for c in h.coeffs:
                QuadElem.lift(c, field_d)  # context check
            hyps.append(h)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "field_d", field_d)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "hyperplanes", tuple(hyps))

    @property
    def num_points(self) -> int:
        return len(self.points)

    @property
    def num_hyperplanes(self) -> int:
        return len(self.hyperplanes)

    def __eq__(self, other):
        return (
            isinstance(other, Configuration)
            and self.dim == other.dim
            and self.points == other.points
            and self.hyperplanes == other.hyperplanes
        )

    def __repr__(self):
        return (
            f"Configuration(dim={self.dim}, {self.num_points} points, "
            f"{self.num_hyperplanes} hyperplanes, sqrt {self.field_d})"
        )


def side(point: Sequence, hyperplane: OrientedHyperplane) -> int:
    """Exact side of the point relative to the oriented hyperplane: +1 on
    the positive side (above, for rightward hyperplanes), 0 on it, -1 below."""
    return quad_sign(hyperplane.evaluate(point))


def encode_configuration(C: Configuration) -> SignPattern:
    """Sign pattern of the configuration: entry (i, j) is the side of point
    i relative to hyperplane j.  The result has minimum rank <= dim + 1.

    Every hyperplane must be non-vertical (last coefficient nonzero);
    offenders raise VerticalHyperplane with their index.
    """
    for j, h in enumerate(C.hyperplanes):
        if h.is_vertical():
            raise VerticalHyperplane(j)
    return SignPattern(
        [[side(p, h) for h in C.hyperplanes] for p in C.points]
    )


def from_factorization(U, V, field_d: int = 1) -> Configuration:
    """Configuration of a normal-form factor pair: row i of U = (1, u_i2,
    ..., u_ir) becomes the point (u_i2, ..., u_ir); column j of V =
    (v_1j, ..., v_{r-1,j}, 1) becomes the hyperplane with those coefficients.
    The encoded pattern of the result equals sgn(UV) entry-wise.
    """
    U = [ _lift_all(row, field_d) for row in U ]
    V = [ _lift_all(row, field_d) for row in V ]
    if not U or not V:
        raise DomainError("factors must be nonempty")
    r = len(U[0])
    if any(len(row) != r for row in U) or len(V) != r:
        raise DomainError("inner dimensions of U and V do not match")
    if r < 2:
        raise DomainError(f"normal form needs rank >= 2, got r = {r}")
    n = len(V[0])
    if any(len(row) != n for row in V):
        raise DomainError("ragged V")
    for i, row in enumerate(U):
        if row[0] != QuadElem.lift(1, field_d):
            raise DomainError(f"U row {i + 1} does not start with an exact 1")
    for j in range(n):
        if V[r - 1][j] != QuadElem.lift(1, field_d):
            raise DomainError(f"V column {j + 1} does not end with an exact 1")
    points = [row[1:] for row in U]
    hyperplanes = [
        OrientedHyperplane([V[k][j] for k in range(r)], field_d) for j in range(n)
    ]
    return Configuration(r - 1, points, hyperplanes, field_d)


@dataclass(frozen=True)
class SimplicityViolation:
    condition: int  # 1..4
    indices: tuple

    def describe(self) -> str:
        kinds = {
            1: "points with identical or opposite positions",
            2: "hyperplanes with identical or opposite positions",
            3: "point lying on every hyperplane",
            4: "hyperplane through every point",
        }
        ones = tuple(i + 1 for i in self.indices)
        return f"condition {self.condition}: {kinds[self.condition]} at {ones}"


def is_simple(C: Configuration):
    """A configuration is simple iff its encoded pattern is condensed.
    Returns (bool, violations) naming each failed condition."""
    P = encode_configuration(C)
    violations = []
    for i, k in itertools.combinations(range(P.m), 2):
        a, b = P.row(i), P.row(k)
        if a == b or tuple(-x for x in a) == b:
            violations.append(SimplicityViolation(1, (i, k)))
    for j, l in itertools.combinations(range(P.n), 2):
        a, b = P.col(j), P.col(l)
        if a == b or tuple(-x for x in a) == b:
            violations.append(SimplicityViolation(2, (j, l)))
    for i in range(P.m):
        if all(v == 0 for v in P.row(i)):
            violations.append(SimplicityViolation(3, (i,)))
    for j in range(P.n):
        if all(v == 0 for v in P.col(j)):
            violations.append(SimplicityViolation(4, (j,)))
    return (not violations, tuple(violations))


@dataclass(frozen=True)
class RotationReport:
    t: Fraction
    cos: Fraction
    sin: Fraction
    hyperplane_flips: tuple  # indices re-oriented rightward after rotating


def _candidate_ts():
    yield Fraction(0)
    for q in itertools.count(2):
        for p in range(1, q):
            if Fraction(p, q).denominator != q:
                continue
            yield Fraction(p, q)
            yield Fraction(-p, q)


def rotate(C: Configuration, cos, sin) -> Configuration:
    """Exact planar rotation about the origin; evaluation values (hence the
    encoded pattern) are unchanged because normals rotate with the points."""
    if C.dim != 2:
        raise DomainError("exact rotation implemented for planar configurations only")
    cos = QuadElem.lift(cos, C.field_d)
    sin = QuadElem.lift(sin, C.field_d)
    pts = [(cos * x - sin * y, sin * x + cos * y) for x, y in C.points]
    hyps = []
    for h in C.hyperplanes:
        c0, c1, c2 = h.coeffs
        hyps.append(OrientedHyperplane((c0, cos * c1 - sin * c2, sin * c1 + cos * c2), C.field_d))
    return Configuration(2, pts, hyps, C.field_d)


def avoid_vertical(C: Configuration) -> tuple[Configuration, RotationReport]:
    """Exact rational rotation removing vertical hyperplanes, followed by
    rightward re-presentation of every hyperplane.

    The rotation uses the rational circle parametrization
    cos = (1 - t^2)/(1 + t^2), sin = 2t/(1 + t^2); only finitely many t are
    bad, so the scan over small rationals terminates.  Incidences and
    evaluations are preserved exactly; the recorded flips say which columns
    of the encoded pattern changed sign relative to the orientation side.
    """
    if C.dim != 2:
        raise DomainError("avoid_vertical implemented for planar configurations only")
    for t in _candidate_ts():
        cos = Fraction(1 - t * t, 1) / (1 + t * t)
        sin = Fraction(2 * t, 1) / (1 + t * t)
        rotated = rotate(C, cos, sin)
        if any(h.is_vertical() for h in rotated.hyperplanes):
            continue
        flips = []
        hyps = []
        for j, h in enumerate(rotated.hyperplanes):
            right, flipped = h.rightward()
            hyps.append(right)
            if flipped:
                flips.append(j)
        result = Configuration(2, rotated.points, hyps, C.field_d)
        return result, RotationReport(t, cos, sin, tuple(flips))
    raise AssertionError("unreachable: admissible rotation always exists")


def translate(C: Configuration, v: Sequence) -> Configuration:
    """Shift points by v and adjust c0 so every evaluation is unchanged."""
    v = _lift_all(v, C.field_d)
    if len(v) != C.dim:
        raise DomainError(f"translation vector of dimension {len(v)}, expected {C.dim}")
    pts = [tuple(x + dx for x, dx in zip(p, v)) for p in C.points]
    hyps = []
    for h in C.hyperplanes:
        shift = h.coeffs[0]
        for c, dx in zip(h.coeffs[1:], v):
            shift = shift - c * dx
        hyps.append(OrientedHyperplane((shift,) + h.coeffs[1:], C.field_d))
    return Configuration(C.dim, pts, hyps, C.field_d)


@dataclass(frozen=True)
class DualizationResult:
    configuration: Configuration
    hyperplane_flips: tuple  # hyperplanes re-oriented before taking poles

    def __iter__(self):
        return iter((self.configuration, self.hyperplane_flips))


def dualize(C: Configuration) -> DualizationResult:
    """Incidence- and orientation-preserving dual transform.

    Each point a becomes the hyperplane <a, x> = 1 oriented with the origin
    on the negative side; each hyperplane (re-oriented, if needed, so the
    origin lies on its negative side, with the flip recorded) becomes its
    pole point.  The encoded pattern of the dual equals the transpose of the
    original pattern after negating the flipped columns.
    """
    one = QuadElem.lift(1, C.field_d)
    new_hyps = []
    for i, p in enumerate(C.points):
        if all(x.is_zero() for x in p):
            raise DomainError(
                f"point {i + 1} is the origin; translate the configuration first"
            )
        new_hyps.append(OrientedHyperplane((-one,) + tuple(p), C.field_d))
    new_pts = []
    flips = []
    for j, h in enumerate(C.hyperplanes):
        c0 = h.coeffs[0]
        if c0.is_zero():
            raise DomainError(
                f"hyperplane {j + 1} passes through the origin; translate the configuration first"
            )
        if c0.sign() > 0:
            h = h.reversed_orientation()
            flips.append(j)
            c0 = h.coeffs[0]
        new_pts.append(tuple(-c / c0 for c in h.coeffs[1:]))
    return DualizationResult(
        Configuration(C.dim, new_pts, new_hyps, C.field_d), tuple(flips)
    )


def _exact_max(values, floor):
    best = QuadElem.lift(floor)
    for v in values:
        if v > best:
            best = v
    return best


def _pad_dimension(C: Configuration, target_dim: int) -> Configuration:
    """Embed into a higher dimension by inserting zero coordinates right
    after the leading factor column: new leading point coordinates are zero
    and hyperplanes get matching zero coefficients after c0."""
    delta = target_dim - C.dim
    if delta == 0:
        return C
    zero = QuadElem.lift(0, C.field_d)
    pts = [(zero,) * delta + p for p in C.points]
    hyps = [
        OrientedHyperplane((h.coeffs[0],) + (zero,) * delta + h.coeffs[1:], C.field_d)
        for h in C.hyperplanes
    ]
    return Configuration(target_dim, pts, hyps, C.field_d)


def stack(C1: Configuration, C2: Configuration) -> Configuration:
    """Block composition: equalize dimensions, then translate C1 far enough
    up that every C1 point is above every C2 hyperplane and every C2 point
    below every C1 hyperplane.  The encoded pattern of the result is the
    block pattern [[A1, +], [-, A2]].

    Both inputs must encode condensed patterns, use compatible field
    contexts, and present every hyperplane rightward (cd = +1); the "far
    above" offset is computed exactly from the crossing requirements.
    """
    field_d = C1.field_d
    if C1.field_d != C2.field_d:
        if C1.field_d == 1:
            field_d = C2.field_d
        elif C2.field_d == 1:
            field_d = C1.field_d
        else:
            raise DomainError(
                f"cannot stack sqrt({C1.field_d}) and sqrt({C2.field_d}) configurations"
            )
    for name, cfg in (("first", C1), ("second", C2)):
        for j, h in enumerate(cfg.hyperplanes):
            if h.is_vertical():
                raise VerticalHyperplane(j)
            if not h.is_rightward():
                raise DomainError(
                    f"hyperplane {j + 1} of the {name} configuration points leftward; "
                    "stacking needs the rightward presentation"
                )
        simple, violations = is_simple(cfg)
        if not simple:
            raise DomainError(
                f"the {name} configuration does not encode a condensed pattern: "
                + "; ".join(v.describe() for v in violations)
            )

    dim = max(C1.dim, C2.dim)
    top = _pad_dimension(
        Configuration(C1.dim, C1.points, C1.hyperplanes, field_d), dim
    )
    bottom = _pad_dimension(
        Configuration(C2.dim, C2.points, C2.hyperplanes, field_d), dim
    )

    # every rightward hyperplane gains exactly +delta at a point shifted up
    # by delta, and its own shift lowers evaluations of fixed points by delta
    requirements = []
    for p in top.points:
        for h in bottom.hyperplanes:
            requirements.append(-h.evaluate(p))  # need eval + delta > 0
    for p in bottom.points:
        for h in top.hyperplanes:
            requirements.append(h.evaluate(p))  # need eval - delta < 0
    delta = _exact_max(requirements, 0) + 1

    shift = (QuadElem.lift(0, field_d),) * (dim - 1) + (delta,)
    lifted = translate(top, shift)
    return Configuration(
        dim,
        lifted.points + bottom.points,
        lifted.hyperplanes + bottom.hyperplanes,
        field_d,
    )


@dataclass(frozen=True)
class IncidenceStructure:
    point_members: tuple  # per point: frozenset of incident hyperplane indices
    hyperplane_members: tuple  # per hyperplane: frozenset of incident point indices

    @property
    def point_counts(self) -> tuple:
        return tuple(len(s) for s in self.point_members)

    @property
    def hyperplane_counts(self) -> tuple:
        return tuple(len(s) for s in self.hyperplane_members)


def incidence_structure(A: SignPattern) -> IncidenceStructure:
    """Read the zero set of a pattern as a point/hyperplane incidence
    relation: point i lies on hyperplane j iff entry (i, j) is zero."""
    point_members = tuple(
        frozenset(j for j in range(A.n) if A.entries[i][j] == 0) for i in range(A.m)
    )
    hyperplane_members = tuple(
        frozenset(i for i in range(A.m) if A.entries[i][j] == 0) for j in range(A.n)
    )
    return IncidenceStructure(point_members, hyperplane_members)


# Configuration file format (JSON): {"dim": 2, "sqrt": 5, "points": [...],
# "hyperplanes": [...]} with scalars in the shared textual syntax; "sqrt"
# omitted means plain rationals.


def configuration_to_dict(C: Configuration) -> dict:
    doc = {
        "dim": C.dim,
        "points": [[format_scalar(x) for x in p] for p in C.points],
        "hyperplanes": [[format_scalar(c) for c in h.coeffs] for h in C.hyperplanes],
    }
    if C.field_d != 1:
        doc["sqrt"] = C.field_d
    return doc


def configuration_from_dict(doc: dict) -> Configuration:
    if not isinstance(doc, dict):
        raise DomainError("configuration document must be a JSON object")
    missing = {"dim", "points", "hyperplanes"} - set(doc)
    if missing:
        raise DomainError(f"configuration document missing keys {sorted(missing)}")
    field_d = int(doc.get("sqrt", 1))
    dim = int(doc["dim"])
    points = [[parse_scalar(x, field_d) for x in p] for p in doc["points"]]
    hyperplanes = [
        OrientedHyperplane([parse_scalar(c, field_d) for c in h], field_d)
        for h in doc["hyperplanes"]
    ]
    return Configuration(dim, points, hyperplanes, field_d)


def load_configuration(path) -> Configuration:
    with open(path, "r", encoding="utf-8") as fh:
        return configuration_from_dict(json.load(fh))


def save_configuration(C: Configuration, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(configuration_to_dict(C), fh, indent=2)
        fh.write("\n")

"""Parameter-region trees: membership, closure handling, decomposition.

A region is a boolean expression tree over a handful of leaf shapes.  The
supremum engine wants three things from it:

* pointwise membership, under plain, closure, or interior semantics;
* for trees built only from boxes and finite point sets, an exact
  decomposition into atomic closed cells whose union is the closure of
  the region (this is what makes max-over-union identities hold to the
  last bit: every leaf endpoint becomes a breakpoint, so membership is
  constant on each open span between breakpoints);
* a smooth-ish violation measure used as an optimizer penalty when the
  tree contains general constraints.

Closure and interior are computed structurally.  The recursion is exact
for complements and for unions-of-closures / intersections-of-interiors;
closure of an intersection and interior of a union are approximated by
the structural bound (superset resp. subset), which is the standard
compromise for expression trees and is documented at the call sites that
rely on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputError, SpecError, UnsupportedError
from .space import ContinuousSpace, FiniteSpace, Interval

_EQ_TOL = 1e-12  # equality-constraint slack, matches the engine's witness tolerance
_CELL_CAP = 20000  # decomposition size guard; beyond this the numeric path takes over


@dataclass(frozen=True)
class Region:
    """Base node.  `dim` and `family` are caller metadata.

    `dim` may declare the intrinsic dimension of the set (used to flag
    measure-zero hypotheses in reports); `family` tags a region a model
    recognizes and can maximize over in closed form.
    """

    dim: int | None = field(default=None, kw_only=True)
    family: str | None = field(default=None, kw_only=True)


@dataclass(frozen=True)
class Full(Region):
    pass


@dataclass(frozen=True)
class Empty(Region):
    pass


@dataclass(frozen=True)
class FiniteSet(Region):
    """Explicit parameter points.

    Tuples address continuous spaces; scalar numbers or strings address
    finite spaces by their mathematical value (not by index).
    """

    points: tuple

    def __post_init__(self):
        if len(self.points) == 0:
            raise InputError("FiniteSet needs at least one point; use Empty instead")
        norm = []
        for p in self.points:
            if isinstance(p, bool):
                raise InputError(f"invalid finite-set point {p!r}")
            if isinstance(p, (int, float, str)):
                norm.append(p)
            elif isinstance(p, (tuple, list)):
                norm.append(tuple(float(t) for t in p))
            else:
                raise InputError(f"invalid finite-set point {p!r}")
        object.__setattr__(self, "points", tuple(norm))


@dataclass(frozen=True)
class Box(Region):
    intervals: tuple[Interval, ...]

    def __post_init__(self):
        if not self.intervals:
            raise InputError("Box needs at least one interval")
        object.__setattr__(self, "intervals", tuple(self.intervals))


_OPS = ("<=", "<", "==", ">", ">=")


@dataclass(frozen=True)
class Constraint(Region):
    """g(theta) op rhs.  `coeffs` is set when g is linear, enabling JSON output."""

    g: Callable[[tuple], float] = field(compare=False)
    op: str = "<="
    rhs: float = 0.0
    coeffs: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.op not in _OPS:
            raise InputError(f"constraint op must be one of {_OPS}, got {self.op!r}")


@dataclass(frozen=True)
class Predicate(Region):
    """Opaque membership test; treated as its own closure and interior."""

    fn: Callable[[tuple], bool] = field(compare=False)


@dataclass(frozen=True)
class Complement(Region):
    of: Region


@dataclass(frozen=True)
class Union(Region):
    of: tuple[Region, ...]

    def __post_init__(self):
        if not self.of:
            raise InputError("Union needs at least one child")
        object.__setattr__(self, "of", tuple(self.of))


@dataclass(frozen=True)
class Intersection(Region):
    of: tuple[Region, ...]

    def __post_init__(self):
        if not self.of:
            raise InputError("Intersection needs at least one child")
        object.__setattr__(self, "of", tuple(self.of))


def interval(lo: float, hi: float, lo_open: bool = False, hi_open: bool = False,
             **kw) -> Box:
    """One-dimensional box shorthand."""
    return Box((Interval(lo, hi, lo_open, hi_open),), **kw)


def box(*pairs: Sequence[float], **kw) -> Box:
    return Box(tuple(Interval(float(a), float(b)) for a, b in pairs), **kw)


# ---------------------------------------------------------------------------
# membership


def _cmp(op: str, lhs: float, rhs: float) -> bool:
    if op == "<=":
        return lhs <= rhs
    if op == "<":
        return lhs < rhs
    if op == "==":
        return abs(lhs - rhs) <= _EQ_TOL
    if op == ">":
        return lhs > rhs
    return lhs >= rhs


def _closure_op(op: str) -> str:
    return {"<": "<=", ">": ">="}.get(op, op)


def _interior_op(op: str) -> str | None:
    # equality constraints have empty interior in the ambient space
    if op == "==":
        return None
    return {"<=": "<", ">=": ">"}.get(op, op)


def _as_coords(point) -> tuple:
    """Coerce a discrete scalar value to coordinates for geometric nodes."""
    if isinstance(point, tuple):
        return point
    if isinstance(point, (int, float)):
        return (float(point),)
    raise InputError(
        f"geometric region membership needs a numeric point, got {point!r}"
    )


def member(region: Region, point, mode: str = "as_is") -> bool:
    """Is `point` in the region (mode 'as_is'), its closure, or its interior?

    Points of finite spaces (scalar values: ints, floats, labels) live in
    a discrete topology, so all three modes coincide for them.
    """
    discrete = not isinstance(point, tuple)
    if discrete:
        mode = "as_is"
    if isinstance(region, Full):
        return True
    if isinstance(region, Empty):
        return False
    if isinstance(region, FiniteSet):
        if mode == "interior":
            return False
        if discrete:
            return any(not isinstance(p, tuple) and p == point for p in region.points)
        return any(
            isinstance(p, tuple) and len(p) == len(point)
            and all(a == b for a, b in zip(p, point))
            for p in region.points
        )
    if isinstance(region, Box):
        coords = _as_coords(point)
        if len(coords) != len(region.intervals):
            raise InputError(
                f"point dim {len(coords)} != box dim {len(region.intervals)}"
            )
        return all(
            iv.contains(t, closure=(mode == "closure"))
            if mode != "interior"
            else (iv.lo < t < iv.hi)
            for iv, t in zip(region.intervals, coords)
        )
    if isinstance(region, Constraint):
        op = region.op
        if mode == "closure":
            op = _closure_op(op)
        elif mode == "interior":
            op2 = _interior_op(op)
            if op2 is None:
                return False
            op = op2
        return _cmp(op, float(region.g(_as_coords(point))), region.rhs)
    if isinstance(region, Predicate):
        return bool(region.fn(point))
    if isinstance(region, Complement):
        # cl(A^c) = (int A)^c and int(A^c) = (cl A)^c, both exact
        if mode == "closure":
            return not member(region.of, point, "interior")
        if mode == "interior":
            return not member(region.of, point, "closure")
        return not member(region.of, point, "as_is")
    if isinstance(region, Union):
        return any(member(c, point, mode) for c in region.of)
    if isinstance(region, Intersection):
        return all(member(c, point, mode) for c in region.of)
    raise InputError(f"unknown region node {type(region).__name__}")


def member_batch(region: Region, pts: np.ndarray, mode: str = "as_is") -> np.ndarray:
    """Vectorized membership over an (N, d) float array.

    Falls back to a Python loop for nodes whose callables reject arrays.
    """
    n = pts.shape[0]
    if isinstance(region, Full):
        return np.ones(n, dtype=bool)
    if isinstance(region, Empty):
        return np.zeros(n, dtype=bool)
    if isinstance(region, Box):
        out = np.ones(n, dtype=bool)
        for j, iv in enumerate(region.intervals):
            t = pts[:, j]
            if mode == "closure":
                out &= (t >= iv.lo) & (t <= iv.hi)
            elif mode == "interior":
                out &= (t > iv.lo) & (t < iv.hi)
            else:
                out &= (t > iv.lo) | ((t == iv.lo) & (not iv.lo_open) & np.isfinite(t))
                out &= (t < iv.hi) | ((t == iv.hi) & (not iv.hi_open) & np.isfinite(t))
        return out
    if isinstance(region, FiniteSet):
        if mode == "interior":
            return np.zeros(n, dtype=bool)
        out = np.zeros(n, dtype=bool)
        for p in region.points:
            if isinstance(p, tuple) and len(p) == pts.shape[1]:
                out |= np.all(pts == np.asarray(p), axis=1)
        return out
    if isinstance(region, Constraint):
        op = region.op
        if mode == "closure":
            op = _closure_op(op)
        elif mode == "interior":
            op2 = _interior_op(op)
            if op2 is None:
                return np.zeros(n, dtype=bool)
            op = op2
        vals = _eval_g_batch(region, pts)
        if op == "<=":
            return vals <= region.rhs
        if op == "<":
            return vals < region.rhs
        if op == "==":
            return np.abs(vals - region.rhs) <= _EQ_TOL
        if op == ">":
            return vals > region.rhs
        return vals >= region.rhs
    if isinstance(region, Complement):
        if mode == "closure":
            return ~member_batch(region.of, pts, "interior")
        if mode == "interior":
            return ~member_batch(region.of, pts, "closure")
        return ~member_batch(region.of, pts, "as_is")
    if isinstance(region, Union):
        out = np.zeros(n, dtype=bool)
        for c in region.of:
            out |= member_batch(c, pts, mode)
        return out
    if isinstance(region, Intersection):
        out = np.ones(n, dtype=bool)
        for c in region.of:
            out &= member_batch(c, pts, mode)
        return out
    # Predicate and anything exotic: row loop
    return np.fromiter(
        (member(region, tuple(row), mode) for row in pts), dtype=bool, count=n
    )


def _eval_g_batch(region: Constraint, pts: np.ndarray) -> np.ndarray:
    if region.coeffs is not None:
        return pts @ np.asarray(region.coeffs, dtype=float)
    try:
        cols = tuple(pts[:, j] for j in range(pts.shape[1]))
        vals = np.asarray(region.g(cols), dtype=float)
        if vals.shape == (pts.shape[0],):
            return vals
    except Exception:
        pass
    return np.fromiter(
        (float(region.g(tuple(row))) for row in pts), dtype=float, count=pts.shape[0]
    )


# ---------------------------------------------------------------------------
# violation measure (optimizer penalty)


def violation(region: Region, point: tuple, neg: bool = False) -> float:
    """Non-negative measure, zero iff the point sits in (the closure of)
    the region.  Complements are pushed down De Morgan style via `neg`.

    Nodes without usable geometry (predicates, complements of equalities
    or of finite sets) degrade to 0/large indicators; the optimizer still
    works off masked grid values in those cases, the penalty just stops
    being smooth.
    """
    big = 1e6
    if isinstance(region, Full):
        return big if neg else 0.0
    if isinstance(region, Empty):
        return 0.0 if neg else big
    if isinstance(region, Complement):
        return violation(region.of, point, not neg)
    if isinstance(region, Union):
        if neg:
            return sum(violation(c, point, True) for c in region.of)
        return min(violation(c, point, False) for c in region.of)
    if isinstance(region, Intersection):
        if neg:
            return min(violation(c, point, True) for c in region.of)
        return sum(violation(c, point, False) for c in region.of)
    if isinstance(region, Box):
        if not neg:
            d2 = 0.0
            for iv, t in zip(region.intervals, point):
                d = max(0.0, iv.lo - t, t - iv.hi)
                d2 += d * d
            return math.sqrt(d2)
        # outside the closed box -> 0; inside -> distance to the nearest face
        inside = all(iv.lo <= t <= iv.hi for iv, t in zip(region.intervals, point))
        if not inside:
            return 0.0
        return min(
            min(t - iv.lo, iv.hi - t) for iv, t in zip(region.intervals, point)
        )
    if isinstance(region, FiniteSet):
        if neg:
            return 0.0  # complement of a finite set misses only measure zero
        best = math.inf
        for p in region.points:
            if isinstance(p, tuple) and len(p) == len(point):
                best = min(best, sum((a - b) ** 2 for a, b in zip(p, point)))
        return math.sqrt(best) if best < math.inf else 1e6
    if isinstance(region, Constraint):
        val = float(region.g(point)) - region.rhs
        op = region.op
        if neg:
            flipped = {"<=": ">", "<": ">=", ">": "<=", ">=": "<", "==": "!="}[op]
            op = flipped
        if op in ("<=", "<"):
            return max(0.0, val)
        if op in (">=", ">"):
            return max(0.0, -val)
        if op == "==":
            return abs(val)
        return big if abs(val) <= _EQ_TOL else 0.0  # "!="
    if isinstance(region, Predicate):
        inside = bool(region.fn(point))
        if neg:
            inside = not inside
        return 0.0 if inside else big
    raise InputError(f"unknown region node {type(region).__name__}")


# ---------------------------------------------------------------------------
# exact decomposition into atomic closed cells


def _collect_breaks(region: Region, breaks: list[set]) -> bool:
    """Gather per-axis breakpoints; False if the tree has non-box leaves."""
    if isinstance(region, (Full, Empty)):
        return True
    if isinstance(region, Box):
        if len(region.intervals) != len(breaks):
            raise InputError(
                f"box dim {len(region.intervals)} != space dim {len(breaks)}"
            )
        for j, iv in enumerate(region.intervals):
            if math.isfinite(iv.lo):
                breaks[j].add(iv.lo)
            if math.isfinite(iv.hi):
                breaks[j].add(iv.hi)
        return True
    if isinstance(region, FiniteSet):
        for p in region.points:
            if not isinstance(p, tuple) or len(p) != len(breaks):
                return False
            for j, t in enumerate(p):
                breaks[j].add(t)
        return True
    if isinstance(region, Complement):
        return _collect_breaks(region.of, breaks)
    if isinstance(region, (Union, Intersection)):
        return all(_collect_breaks(c, breaks) for c in region.of)
    return False


def _axis_pieces(pts: Iterable[float], bound: Interval):
    """Atomic pieces of one axis: singletons at breakpoints, closed spans
    between them.  Returns (Interval, probe) pairs; the probe is a point
    in the piece's relative interior."""
    inner = sorted(t for t in pts if bound.lo < t < bound.hi)
    knots = []
    if math.isfinite(bound.lo):
        knots.append(bound.lo)
    knots.extend(inner)
    if math.isfinite(bound.hi) and bound.hi not in knots:
        knots.append(bound.hi)
    pieces = []
    if not knots:
        return [(Interval(bound.lo, bound.hi, bound.lo_open, bound.hi_open), 0.0)]
    if not math.isfinite(bound.lo):
        pieces.append((Interval(-math.inf, knots[0], True, False), knots[0] - 1.0))
    for i, k in enumerate(knots):
        pieces.append((Interval(k, k), k))
        if i + 1 < len(knots):
            a, b = k, knots[i + 1]
            if b > a:
                pieces.append((Interval(a, b), 0.5 * (a + b)))
    if not math.isfinite(bound.hi):
        pieces.append((Interval(knots[-1], math.inf, False, True), knots[-1] + 1.0))
    return pieces


def decompose(region: Region, space: ContinuousSpace):
    """Split a box-algebra region into closed atomic cells, or None.

    Returns a list of interval tuples whose union equals the closure of
    region-intersect-space.  None means the tree or the space is outside
    the box algebra (constraints, predicates, feasibility cuts) and the
    caller should use the masked numeric path.  An empty list means no
    point of the space belongs to the region.
    """
    if space.feasible is not None:
        return None
    breaks: list[set] = [set() for _ in range(space.dim)]
    if not _collect_breaks(region, breaks):
        return None
    per_axis = [_axis_pieces(breaks[j], space.bounds[j]) for j in range(space.dim)]
    total = 1
    for pieces in per_axis:
        total *= len(pieces)
        if total > _CELL_CAP:
            return None
    cells = []
    idx = [0] * space.dim
    while True:
        ivs = tuple(per_axis[j][idx[j]][0] for j in range(space.dim))
        probe = tuple(per_axis[j][idx[j]][1] for j in range(space.dim))
        if member(region, probe, "as_is"):
            cells.append(ivs)
        j = space.dim - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(per_axis[j]):
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            break
    return cells


# ---------------------------------------------------------------------------
# JSON round trip


def _interval_to_json(iv: Interval) -> dict:
    d = {"lo": iv.lo, "hi": iv.hi}
    if iv.lo_open:
        d["lo_open"] = True
    if iv.hi_open:
        d["hi_open"] = True
    return d


def _meta_to_json(region: Region, d: dict) -> dict:
    if region.dim is not None:
        d["dim"] = region.dim
    if region.family is not None:
        d["family"] = region.family
    return d


def to_json(region: Region) -> dict:
    """Serialize; opaque callables (general constraints, predicates) are
    not representable and raise UnsupportedError."""
    if isinstance(region, Full):
        return _meta_to_json(region, {"type": "full"})
    if isinstance(region, Empty):
        return _meta_to_json(region, {"type": "empty"})
    if isinstance(region, FiniteSet):
        pts = [list(p) if isinstance(p, tuple) else p for p in region.points]
        return _meta_to_json(region, {"type": "finite_set", "points": pts})
    if isinstance(region, Box):
        return _meta_to_json(
            region,
            {"type": "box", "intervals": [_interval_to_json(iv) for iv in region.intervals]},
        )
    if isinstance(region, Constraint):
        if region.coeffs is None:
            raise UnsupportedError(
                "only linear constraints serialize to JSON; this one has an opaque g"
            )
        return _meta_to_json(
            region,
            {
                "type": "linear_constraint",
                "coeffs": list(region.coeffs),
                "op": region.op,
                "rhs": region.rhs,
            },
        )
    if isinstance(region, Complement):
        return _meta_to_json(region, {"type": "complement", "of": to_json(region.of)})
    if isinstance(region, Union):
        return _meta_to_json(
            region, {"type": "union", "of": [to_json(c) for c in region.of]}
        )
    if isinstance(region, Intersection):
        return _meta_to_json(
            region, {"type": "intersection", "of": [to_json(c) for c in region.of]}
        )
    raise UnsupportedError(f"cannot serialize {type(region).__name__}")


def _expect_fields(d: dict, path: str, required: set, optional: set):
    if not isinstance(d, dict):
        raise SpecError(f"{path}: expected an object, got {type(d).__name__}")
    missing = required - d.keys()
    if missing:
        raise SpecError(f"{path}: missing field(s) {sorted(missing)}")
    unknown = d.keys() - required - optional
    if unknown:
        raise SpecError(f"{path}: unknown field(s) {sorted(unknown)}")


def _meta_from_json(d: dict) -> dict:
    kw = {}
    if "dim" in d:
        if not isinstance(d["dim"], int) or isinstance(d["dim"], bool):
            raise SpecError("region dim must be an int")
        kw["dim"] = d["dim"]
    if "family" in d:
        if not isinstance(d["family"], str):
            raise SpecError("region family must be a string")
        kw["family"] = d["family"]
    return kw


def _interval_from_json(d: dict, path: str) -> Interval:
    _expect_fields(d, path, {"lo", "hi"}, {"lo_open", "hi_open"})
    try:
        lo = float(d["lo"]) if d["lo"] is not None else -math.inf
        hi = float(d["hi"]) if d["hi"] is not None else math.inf
    except (TypeError, ValueError) as e:
        raise SpecError(f"{path}: interval ends must be numbers or null") from e
    return Interval(lo, hi, bool(d.get("lo_open", False)), bool(d.get("hi_open", False)))


_META = {"dim", "family"}


def from_json(d: dict, path: str = "$.region") -> Region:
    """Parse a tagged region document; raises SpecError with the field path."""
    if not isinstance(d, dict):
        raise SpecError(f"{path}: expected an object, got {type(d).__name__}")
    if "type" not in d:
        raise SpecError(f"{path}: missing field 'type'")
    tag = d.get("type")
    if tag == "full":
        _expect_fields(d, path, {"type"}, _META)
        return Full(**_meta_from_json(d))
    if tag == "empty":
        _expect_fields(d, path, {"type"}, _META)
        return Empty(**_meta_from_json(d))
    if tag == "finite_set":
        _expect_fields(d, path, {"type", "points"}, _META)
        pts = d["points"]
        if not isinstance(pts, list) or not pts:
            raise SpecError(f"{path}.points: expected a non-empty list")
        try:
            return FiniteSet(
                tuple(
                    p if isinstance(p, (int, float)) and not isinstance(p, bool)
                    else tuple(float(t) for t in p)
                    for p in pts
                ),
                **_meta_from_json(d),
            )
        except (TypeError, ValueError) as e:
            raise SpecError(f"{path}.points: {e}") from e
    if tag == "box":
        _expect_fields(d, path, {"type", "intervals"}, _META)
        ivs = d["intervals"]
        if not isinstance(ivs, list) or not ivs:
            raise SpecError(f"{path}.intervals: expected a non-empty list")
        return Box(
            tuple(
                _interval_from_json(iv, f"{path}.intervals[{i}]")
                for i, iv in enumerate(ivs)
            ),
            **_meta_from_json(d),
        )
    if tag == "linear_constraint":
        _expect_fields(d, path, {"type", "coeffs", "op", "rhs"}, _META)
        coeffs = d["coeffs"]
        if not isinstance(coeffs, list) or not coeffs:
            raise SpecError(f"{path}.coeffs: expected a non-empty list")
        try:
            cs = tuple(float(c) for c in coeffs)
            rhs = float(d["rhs"])
        except (TypeError, ValueError) as e:
            raise SpecError(f"{path}: coeffs and rhs must be numbers") from e
        if d["op"] not in _OPS:
            raise SpecError(f"{path}.op: must be one of {_OPS}")

        def g(theta, _cs=cs):
            return sum(c * t for c, t in zip(_cs, theta))

        return Constraint(g, d["op"], rhs, coeffs=cs, **_meta_from_json(d))
    if tag == "complement":
        _expect_fields(d, path, {"type", "of"}, _META)
        return Complement(from_json(d["of"], f"{path}.of"), **_meta_from_json(d))
    if tag in ("union", "intersection"):
        _expect_fields(d, path, {"type", "of"}, _META)
        kids = d["of"]
        if not isinstance(kids, list) or not kids:
            raise SpecError(f"{path}.of: expected a non-empty list")
        parsed = tuple(
            from_json(k, f"{path}.of[{i}]") for i, k in enumerate(kids)
        )
        cls = Union if tag == "union" else Intersection
        return cls(parsed, **_meta_from_json(d))
    raise SpecError(f"{path}.type: unknown region type {tag!r}")

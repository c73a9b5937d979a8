"""Closed-form tables, bidegree reductions, and the comparison harness.

The case tables live as data files under ``fixtures/`` (override the
directory with the BREDON_FIXTURE_DIR environment variable).  Each row
carries a predicate over the bidegree, a group value, and a human-readable
source note; the loader refuses fixtures with missing source notes, and a
mechanical checker verifies that the rows of a table are pairwise disjoint
and, together with the catch-all row, cover the declared range.

Rendering grammar for exact groups: ``0``, ``Z``, ``Z^r``, ``Z/d``, joined
by `` (+) ``; formal atoms render as ``k*``, ``k*2``, ``k*/k*2``,
``k*2/k*4``, ``_2k*``.
"""

from __future__ import annotations

import ast
import json
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from ..abgrp import FgAbelianGroup
from ..formal import (
    ConditionalGroup,
    FieldProfile,
    FormalGroup,
    KMODSQ,
    KSQ,
    KSQMOD4,
    KSTAR,
    TORS2K,
    Z2,
    ZA,
    get_profile,
    normalize,
)

FIXTURE_ENV = "BREDON_FIXTURE_DIR"
_DEFAULT_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


class FixtureError(ValueError):
    """A malformed fixture: bad predicate, missing source note, bad group."""


class TheoremRangeError(ValueError):
    """The requested bidegree/profile lies outside every stated case table."""


# ---------------------------------------------------------------------------
# Bidegrees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bidegree:
    """Cohomology index a + p*sigma and weight index b + q*sigma."""

    a: int
    p: int
    b: int
    q: int


@dataclass(frozen=True)
class Reduction:
    """Outcome of a bidegree reduction: a forced value, a redirect, or neither."""

    kind: str  # "zero" | "weight0" | "not_reducible"
    redirect: Optional[Tuple[int, int]] = None
    trail: Tuple[str, ...] = ()


def reduce_bidegree(bd: Bidegree) -> Reduction:
    """Reduce a general bidegree into the implemented weight-0 tables.

    Negative weights in both coordinates force zero; weight coordinates
    summing to zero (with nonpositive untwisted part) slide along the
    free-orbit periodicity into weight 0.

    >>> reduce_bidegree(Bidegree(5, 5, -1, -1)).kind
    'zero'
    >>> reduce_bidegree(Bidegree(1, 2, -2, 2)).redirect
    (5, -2)
    """
    if bd.b + bd.q < 0 and bd.b < 0:
        return Reduction("zero", trail=("A-vanish",))
    if bd.b + bd.q == 0 and bd.b <= 0:
        return Reduction("weight0", (bd.a + 2 * bd.q, bd.p - 2 * bd.q), ("A-EC2",))
    return Reduction("not_reducible")


def borel_reduce(a: int, p: int, weight: str) -> Tuple[str, int, int]:
    """The Borel-column value expressed through the point tables.

    Weight 0 and the sign weight transport unchanged; weight 1 transports
    unchanged off degrees 2 and 3 and slides into the sign weight there.
    """
    if weight in ("0", "sigma"):
        return (weight, a, p)
    if weight == "1":
        if a in (2, 3):
            return ("sigma", a - 2, p + 2)
        return ("1", a, p)
    raise ValueError(f"unknown weight {weight!r}")


# ---------------------------------------------------------------------------
# Safe predicate evaluation and group parsing
# ---------------------------------------------------------------------------

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Mod, ast.FloorDiv)
_ALLOWED_CMPOPS = (ast.Lt, ast.LtE, ast.Gt, ast.GtE, ast.Eq, ast.NotEq)


def _eval_node(node, env):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, env)
    if isinstance(node, ast.BoolOp):
        vals = (_eval_node(v, env) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            return -_eval_node(node.operand, env)
        if isinstance(node.op, ast.Not):
            return not _eval_node(node.operand, env)
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        left, right = _eval_node(node.left, env), _eval_node(node.right, env)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Mod):
            return left % right
        return left // right
    if isinstance(node, ast.Compare):
        left = _eval_node(node.left, env)
        for op, rhs in zip(node.ops, node.comparators):
            if not isinstance(op, _ALLOWED_CMPOPS):
                raise FixtureError(f"operator {op!r} not allowed in predicates")
            right = _eval_node(rhs, env)
            ok = {ast.Lt: left < right, ast.LtE: left <= right,
                  ast.Gt: left > right, ast.GtE: left >= right,
                  ast.Eq: left == right, ast.NotEq: left != right}[type(op)]
            if not ok:
                return False
            left = right
        return True
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        raise FixtureError(f"unknown variable {node.id!r} in predicate")
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
        return node.value
    raise FixtureError(f"disallowed syntax in predicate: {ast.dump(node)}")


class Predicate:
    """A whitelisted arithmetic/boolean expression over named integers."""

    def __init__(self, text: str):
        self.text = text
        self._tree = ast.parse(text, mode="eval")
        _eval_node(self._tree, {"a": 0, "p": 0})  # fail fast on bad syntax

    def __call__(self, **env) -> bool:
        return bool(_eval_node(self._tree, env))

    def __repr__(self):
        return f"Predicate({self.text!r})"


_EXACT_ATOMS = {"Z": 0}
_FORMAL_ATOMS = {"Z": ZA, "Z/2": Z2, "k*": KSTAR, "k*2": KSQ,
                 "k*/k*2": KMODSQ, "k*2/k*4": KSQMOD4, "_2k*": TORS2K}


def parse_exact_group(text: str) -> FgAbelianGroup:
    """Parse the fixed grammar for exact groups.

    >>> parse_exact_group("Z^2 (+) Z/2").to_json()
    {'rank': 2, 'torsion': [2]}
    """
    text = text.strip()
    if text == "0":
        return FgAbelianGroup.zero()
    orders = []
    for part in text.split("(+)"):
        part = part.strip()
        if part == "Z":
            orders.append(0)
        elif part.startswith("Z^"):
            orders.extend([0] * int(part[2:]))
        elif part.startswith("Z/"):
            orders.append(int(part[2:]))
        else:
            raise FixtureError(f"cannot parse exact group {text!r}")
    return FgAbelianGroup.from_cyclic_orders(orders)


def parse_formal_group(text: str) -> FormalGroup:
    """Parse the fixed grammar for formal groups.

    >>> print(parse_formal_group("Z/2 (+) k*/k*2"))
    Z/2 (+) k*/k*2
    """
    text = text.strip()
    if text == "0":
        return FormalGroup.zero()
    atoms = []
    for part in text.split("(+)"):
        part = part.strip()
        if part not in _FORMAL_ATOMS:
            raise FixtureError(f"cannot parse formal atom {part!r}")
        atoms.append(_FORMAL_ATOMS[part])
    return FormalGroup(tuple(atoms))


def render_group(g) -> str:
    if isinstance(g, (FgAbelianGroup, FormalGroup, ConditionalGroup)):
        return g.render()
    raise TypeError(f"cannot render {g!r}")


# ---------------------------------------------------------------------------
# Fixture tables
# ---------------------------------------------------------------------------

@dataclass
class FixtureRow:
    predicate: Optional[Predicate]  # None for the catch-all row
    value: Union[FgAbelianGroup, FormalGroup, ConditionalGroup]
    source: str


class FixtureTable:
    """An ordered case table with disjointness and totality checking."""

    def __init__(self, data: dict):
        self.table_id = data["table"]
        self.kind = data["kind"]
        self.coeff = data.get("coeff", "Z")
        self.range = data.get("range", {})
        self.cone_profiles = data.get("cone_profiles")
        self.shift_profiles = data.get("shift_profiles", {})
        self.rows: List[FixtureRow] = []
        parse = parse_exact_group if self.kind == "exact" else parse_formal_group
        for row in data["rows"]:
            source = row.get("source", "").strip()
            if not source:
                raise FixtureError(f"{self.table_id}: fixture row lacks a source note")
            if "conditional" in row:
                cond = row["conditional"]
                value = ConditionalGroup(parse_formal_group(cond["if_minus_one_square"]),
                                         parse_formal_group(cond["otherwise"]))
            else:
                value = parse(row["group"])
            pred = None if row.get("otherwise") else Predicate(row["when"])
            self.rows.append(FixtureRow(pred, value, source))
        if self.rows and self.rows[-1].predicate is not None:
            raise FixtureError(f"{self.table_id}: final row must be the catch-all")

    def profiles_for(self, p: int) -> Optional[List[str]]:
        if self.cone_profiles is None:
            return None
        shift = self.shift_profiles.get(str(p))
        if shift is not None:
            return shift
        cone = "positive" if p > 0 else "negative" if p < 0 else "zero"
        return self.cone_profiles[cone]

    def lookup(self, a: int, p: int, profile: Optional[FieldProfile] = None):
        allowed = self.profiles_for(p)
        if allowed is not None:
            if profile is None:
                raise TheoremRangeError(f"{self.table_id} needs a field profile")
            if profile.name not in allowed:
                raise TheoremRangeError(
                    f"{self.table_id} at shift {p} is stated only for {allowed}, "
                    f"not {profile.name}")
        matched = [r for r in self.rows if r.predicate is not None and r.predicate(a=a, p=p)]
        if len(matched) > 1:
            raise FixtureError(
                f"{self.table_id}: rows overlap at (a={a}, p={p}): "
                + "; ".join(r.source for r in matched))
        row = matched[0] if matched else self.rows[-1]
        value = row.value
        if isinstance(value, ConditionalGroup) and profile is not None:
            value = value.resolve(profile)
        if isinstance(value, FormalGroup) and profile is not None:
            value = normalize(value, profile)
        return value, row.source

    def coverage_findings(self) -> List[str]:
        """Mechanically check disjointness over the declared range."""
        findings = []
        (a_lo, a_hi) = self.range.get("a", [-12, 12])
        (p_lo, p_hi) = self.range.get("p", [-8, 8])
        for p in range(p_lo, p_hi + 1):
            for a in range(a_lo, a_hi + 1):
                hits = [r for r in self.rows
                        if r.predicate is not None and r.predicate(a=a, p=p)]
                if len(hits) > 1:
                    findings.append(
                        f"{self.table_id}: overlap at (a={a}, p={p}): "
                        + " | ".join(r.source for r in hits))
        return findings


_CACHE: Dict[str, FixtureTable] = {}
_CELL_CACHE: Dict[str, list] = {}


def fixture_dir() -> str:
    return os.environ.get(FIXTURE_ENV, _DEFAULT_DIR)


def load_table(name: str) -> FixtureTable:
    key = os.path.join(fixture_dir(), name)
    if key not in _CACHE:
        with open(key) as f:
            _CACHE[key] = FixtureTable(json.load(f))
    return _CACHE[key]


def load_cells(name: str) -> list:
    key = os.path.join(fixture_dir(), name)
    if key not in _CELL_CACHE:
        with open(key) as f:
            data = json.load(f)
        cells = []
        for cell in data["cells"]:
            if not cell.get("source", "").strip():
                raise FixtureError(f"{data['table']}: cell lacks a source note")
            cells.append(dict(cell))
        _CELL_CACHE[key] = cells
    return _CELL_CACHE[key]


ALL_TABLE_FILES = [
    "point_integral.json", "point_mod2.json",
    "weight0_integral.json", "weight0_mod2.json",
    "weight1_integral.json", "weight1_mod2.json",
    "weight_sigma_integral.json", "weight_sigma_mod2.json",
]


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def bredon_point_closed_form(a: int, p: int, coeff: int = 0) -> FgAbelianGroup:
    """The topological fixed-point table.

    >>> print(bredon_point_closed_form(-2, 4))
    Z/2
    >>> print(bredon_point_closed_form(3, -5))
    Z/2
    >>> print(bredon_point_closed_form(0, 0))
    Z
    """
    name = "point_integral.json" if coeff == 0 else "point_mod2.json"
    value, _ = load_table(name).lookup(a, p)
    return value


def weight0_closed_form(a: int, p: int, coeff: int = 0) -> FgAbelianGroup:
    """The weight-0 case table (computed cones and the mod-2 band).

    >>> print(weight0_closed_form(-3, 3))
    0
    >>> print(weight0_closed_form(5, -6))
    Z/2
    >>> print(weight0_closed_form(2, -2, coeff=2))
    Z/2
    """
    name = "weight0_integral.json" if coeff == 0 else "weight0_mod2.json"
    value, _ = load_table(name).lookup(a, p)
    return value


def weight1_closed_form(a: int, p: int, coeff: int = 0,
                        profile: Union[str, FieldProfile] = "general"):
    """The weight-1 case tables under the stated field hypotheses.

    Raises TheoremRangeError outside the stated hypotheses; never
    extrapolates.

    >>> print(weight1_closed_form(0, 1, profile="general"))
    Z/2
    """
    if isinstance(profile, str):
        profile = get_profile(profile)
    name = "weight1_integral.json" if coeff == 0 else "weight1_mod2.json"
    value, _ = load_table(name).lookup(a, p, profile)
    return value


def weight_sigma_closed_form(a: int, p: int, coeff: int = 0,
                             profile: Union[str, FieldProfile] = "general"):
    """The sign-weight case tables under the stated field hypotheses.

    >>> print(weight_sigma_closed_form(1, 0, profile="general"))
    k*2
    """
    if isinstance(profile, str):
        profile = get_profile(profile)
    name = "weight_sigma_integral.json" if coeff == 0 else "weight_sigma_mod2.json"
    value, _ = load_table(name).lookup(a, p, profile)
    return value


# ---------------------------------------------------------------------------
# Grids, rendering, export
# ---------------------------------------------------------------------------

@dataclass
class GridSpec:
    weight: str = "0"          # "0" | "1" | "sigma"
    coeff: int = 0             # 0 | 2
    p_range: int = 3
    a_min: Optional[int] = None
    a_max: Optional[int] = None
    profile: str = "general"
    source: str = "computed"   # "computed" | "fixture" | "derived"

    def a_bounds(self) -> Tuple[int, int]:
        lo = self.a_min if self.a_min is not None else -self.p_range
        hi = self.a_max if self.a_max is not None else self.p_range
        return lo, hi


def grid_cells(spec: GridSpec) -> List[dict]:
    """Evaluate a grid; each cell follows the export schema."""
    from .. import sigmacx
    from ..formal import derive_weight1, derive_weight_sigma

    a_lo, a_hi = spec.a_bounds()
    prof = get_profile(spec.profile)
    coeff_str = "Z" if spec.coeff == 0 else "Z/2"
    cells = []
    derived = None
    if spec.weight != "0" and spec.source == "derived":
        deriver = derive_weight1 if spec.weight == "1" else derive_weight_sigma
        derived = deriver(prof, spec.p_range + 1, coeff=spec.coeff)
    for p in range(-spec.p_range, spec.p_range + 1):
        for a in range(a_lo, a_hi + 1):
            citation = ""
            if spec.weight == "0":
                if spec.source == "fixture":
                    name = "weight0_integral.json" if spec.coeff == 0 else "weight0_mod2.json"
                    group, citation = load_table(name).lookup(a, p)
                else:
                    group = sigmacx.weight0(a, p, spec.coeff)
            elif spec.source == "derived":
                cone = derived["positive"] if p >= 0 else derived["negative"]
                group = cone.entry(a, p).group
                citation = ", ".join(cone.entry(a, p).trail)
            else:
                name = {("1", 0): "weight1_integral.json",
                        ("1", 2): "weight1_mod2.json",
                        ("sigma", 0): "weight_sigma_integral.json",
                        ("sigma", 2): "weight_sigma_mod2.json"}[(spec.weight, spec.coeff)]
                try:
                    group, citation = load_table(name).lookup(a, p, prof)
                except TheoremRangeError as exc:
                    group, citation = None, str(exc)
            cells.append({
                "a": a, "p": p, "weight": spec.weight, "coeff": coeff_str,
                "group": (group.to_json() if hasattr(group, "to_json") and group is not None
                          else None),
                "rendered": render_group(group) if group is not None else "?",
                "source": spec.source,
                "citation": citation,
            })
    return cells


def render_grid(spec: GridSpec, fmt: str = "text") -> str:
    """Render a grid as text, json, or csv (deterministic, bit-stable)."""
    cells = grid_cells(spec)
    if fmt == "json":
        return json.dumps(cells, indent=2, sort_keys=True) + "\n"
    a_lo, a_hi = spec.a_bounds()
    by_key = {(c["p"], c["a"]): c["rendered"] for c in cells}
    rows = []
    header = ["p\\a"] + [str(a) for a in range(a_lo, a_hi + 1)]
    for p in range(-spec.p_range, spec.p_range + 1):
        rows.append([str(p)] + [by_key[(p, a)] for a in range(a_lo, a_hi + 1)])
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(f'"{v}"' if "," in v else v for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "text":
        widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
        lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip()
                 for r in [header] + rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def export_grid(spec: GridSpec, fmt: str, path: Optional[str] = None) -> str:
    text = render_grid(spec, fmt)
    if path:
        with open(path, "w") as f:
            f.write(text)
    return text

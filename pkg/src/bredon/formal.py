"""Formal abelian groups under field profiles, and the deduction engine.

Groups appearing in the weight-1 and weight-sigma tables are multisets of
symbolic atoms: Z, Z/2, the unit group k*, its squares k*2, the square
classes k*/k*2, k*2/k*4, the 2-torsion of the units, and opaque etale
symbols.  A field profile (quadratically closed, euclidean, formally real,
general) rewrites atoms to their resolved values; equality of formal groups
is multiset equality after normalization, i.e. comparison as abstract
groups.

The exact-sequence solver consumes finite windows of a long exact sequence
with partially known nodes and tagged arrows and propagates zero flanks,
isomorphisms, multiplication-by-2 decompositions, and named axioms to a
fixed point.  It never guesses: extension problems are resolved only by a
named, cited axiom, and unforced unknowns are reported as unknowns.

The derivation drivers replay the positive- and negative-cone inductions of
the weight-1 and weight-sigma computations column by column, seeded by the
base columns and the named axioms; every produced table entry carries its
axiom trail.

>>> qc = PROFILES["quadratically_closed"]
>>> print(normalize(FormalGroup.of(KMODSQ), qc))
0
>>> print(tensor_Z2(FormalGroup.of(KSTAR), PROFILES["general"]))
k*/k*2
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple

# ---------------------------------------------------------------------------
# Atoms and formal groups
# ---------------------------------------------------------------------------


_ATOM_ORDER = {"Z": 0, "Z2": 1, "Kstar": 2, "Ksq": 3, "KmodSq": 4,
               "KsqMod4": 5, "Tors2K": 6, "Et": 7, "Mot": 8}


@dataclass(frozen=True)
class Atom:
    """A symbolic direct summand.

    ``Et`` atoms are opaque mod-2 etale symbols with a degree and a twist;
    ``Mot`` atoms are opaque integral motivic symbols beyond weight 1.
    Neither admits any arithmetic beyond being listed.
    """

    kind: str
    deg: int = 0
    wt: int = 0

    def sort_key(self):
        return (_ATOM_ORDER[self.kind], self.deg, self.wt)

    def render(self) -> str:
        return {
            "Z": "Z",
            "Z2": "Z/2",
            "Kstar": "k*",
            "Ksq": "k*2",
            "KmodSq": "k*/k*2",
            "KsqMod4": "k*2/k*4",
            "Tors2K": "_2k*",
        }.get(self.kind) or (
            f"Het^{self.deg}(w{self.wt})" if self.kind == "Et" else f"Hmot^{self.deg}(w{self.wt})"
        )


ZA = Atom("Z")
Z2 = Atom("Z2")
KSTAR = Atom("Kstar")
KSQ = Atom("Ksq")
KMODSQ = Atom("KmodSq")
KSQMOD4 = Atom("KsqMod4")
TORS2K = Atom("Tors2K")


def Et(degree: int, twist: int) -> Atom:
    return Atom("Et", degree, twist)


def Mot(degree: int, weight: int) -> Atom:
    return Atom("Mot", degree, weight)


@dataclass(frozen=True)
class FormalGroup:
    """A finite multiset of atoms; the zero group is the empty multiset."""

    atoms: Tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms, key=Atom.sort_key)))

    @classmethod
    def of(cls, *atoms: Atom) -> "FormalGroup":
        return cls(tuple(atoms))

    @classmethod
    def zero(cls) -> "FormalGroup":
        return cls(())

    def is_zero(self) -> bool:
        return not self.atoms

    def direct_sum(self, *others: "FormalGroup") -> "FormalGroup":
        atoms = list(self.atoms)
        for o in others:
            atoms.extend(o.atoms)
        return FormalGroup(tuple(atoms))

    def render(self) -> str:
        if not self.atoms:
            return "0"
        return " (+) ".join(a.render() for a in self.atoms)

    def to_json(self) -> dict:
        return {"atoms": [a.render() for a in self.atoms]}

    def __str__(self) -> str:
        return self.render()


ZERO_FG = FormalGroup.zero()


@dataclass(frozen=True)
class ConditionalGroup:
    """A value that depends on whether -1 is a square in the base field.

    Profiles that commit to the predicate resolve it; the general profile
    keeps both branches rather than choosing.
    """

    if_minus_one_square: FormalGroup
    otherwise: FormalGroup

    def resolve(self, profile: "FieldProfile"):
        if profile.minus_one_is_square == "yes":
            return normalize(self.if_minus_one_square, profile)
        if profile.minus_one_is_square == "no":
            return normalize(self.otherwise, profile)
        return self

    def render(self) -> str:
        return (f"{self.if_minus_one_square.render()} if -1 is a square else "
                f"{self.otherwise.render()}")

    def __str__(self) -> str:
        return self.render()


class FormalRuleError(ValueError):
    """No cited rule resolves an atom under the active profile."""


class FieldProfile:
    """Rewrite rules and predicates attached to a class of base fields.

    All profiles model characteristic-zero fields, so the 2-torsion of the
    unit group is {+1, -1} = Z/2 whenever the profile commits to it.
    """

    def __init__(self, name: str, rewrites: Dict[Atom, Tuple[Atom, ...]],
                 minus_one_is_square: str):
        if minus_one_is_square not in ("yes", "no", "unknown"):
            raise ValueError("minus_one_is_square must be yes/no/unknown")
        self.name = name
        self.rewrites = dict(rewrites)
        self.minus_one_is_square = minus_one_is_square

    def __repr__(self):
        return f"FieldProfile({self.name!r})"


PROFILES: Dict[str, FieldProfile] = {
    # every element is a square: k* = k*2 and the square classes vanish
    "quadratically_closed": FieldProfile(
        "quadratically_closed",
        {KMODSQ: (), KSQ: (KSTAR,), KSQMOD4: (), TORS2K: (Z2,)},
        minus_one_is_square="yes"),
    # formally real with exactly two square classes (the real numbers)
    "euclidean": FieldProfile(
        "euclidean",
        {KMODSQ: (Z2,), KSQMOD4: (), TORS2K: (Z2,)},
        minus_one_is_square="no"),
    # -1 is not a sum of squares; square classes stay symbolic but the
    # 2-torsion of the units is still {+1, -1}
    "formally_real": FieldProfile(
        "formally_real",
        {TORS2K: (Z2,)},
        minus_one_is_square="no"),
    "general": FieldProfile("general", {}, minus_one_is_square="unknown"),
}

PROFILE_ALIASES = {
    "qclosed": "quadratically_closed",
    "euclidean": "euclidean",
    "freal": "formally_real",
    "general": "general",
}


def get_profile(name: str) -> FieldProfile:
    key = PROFILE_ALIASES.get(name, name)
    if key not in PROFILES:
        raise ValueError(f"unknown field profile {name!r}")
    return PROFILES[key]


def normalize(g: FormalGroup, profile: FieldProfile) -> FormalGroup:
    """Apply the profile rewrites to a fixed point.

    >>> print(normalize(FormalGroup.of(KSQ, TORS2K), PROFILES["euclidean"]))
    Z/2 (+) k*2
    """
    atoms = list(g.atoms)
    changed = True
    while changed:
        changed = False
        out: List[Atom] = []
        for a in atoms:
            rule = profile.rewrites.get(a)
            if rule is None:
                out.append(a)
            else:
                out.extend(rule)
                changed = True
        atoms = out
    return FormalGroup(tuple(atoms))


def check_profile_confluence(profile: FieldProfile) -> bool:
    """Normalization terminates and is idempotent on every atom."""
    base = [ZA, Z2, KSTAR, KSQ, KMODSQ, KSQMOD4, TORS2K, Et(2, 1)]
    for a in base:
        seen = set()
        g = FormalGroup.of(a)
        for _ in range(16):
            if g.atoms in seen:
                raise FormalRuleError(f"profile {profile.name} cycles on {a}")
            seen.add(g.atoms)
            nxt = normalize(g, profile)
            if nxt == g:
                break
            g = nxt
        else:
            raise FormalRuleError(f"profile {profile.name} does not terminate on {a}")
        if normalize(g, profile) != g:
            raise FormalRuleError(f"profile {profile.name} not idempotent on {a}")
    return True


def _tensor_Z2_atom(a: Atom, profile: FieldProfile) -> Tuple[Atom, ...]:
    if a.kind == "Z":
        return (Z2,)
    if a.kind == "Z2":
        return (Z2,)
    if a.kind == "Kstar":
        return (KMODSQ,)
    if a.kind == "Ksq":
        return (KSQMOD4,)
    if a.kind == "KmodSq":
        return (KMODSQ,)
    # exponent-2 groups are their own mod-2 reductions
    if a.kind in ("KsqMod4", "Tors2K"):
        return (a,)
    raise FormalRuleError(f"no mod-2 tensor rule for {a.render()} under {profile.name}")


def _two_torsion_atom(a: Atom, profile: FieldProfile) -> Tuple[Atom, ...]:
    if a.kind == "Z":
        return ()
    if a.kind == "Z2":
        return (Z2,)
    if a.kind == "Kstar":
        return (TORS2K,)
    if a.kind == "KmodSq":
        return (KMODSQ,)
    if a.kind in ("KsqMod4", "Tors2K"):
        return (a,)
    if a.kind == "Ksq":
        # {x in k*2 : x^2 = 1} = {1, -1} meet k*2
        if profile.minus_one_is_square == "yes":
            return (Z2,)
        if profile.minus_one_is_square == "no":
            return ()
        raise FormalRuleError(
            f"2-torsion of k*2 needs to know whether -1 is a square ({profile.name})")
    raise FormalRuleError(f"no 2-torsion rule for {a.render()} under {profile.name}")


def tensor_Z2(g: FormalGroup, profile: FieldProfile) -> FormalGroup:
    """G (x) Z/2, atom by atom, then normalized.

    >>> print(tensor_Z2(FormalGroup.of(ZA), PROFILES["general"]))
    Z/2
    """
    atoms: List[Atom] = []
    for a in normalize(g, profile).atoms:
        atoms.extend(_tensor_Z2_atom(a, profile))
    return normalize(FormalGroup(tuple(atoms)), profile)


def two_torsion(g: FormalGroup, profile: FieldProfile) -> FormalGroup:
    """The subgroup of elements killed by 2, atom by atom, then normalized.

    >>> print(two_torsion(FormalGroup.of(KSTAR), PROFILES["euclidean"]))
    Z/2
    """
    atoms: List[Atom] = []
    for a in normalize(g, profile).atoms:
        atoms.extend(_two_torsion_atom(a, profile))
    return normalize(FormalGroup(tuple(atoms)), profile)


def universal_coeff(h_a: FormalGroup, h_a_plus_1: FormalGroup,
                    profile: FieldProfile) -> FormalGroup:
    """Mod-2 value from the split universal-coefficient sequence.

    >>> print(universal_coeff(FormalGroup.of(Z2), FormalGroup.of(KMODSQ), PROFILES["general"]))
    Z/2 (+) k*/k*2
    """
    return normalize(tensor_Z2(h_a, profile).direct_sum(two_torsion(h_a_plus_1, profile)),
                     profile)


# ---------------------------------------------------------------------------
# Motivic oracle and the diagonal decomposition
# ---------------------------------------------------------------------------

def motivic_cohomology(a: int, w: int, coeff: int = 0) -> FormalGroup:
    """Motivic cohomology of the base field in low weights.

    Exact for weights <= 1 (where the weight-w complex of a field is
    concentrated in degrees <= w): the units in bidegree (1,1), Z in (0,0),
    and their mod-2 shadows.  Beyond weight 1, mod-2 values in the range
    0 <= a <= w are kept as opaque etale symbols and integral values as
    opaque motivic symbols; everything above the weight line vanishes.
    """
    if w < 0:
        return ZERO_FG
    if coeff not in (0, 2):
        raise ValueError("coefficients must be integral (0) or mod 2 (2)")
    if w == 0:
        if a == 0:
            return FormalGroup.of(ZA if coeff == 0 else Z2)
        return ZERO_FG
    if w == 1:
        if coeff == 0:
            return FormalGroup.of(KSTAR) if a == 1 else ZERO_FG
        if a == 1:
            return FormalGroup.of(KMODSQ)
        if a == 0:
            return FormalGroup.of(Z2)  # roots of unity mu_2 in char 0
        return ZERO_FG
    if a > w:
        return ZERO_FG
    if coeff == 2:
        return FormalGroup.of(Et(a, w)) if a >= 0 else ZERO_FG
    return FormalGroup.of(Mot(a, w))


MotivicOracle = Callable[[int, int, int], FormalGroup]


def nie_decompose(a: int, q: int, b: int, coeff: int = 0,
                  motivic: MotivicOracle = motivic_cohomology) -> FormalGroup:
    """Decomposition of the (a + 2q*sigma, b + q*sigma) group along the diagonal.

    Integrally the group splits as q mod-2 motivic pieces plus one integral
    motivic piece; with mod-2 coefficients each layer contributes two mod-2
    pieces.  Valid for b, q >= 0 over characteristic-zero fields.

    >>> print(nie_decompose(0, 1, 0))
    Z/2
    >>> print(nie_decompose(-1, 1, 0))
    k*
    """
    if q < 0 or b < 0:
        raise ValueError("the diagonal decomposition needs b, q >= 0")
    if coeff == 0:
        parts = [motivic(a + 2 * j, j + b, 2) for j in range(q)]
        parts.append(motivic(a + 2 * q, b + q, 0))
    else:
        parts = []
        for j in range(q):
            parts.append(motivic(a + 2 * j, j + b, 2))
            parts.append(motivic(a + 2 * j + 1, j + b, 2))
        parts.append(motivic(a + 2 * q, q + b, 2))
    return ZERO_FG.direct_sum(*parts)


# ---------------------------------------------------------------------------
# Named axioms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomInfo:
    """A cited deduction step that the solver may apply by name."""

    id: str
    statement: str
    profiles: Tuple[str, ...] = ()  # empty: valid for every profile

    def admits(self, profile: FieldProfile) -> bool:
        return not self.profiles or profile.name in self.profiles


AXIOMS: Dict[str, AxiomInfo] = {a.id: a for a in [
    AxiomInfo("A-comp",
              "the composite through the free-orbit column (restrict, then"
              " connect) is multiplication by 2 on every group of the table"),
    AxiomInfo("A-alpha",
              "in the positive-cone induction the connecting map from the"
              " units column into a 2-torsion entry is the zero map",
              ("quadratically_closed", "euclidean")),
    AxiomInfo("A-alpha1",
              "in the weight-1 negative-cone induction the restriction map"
              " from a square-class entry to the units column is the zero map",
              ("quadratically_closed", "formally_real", "euclidean")),
    AxiomInfo("A-tau",
              "in the weight-sigma negative-cone induction the restriction"
              " map from a square-class entry to the units column is the"
              " zero map",
              ("quadratically_closed", "formally_real", "euclidean")),
    AxiomInfo("A-delta-sq",
              "the squaring sequence 1 -> {+1,-1} -> k* -> k*2 -> 1 resolves"
              " kernel, image and cokernel of multiplication by 2 on units"),
    AxiomInfo("A-vanish",
              "groups with both weight coordinates negative vanish"),
    AxiomInfo("A-EC2",
              "Borel-column transport: the weight-0 and weight-sigma rows"
              " agree with their Borel counterparts, and weight 1 does off"
              " two middle degrees; with the free-orbit periodicities this"
              " forces the seeded column vanishings"),
    AxiomInfo("A-diag",
              "the restriction of the rank-one free part of the weight-sigma"
              " base column to the units column is the identity map"),
]}

SEEDS: Dict[str, str] = {
    "P-motivic": "weight-1 column at shift 0: the units in degree 1, zero elsewhere",
    "P-prop": "weight-1 column at shift sigma: Z/2 in degree 0, square classes in degree 1",
    "P-sigma": "weight-sigma columns at shifts 0 and sigma: squares of units in"
               " degree 1, and Z/2 in degree 0 one shift up",
    "P-2q": "weight-sigma column at shift 2*sigma from the diagonal decomposition",
    "LES": "exactness in the cofiber-sequence window",
    "UCT": "split universal-coefficient sequence",
}


# ---------------------------------------------------------------------------
# Exact-sequence windows
# ---------------------------------------------------------------------------

FULL = "full"  # sentinel: the whole group at that node


@dataclass
class WindowNode:
    label: str
    group: Optional[FormalGroup] = None


@dataclass
class WindowArrow:
    """An arrow with optional tags.

    Tags: ``zero``, ``iso``, ``inj``, ``surj``, ``mult2:Z``, ``mult2:Z2``,
    ``mult2:Kstar``, ``incl-ksq``, and ``axiom:<id>`` provenance markers.
    """

    tags: Tuple[str, ...] = ()
    kernel: object = None    # None | FULL | FormalGroup
    image: object = None     # None | FULL | FormalGroup
    cokernel: object = None  # None | FormalGroup
    trail: Tuple[str, ...] = ()


class WindowContradiction(Exception):
    """An exactness constraint of the window cannot be satisfied."""


@dataclass
class LesWindow:
    """A finite exact-sequence fragment: nodes joined by consecutive arrows."""

    nodes: List[WindowNode]
    arrows: List[WindowArrow]

    def __post_init__(self):
        if len(self.arrows) != len(self.nodes) - 1:
            raise ValueError("a window needs exactly one arrow between consecutive nodes")

    @classmethod
    def build(cls, spec: List) -> "LesWindow":
        """Build from [node, arrow-tags, node, arrow-tags, ..., node].

        Nodes are (label, group-or-None); arrow tags are tuples of strings.
        """
        nodes = [WindowNode(label, grp) for label, grp in spec[0::2]]
        arrows = [WindowArrow(tuple(tags)) for tags in spec[1::2]]
        return cls(nodes, arrows)


@dataclass
class WindowSolution:
    values: Dict[str, FormalGroup]
    unresolved: List[str]
    contradictions: List[str]
    arrows: List[WindowArrow]
    trails: Dict[str, Tuple[str, ...]]

    @property
    def ok(self) -> bool:
        return not self.contradictions


_MULT2_TABLE = {
    "mult2:Kstar": (FormalGroup.of(TORS2K), FormalGroup.of(KSQ), FormalGroup.of(KMODSQ),
                    FormalGroup.of(KSTAR)),
    "mult2:Z": (ZERO_FG, FormalGroup.of(ZA), FormalGroup.of(Z2), FormalGroup.of(ZA)),
    "mult2:Z2": (FormalGroup.of(Z2), ZERO_FG, FormalGroup.of(Z2), FormalGroup.of(Z2)),
}


def solve_window(window: LesWindow, profile: FieldProfile) -> WindowSolution:
    """Propagate exactness and tags to a fixed point; never guess.

    >>> w = LesWindow.build([("0", ZERO_FG), (), ("X", None), (), ("0", ZERO_FG)])
    >>> print(solve_window(w, PROFILES["general"]).values["X"])
    0
    """
    nodes = [replace(n) for n in window.nodes]
    arrows = [replace(a) for a in window.arrows]
    contradictions: List[str] = []
    trails: Dict[str, Tuple[str, ...]] = {}

    def norm(g: FormalGroup) -> FormalGroup:
        return normalize(g, profile)

    def set_node(k: int, value: FormalGroup, why: Tuple[str, ...]):
        value = norm(value)
        if nodes[k].group is None:
            nodes[k].group = value
            trails[nodes[k].label] = why
            return True
        if norm(nodes[k].group) != value:
            contradictions.append(
                f"node {nodes[k].label} forced to {value} but holds {norm(nodes[k].group)}")
        return False

    def merge_slot(k: int, current, incoming, why: Tuple[str, ...]):
        """Merge a kernel/image slot at node k; returns the merged value."""
        if incoming is None:
            return current, False
        if current is None:
            return incoming, True
        if current == incoming:
            return current, False
        cur_full, inc_full = current == FULL, incoming == FULL
        if cur_full or inc_full:
            other = incoming if cur_full else current
            if other == FULL:
                return FULL, False
            # FULL meets a value: the node must BE that value
            set_node(k, other if isinstance(other, FormalGroup) else ZERO_FG, why)
            return other, True
        a, b = norm(current), norm(incoming)
        if a != b:
            contradictions.append(
                f"exactness at {nodes[k].label}: image {a} differs from kernel {b}")
        return a, False

    # apply the declared tags once
    for idx, ar in enumerate(arrows):
        for tag in ar.tags:
            if tag == "zero":
                ar.kernel, ar.image = FULL, ZERO_FG
            elif tag == "iso":
                ar.kernel, ar.image = ZERO_FG, FULL
            elif tag == "inj":
                ar.kernel = ZERO_FG
            elif tag == "surj":
                ar.image = FULL
            elif tag in _MULT2_TABLE:
                ker, img, cok, on = _MULT2_TABLE[tag]
                ar.kernel, ar.image, ar.cokernel = ker, img, cok
                for k in (idx, idx + 1):
                    g = nodes[k].group
                    if g is not None and norm(g) != norm(on):
                        contradictions.append(
                            f"{tag} arrow at {nodes[k].label} expects {norm(on)}, found {norm(g)}")
            elif tag == "incl-ksq":
                ar.kernel, ar.image, ar.cokernel = (
                    ZERO_FG, FormalGroup.of(KSQ), FormalGroup.of(KMODSQ))
            elif tag.startswith("axiom:"):
                ar.trail = ar.trail + (tag.split(":", 1)[1],)
            else:
                raise ValueError(f"unknown arrow tag {tag!r}")

    changed = True
    passes = 0
    while changed and passes < 50:
        changed = False
        passes += 1
        # zero nodes kill their arrows: a map into 0 has full kernel and zero
        # image, a map out of 0 likewise
        for k, node in enumerate(nodes):
            if node.group is not None and norm(node.group).is_zero():
                for idx in (k - 1, k):
                    if 0 <= idx < len(arrows):
                        ar = arrows[idx]
                        if ar.kernel != FULL:
                            ar.kernel = FULL
                            changed = True
                        if ar.image != ZERO_FG:
                            ar.image = ZERO_FG
                            changed = True
        # exactness links at interior nodes
        for k in range(1, len(nodes) - 1):
            f, g = arrows[k - 1], arrows[k]
            why = tuple(f.trail + g.trail) + ("LES",)
            merged, ch = merge_slot(k, f.image, g.kernel, why)
            f.image = g.kernel = merged
            changed |= ch
        # value productions
        for k in range(len(nodes)):
            if nodes[k].group is not None:
                continue
            out = arrows[k] if k < len(arrows) else None
            inc = arrows[k - 1] if k > 0 else None
            # injective with known image
            if out is not None and out.kernel == ZERO_FG and isinstance(out.image, FormalGroup):
                changed |= set_node(k, out.image, out.trail + ("LES",))
                continue
            # iso transport, in both directions
            if out is not None and out.kernel == ZERO_FG and out.image == FULL \
                    and nodes[k + 1].group is not None:
                changed |= set_node(k, nodes[k + 1].group, out.trail + ("LES",))
                continue
            if inc is not None and inc.kernel == ZERO_FG and inc.image == FULL \
                    and nodes[k - 1].group is not None:
                changed |= set_node(k, nodes[k - 1].group, inc.trail + ("LES",))
                continue
            # surjection whose kernel is the image of a tagged arrow
            if inc is not None and inc.image == FULL and k >= 2:
                prev = arrows[k - 2]
                if prev.cokernel is not None:
                    changed |= set_node(k, prev.cokernel,
                                        prev.trail + inc.trail + ("LES",))
                    continue
                if inc.kernel == ZERO_FG and nodes[k - 1].group is not None:
                    changed |= set_node(k, nodes[k - 1].group, inc.trail + ("LES",))
                    continue

    # post-fixpoint validation of fully known five-term shapes
    for k in range(1, len(nodes) - 1):
        f, g = arrows[k - 1], arrows[k]
        if f.image == ZERO_FG and g.kernel == FULL and nodes[k].group is not None:
            if not norm(nodes[k].group).is_zero():
                contradictions.append(
                    f"zero flanks force {nodes[k].label} = 0, found {norm(nodes[k].group)}")

    values = {n.label: norm(n.group) for n in nodes if n.group is not None}
    unresolved = [n.label for n in nodes if n.group is None]
    return WindowSolution(values, unresolved, contradictions, arrows, trails)


# ---------------------------------------------------------------------------
# Derivation drivers for the weight-1 and weight-sigma tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    group: Optional[FormalGroup]
    trail: Tuple[str, ...] = ()
    note: str = ""


@dataclass
class DerivedTable:
    """One derived cone table: entries indexed by (a, p) with axiom trails."""

    weight: str
    profile: str
    coeff: int
    n_max: int
    columns: Dict[int, Dict[int, TableEntry]] = field(default_factory=dict)
    column_trails: Dict[int, Tuple[str, ...]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def entry(self, a: int, p: int) -> TableEntry:
        col = self.columns.get(p)
        if col is None:
            return TableEntry(None, (), f"column {p} not derived")
        e = col.get(a)
        if e is not None:
            return e
        return TableEntry(ZERO_FG, self.column_trails.get(p, ()))

    def group(self, a: int, p: int) -> Optional[FormalGroup]:
        return self.entry(a, p).group

    def set(self, a: int, p: int, group: FormalGroup, trail: Tuple[str, ...]):
        self.columns.setdefault(p, {})
        if not group.is_zero():
            self.columns[p][a] = TableEntry(group, trail)

    def derived_shifts(self) -> List[int]:
        return sorted(self.columns)


def _motivic_column(m: int) -> FormalGroup:
    """The free-orbit column in total weight 1: the units at total degree 1."""
    return FormalGroup.of(KSTAR) if m == 1 else ZERO_FG


def _is_two_torsion(g: FormalGroup) -> bool:
    return bool(g.atoms) and all(
        a.kind in ("Z2", "KmodSq", "Tors2K", "KsqMod4") for a in g.atoms)


def _junction_tags(junction: FormalGroup, recorded: Optional[str],
                   zero_axiom: str, profile: FieldProfile,
                   notes: List[str], where: str) -> Optional[Tuple[str, ...]]:
    """Choose the tag set for the arrow meeting the units column."""
    if junction.is_zero():
        return ()
    if recorded == "iso":
        jn = normalize(junction, profile)
        if jn == normalize(FormalGroup.of(KSTAR), profile) or jn == FormalGroup.of(KSTAR):
            return ("axiom:A-comp", "axiom:A-delta-sq", "mult2:Kstar")
        notes.append(f"{where}: recorded isomorphism but junction {jn} is not the units")
        return None
    if _is_two_torsion(normalize(junction, profile)):
        ax = AXIOMS[zero_axiom]
        if ax.admits(profile):
            return (f"axiom:{zero_axiom}", "zero")
        notes.append(f"{where}: axiom {zero_axiom} needs one of {ax.profiles}, "
                     f"profile is {profile.name}")
        return None
    notes.append(f"{where}: no cited rule for junction value {junction}")
    return None


def _arrow_status(ar: WindowArrow) -> Optional[str]:
    if ar.kernel == ZERO_FG and ar.image == FULL:
        return "iso"
    return None


def _advance(table: DerivedTable, profile: FieldProfile, positive: bool,
             known_shift: int, zero_axiom: str, recorded: Optional[str],
             a_lo: int, a_hi: int) -> Tuple[bool, Optional[str]]:
    """One induction step: derive the next column from a known one.

    Returns (ok, recorded) where ``recorded`` is the status of the
    junction-side arrow feeding the next step's A-comp check.
    """
    p = known_shift
    new_p = p + 1 if positive else p - 1
    n = abs(p)
    if positive:
        special = {"low_old": (-p, p), "low_new": (-p, new_p),
                   "high_old": (1 - p, p), "high_new": (1 - p, new_p)}
    else:
        special = {"low_new": (n + 1, new_p), "low_old": (n + 1, p),
                   "high_new": (n + 2, new_p), "high_old": (n + 2, p)}
    junction = table.group(*special["high_old"]) if positive else table.group(*special["low_old"])
    assert junction is not None
    where = f"weight-{table.weight} step {p} -> {new_p}"
    tags = _junction_tags(junction, recorded, zero_axiom, profile, table.notes, where)
    if tags is None:
        table.notes.append(f"{where}: column {new_p} left unresolved")
        return False, None

    def nd(key):
        a, q = special[key]
        label = f"B({a},{q})"
        grp = None if q == new_p else table.group(a, q)
        return (label, grp)

    if positive:
        spec = [("M0", ZERO_FG), (), nd("low_old"), (), nd("low_new"),
                (), ("M1", _motivic_column(1)), tags, nd("high_old"),
                (), nd("high_new"), (), ("M2", ZERO_FG)]
        junction_arrow = 3
        record_arrow = 2  # B(low,new) -> M1, feeds the next A-comp check
    else:
        spec = [("M0", ZERO_FG), (), nd("low_new"), (), nd("low_old"),
                tags, ("M1", _motivic_column(1)), (), nd("high_new"),
                (), nd("high_old"), (), ("M2", ZERO_FG)]
        junction_arrow = 2
        record_arrow = 3  # M1 -> B(high,new)
    window = LesWindow.build(spec)
    sol = solve_window(window, profile)
    if not sol.ok:
        table.notes.append(f"{where}: contradiction: {'; '.join(sol.contradictions)}")
        return False, None
    if sol.unresolved:
        table.notes.append(f"{where}: unresolved nodes {sol.unresolved}")
        return False, None

    new_names = {f"B({special['low_new'][0]},{new_p})": special["low_new"][0],
                 f"B({special['high_new'][0]},{new_p})": special["high_new"][0]}
    old_col_trail = table.column_trails.get(p, ())
    window_axioms = tuple(t.split(":", 1)[1] for t in tags if t.startswith("axiom:"))
    feeders = (table.entry(*special["low_old"]).trail
               + table.entry(*special["high_old"]).trail)
    for label, a in new_names.items():
        grp = sol.values[label]
        trail = tuple(dict.fromkeys(feeders + window_axioms + ("LES",)))
        table.set(a, new_p, grp, trail)
    # the rest of the column transports along isomorphisms (zero flanks)
    specials = {special["low_new"][0], special["high_new"][0]}
    for a in range(a_lo, a_hi + 1):
        if a in specials:
            continue
        src = table.entry(a, p)
        if src.group is None:
            continue
        table.set(a, new_p, src.group, tuple(dict.fromkeys(src.trail + ("LES",))))
    table.column_trails[new_p] = tuple(dict.fromkeys(old_col_trail + ("LES",)))
    return True, _arrow_status(sol.arrows[record_arrow])


def _apply_uct(table: DerivedTable, profile: FieldProfile) -> DerivedTable:
    out = DerivedTable(table.weight, table.profile, 2, table.n_max,
                       notes=list(table.notes))
    for p in table.derived_shifts():
        out.column_trails[p] = tuple(dict.fromkeys(table.column_trails.get(p, ()) + ("UCT",)))
        out.columns.setdefault(p, {})
        col = table.columns.get(p, {})
        degrees = set(col) | {a - 1 for a in col}
        for a in sorted(degrees):
            lo = table.entry(a, p)
            hi = table.entry(a + 1, p)
            if lo.group is None or hi.group is None:
                out.columns[p][a] = TableEntry(None, (), "integral entry unresolved")
                continue
            try:
                val = universal_coeff(lo.group, hi.group, profile)
            except FormalRuleError as exc:
                out.columns[p][a] = TableEntry(None, (), str(exc))
                out.notes.append(f"mod-2 entry (a={a}, p={p}): {exc}")
                continue
            trail = tuple(dict.fromkeys(lo.trail + hi.trail + ("UCT",)))
            if not val.is_zero():
                out.columns[p][a] = TableEntry(val, trail)
    return out


def _seed_column(table: DerivedTable, p: int, entries: Dict[int, FormalGroup],
                 trail: Tuple[str, ...], profile: FieldProfile):
    table.columns.setdefault(p, {})
    table.column_trails[p] = trail
    for a, g in entries.items():
        table.set(a, p, normalize(g, profile), trail)


def derive_weight1(profile: FieldProfile, n_max: int, coeff: int = 0) -> Dict[str, DerivedTable]:
    """Replay the weight-1 inductions; returns positive and negative cone tables.

    The positive cone needs a quadratically closed or euclidean profile; the
    negative cone also admits formally real fields.  Entries carry axiom
    trails; obstructions are reported in the table notes instead of raised.
    """
    if isinstance(profile, str):
        profile = get_profile(profile)
    a_lo, a_hi = -n_max - 2, n_max + 3
    pos = DerivedTable("1", profile.name, 0, n_max)
    _seed_column(pos, 0, {1: FormalGroup.of(KSTAR)}, ("P-motivic",), profile)
    _seed_column(pos, 1, {0: FormalGroup.of(Z2), 1: FormalGroup.of(KMODSQ)},
                 ("P-prop",), profile)
    recorded = None
    for p in range(1, n_max):
        ok, recorded = _advance(pos, profile, True, p, "A-alpha", recorded, a_lo, a_hi)
        if not ok:
            break

    neg = DerivedTable("1", profile.name, 0, n_max)
    _seed_column(neg, 0, {1: FormalGroup.of(KSTAR)}, ("P-motivic",), profile)
    _seed_column(neg, -1, {}, ("A-EC2", "P-sigma", "LES"), profile)
    recorded = None
    for n in range(1, n_max):
        ok, recorded = _advance(neg, profile, False, -n, "A-alpha1", recorded, a_lo, a_hi)
        if not ok:
            break

    if coeff == 2:
        return {"positive": _apply_uct(pos, profile), "negative": _apply_uct(neg, profile)}
    return {"positive": pos, "negative": neg}


def derive_weight_sigma(profile: FieldProfile, n_max: int, coeff: int = 0) -> Dict[str, DerivedTable]:
    """Replay the weight-sigma inductions; see ``derive_weight1``.

    The base columns are the diagonal decomposition at shift 2*sigma and the
    squares-of-units identification at shift 0; the negative cone starts from
    a window whose restriction arrow is the inclusion of the squares.
    """
    if isinstance(profile, str):
        profile = get_profile(profile)
    a_lo, a_hi = -n_max - 2, n_max + 3
    pos = DerivedTable("sigma", profile.name, 0, n_max)
    _seed_column(pos, 0, {1: FormalGroup.of(KSQ)}, ("P-sigma", "A-delta-sq"), profile)
    _seed_column(pos, 1, {0: FormalGroup.of(Z2)}, ("P-sigma",), profile)
    col2 = {a: nie_decompose(a, 1, 0, 0) for a in (-1, 0)}
    _seed_column(pos, 2, {a: g for a, g in col2.items() if not g.is_zero()},
                 ("P-2q",), profile)
    recorded = "iso"  # the units entry of the base column restricts by the identity
    for p in range(2, n_max):
        ok, recorded = _advance(pos, profile, True, p, "A-alpha", recorded, a_lo, a_hi)
        if not ok:
            break

    neg = DerivedTable("sigma", profile.name, 0, n_max)
    _seed_column(neg, 0, {1: FormalGroup.of(KSQ)}, ("P-sigma", "A-delta-sq"), profile)
    if n_max >= 1:
        base = LesWindow.build([
            ("M0", ZERO_FG), (),
            ("B(1,-1)", ZERO_FG), (),
            ("B(1,0)", normalize(FormalGroup.of(KSQ), profile)),
            ("axiom:A-diag", "axiom:A-delta-sq", "incl-ksq"),
            ("M1", _motivic_column(1)), (),
            ("B(2,-1)", None), (),
            ("B(2,0)", ZERO_FG), (),
            ("M2", ZERO_FG)])
        sol = solve_window(base, profile)
        if not sol.ok or "B(2,-1)" not in sol.values:
            neg.notes.append("base window for the first negative column failed: "
                             + "; ".join(sol.contradictions))
        else:
            _seed_column(neg, -1, {2: sol.values["B(2,-1)"]},
                         ("P-sigma", "A-EC2", "A-diag", "A-delta-sq", "LES"), profile)
            recorded = None
            for n in range(1, n_max):
                ok, recorded = _advance(neg, profile, False, -n, "A-tau", recorded, a_lo, a_hi)
                if not ok:
                    break

    if coeff == 2:
        return {"positive": _apply_uct(pos, profile), "negative": _apply_uct(neg, profile)}
    return {"positive": pos, "negative": neg}

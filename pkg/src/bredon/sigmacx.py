"""The evaluated cycle complexes along the sign representation.

Everything here is orbit combinatorics.  Sections of the transfer presheaf on
a j-fold product of free orbits, taken at a point, have a basis indexed by
orbits of the flip action on bit strings {0,1}^j (the class of v is {v, v~}
with v~ the complement); at the free orbit one extra coordinate is appended.
Pushforward deletes a coordinate, pullback inserts one, and the complex for a
shift by n copies of the sign representation assembles these maps over the
subset lattice of {1..n} with Koszul signs.

Calibration (fixed once, verified in tests): for the two-step shift at the
fixed point the differentials are g(a,b) = (a+b, -a-b) and f(a,b) = 2a+2b on
degrees -2, -1, 0; for the dual complex g(a) = (a,a) and f(a,b) = (a-b, a-b)
on degrees 0, 1, 2.  The Koszul sign for acting in slot s of a subset S is
(-1)^(number of elements of S greater than s).

The per-degree ranks grow like binomial(n, j) * 2^(j-1); the default grid
bound keeps n at most 8 (total rank 3281 at the fixed point).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Tuple

from .abgrp import FgAbelianGroup, IntegerMatrix
from .chaincx import ChainMap, CochainComplex, all_cohomology, cohomology, induced_map, unit_complex

FIXED = "fixed"
FREE = "free"

# total rank grows like 3^|n| (1 + (3^n - 1)/2 at the fixed point); the grid
# default is |n| <= 8 and this soft bound guards accidental blowups.  Raise
# it module-wide for bigger experiments.
SHIFT_BOUND = 12


@dataclass(frozen=True)
class SigmaSpec:
    """A signed shift n along the sign representation, evaluated at an orbit."""

    n: int
    orbit_type: str = FIXED

    def __post_init__(self):
        if self.orbit_type not in (FIXED, FREE):
            raise ValueError(f"orbit_type must be 'fixed' or 'free', got {self.orbit_type!r}")


@dataclass(frozen=True)
class Orbit:
    """The flip-orbit of a bit string, stored by its canonical representative.

    The canonical representative is the lexicographically smaller of the pair
    {v, complement(v)}; for positive arity that is exactly the string starting
    with 0.  Arity 0 has the single empty class.
    """

    bits: Tuple[int, ...]

    def __post_init__(self):
        if self.bits and self.bits[0] == 1:
            raise ValueError("orbit representative must be canonical (leading 0)")

    @classmethod
    def of(cls, bits: Tuple[int, ...]) -> "Orbit":
        return cls(canonical_bits(bits))

    @property
    def arity(self) -> int:
        return len(self.bits)


def canonical_bits(bits: Tuple[int, ...]) -> Tuple[int, ...]:
    """The lexicographically smaller of a bit string and its complement."""
    if bits and bits[0] == 1:
        return tuple(1 - b for b in bits)
    return tuple(bits)


def orbit_basis(j: int, orbit_type: str = FIXED) -> List[Tuple[int, ...]]:
    """Ordered basis labels for arity j sections.

    Fixed point: orbit classes of {0,1}^j, canonical representatives in
    lexicographic order (2^(j-1) classes for j >= 1, one empty class for
    j = 0).  Free orbit: one extra leading coordinate (2^j classes).

    >>> orbit_basis(2)
    [(0, 0), (0, 1)]
    >>> len(orbit_basis(3)), len(orbit_basis(3, FREE))
    (4, 8)
    """
    if j < 0:
        raise ValueError("arity must be nonnegative")
    width = j + (1 if orbit_type == FREE else 0)
    if width == 0:
        return [()]
    out = []
    for k in range(2 ** (width - 1)):
        bits = tuple((k >> (width - 1 - i)) & 1 for i in range(width))
        out.append((0,) + bits[1:])
    return out


def _basis_index(j: int, orbit_type: str) -> Dict[Tuple[int, ...], int]:
    return {b: i for i, b in enumerate(orbit_basis(j, orbit_type))}


def push_matrix(j: int, drop_index: int, orbit_type: str = FIXED) -> IntegerMatrix:
    """Cycle pushforward deleting the drop_index-th coordinate (1-based).

    Each orbit class maps to the class of the shortened string with
    coefficient 1, except that at the fixed point the arity-1 classes map
    onto the empty class with coefficient 2 (both points of the orbit land
    on the single point).

    >>> push_matrix(1, 1).to_rows()
    [[2]]
    >>> push_matrix(2, 1).to_rows()
    [[1, 1]]
    """
    if not 1 <= drop_index <= j:
        raise ValueError(f"drop index {drop_index} out of range for arity {j}")
    free = orbit_type == FREE
    src = orbit_basis(j, orbit_type)
    tgt_index = _basis_index(j - 1, orbit_type)
    pos = drop_index - 1 + (1 if free else 0)
    entries: dict = {}
    for col, bits in enumerate(src):
        shorter = bits[:pos] + bits[pos + 1:]
        if not free and j == 1:
            entries[(tgt_index[()], col)] = 2
        else:
            entries[(tgt_index[canonical_bits(shorter)], col)] = entries.get(
                (tgt_index[canonical_bits(shorter)], col), 0) + 1
    return IntegerMatrix.from_entries(len(tgt_index), len(src), entries)


def pull_matrix(j: int, insert_index: int, orbit_type: str = FIXED) -> IntegerMatrix:
    """Cycle pullback inserting a coordinate at insert_index (1-based).

    The column of a source class is the sum of the classes lying over it:
    two classes of arity j when the total width is at least 2, and the single
    class with coefficient 1 when pulling the fixed-point arity-0 class.

    >>> pull_matrix(1, 1).to_rows()
    [[1]]
    >>> pull_matrix(2, 1).to_rows()
    [[1], [1]]
    """
    if not 1 <= insert_index <= j:
        raise ValueError(f"insert index {insert_index} out of range for arity {j}")
    free = orbit_type == FREE
    src = orbit_basis(j - 1, orbit_type)
    tgt_index = _basis_index(j, orbit_type)
    pos = insert_index - 1 + (1 if free else 0)
    entries: dict = {}
    for col, bits in enumerate(src):
        if not free and j == 1:
            # the fixed arity-0 class is a single point; its preimage is the
            # whole orbit, i.e. the one class with coefficient 1
            entries[(tgt_index[(0,)], col)] = 1
            continue
        for b in (0, 1):
            longer = bits[:pos] + (b,) + bits[pos:]
            row = tgt_index[canonical_bits(longer)]
            entries[(row, col)] = entries.get((row, col), 0) + 1
    return IntegerMatrix.from_entries(len(tgt_index), len(src), entries)


def _subset_blocks(n: int, j: int) -> List[Tuple[int, ...]]:
    """Size-j subsets of {1..n} in lexicographic order."""
    return list(combinations(range(1, n + 1), j))


def _component_layout(n: int, j: int, orbit_type: str):
    """Offsets of the subset blocks inside the degree component."""
    blocks = _subset_blocks(n, j)
    size = len(orbit_basis(j, orbit_type))
    offsets = {s: k * size for k, s in enumerate(blocks)}
    return blocks, size, offsets


def _koszul_sign(subset: Tuple[int, ...], s: int) -> int:
    return -1 if sum(1 for t in subset if t > s) % 2 else 1


@lru_cache(maxsize=None)
def build_sigma_complex(spec: SigmaSpec) -> CochainComplex:
    """The evaluated complex for a shift of n copies of the sign representation.

    For n > 0 the complex lives on degrees -n..0 with the degree -j component
    spanned by (subset of size j, orbit class of arity j) pairs and the
    differential given by signed pushforwards; for n < 0 it lives on degrees
    0..-n built dually from pullbacks; n = 0 is the unit complex.

    >>> build_sigma_complex(SigmaSpec(1)).differential(-1).to_rows()
    [[2]]
    >>> [build_sigma_complex(SigmaSpec(2)).rank(d) for d in (-2, -1, 0)]
    [2, 2, 1]
    """
    n, orbit_type = spec.n, spec.orbit_type
    if abs(n) > SHIFT_BOUND:
        raise ValueError(
            f"shift {n} exceeds the configured bound {SHIFT_BOUND} "
            "(ranks grow like 3^n; raise sigmacx.SHIFT_BOUND to override)")
    if n == 0:
        return unit_complex()
    m = abs(n)
    comps: Dict[int, int] = {}
    for j in range(m + 1):
        size = len(orbit_basis(j, orbit_type)) * len(_subset_blocks(m, j))
        comps[-j if n > 0 else j] = size
    diffs: Dict[int, IntegerMatrix] = {}
    if n > 0:
        for j in range(m, 0, -1):
            src_blocks, src_size, src_off = _component_layout(m, j, orbit_type)
            _, tgt_size, tgt_off = _component_layout(m, j - 1, orbit_type)
            entries: dict = {}
            for subset in src_blocks:
                base = src_off[subset]
                for idx, s in enumerate(subset, start=1):
                    rest = tuple(t for t in subset if t != s)
                    sign = _koszul_sign(subset, s)
                    tbase = tgt_off[rest]
                    for (r, c), v in push_matrix(j, idx, orbit_type).items():
                        key = (tbase + r, base + c)
                        entries[key] = entries.get(key, 0) + sign * v
            diffs[-j] = IntegerMatrix.from_entries(comps[-(j - 1)], comps[-j], entries)
    else:
        for j in range(m):
            src_blocks, _, src_off = _component_layout(m, j, orbit_type)
            _, _, tgt_off = _component_layout(m, j + 1, orbit_type)
            entries = {}
            for subset in src_blocks:
                base = src_off[subset]
                for s in range(1, m + 1):
                    if s in subset:
                        continue
                    bigger = tuple(sorted(subset + (s,)))
                    idx = bigger.index(s) + 1
                    sign = _koszul_sign(subset, s)
                    tbase = tgt_off[bigger]
                    for (r, c), v in pull_matrix(j + 1, idx, orbit_type).items():
                        key = (tbase + r, base + c)
                        entries[key] = entries.get(key, 0) + sign * v
            diffs[j] = IntegerMatrix.from_entries(comps[j + 1], comps[j], entries)
    return CochainComplex(comps, diffs)


def weight0(a: int, p: int, m: int = 0) -> FgAbelianGroup:
    """Weight-0 equivariant cohomology in cohomological index a + p*sigma.

    Computed directly as H^a of the fixed-point complex for the shift by
    p*sigma, integrally (m = 0) or with Z/m coefficients (m prime).

    >>> print(weight0(0, 1))
    Z/2
    >>> print(weight0(-2, 2))
    Z
    >>> print(weight0(1, -1))
    0
    """
    lo, hi = (-p, 0) if p >= 0 else (0, -p)
    if a < lo or a > hi:
        return FgAbelianGroup.zero()
    c = build_sigma_complex(SigmaSpec(p, FIXED))
    return cohomology(c, a, m)


# ---------------------------------------------------------------------------
# Transfer and restriction
# ---------------------------------------------------------------------------

def _per_arity_map(n: int, orbit_type_src: str, orbit_type_tgt: str, arity_map) -> Dict[int, IntegerMatrix]:
    """Assemble a degreewise map from a per-arity block (same subset layout)."""
    m = abs(n)
    maps = {}
    for j in range(m + 1):
        deg = -j if n > 0 else j
        src_blocks, src_size, src_off = _component_layout(m, j, orbit_type_src)
        _, tgt_size, tgt_off = _component_layout(m, j, orbit_type_tgt)
        block = arity_map(j)
        entries = {}
        for subset in src_blocks:
            sb, tb = src_off[subset], tgt_off[subset]
            for (r, c), v in block.items():
                entries[(tb + r, sb + c)] = v
        rows = tgt_size * len(src_blocks)
        cols = src_size * len(src_blocks)
        maps[deg] = IntegerMatrix.from_entries(rows, cols, entries)
    return maps


def _transfer_block(j: int) -> IntegerMatrix:
    """Orbit sum: a free class maps to the class of its non-free part."""
    src = orbit_basis(j, FREE)
    tgt_index = _basis_index(j, FIXED)
    entries: dict = {}
    for col, bits in enumerate(src):
        rest = bits[1:]
        if j == 0:
            entries[(tgt_index[()], col)] = 2
        else:
            row = tgt_index[canonical_bits(rest)]
            entries[(row, col)] = entries.get((row, col), 0) + 1
    return IntegerMatrix.from_entries(len(tgt_index), len(src), entries)


def _restriction_block(j: int) -> IntegerMatrix:
    """Orbit expansion: a fixed class pulls back to the classes over it."""
    src = orbit_basis(j, FIXED)
    tgt_index = _basis_index(j, FREE)
    entries: dict = {}
    for col, bits in enumerate(src):
        if j == 0:
            entries[(tgt_index[(0,)], col)] = 1
            continue
        for rep in (bits, tuple(1 - b for b in bits)):
            row = tgt_index[canonical_bits((0,) + rep)]
            entries[(row, col)] = entries.get((row, col), 0) + 1
    return IntegerMatrix.from_entries(len(tgt_index), len(src), entries)


def _involution_block(j: int) -> IntegerMatrix:
    """Flip the free coordinate (identity at arity 0)."""
    src = orbit_basis(j, FREE)
    index = _basis_index(j, FREE)
    entries = {}
    for col, bits in enumerate(src):
        flipped = canonical_bits((1 - bits[0],) + bits[1:])
        entries[(index[flipped], col)] = 1
    return IntegerMatrix.from_entries(len(src), len(src), entries)


def transfer_map(p: int) -> ChainMap:
    """The transfer from the free-orbit complex to the fixed-point complex."""
    free_cx = build_sigma_complex(SigmaSpec(p, FREE))
    fixed_cx = build_sigma_complex(SigmaSpec(p, FIXED))
    return ChainMap(free_cx, fixed_cx, _per_arity_map(p, FREE, FIXED, _transfer_block))


def restriction_map(p: int) -> ChainMap:
    """The restriction from the fixed-point complex to the free-orbit complex."""
    free_cx = build_sigma_complex(SigmaSpec(p, FREE))
    fixed_cx = build_sigma_complex(SigmaSpec(p, FIXED))
    return ChainMap(fixed_cx, free_cx, _per_arity_map(p, FIXED, FREE, _restriction_block))


def involution_map(p: int) -> ChainMap:
    """The free-coordinate flip on the free-orbit complex."""
    free_cx = build_sigma_complex(SigmaSpec(p, FREE))
    return ChainMap(free_cx, free_cx, _per_arity_map(p, FREE, FREE, _involution_block))


class CheckFailure(AssertionError):
    """A structural check that did not hold, with a location report."""


def free_orbit_acyclicity(p: int, m: int = 0) -> bool:
    """The free-orbit complex has the coefficient group at degree -p only.

    >>> free_orbit_acyclicity(1)
    True
    """
    c = build_sigma_complex(SigmaSpec(p, FREE))
    expected = FgAbelianGroup.free(1) if m == 0 else FgAbelianGroup.cyclic(m)
    lo, hi = c.support()
    for a in range(lo, hi + 1):
        h = cohomology(c, a, m)
        want = expected if a == -p else FgAbelianGroup.zero()
        if h != want:
            raise CheckFailure(
                f"free-orbit cohomology at (a={a}, p={p}, m={m}) is {h}, expected {want}")
    return True


def transfer_restriction_check(p: int, classify: bool = True) -> bool:
    """Chain identities for the transfer/restriction pair at shift p.

    Asserts tr . res = 2 id on the fixed-point complex and res . tr = id + t
    with t the free-coordinate involution, then (optionally) classifies the
    induced endomorphism of every cohomology group as multiplication by 2.
    """
    tr = transfer_map(p)
    res = restriction_map(p)
    tau = involution_map(p)
    fixed_cx, free_cx = tr.target, tr.source
    tr_res = tr.compose(res)
    double = ChainMap.identity(fixed_cx).scale(2)
    for d in sorted(fixed_cx.components):
        if tr_res.component(d) != double.component(d):
            raise CheckFailure(f"tr.res != 2id at degree {d} of shift {p}")
    res_tr = res.compose(tr)
    id_tau = ChainMap.identity(free_cx).add(tau)
    for d in sorted(free_cx.components):
        if res_tr.component(d) != id_tau.component(d):
            raise CheckFailure(f"res.tr != id + flip at degree {d} of shift {p}")
    if classify:
        # the fixed-side composite is the multiplication-by-2 endomorphism;
        # the free-side one is id + involution, which is not 2 id on homology
        lo, hi = fixed_cx.support()
        for a in range(lo, hi + 1):
            ind = induced_map(tr_res, a)
            if not ind.is_multiplication_by(2):
                raise CheckFailure(
                    f"induced map of tr.res at degree {a}, shift {p} is not multiplication by 2")
    return True


def cone_identification(p: int):
    """The degreewise basis bijection cone(tr at p) -> complex at p+1.

    Cone basis order per degree: the fixed-point block (subsets of {1..p}),
    then the free block one degree up; target basis: subsets of {1..p+1},
    where a free label (S, (e, v)) corresponds to (S + {p+1}, v*e) with the
    free bit moved last (and canonicalized).  Returns, per degree, the list
    mapping cone basis positions to target positions; each is a permutation.
    """
    m = p
    target_spec = SigmaSpec(p + 1, FIXED)
    perms = {}
    for j in range(m + 2):
        deg = -j
        tgt_blocks, tgt_size, tgt_off = _component_layout(m + 1, j, FIXED)
        tgt_index_arity = _basis_index(j, FIXED)
        perm = []
        # fixed block: subsets of {1..p} of size j
        if j <= m:
            for subset in _subset_blocks(m, j):
                for bits in orbit_basis(j, FIXED):
                    perm.append(tgt_off[subset] + tgt_index_arity[bits])
        # free block: subsets of size j-1 with the extra factor appended
        if 1 <= j <= m + 1:
            for subset in _subset_blocks(m, j - 1):
                big = subset + (m + 1,)
                for bits in orbit_basis(j - 1, FREE):
                    moved = canonical_bits(bits[1:] + (bits[0],))
                    perm.append(tgt_off[big] + tgt_index_arity[moved])
        if perm:
            perms[deg] = perm
    return perms


def cone_tower_check(p: int) -> bool:
    """cone(transfer at shift p) is the complex at shift p+1.

    The recorded identification is a degreewise basis permutation under which
    the differentials agree exactly; rank equality and cohomology agreement
    in every degree are checked as well.

    >>> cone_tower_check(0)
    True
    """
    from .chaincx import cone

    tr = transfer_map(p)
    cn = cone(tr)
    target = build_sigma_complex(SigmaSpec(p + 1, FIXED))
    if {d: r for d, r in cn.components.items()} != dict(target.components):
        raise CheckFailure(f"cone ranks at shift {p} do not match shift {p + 1}")
    perms = cone_identification(p)
    for d, r in cn.components.items():
        if len(perms.get(d, [])) != r or sorted(perms[d]) != list(range(r)):
            raise CheckFailure(f"identification at degree {d} is not a bijection")
    for d in sorted(cn.components):
        if d + 1 not in cn.components:
            continue
        pd, pd1 = perms[d], perms[d + 1]
        lhs = cn.differential(d)
        rhs = target.differential(d)
        moved = {(pd1[i], pd[j]): v for (i, j), v in lhs.items()}
        if IntegerMatrix.from_entries(rhs.rows, rhs.cols, moved) != rhs:
            raise CheckFailure(f"cone differential at degree {d} does not match shift {p + 1}")
    if all_cohomology(cn) != all_cohomology(target):
        raise CheckFailure(f"cone cohomology at shift {p} does not match shift {p + 1}")
    return True

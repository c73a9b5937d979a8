"""Shared builders for randomized structural tests."""

from __future__ import annotations

import random

import pytest

from bredon import abgrp, chaincx


def random_matrix(rng: random.Random, rows: int, cols: int, emax: int) -> abgrp.IntegerMatrix:
    return abgrp.IntegerMatrix.from_rows(
        [[rng.randint(-emax, emax) for _ in range(cols)] for _ in range(rows)], cols=cols)


def random_complex(rng: random.Random, max_deg: int = 2, max_rank: int = 3,
                   emax: int = 3) -> chaincx.CochainComplex:
    """A random bounded complex, valid by construction.

    Each differential after the first is drawn from the left kernel of its
    predecessor, so d.d = 0 holds exactly.
    """
    comps = {d: rng.randint(0, max_rank) for d in range(-max_deg, 1)}
    comps = {d: r for d, r in comps.items() if r}
    diffs = {}
    prev = None
    for d in sorted(comps):
        if d + 1 in comps:
            rows, cols = comps[d + 1], comps[d]
            m = random_matrix(rng, rows, cols, emax)
            if prev is not None:
                left_kernel = abgrp.kernel_basis(prev.transpose())
                coeffs = random_matrix(rng, rows, left_kernel.cols, emax)
                m = coeffs @ left_kernel.transpose()
            diffs[d] = m
            prev = m
        else:
            prev = None
    return chaincx.CochainComplex(comps, diffs)


def random_chain_map(rng: random.Random, source: chaincx.CochainComplex,
                     target: chaincx.CochainComplex, emax: int = 2) -> chaincx.ChainMap:
    """A random chain map, found inside the integer kernel of the commuting
    constraints."""
    degs = sorted(set(source.components) | set(target.components))
    var_index = {}
    nv = 0
    for d in degs:
        for i in range(target.rank(d)):
            for j in range(source.rank(d)):
                var_index[(d, i, j)] = nv
                nv += 1
    constraints = []
    for d in degs:
        dc, dd = source.differential(d), target.differential(d)
        for i in range(target.rank(d + 1)):
            for j in range(source.rank(d)):
                row = {}
                for k in range(source.rank(d + 1)):
                    v = dc.entry(k, j)
                    if v:
                        key = var_index[(d + 1, i, k)]
                        row[key] = row.get(key, 0) + v
                for k in range(target.rank(d)):
                    v = dd.entry(i, k)
                    if v:
                        key = var_index[(d, k, j)]
                        row[key] = row.get(key, 0) - v
                if row:
                    constraints.append(row)
    a = abgrp.IntegerMatrix(len(constraints), nv,
                            {(r, c): v for r, row in enumerate(constraints)
                             for c, v in row.items()})
    kernel = abgrp.kernel_basis(a)
    sol = [0] * nv
    if kernel.cols:
        weights = [rng.randint(-emax, emax) for _ in range(kernel.cols)]
        for (i, j), v in kernel.items():
            sol[i] += v * weights[j]
    maps = {}
    for d in degs:
        entries = {}
        for i in range(target.rank(d)):
            for j in range(source.rank(d)):
                v = sol[var_index[(d, i, j)]]
                if v:
                    entries[(i, j)] = v
        if entries:
            maps[d] = abgrp.IntegerMatrix.from_entries(target.rank(d), source.rank(d), entries)
    return chaincx.ChainMap(source, target, maps)


@pytest.fixture
def rng():
    return random.Random(20260809)

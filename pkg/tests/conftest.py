"""Shared test helpers: independent oracles kept deliberately separate from
the library's own code paths.

The naive tower multiplier works on nested coefficient tuples with its own
base-field polynomial arithmetic; the Leibniz determinant expands over
permutations.  Both exist so that construction checks inside the library
(elimination-based) are cross-examined by a different route here.
"""

from __future__ import annotations

import itertools


# -- independent base field arithmetic on ints, via polynomial reduction --

def _base_digits(x, p, m):
    out = []
    for _ in range(m):
        x, d = divmod(x, p)
        out.append(d)
    return out


def _base_undigits(ds, p):
    acc = 0
    for d in reversed(ds):
        acc = acc * p + d
    return acc


def naive_base_mul(field_base, a, b):
    p, m = field_base.p, field_base.m
    da, db = _base_digits(a, p, m), _base_digits(b, p, m)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    poly = field_base.poly
    for i in range(len(prod) - 1, m - 1, -1):
        c = prod[i]
        if c:
            for j in range(m + 1):
                prod[i - m + j] = (prod[i - m + j] - c * poly[j]) % p
    return _base_undigits(prod[:m], p)


def naive_base_add(field_base, a, b):
    p, m = field_base.p, field_base.m
    return _base_undigits(
        [(x + y) % p for x, y in zip(_base_digits(a, p, m), _base_digits(b, p, m))], p)


def naive_base_neg(field_base, a):
    p, m = field_base.p, field_base.m
    return _base_undigits([(p - x) % p for x in _base_digits(a, p, m)], p)


# -- independent tower arithmetic on nested pairs --

def _to_pair(tower, x, lvl):
    if lvl == 1:
        return x
    size = tower.level_order(lvl - 1)
    return (_to_pair(tower, x % size, lvl - 1), _to_pair(tower, x // size, lvl - 1))


def _from_pair(tower, v, lvl):
    if lvl == 1:
        return v
    size = tower.level_order(lvl - 1)
    return _from_pair(tower, v[0], lvl - 1) + _from_pair(tower, v[1], lvl - 1) * size


def _pair_add(tower, u, v, lvl):
    if lvl == 1:
        return naive_base_add(tower.base, u, v)
    return (_pair_add(tower, u[0], v[0], lvl - 1), _pair_add(tower, u[1], v[1], lvl - 1))


def _pair_neg(tower, u, lvl):
    if lvl == 1:
        return naive_base_neg(tower.base, u)
    return (_pair_neg(tower, u[0], lvl - 1), _pair_neg(tower, u[1], lvl - 1))


def _pair_mul(tower, u, v, lvl):
    if lvl == 1:
        return naive_base_mul(tower.base, u, v)
    lin, const = tower.quads[lvl]
    lin_p = _to_pair(tower, lin, lvl - 1)
    const_p = _to_pair(tower, const, lvl - 1)
    a0, a1 = u
    b0, b1 = v
    p00 = _pair_mul(tower, a0, b0, lvl - 1)
    p11 = _pair_mul(tower, a1, b1, lvl - 1)
    cross = _pair_add(tower, _pair_mul(tower, a0, b1, lvl - 1),
                      _pair_mul(tower, a1, b0, lvl - 1), lvl - 1)
    lo = _pair_add(tower, p00, _pair_neg(tower, _pair_mul(tower, const_p, p11, lvl - 1), lvl - 1), lvl - 1)
    hi = _pair_add(tower, cross, _pair_neg(tower, _pair_mul(tower, lin_p, p11, lvl - 1), lvl - 1), lvl - 1)
    return (lo, hi)


def naive_tower_mul(tower, x, y):
    lvl = tower.levels
    return _from_pair(tower, _pair_mul(tower, _to_pair(tower, x, lvl), _to_pair(tower, y, lvl), lvl), lvl)


def naive_tower_add(tower, x, y):
    lvl = tower.levels
    return _from_pair(tower, _pair_add(tower, _to_pair(tower, x, lvl), _to_pair(tower, y, lvl), lvl), lvl)


# -- independent determinant and minor enumeration --

def leibniz_det(field, rows):
    n = len(rows)
    acc = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = field.mul(term, rows[i][perm[i]])
        if inversions % 2:
            term = field.neg(term)
        acc = field.add(acc, term)
    return acc


def all_minors_nonzero(field, rows):
    """Exhaustive minor enumeration with the permutation-expansion
    determinant; independent of the library's elimination route."""
    nr, nc = len(rows), len(rows[0])
    for z in range(1, min(nr, nc) + 1):
        for ii in itertools.combinations(range(nr), z):
            for jj in itertools.combinations(range(nc), z):
                sub = [[rows[i][j] for j in jj] for i in ii]
                if leibniz_det(field, sub) == 0:
                    return False
    return True


def random_stream(rng, order, k, length):
    return [tuple(rng.randrange(order) for _ in range(k)) for _ in range(length)]

"""Exact arithmetic in GF(q) and in a tower of quadratic extensions above it.

The tower is GF(q) at level 1, GF(q^2) at level 2, and so on: each level
adjoins a root of a monic quadratic that is irreducible over the level
below, so level j has order q^(2^(j-1)).

Elements are plain ints.  An int is read as a coefficient vector in the
tower basis, written in base q: digit i is the GF(q) coordinate of basis
element i, and each GF(q) digit is itself a base-p coefficient vector when
q = p^m.  This encoding gives three properties the rest of the package
leans on:

* level-j subfield membership is just ``x < level_order(j)``,
* GF(q) matrix entries embed into the top field unchanged,
* addition is digit-wise and never carries.

Construction is deterministic: the base irreducible and every level
quadratic are the lexicographically smallest valid choices, comparing
coefficient vectors constant term first.  Two towers built from equal
(q, a) therefore agree bit for bit.

Ints carry no field tag; keeping operands together with the tower that
made them is the caller's job, as with any table-driven GF code.
"""

from __future__ import annotations

import itertools

_LOG_TABLE_MAX = 1 << 16
_BASE_TABLE_MAX = 256


def is_prime_power(n: int):
    """Return (p, m) with n = p**m and p prime, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if p * p > n:
        return (n, 1)
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return (p, m) if n == 1 else None


def smallest_prime_power_at_least(n: int) -> int:
    c = max(2, n)
    while is_prime_power(c) is None:
        c += 1
    return c


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), tuples of coefficients, constant term first --

def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mod(num, den, p):
    """Remainder of num modulo monic den, coefficients mod p."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return _poly_trim([c % p for c in num[:dd]])


def _is_irreducible(poly, p):
    """Exhaustive check: no monic factor of degree 1 .. deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = tail + (1,)
            if not _poly_mod(poly, div, p):
                return False
    return True


def _monic_irreducible(p: int, m: int):
    """Lexicographically smallest monic irreducible of degree m over GF(p)."""
    if m == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=m):
        cand = tail + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise RuntimeError(f"no irreducible of degree {m} over GF({p})")


class BaseField:
    """GF(p^m) with elements 0..q-1 encoded as base-p coefficient vectors."""

    def __init__(self, q: int):
        pm = is_prime_power(q)
        if pm is None:
            raise ValueError(f"field order {q} is not a prime power")
        self.p, self.m = pm
        self.q = q
        self.poly = _monic_irreducible(self.p, self.m)
        self._mul_table = None
        self._inv_table = None
        if self.m > 1:
            if q > _BASE_TABLE_MAX:
                raise ValueError(f"base extension field GF({q}) exceeds the supported desk scale")
            self._build_tables()

    def _digits(self, a):
        out = []
        for _ in range(self.m):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _undigits(self, ds):
        acc = 0
        for d in reversed(ds):
            acc = acc * self.p + d
        return acc

    def _mul_poly(self, a, b):
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_mod(prod, self.poly, self.p)
        return self._undigits(list(rem) + [0] * (self.m - len(rem)))

    def _build_tables(self):
        q = self.q
        tbl = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                v = self._mul_poly(a, b)
                tbl[a][b] = v
                tbl[b][a] = v
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if tbl[a][b] == 1:
                    inv[a] = b
                    break
        self._mul_table = tbl
        self._inv_table = inv

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.m == 1:
            return (self.p - a) % self.p
        if self.p == 2:
            return a
        return self._undigits([(self.p - x) % self.p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        return self._mul_table[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv_table[a]


class TowerField:
    """Quadratic-extension tower over a BaseField.

    ``level_order(j)`` gives the order of the level-j subfield (levels 0 and
    1 both mean GF(q)); ``order`` is the top level's.  All arithmetic acts
    on ints below ``order``; lower-level elements are already embedded.
    """

    def __init__(self, base: BaseField, levels: int):
        if levels < 1:
            raise ValueError("a tower needs at least one level")
        self.base = base
        self.levels = levels
        self.q = base.q
        self._sizes = [base.q, base.q] + [base.q ** (1 << (j - 1)) for j in range(2, levels + 1)]
        self.order = self._sizes[levels]
        self.dim = 1 << (levels - 1)          # over GF(q)
        self.dim_p = base.m * self.dim        # over GF(p)
        self._digit_vecs = None
        self._exp = None
        self._log = None
        self.quads = {}                       # level -> (lin, const), coeffs in the level below
        for j in range(2, levels + 1):
            self.quads[j] = self._find_quadratic(j)
        if levels >= 2 and self.order <= _LOG_TABLE_MAX:
            self._digit_vecs = [self._to_digits(x) for x in range(self.order)]
            self._build_log_tables()

    # -- construction helpers --

    def _find_quadratic(self, j):
        """Smallest (const, lin) with t^2 + lin*t + const irreducible over level j-1."""
        size = self._sizes[j - 1]
        for const in range(1, size):
            for lin in range(size):
                if not self._has_root(j - 1, lin, const, size):
                    return (lin, const)
        raise RuntimeError(f"no irreducible quadratic over level {j - 1}")

    def _has_root(self, lvl, lin, const, size):
        for x in range(size):
            v = self.add(self._mul_lvl(lvl, x, x), self.add(self._mul_lvl(lvl, lin, x), const))
            if v == 0:
                return True
        return False

    def _build_log_tables(self):
        o = self.order
        factors = _prime_factors(o - 1)
        gen = None
        for cand in range(2, o):
            if all(self._pow_slow(cand, (o - 1) // f) != 1 for f in factors):
                gen = cand
                break
        if gen is None:
            raise RuntimeError("no multiplicative generator found")
        exp = [1] * (2 * (o - 1) - 1)
        cur = 1
        for i in range(1, o - 1):
            cur = self._mul_lvl(self.levels, cur, gen)
            exp[i] = cur
        for i in range(o - 1, len(exp)):
            exp[i] = exp[i - (o - 1)]
        log = [0] * o
        for i in range(o - 1):
            log[exp[i]] = i
        self._exp = exp
        self._log = log

    def _to_digits(self, x):
        out = []
        for _ in range(self.dim):
            x, d = divmod(x, self.q)
            out.append(d)
        return tuple(out)

    # -- arithmetic --

    def add(self, x, y):
        if self.base.p == 2:
            return x ^ y
        if self.levels == 1:
            return self.base.add(x, y)
        badd = self.base.add
        q = self.q
        if self._digit_vecs is not None:
            dx, dy = self._digit_vecs[x], self._digit_vecs[y]
        else:
            dx, dy = self._to_digits(x), self._to_digits(y)
        acc = 0
        for i in range(self.dim - 1, -1, -1):
            acc = acc * q + badd(dx[i], dy[i])
        return acc

    def neg(self, x):
        if self.base.p == 2:
            return x
        if self.levels == 1:
            return self.base.neg(x)
        bneg = self.base.neg
        q = self.q
        dx = self._digit_vecs[x] if self._digit_vecs is not None else self._to_digits(x)
        acc = 0
        for i in range(self.dim - 1, -1, -1):
            acc = acc * q + bneg(dx[i])
        return acc

    def sub(self, x, y):
        if self.base.p == 2:
            return x ^ y
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.levels == 1:
            return self.base.mul(x, y)
        if self._log is not None:
            if x == 0 or y == 0:
                return 0
            return self._exp[self._log[x] + self._log[y]]
        return self._mul_lvl(self.levels, x, y)

    def _mul_lvl(self, lvl, x, y):
        if lvl == 1:
            return self.base.mul(x, y)
        size = self._sizes[lvl - 1]
        x0, x1 = x % size, x // size
        y0, y1 = y % size, y // size
        if x1 == 0 and y1 == 0:
            return self._mul_lvl(lvl - 1, x0, y0)
        lin, const = self.quads[lvl]
        p00 = self._mul_lvl(lvl - 1, x0, y0)
        p11 = self._mul_lvl(lvl - 1, x1, y1)
        cross = self.add(self._mul_lvl(lvl - 1, x0, y1), self._mul_lvl(lvl - 1, x1, y0))
        lo = self.sub(p00, self._mul_lvl(lvl - 1, const, p11))
        hi = self.sub(cross, self._mul_lvl(lvl - 1, lin, p11))
        return lo + hi * size

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.levels == 1:
            return self.base.inv(x)
        if self._log is not None:
            return self._exp[(self.order - 1) - self._log[x]]
        return self._pow_slow(x, self.order - 2)

    def pow(self, x, e):
        if e < 0:
            raise ValueError("negative exponent")
        if x == 0:
            return 0 if e else 1
        if self.levels >= 2 and self._log is not None:
            return self._exp[(self._log[x] * e) % (self.order - 1)]
        return self._pow_slow(x, e)

    def _pow_slow(self, x, e):
        acc = 1
        cur = x
        while e:
            if e & 1:
                acc = self._mul_lvl(self.levels, acc, cur)
            cur = self._mul_lvl(self.levels, cur, cur)
            e >>= 1
        return acc

    # -- structure queries --

    def level_order(self, j):
        if not 0 <= j <= self.levels:
            raise ValueError(f"level {j} out of range [0:{self.levels}]")
        return self._sizes[j]

    def level_scalar(self, j):
        """1 for the first two levels; above that, the root adjoined at level j.

        The returned element lies in level j but outside level j-1, which is
        what the staggered parity constructions need.
        """
        if not 0 <= j <= self.levels:
            raise ValueError(f"level {j} out of range [0:{self.levels}]")
        if j <= 1:
            return 1
        return self.q ** (1 << (j - 2))

    def in_subfield(self, x, j):
        """True iff x lies in the level-j subfield."""
        if not 1 <= j <= self.levels:
            raise ValueError(f"level {j} out of range [1:{self.levels}]")
        self.check(x)
        return x < self._sizes[j]

    def frobenius_fixed(self, x, j):
        """Field-theoretic membership test: x**level_order(j) == x."""
        return self.pow(x, self._sizes[j]) == x

    def check(self, x):
        if not isinstance(x, int) or not 0 <= x < self.order:
            raise ValueError(f"{x!r} is not an element of a field of order {self.order}")
        return x

    def elements(self):
        return range(self.order)

    # -- textual element format: GF(p) coefficient vector, low index first --

    def element_coeffs(self, x):
        self.check(x)
        out = []
        for _ in range(self.dim):
            x, d = divmod(x, self.q)
            for _ in range(self.base.m):
                d, c = divmod(d, self.base.p)
                out.append(c)
        return tuple(out)

    def element_from_coeffs(self, coeffs):
        if len(coeffs) != self.dim_p:
            raise ValueError(f"expected {self.dim_p} coefficients, got {len(coeffs)}")
        acc = 0
        for c in reversed(coeffs):
            if not 0 <= c < self.base.p:
                raise ValueError(f"coefficient {c} out of range for GF({self.base.p})")
            acc = acc * self.base.p + c
        return acc

    def format_element(self, x):
        return "[" + ",".join(str(c) for c in self.element_coeffs(x)) + "]"

    def parse_element(self, text):
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"malformed element {text!r}: expected [c0,c1,...]")
        body = s[1:-1].strip()
        try:
            coeffs = [int(c) for c in body.split(",")] if body else []
        except ValueError:
            raise ValueError(f"malformed element {text!r}: non-integer coefficient") from None
        return self.element_from_coeffs(coeffs)


def make_tower(q: int, a: int) -> TowerField:
    """Tower sized for an a-erasure code: max(a-1, 1) levels over GF(q)."""
    if a < 2:
        raise ValueError("a must be at least 2")
    return TowerField(BaseField(q), max(a - 1, 1))

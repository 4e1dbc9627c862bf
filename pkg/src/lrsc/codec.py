"""Encoders and the deadline-aware sliding-window decoder.

Parity structure is expressed twice on purpose.  Encoders evaluate the
closed-form diagonal expressions over a bounded message history, while the
decoder consumes time-invariant coefficient templates derived from the same
construction; a property test pins the two routes to identical values.

The decoder keeps one global linear system over the currently-unknown
message symbols, maintained in reduced row echelon form.  A symbol is
emitted the moment the system pins it uniquely, which makes the same
machinery serve the single-erasure deadline, the full-budget deadline, and
best-effort recovery past the guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .gf import TowerField, make_tower, smallest_prime_power_at_least
from .matrix import is_superregular, parity_weights, superregular_matrix
from .params import CodeParams, derive_params


class CodedPacket(NamedTuple):
    t: int
    symbols: tuple      # k message symbols followed by n-k parity symbols


@dataclass(frozen=True)
class PacketOutcome:
    t: int
    recovered: bool
    delay: int | None = None
    message: tuple | None = None


def diagonal_slice(history, start, width):
    """[m_0(start), m_1(start+1), ..., m_{width-1}(start+width-1)].

    Negative times read as zero; a missing nonnegative time is a sequencing
    bug and raises KeyError.
    """
    out = []
    for i in range(width):
        tt = start + i
        out.append(history[tt][i] if tt >= 0 else 0)
    return out


def block_slice(history, block, start, span, width):
    """Diagonal read of message block `block`: symbol block*span+w of the
    packet at time start+w for w < width, zero padded out to span entries."""
    out = []
    for w in range(span):
        if w < width:
            tt = start + w
            out.append(history[tt][block * span + w] if tt >= 0 else 0)
        else:
            out.append(0)
    return out


def _sort_template(terms):
    # ascending referenced time (descending delta), then symbol index
    terms = sorted(terms, key=lambda s: (-s[1], s[0]))
    seen = set()
    for sym, delta, _ in terms:
        assert (sym, delta) not in seen, "duplicate term in parity template"
        seen.add((sym, delta))
    return tuple(terms)


class LrscCode:
    """Stream code for one (a, tau, r) triple: field, weights, and per-parity
    coefficient templates.

    ``templates[i]`` lists (symbol_index, delta, coeff) terms meaning
    parity i at time t sums coeff * m_symbol(t - delta) over delta <= t.
    """

    def __init__(self, params: CodeParams, tower: TowerField | None = None):
        self.params = params
        self.field = tower if tower is not None else make_tower(params.q, params.a)
        base = superregular_matrix(self.field, params.r, params.a)
        self.weights = parity_weights(self.field, base)
        self.k = params.k
        self.n = params.n
        self.tau = params.tau
        # no commas: the label lands in a CSV column
        self.label = f"lrsc-{params.a}-{params.tau}-{params.r}"
        if params.regime == "short":
            self.templates = tuple(self._short_template(i) for i in range(params.a))
        else:
            self.templates = (self._exact_template(),)

    def _exact_template(self):
        p = self.params
        terms = []
        for j in range(p.a):
            col = self.weights.column(j)
            base_delta = p.r + j * (p.r + 1)
            for w in range(p.r):
                terms.append((w, base_delta - w, col[w]))
        return _sort_template(terms)

    def _short_template(self, i):
        p = self.params
        u, v, ell, r, a = p.u, p.v, p.ell, p.r, p.a
        terms = []
        if i < u:
            for j in range(i + 1):
                col = self.weights.column(j)
                block = i - j
                for w in range(r):
                    terms.append((block * r + w, r + j * (r + 1) - w, col[w]))
            for j in range(i, u):
                col = self.weights.column(a - u + j)
                block = u + i - j
                width = v if block == u else r
                for w in range(width):
                    terms.append((block * r + w, r + j * (r + 1) + v + ell - w, col[w]))
        else:
            ii = i - u
            for j in range(u + 1):
                col = self.weights.column(j + ii)
                block = u - j
                width = v if block == u else r
                for w in range(width):
                    terms.append((block * r + w, v + ii + j * (r + 1) - w, col[w]))
        return _sort_template(terms)

    def parity_terms(self, i, t):
        """Parity i at time t as [((time, symbol), coeff), ...], nonnegative
        times only."""
        return [((t - d, j), c) for (j, d, c) in self.templates[i] if d <= t]

    def parity_value(self, i, history, t):
        """Closed-form evaluation of parity i at time t over the history."""
        if self.params.regime == "short":
            return self._parity_value_short(i, history, t)
        return self._parity_value_exact(history, t)

    def _parity_value_exact(self, history, t):
        f = self.field
        p = self.params
        acc = 0
        for j in range(p.a):
            vec = diagonal_slice(history, t - p.r - j * (p.r + 1), p.r)
            col = self.weights.column(j)
            for w in range(p.r):
                if vec[w]:
                    acc = f.add(acc, f.mul(vec[w], col[w]))
        return acc

    def _parity_value_short(self, i, history, t):
        f = self.field
        p = self.params
        u, v, ell, r, a = p.u, p.v, p.ell, p.r, p.a

        def dot(vec, col):
            nonlocal acc
            for w in range(r):
                if vec[w]:
                    acc = f.add(acc, f.mul(vec[w], col[w]))

        acc = 0
        if i < u:
            for j in range(i + 1):
                block = i - j
                vec = block_slice(history, block, t - r - j * (r + 1), r, r)
                dot(vec, self.weights.column(j))
            for j in range(i, u):
                block = u + i - j
                width = v if block == u else r
                vec = block_slice(history, block, t - r - j * (r + 1) - v - ell, r, width)
                dot(vec, self.weights.column(a - u + j))
        else:
            ii = i - u
            for j in range(u + 1):
                block = u - j
                width = v if block == u else r
                vec = block_slice(history, block, t - v - ii - j * (r + 1), r, width)
                dot(vec, self.weights.column(j + ii))
        return acc


class MdsDeCode:
    """Baseline (a, tau) stream code: each stream diagonal carries a codeword
    of a systematic [tau+1, tau+1-a] MDS block code."""

    def __init__(self, a: int, tau: int, q_override: int | None = None):
        if a < 1:
            raise ValueError(f"a must be at least 1, got a={a}")
        if a > tau:
            raise ValueError(f"a must not exceed tau, got a={a}, tau={tau}")
        self.a = a
        self.tau = tau
        self.k = tau + 1 - a
        self.n = tau + 1
        q_min = max(2, self.n - 1)
        if q_override is not None:
            if q_override < self.n - 1:
                raise ValueError(
                    f"field of order {q_override} too small for the diagonal MDS code "
                    f"(needs order >= {self.n - 1}, doubly extended)")
            q = q_override
        else:
            q = smallest_prime_power_at_least(q_min)
        self.field = make_tower(q, 2)
        self.pg = self._parity_part()
        self.label = f"mds-de-{a}-{tau}"
        self.templates = tuple(self._template(i) for i in range(a))
        self.params = None

    def _parity_part(self):
        f = self.field
        k, a = self.k, self.a
        if f.q >= k + 1:
            cand = [[f.pow(j + 1, i) for i in range(a)] for j in range(k)]
            if is_superregular(f, cand):
                return tuple(tuple(r) for r in cand)
        return superregular_matrix(f, k, a)

    def _template(self, i):
        # parity i at time t closes the diagonal that started at t - (k+i)
        terms = [(j, self.k + i - j, self.pg[j][i]) for j in range(self.k)]
        return _sort_template(terms)

    def parity_terms(self, i, t):
        return [((t - d, j), c) for (j, d, c) in self.templates[i] if d <= t]

    def parity_value(self, i, history, t):
        f = self.field
        acc = 0
        for j, d, c in self.templates[i]:
            tt = t - d
            if tt >= 0:
                x = history[tt][j]
                if x:
                    acc = f.add(acc, f.mul(x, c))
        return acc


def make_lrsc(a: int, tau: int, r: int, q_override: int | None = None) -> LrscCode:
    return LrscCode(derive_params(a, tau, r, q_override))


class Encoder:
    """Systematic streaming encoder; retains the last tau+1 message packets."""

    def __init__(self, code):
        self.code = code
        self.history = {}
        self.next_t = 0

    def push(self, message) -> CodedPacket:
        code = self.code
        msg = tuple(message)
        if len(msg) != code.k:
            raise ValueError(f"expected {code.k} message symbols, got {len(msg)}")
        order = code.field.order
        for s in msg:
            if not isinstance(s, int) or not 0 <= s < order:
                raise ValueError(f"symbol {s!r} is not an element of the field of order {order}")
        t = self.next_t
        self.next_t += 1
        self.history[t] = msg
        parities = tuple(code.parity_value(i, self.history, t) for i in range(code.n - code.k))
        self.history.pop(t - code.tau - 1, None)
        return CodedPacket(t, msg + parities)


class Decoder:
    """Sliding-window decoder over one packet stream.

    Push packets (or None for an erasure) in time order starting at 0.
    Each push returns the packets whose fate was settled by it: a recovered
    outcome the moment all k message symbols are pinned, or a lost outcome
    once time moves past the t+tau deadline.  Unknowns of lost packets stay
    live for a few windows so later parities can still be stripped; a late
    resolution never un-marks the loss.
    """

    def __init__(self, code):
        self.code = code
        self.k = code.k
        self.n = code.n
        self.tau = code.tau
        f = code.field
        self._add, self._sub, self._mul, self._inv = f.add, f.sub, f.mul, f.inv
        self.next_t = 0
        self.known = {}          # (t, j) -> value
        self.unknowns = set()    # (t, j) still unresolved
        self.rows = {}           # pivot id -> [coeff dict, rhs]; reduced echelon form
        self.missing = {}        # t -> set of unresolved symbol indices
        self.lost = set()        # packets already reported lost
        self.horizon = 4 * (code.tau + 1)

    def push(self, t, packet) -> list[PacketOutcome]:
        if t != self.next_t:
            raise ValueError(f"packets must be pushed in time order; expected t={self.next_t}, got t={t}")
        self.next_t += 1
        out = []
        dead = t - self.tau - 1
        if dead >= 0 and dead in self.missing and dead not in self.lost:
            self.lost.add(dead)
            out.append(PacketOutcome(dead, recovered=False))
        if packet is None:
            self.missing[t] = set(range(self.k))
            for j in range(self.k):
                self.unknowns.add((t, j))
        else:
            if packet.t != t:
                raise ValueError(f"packet time {packet.t} does not match push time {t}")
            syms = packet.symbols
            if len(syms) != self.n:
                raise ValueError(f"expected {self.n} coded symbols, got {len(syms)}")
            known = self.known
            for j in range(self.k):
                known[(t, j)] = syms[j]
            out.append(PacketOutcome(t, recovered=True, delay=0, message=syms[:self.k]))
            if self.unknowns:
                for i in range(self.n - self.k):
                    self._absorb_parity(i, t, syms[self.k + i], out)
        self._prune(t)
        return out

    # -- linear system maintenance --

    def _absorb_parity(self, i, t, value, out):
        known = self.known
        unknowns = self.unknowns
        sub, mul = self._sub, self._mul
        coeffs = {}
        rhs = value
        for j, d, c in self.code.templates[i]:
            tt = t - d
            if tt < 0:
                continue
            sid = (tt, j)
            val = known.get(sid)
            if val is not None:
                if val:
                    rhs = sub(rhs, mul(c, val))
            elif sid in unknowns:
                coeffs[sid] = c
            else:
                raise AssertionError(f"symbol {sid} neither known nor tracked")
        self._insert(coeffs, rhs, t, out)

    def _insert(self, coeffs, rhs, now, out):
        rows = self.rows
        sub, mul, inv = self._sub, self._mul, self._inv
        for pid in [p for p in coeffs if p in rows]:
            f = coeffs.pop(pid)
            prow, prhs = rows[pid]
            for cid, cval in prow.items():
                if cid == pid:
                    continue
                nv = sub(coeffs.get(cid, 0), mul(f, cval))
                if nv:
                    coeffs[cid] = nv
                else:
                    coeffs.pop(cid, None)
            rhs = sub(rhs, mul(f, prhs))
        if not coeffs:
            assert rhs == 0, "received parity inconsistent with resolved symbols"
            return
        pid = min(coeffs)
        s = inv(coeffs[pid])
        if s != 1:
            coeffs = {cid: mul(s, cv) for cid, cv in coeffs.items()}
            rhs = mul(s, rhs)
        coeffs[pid] = 1
        for qid, qrow in rows.items():
            qcoeffs, qrhs = qrow
            f = qcoeffs.get(pid)
            if f is None:
                continue
            for cid, cval in coeffs.items():
                nv = sub(qcoeffs.get(cid, 0), mul(f, cval))
                if nv:
                    qcoeffs[cid] = nv
                else:
                    qcoeffs.pop(cid, None)
            qrow[1] = sub(qrhs, mul(f, rhs))
        rows[pid] = [coeffs, rhs]
        done = [qid for qid, (qc, _) in rows.items() if len(qc) == 1]
        for qid in done:
            self._resolve(qid, rows.pop(qid)[1], now, out)

    def _resolve(self, sid, value, now, out):
        self.unknowns.discard(sid)
        self.known[sid] = value
        t, j = sid
        miss = self.missing.get(t)
        if miss is None:
            return
        miss.discard(j)
        if not miss:
            del self.missing[t]
            if t not in self.lost:
                msg = tuple(self.known[(t, jj)] for jj in range(self.k))
                out.append(PacketOutcome(t, recovered=True, delay=now - t, message=msg))

    # -- retention --

    def _prune(self, t):
        tp = t - self.horizon
        if tp < 0:
            return
        for j in range(self.k):
            sid = (tp, j)
            self.known.pop(sid, None)
            if sid in self.unknowns:
                self._drop_unknown(sid)
        self.missing.pop(tp, None)
        self.lost.discard(tp)

    def _drop_unknown(self, sid):
        self.unknowns.discard(sid)
        if self.rows.pop(sid, None) is not None:
            return
        holders = [p for p, (c, _) in self.rows.items() if sid in c]
        if not holders:
            return
        sub, mul, inv = self._sub, self._mul, self._inv
        donor_pid = min(holders)
        dcoeffs, drhs = self.rows.pop(donor_pid)
        s = inv(dcoeffs[sid])
        if s != 1:
            dcoeffs = {cid: mul(s, cv) for cid, cv in dcoeffs.items()}
            drhs = mul(s, drhs)
        for pid in holders:
            if pid == donor_pid:
                continue
            qcoeffs, qrhs = self.rows[pid]
            f = qcoeffs[sid]
            for cid, cval in dcoeffs.items():
                nv = sub(qcoeffs.get(cid, 0), mul(f, cval))
                if nv:
                    qcoeffs[cid] = nv
                else:
                    qcoeffs.pop(cid, None)
            self.rows[pid][1] = sub(qrhs, mul(f, drhs))

    def _check_invariants(self):
        """Debug hook used by tests."""
        for pid, (coeffs, _) in self.rows.items():
            assert coeffs.get(pid) == 1
            assert set(coeffs) <= self.unknowns
            for qid, (qc, _) in self.rows.items():
                if qid != pid:
                    assert pid not in qc

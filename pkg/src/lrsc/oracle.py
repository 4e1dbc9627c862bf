"""Brute-force verification of the recoverability guarantees.

Two layers of ground truth:

* ``verify_scalar`` checks the block-code criterion directly on the parity
  check matrix: for every erasure pattern of full budget, each erased
  coordinate in the first message block must fall outside the span of the
  later erased columns.  No decoder involved.
* ``verify_stream`` drives the real encoder and decoder over a seeded
  random stream and every erasure pattern anchored at mid-horizon times
  (plus an anchor at t=0 to exercise the zero prehistory), asserting the
  anchored packet comes back correct within the deadline.

Pattern enumeration counts are asserted against the closed-form binomial
totals so a silent enumeration bug cannot pass as success.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field

from .codec import Decoder, Encoder
from .matrix import ParityWeights, in_span, stacked_parity_check


@dataclass(frozen=True)
class Failure:
    pattern: tuple
    packet_t: int | None
    detail: str
    deadline: int | None = None


@dataclass
class VerificationReport:
    description: str
    pattern_count: int = 0
    failures: list = dc_field(default_factory=list)
    max_delay: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        line = f"patterns={self.pattern_count} failures={len(self.failures)}"
        for h in sorted(self.max_delay):
            line += f" max_delay[{h}]={self.max_delay[h]}"
        return line


def verify_scalar(weights: ParityWeights) -> VerificationReport:
    """Exhaust every full-budget erasure pattern of the block code and check
    the span criterion for each erased coordinate of the first message
    block."""
    pc = stacked_parity_check(weights)
    f = pc.tower
    a, r = pc.lags, pc.span
    n_len = pc.block_len
    cols = pc.columns()
    report = VerificationReport(description=f"scalar a={a} r={r}")
    count = 0
    for pattern in itertools.combinations(range(n_len), a):
        count += 1
        for i in pattern:
            if i >= r:
                continue
            later = [cols[j] for j in pattern if j > i]
            if in_span(f, cols[i], later):
                report.failures.append(Failure(
                    pattern=pattern, packet_t=None,
                    detail=f"coordinate {i} lies in the span of later erased columns"))
    assert count == math.comb(n_len, a)
    report.pattern_count = count
    return report


def _random_stream(code, horizon, seed, trial):
    rng = random.Random(1_000_003 * seed + trial)
    order = code.field.order
    k = code.k
    return [tuple(rng.randrange(order) for _ in range(k)) for _ in range(horizon)]


def _encode_stream(code, messages):
    enc = Encoder(code)
    return [enc.push(m) for m in messages]


def _anchor_recovery(code, coded, erased, anchor, deadline):
    """Run the decoder up to anchor+deadline; return (delay, message) for the
    anchored packet or None if it never resolved in time."""
    dec = Decoder(code)
    for t in range(anchor + deadline + 1):
        for ev in dec.push(t, None if t in erased else coded[t]):
            if ev.t == anchor and ev.recovered:
                return ev.delay, ev.message
    return None


def verify_stream(code, budget, deadline, horizon=None, trials=1, seed=0) -> VerificationReport:
    """Exhaust every erasure pattern of at most `budget` erasures inside the
    window [t, t+deadline] containing t, for anchors t across the middle
    third of the horizon and at t=0, over `trials` random message streams."""
    span = max(code.tau, deadline)
    if horizon is None:
        horizon = 3 * (span + 1)
    if horizon < 3 * (span + 1):
        raise ValueError(f"horizon must be at least 3*(max(tau, deadline)+1) = {3 * (span + 1)}")
    anchors = [0] + list(range(horizon // 3, (2 * horizon) // 3))
    per_anchor = sum(math.comb(deadline, s - 1) for s in range(1, budget + 1))
    report = VerificationReport(
        description=f"stream {code.label} budget={budget} deadline={deadline}")
    count = 0
    for trial in range(trials):
        messages = _random_stream(code, horizon, seed, trial)
        coded = _encode_stream(code, messages)
        for anchor in anchors:
            enumerated = 0
            others = range(anchor + 1, anchor + deadline + 1)
            for size in range(1, budget + 1):
                for extra in itertools.combinations(others, size - 1):
                    enumerated += 1
                    pattern = (anchor,) + extra
                    got = _anchor_recovery(code, coded, frozenset(pattern), anchor, deadline)
                    if got is None:
                        report.failures.append(Failure(
                            pattern=pattern, packet_t=anchor, deadline=deadline,
                            detail=f"packet {anchor} not recovered by {anchor + deadline}"))
                        continue
                    delay, message = got
                    if message != messages[anchor]:
                        report.failures.append(Failure(
                            pattern=pattern, packet_t=anchor, deadline=deadline,
                            detail=f"packet {anchor} recovered with wrong symbols"))
                        continue
                    h = len(pattern)
                    if delay > report.max_delay.get(h, -1):
                        report.max_delay[h] = delay
            assert enumerated == per_anchor
            count += enumerated
    report.pattern_count = count
    return report


def stream_codeword(code, messages, t):
    """Block codeword carried by the stream at offset t (exact regime):
    the a diagonal slices starting at t, t+r+1, ... followed by the a
    parities with earlier contributions stripped.  Satisfies H w = 0."""
    from .codec import diagonal_slice

    p = code.params
    if p is None or p.regime == "short":
        raise ValueError("stream codewords of this layout exist in the exact and long regimes only")
    f = code.field
    a, r = p.a, p.r
    history = {i: m for i, m in enumerate(messages)}
    enc = Encoder(code)
    coded = [enc.push(m) for m in messages]
    w = []
    for j in range(a):
        w.extend(diagonal_slice(history, t + j * (r + 1), r))
    for ell in range(1, a + 1):
        s = t + ell * (r + 1) - 1
        acc = coded[s].symbols[code.k]
        for j in range(ell, a):
            vec = diagonal_slice(history, t + (ell - 1 - j) * (r + 1), r)
            col = code.weights.column(j)
            for ww in range(r):
                if vec[ww]:
                    acc = f.sub(acc, f.mul(vec[ww], col[ww]))
        w.append(acc)
    return w

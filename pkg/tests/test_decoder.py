"""Sliding-window decoder: deadlines, recovery delays, best-effort behavior."""

import random

import pytest

from lrsc.codec import CodedPacket, Decoder, Encoder, MdsDeCode, make_lrsc

from conftest import random_stream


def _coded(code, msgs):
    enc = Encoder(code)
    return [enc.push(m) for m in msgs]


def _drive(code, coded, erased, upto=None):
    dec = Decoder(code)
    events = []
    for t in range(len(coded) if upto is None else upto):
        events.extend(dec.push(t, None if t in erased else coded[t]))
    return dec, events


def test_clean_stream_all_delay_zero():
    code = make_lrsc(2, 5, 2)
    msgs = random_stream(random.Random(0), 3, 2, 20)
    _, events = _drive(code, _coded(code, msgs), set())
    assert len(events) == 20
    for ev in events:
        assert ev.recovered and ev.delay == 0
        assert ev.message == msgs[ev.t]


def test_single_erasure_meets_locality_deadline():
    code = make_lrsc(2, 5, 2)
    msgs = random_stream(random.Random(1), 3, 2, 24)
    _, events = _drive(code, _coded(code, msgs), {9})
    ev = next(e for e in events if e.t == 9)
    assert ev.recovered and ev.delay == 2
    assert ev.message == msgs[9]


def test_double_erasure_adjacent():
    # the two-erasure worked example: delays are 5 for the first packet
    # (needs both stripped parities) and 4 for the second
    code = make_lrsc(2, 5, 2)
    msgs = random_stream(random.Random(2), 3, 2, 24)
    _, events = _drive(code, _coded(code, msgs), {9, 10})
    ev9 = next(e for e in events if e.t == 9)
    ev10 = next(e for e in events if e.t == 10)
    assert (ev9.recovered, ev9.delay, ev9.message) == (True, 5, msgs[9])
    assert (ev10.recovered, ev10.delay, ev10.message) == (True, 4, msgs[10])


@pytest.mark.parametrize("theta", [1, 2, 3, 4, 5])
def test_double_erasure_all_gaps(theta):
    code = make_lrsc(2, 5, 2)
    msgs = random_stream(random.Random(3), 3, 2, 26)
    _, events = _drive(code, _coded(code, msgs), {9, 9 + theta})
    ev = next(e for e in events if e.t == 9)
    assert ev.recovered and ev.delay <= 5 and ev.message == msgs[9]
    if theta >= 3:
        assert ev.delay <= 2


def test_out_of_order_push_rejected():
    code = make_lrsc(2, 5, 2)
    dec = Decoder(code)
    msgs = random_stream(random.Random(4), 3, 2, 4)
    coded = _coded(code, msgs)
    dec.push(0, coded[0])
    with pytest.raises(ValueError):
        dec.push(2, coded[2])
    with pytest.raises(ValueError):
        dec.push(0, coded[0])


def test_beyond_guarantee_burst():
    # three erasures against a budget of two: packets 9 and 10 are lost at
    # their deadlines, 11 comes back inside the deadline, later packets are
    # untouched, and late resolutions never emit a second outcome
    code = make_lrsc(2, 5, 2)
    msgs = random_stream(random.Random(5), 3, 2, 30)
    dec, events = _drive(code, _coded(code, msgs), {9, 10, 11})
    by_t = {}
    for ev in events:
        assert ev.t not in by_t, "duplicate outcome"
        by_t[ev.t] = ev
    assert not by_t[9].recovered
    assert not by_t[10].recovered
    assert by_t[11].recovered and by_t[11].delay == 5 and by_t[11].message == msgs[11]
    for t in range(12, 24):
        assert by_t[t].recovered and by_t[t].delay == 0
    dec._check_invariants()


def test_late_resolution_strips_for_later_packets():
    # after the burst, the decoder keeps resolving old unknowns internally;
    # the known map must hold correct values wherever it resolved them
    code = make_lrsc(2, 5, 2)
    msgs = random_stream(random.Random(6), 3, 2, 30)
    dec, _ = _drive(code, _coded(code, msgs), {9, 10, 11})
    for (t, j), val in dec.known.items():
        assert val == msgs[t][j], (t, j)


def test_random_in_guarantee_patterns_all_codes():
    cases = [make_lrsc(2, 5, 2), make_lrsc(2, 4, 2), make_lrsc(3, 7, 2), MdsDeCode(2, 5)]
    for code in cases:
        a, tau = (code.params.a, code.tau) if code.params else (code.a, code.tau)
        rng = random.Random(7)
        msgs = random_stream(rng, code.field.order, code.k, 60)
        coded = _coded(code, msgs)
        for trial in range(8):
            # erasures spaced so every tau+1 window holds at most a of them
            erased = set()
            t = rng.randrange(3, 8)
            while t < 50:
                erased.add(t)
                t += (tau + 1) if len(erased) % a == 0 else rng.randrange(1, tau + 1)
            dec, events = _drive(code, coded, erased)
            got = {e.t: e for e in events}
            for t in sorted(erased):
                window = sum(1 for e in erased if t <= e <= t + tau) + \
                    sum(1 for e in erased if t - tau <= e < t)
                ev = got.get(t)
                if ev is None:
                    continue      # tail packet, deadline past the drive range
                if window <= a and ev.recovered:
                    assert ev.delay <= tau and ev.message == msgs[t]


def test_decoder_packet_shape_validation():
    code = make_lrsc(2, 5, 2)
    dec = Decoder(code)
    with pytest.raises(ValueError):
        dec.push(0, CodedPacket(0, (1, 2)))
    dec2 = Decoder(code)
    with pytest.raises(ValueError):
        dec2.push(0, CodedPacket(1, (1, 2, 0)))


def test_unknown_retention_horizon_prunes():
    code = make_lrsc(2, 5, 2)
    msgs = random_stream(random.Random(8), 3, 2, 140)
    coded = _coded(code, msgs)
    dec = Decoder(code)
    # a hopeless burst wider than the budget, then a long clean run
    erased = set(range(10, 16))
    for t in range(140):
        dec.push(t, None if t in erased else coded[t])
    horizon = 4 * (code.tau + 1)
    assert all(t >= 140 - horizon - 1 for (t, _) in dec.unknowns)
    assert all(t >= 140 - horizon - 1 for (t, _) in dec.known)
    assert all(t >= 140 - horizon - 1 for (t, _) in dec.rows)
    dec._check_invariants()


def test_long_regime_decoding():
    code = make_lrsc(2, 7, 2)
    assert code.params.regime == "long"
    msgs = random_stream(random.Random(9), 3, 2, 30)
    coded = _coded(code, msgs)
    _, events = _drive(code, coded, {9, 12})
    ev = next(e for e in events if e.t == 9)
    assert ev.recovered and ev.delay <= 7 and ev.message == msgs[9]

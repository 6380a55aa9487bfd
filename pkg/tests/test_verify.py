"""Exhaustive-verifier tests.

The anchor is a hand-enumerated code over GF(3): two encoders, one tap,
one message symbol, shares x1 = key + msg and x2 = key + 2*msg.  Its
full joint table is written out below and every verifier feature is
first exercised against that table.
"""

import math
from fractions import Fraction
from itertools import combinations, product

import pytest

from smdc.errors import BudgetExceededError, ParameterError
from smdc.fields import GF5, prime_field
from smdc.multilevel import SmdcParams, plan as multilevel_plan, encode as multilevel_encode
from smdc.randomness import SequenceSymbolSource
from smdc.single_level import (SsdcParams, encode_with_layout, rate_layout,
                               symmetric_layout)
from smdc.verify import (CodeUnderTest, ExactLogSum, VerifierBudget,
                         check_perfect_secrecy, check_prop2_inequality,
                         check_reconstruction, code_for_layout,
                         code_for_multilevel, conditional_entropy,
                         enumerate_joint, product_code, source_entropy,
                         verification_report)

GF3 = prime_field(3)

# x1 = k + s, x2 = k + 2s over GF(3), enumerated by hand.
HAND_TABLE = {
    (((0,),), ((0,), (0,))): 1,
    (((0,),), ((1,), (1,))): 1,
    (((0,),), ((2,), (2,))): 1,
    (((1,),), ((1,), (2,))): 1,
    (((1,),), ((2,), (0,))): 1,
    (((1,),), ((0,), (1,))): 1,
    (((2,),), ((2,), (1,))): 1,
    (((2,),), ((0,), (2,))): 1,
    (((2,),), ((1,), (0,))): 1,
}


def hand_code() -> CodeUnderTest:
    def encode_fn(sources, key):
        (s,) = sources[0]
        (k,) = key
        return (((k + s) % 3,), ((k + 2 * s) % 3,))

    def decode_fn(observed):
        if len(observed) < 2:
            return ()
        x1, x2 = observed[1][0], observed[2][0]
        s = (x2 - x1) % 3          # (x2 - x1) = s mod 3
        return ((s,),)

    return CodeUnderTest(q=3, length=2, wiretap=1, source_symbols=(1,),
                         key_symbols=1, encode_fn=encode_fn,
                         decode_fn=decode_fn,
                         expected_sources=lambda size: 1 if size >= 2 else 0)


def leaky_code() -> CodeUnderTest:
    # no key at all: every share is the message itself
    def encode_fn(sources, key):
        return (sources[0], sources[0])

    return CodeUnderTest(q=5, length=2, wiretap=1, source_symbols=(1,),
                         key_symbols=0, encode_fn=encode_fn,
                         decode_fn=lambda observed: (),
                         expected_sources=lambda size: 1 if size >= 2 else 0)


def test_enumerate_joint_matches_hand_table():
    dist = enumerate_joint(hand_code())
    assert dist.total == 9
    assert dict(dist.counts) == HAND_TABLE
    assert dist.q == 3 and dist.length == 2 and dist.wiretap == 1


def test_secrecy_holds_for_single_taps_and_breaks_for_pairs():
    dist = enumerate_joint(hand_code())
    assert check_perfect_secrecy(dist, (1,)).ok
    assert check_perfect_secrecy(dist, (2,)).ok
    rep = check_perfect_secrecy(dist, (1, 2))
    assert not rep.ok
    cell = rep.counterexample
    lhs = cell["count"] * cell["total"]
    rhs = cell["source_count"] * cell["observed_count"]
    assert lhs != rhs


def test_secrecy_counterexample_on_leaky_code():
    dist = enumerate_joint(leaky_code())
    rep = check_perfect_secrecy(dist, (1,))
    assert not rep.ok
    assert rep.counterexample is not None
    with pytest.raises(ParameterError):
        check_perfect_secrecy(dist, (0,))


def test_reconstruction_on_hand_code_and_failure_on_leaky():
    code = hand_code()
    dist = enumerate_joint(code)
    rep = check_reconstruction(code, dist, (1, 2))
    assert rep.ok and rep.expected_sources == 1
    broken = leaky_code()
    rep = check_reconstruction(broken, enumerate_joint(broken), (1, 2))
    assert not rep.ok
    assert rep.counterexample["decoded"] == ()


LOG3 = math.log2(3)


def test_entropies_on_hand_table():
    dist = enumerate_joint(hand_code())
    h_s = conditional_entropy(dist, ["S1"])
    assert abs(h_s.bits - LOG3) <= 1e-12 and h_s.float_agrees
    assert h_s.exact == ExactLogSum.of_log(3)
    assert abs(conditional_entropy(dist, ["X1"]).bits - LOG3) <= 1e-12
    # tapping one share tells nothing
    h_cond = conditional_entropy(dist, ["S1"], ["X1"])
    assert abs(h_cond.bits - LOG3) <= 1e-12 and h_cond.float_agrees
    # both shares determine the message
    assert conditional_entropy(dist, ["S1"], ["X1", "X2"]).bits == 0.0
    # the share pair is uniform over 9 values
    pair = conditional_entropy(dist, ["X1", "X2"])
    assert (pair.exact - ExactLogSum.of_log(3).scaled(Fraction(2))).sign() == 0
    assert source_entropy(dist, 1) == ExactLogSum.of_log(3)


def test_entropy_label_validation():
    dist = enumerate_joint(hand_code())
    with pytest.raises(ParameterError):
        conditional_entropy(dist, ["S2"])
    with pytest.raises(ParameterError):
        conditional_entropy(dist, ["X3"])
    with pytest.raises(ParameterError):
        conditional_entropy(dist, ["Z1"])


def test_exact_log_sum_arithmetic_and_sign():
    assert ExactLogSum.of_log(12).coeffs == ((2, Fraction(2)), (3, Fraction(1)))
    assert ExactLogSum.of_log(1) == ExactLogSum()
    assert ExactLogSum.of_log(6) - ExactLogSum.of_log(2) - ExactLogSum.of_log(3) == ExactLogSum()
    assert abs(ExactLogSum.of_log(8).to_float() - 3.0) <= 1e-15
    # log2(3) vs (3/2) log2(2): compare 3^2 against 2^3
    tight = ExactLogSum.of_log(3) - ExactLogSum.of_log(2).scaled(Fraction(3, 2))
    assert tight.sign() == 1
    assert (-tight).sign() == -1
    assert ExactLogSum().sign() == 0
    assert ExactLogSum.of_log(5).is_nonnegative()
    with pytest.raises(ParameterError):
        ExactLogSum.of_log(0)


def test_budget_refusal_happens_before_any_encoding():
    calls = []

    def encode_fn(sources, key):
        calls.append(1)
        return ((), ())

    big = CodeUnderTest(q=5, length=2, wiretap=1, source_symbols=(3,),
                        key_symbols=3, encode_fn=encode_fn,
                        decode_fn=lambda observed: (),
                        expected_sources=lambda size: 0)
    assert big.outcome_count == 5 ** 6
    with pytest.raises(BudgetExceededError):
        enumerate_joint(big, VerifierBudget(max_outcomes=1000))
    assert calls == []


def test_time_budget_interrupts_enumeration():
    big = CodeUnderTest(q=7, length=2, wiretap=1, source_symbols=(3,),
                        key_symbols=3,
                        encode_fn=lambda sources, key: ((), ()),
                        decode_fn=lambda observed: (),
                        expected_sources=lambda size: 0)
    with pytest.raises(BudgetExceededError):
        enumerate_joint(big, VerifierBudget(max_outcomes=7 ** 6,
                                            max_seconds=0.0))


# --- layout adapters ---------------------------------------------------------


def public_single_table(layout):
    params = layout.params
    q = params.field.order
    h = layout.message_symbols
    counts = {}
    for word in product(range(q), repeat=h + layout.key_symbols):
        bundle = encode_with_layout(layout, list(word[:h]),
                                    SequenceSymbolSource(word[h:]))
        shares = tuple(tuple(bundle.payloads[l])
                       for l in range(1, params.length + 1))
        outcome = ((word[:h],), shares)
        counts[outcome] = counts.get(outcome, 0) + 1
    return counts


def test_layout_adapter_reproduces_hand_table():
    layout = symmetric_layout(SsdcParams(GF3, 2, 1, 2), 1)
    code = code_for_layout(layout)
    dist = enumerate_joint(code)
    assert dict(dist.counts) == HAND_TABLE
    assert dict(dist.counts) == public_single_table(layout)


@pytest.mark.parametrize("params,h,rates", [
    (SsdcParams(GF5, 3, 1, 3), 2, None),
    (SsdcParams(GF5, 3, 1, 2), 1, (1, 2, 1)),
    (SsdcParams(GF5, 4, 1, 3), 2, (0, 1, 1, 1)),
])
def test_layout_adapter_matches_public_encoder(params, h, rates):
    if rates is None:
        layout = symmetric_layout(params, h)
    else:
        layout = rate_layout(params, h, [Fraction(r) for r in rates])
    code = code_for_layout(layout)
    dist = enumerate_joint(code)
    assert dict(dist.counts) == public_single_table(layout)
    assert dist.total == code.q ** (h + layout.key_symbols)


def test_layout_adapter_full_verification():
    layout = rate_layout(SsdcParams(GF5, 4, 1, 3), 2,
                         [Fraction(0), 1, 1, 1])
    code = code_for_layout(layout)
    dist = enumerate_joint(code)
    for tapped in range(1, 5):
        assert check_perfect_secrecy(dist, (tapped,)).ok
    for subset in combinations(range(1, 5), 3):
        assert check_reconstruction(code, dist, subset).ok
    assert check_reconstruction(code, dist, (1, 2, 3, 4)).ok
    # a full threshold-size tap set must see everything leak
    assert not check_perfect_secrecy(dist, (2, 3, 4)).ok


def public_multilevel_table(params, layout):
    q = params.field.order
    lengths = params.source_lengths
    total_src = sum(lengths)
    keys = sum(level.key_symbols for level in layout.levels)
    cuts = []
    at = 0
    for h in lengths:
        cuts.append((at, at + h))
        at += h
    counts = {}
    for word in product(range(q), repeat=total_src + keys):
        sources = [list(word[a:b]) for a, b in cuts]
        bundle = multilevel_encode(params, sources,
                                   SequenceSymbolSource(word[total_src:]))
        shares = tuple(bundle.payloads[l] for l in range(1, params.length + 1))
        outcome = (tuple(word[a:b] for a, b in cuts), shares)
        counts[outcome] = counts.get(outcome, 0) + 1
    return counts


def test_multilevel_adapter_matches_public_encoder():
    params = SmdcParams(GF5, 3, 1, (1, 1))
    layout = multilevel_plan(params)
    code = code_for_multilevel(layout)
    dist = enumerate_joint(code)
    assert dict(dist.counts) == public_multilevel_table(params, layout)
    assert dist.total == 5 ** 4
    for l in (1, 2, 3):
        assert check_perfect_secrecy(dist, (l,)).ok
    # pairs decode the first source only, the full set decodes both
    for subset in combinations((1, 2, 3), 2):
        rep = check_reconstruction(code, dist, subset)
        assert rep.ok and rep.expected_sources == 1
    rep = check_reconstruction(code, dist, (1, 2, 3))
    assert rep.ok and rep.expected_sources == 2


def test_prop2_holds_with_zero_slack_on_mds_levels():
    params = SmdcParams(GF5, 3, 1, (1, 1))
    code = code_for_multilevel(multilevel_plan(params))
    dist = enumerate_joint(code)
    for a in (1, 2, 3):
        rest = [l for l in (1, 2, 3) if l != a]
        for d in rest:
            rep = check_prop2_inequality(dist, 1, (a,), (d,))
            assert rep.ok and rep.slack.sign() == 0
            assert abs(rep.slack_bits) <= 1e-12
        rep = check_prop2_inequality(dist, 2, (a,), tuple(rest))
        assert rep.ok and rep.slack.sign() == 0


def test_prop2_catches_a_leaky_code():
    dist = enumerate_joint(leaky_code())
    rep = check_prop2_inequality(dist, 1, (1,), (2,))
    assert not rep.ok
    assert rep.slack.sign() == -1
    assert abs(rep.slack_bits + math.log2(5)) <= 1e-12


def test_prop2_argument_validation():
    dist = enumerate_joint(code_for_multilevel(
        multilevel_plan(SmdcParams(GF5, 3, 1, (1, 1)))))
    with pytest.raises(ParameterError):
        check_prop2_inequality(dist, 1, (1, 2), (3,))     # tap set too big
    with pytest.raises(ParameterError):
        check_prop2_inequality(dist, 1, (1,), (2, 3))     # |D| != level
    with pytest.raises(ParameterError):
        check_prop2_inequality(dist, 2, (1,), (1, 2))     # overlap
    with pytest.raises(ParameterError):
        check_prop2_inequality(dist, 3, (1,), (2, 3))     # no third source
    with pytest.raises(ParameterError):
        check_prop2_inequality(dist, 1, (1,), (9,))       # unknown encoder


def test_product_code_keeps_secrecy_across_uses():
    base = code_for_layout(symmetric_layout(SsdcParams(GF3, 2, 1, 2), 1))
    twice = product_code(base, 2)
    assert twice.source_symbols == (1, 1)
    assert twice.key_symbols == 2
    dist = enumerate_joint(twice)
    assert dist.total == 81
    assert check_perfect_secrecy(dist, (1,)).ok
    assert check_perfect_secrecy(dist, (2,)).ok
    rep = check_reconstruction(twice, dist, (1, 2))
    assert rep.ok and rep.expected_sources == 2
    with pytest.raises(ParameterError):
        product_code(base, 0)


def test_verification_report_shape_and_verdict():
    layout = symmetric_layout(SsdcParams(GF5, 3, 1, 2), 1)
    report = verification_report(code_for_layout(layout))
    assert report["ok"]
    assert report["outcomes"] == 25
    assert set(report["secrecy"]) == {"1", "2", "3"}
    assert set(report["reconstruction"]) == {"1,2", "1,3", "2,3", "1,2,3"}
    assert all(v["ok"] and v["counterexample"] is None
               for v in report["secrecy"].values())
    assert all(v["ok"] for v in report["reconstruction"].values())
    # perfect secrecy: conditioning on any tap keeps the full entropy
    h = report["source_entropy_bits"]
    assert h == pytest.approx(math.log2(5))
    for v in report["secrecy"].values():
        assert v["conditional_entropy_bits"] == pytest.approx(h)


def test_verification_report_multilevel():
    layout = multilevel_plan(SmdcParams(GF5, 3, 1, (1, 1)))
    report = verification_report(code_for_multilevel(layout))
    assert report["ok"]
    assert report["source_symbols"] == [1, 1]
    assert set(report["reconstruction"]) == {"1,2", "1,3", "2,3", "1,2,3"}


def test_verification_report_flags_a_leak():
    report = verification_report(leaky_code())
    assert not report["ok"]
    assert not report["secrecy"]["1"]["ok"]
    assert not report["secrecy"]["2"]["ok"]
    assert report["secrecy"]["1"]["counterexample"] is not None
    # the leak shows up as lost entropy
    assert (report["secrecy"]["1"]["conditional_entropy_bits"]
            < report["source_entropy_bits"])

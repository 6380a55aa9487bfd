#!/usr/bin/env python3
"""Brute-force audit of a small code: enumerate every (message, key)
pair, measure the exact joint distribution, and confirm secrecy and
reconstruction by counting rather than by trusting the algebra.

Run: python3 demos/exhaustive_check.py
"""

from fractions import Fraction

from smdc.fields import GF5
from smdc.multilevel import SmdcParams
from smdc.multilevel import plan as multilevel_plan
from smdc.single_level import SsdcParams, symmetric_layout
from smdc.verify import (CodeUnderTest, check_perfect_secrecy,
                         check_prop2_inequality, check_reconstruction,
                         conditional_entropy, code_for_layout,
                         code_for_multilevel, enumerate_joint,
                         source_entropy, verification_report)

passed = 0
failed = 0


def check(name, condition, detail=""):
    global passed, failed
    if condition:
        print(f"  ✅ {name}")
        passed += 1
    else:
        print(f"  ❌ {name}: {detail}")
        failed += 1


print("=" * 64)
print("STAGE 1: enumerate a (3, 1, 2) code over GF(5), 1 symbol")
print("=" * 64)

layout = symmetric_layout(SsdcParams(GF5, 3, 1, 2), 1)
code = code_for_layout(layout)
dist = enumerate_joint(code)
print(f"\noutcomes enumerated: {dist.total} "
      f"(= 5^{sum(code.source_symbols) + code.key_symbols})")
check("25 equally likely (message, key) pairs", dist.total == 25)

for tap in (1, 2, 3):
    rep = check_perfect_secrecy(dist, [tap])
    check(f"tap on encoder {tap} is independent of the message", rep.ok)

for pair in ((1, 2), (1, 3), (2, 3)):
    rep = check_reconstruction(code, dist, pair)
    check(f"encoders {pair} decode the message", rep.ok)

h_s = conditional_entropy(dist, ["S1"])
h_s_given_share = conditional_entropy(dist, ["S1"], ["X1"])
h_s_given_pair = conditional_entropy(dist, ["S1"], ["X1", "X2"])
print(f"\nH(S1)         = {h_s.bits:.6f} bits")
print(f"H(S1 | X1)    = {h_s_given_share.bits:.6f} bits")
print(f"H(S1 | X1 X2) = {h_s_given_pair.bits:.6f} bits")
check("one share leaves the message entropy untouched",
      (h_s.exact - h_s_given_share.exact).sign() == 0)
check("two shares leave none", h_s_given_pair.exact.sign() == 0
      and h_s_given_pair.bits == 0.0)
check("exact and floating accumulations agree",
      h_s.float_agrees and h_s_given_share.float_agrees)

print()
print("=" * 64)
print("STAGE 2: a deliberately broken code fails the same audit")
print("=" * 64)


def leaky_encode(sources, key):
    # encoder 1 stores the message in the clear
    (s,) = sources[0]
    (k,) = key
    return ((s,), ((s + k) % 3,), (k,))


def leaky_decode(observed):
    if 1 in observed:
        return (tuple(observed[1]),)
    if 2 in observed and 3 in observed:
        return (((observed[2][0] - observed[3][0]) % 3,),)
    return ()


leaky = CodeUnderTest(3, 3, 1, (1,), 1, leaky_encode, leaky_decode,
                      lambda n: 1 if n >= 2 else 0)
ldist = enumerate_joint(leaky)
rep = check_perfect_secrecy(ldist, [1])
check("audit notices the leak on encoder 1", not rep.ok)
if rep.counterexample:
    ce = rep.counterexample
    print(f"  counterexample: message {ce['sources']} seen with "
          f"observation {ce['observed']} in {ce['count']}/{ce['total']} "
          f"outcomes, independence predicts "
          f"{ce['source_count'] * ce['observed_count']}/{ce['total']}^2")
check("the untouched tap on encoder 3 still passes",
      check_perfect_secrecy(ldist, [3]).ok)

print()
print("=" * 64)
print("STAGE 3: layered code and the chain inequality")
print("=" * 64)

mp = SmdcParams(GF5, 3, 1, (1, 1))
mcode = code_for_multilevel(multilevel_plan(mp))
mdist = enumerate_joint(mcode)
print(f"\noutcomes enumerated: {mdist.total}")

check("single tap learns nothing about either source",
      all(check_perfect_secrecy(mdist, [l]).ok for l in (1, 2, 3)))
check("2 encoders deliver source 1, all 3 deliver both",
      check_reconstruction(mcode, mdist, (1, 2), expected=1).ok
      and check_reconstruction(mcode, mdist, (1, 2, 3), expected=2).ok)

# H(X_D | X_A) >= H(S_1) + H(X_D | S_1, X_A) with one tapped, one checked
p2 = check_prop2_inequality(mdist, level=1, tapped=(3,), checked=(1,))
print(f"\nchain step slack at level 1: {p2.slack_bits:+.6f} bits")
check("slack is exactly zero on this code", p2.ok and p2.slack.sign() == 0)
check("source entropy comes out as log2(5)",
      abs(source_entropy(mdist, 1).to_float() - 2.321928094887362) < 1e-12)

print()
print("=" * 64)
print("STAGE 4: the whole audit in one call")
print("=" * 64)

layout5 = symmetric_layout(SsdcParams(GF5, 3, 1, 2), 1)
report = verification_report(code_for_layout(layout5))
print(f"\nreport: q={report['q']} outcomes={report['outcomes']} "
      f"ok={report['ok']}")
check("report confirms every tap and every subset", report["ok"])
check("report covers 3 tap sets and 4 decodable subsets",
      len(report["secrecy"]) == 3 and len(report["reconstruction"]) == 4,
      f"{sorted(report['secrecy'])} / {sorted(report['reconstruction'])}")

print()
print("=" * 64)
print(f"DONE: {passed}/{passed + failed} checks passed")
raise SystemExit(0 if failed == 0 else 1)

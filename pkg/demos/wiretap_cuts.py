#!/usr/bin/env python3
"""Model the encoders as a capacitated network and read off what the
cut structure says: the weakest user cut caps what can be delivered,
the strongest adversary cut is lost to key material, and the gap is
the secrecy rate.

Run: python3 demos/wiretap_cuts.py
"""

from fractions import Fraction

from smdc.wiretap import (WiretapNetwork, achievable_secrecy_rate,
                          admissible_by_separation, export_edge_list,
                          max_flow, mincut_to_user, mincut_to_wiretap)

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


F = Fraction

print("=" * 64)
print("STAGE 1: symmetric rates on (L, N, m) = (4, 1, 3)")
print("=" * 64)

net = WiretapNetwork(length=4, wiretap=1, threshold=3, rates=(F(1, 2),) * 4)
print("\nedge list (source -> encoders -> every 3-user):")
print(export_edge_list(net))

user_cuts = {u: mincut_to_user(net, u) for u in net.users()}
tap_cuts = {a: mincut_to_wiretap(net, a) for a in net.wiretap_sets()}
print(f"\nuser cuts:      {[str(v) for v in sorted(set(user_cuts.values()))]}")
print(f"adversary cuts: {[str(v) for v in sorted(set(tap_cuts.values()))]}")

check("every user cut equals 3 * 1/2", set(user_cuts.values()) == {F(3, 2)})
check("every single tap cut equals 1/2", set(tap_cuts.values()) == {F(1, 2)})
check("secrecy rate = 3/2 - 1/2 = 1", achievable_secrecy_rate(net) == 1)
check("cut arithmetic agrees with max flow",
      all(mincut_to_user(net, u, via_flow=True) == c
          for u, c in user_cuts.items())
      and all(mincut_to_wiretap(net, a, via_flow=True) == c
              for a, c in tap_cuts.items()))
check("a 1-bit source rides with perfect secrecy",
      admissible_by_separation(net, 1))
check("a heavier source does not",
      not admissible_by_separation(net, F(11, 10)))

print()
print("=" * 64)
print("STAGE 2: lopsided rates starve one user")
print("=" * 64)

lop = WiretapNetwork(4, 1, 3, rates=(F(1, 4), F(1, 4), F(3, 4), F(3, 4)))
lop_users = {u: mincut_to_user(lop, u) for u in lop.users()}
lop_taps = {a: mincut_to_wiretap(lop, a) for a in lop.wiretap_sets()}
worst = min(lop_users, key=lop_users.get)
best_tap = max(lop_taps, key=lop_taps.get)
print(f"\nweakest user reads encoders {worst}, cut {lop_users[worst]}")
print(f"strongest adversary taps encoder {best_tap}, cut {lop_taps[best_tap]}")

check("weakest cut is 1/4 + 1/4 + 3/4", lop_users[worst] == F(5, 4))
check("strongest tap is 3/4", lop_taps[best_tap] == F(3, 4))
check("secrecy rate drops to 1/2", achievable_secrecy_rate(lop) == F(1, 2))

print()
print("=" * 64)
print("STAGE 3: the flow solver on a hand-made graph")
print("=" * 64)

# classic diamond with a bottleneck in the middle
graph = {
    "s": {"a": F(3), "b": F(2)},
    "a": {"b": F(1), "t": F(2)},
    "b": {"t": F(2)},
    "t": {},
}
flow = max_flow(graph, "s", "t")
print(f"\nmax s-t flow through the diamond: {flow}")
check("flow saturates both sink edges", flow == 4)

graph["a"]["t"] = None
check("unbounded edge lifts the flow to the source cut",
      max_flow(graph, "s", "t") == 5)

print()
print("=" * 64)
print(f"DONE: {passed}/{passed + failed} checks passed")
raise SystemExit(0 if failed == 0 else 1)

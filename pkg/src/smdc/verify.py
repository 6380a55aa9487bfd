"""Exhaustive verification of small code instances.

The verifier enumerates every (source, key) combination of a code,
builds the exact joint distribution of sources and shares as integer
counts over a common denominator, and then decides statements about it
with no floating point in the decision path:

* perfect secrecy against a tap subset is exact factorization of the
  joint distribution of (sources, tapped shares);
* reconstruction is decode equality on every outcome;
* entropy inequalities are decided by comparing products of prime
  powers, since every entropy here is a rational combination of logs
  of integers.

Floats appear only as reporting conveniences, each carrying a flag that
the float agrees with the exact value to 1e-12.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import lcm, log2
from typing import Callable, Mapping, Sequence

from .errors import BudgetExceededError, ParameterError
from .fields import solve_linear_int
from .multilevel import SmdcLayout
from .single_level import BundleLayout

# --- exact log-combination values ---------------------------------------------


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise ParameterError("can only factorize positive integers")
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True)
class ExactLogSum:
    """A value sum_p c_p * log2(p) over primes p with Fraction weights.

    Closed under the arithmetic needed for entropies of rational
    distributions, and its sign is decidable exactly.
    """

    coeffs: tuple[tuple[int, Fraction], ...] = ()

    @staticmethod
    def of_log(n: int, weight: Fraction = Fraction(1)) -> "ExactLogSum":
        acc: dict[int, Fraction] = {}
        for p, e in _factorize(n):
            acc[p] = acc.get(p, Fraction(0)) + weight * e
        return ExactLogSum._from_map(acc)

    @staticmethod
    def _from_map(acc: Mapping[int, Fraction]) -> "ExactLogSum":
        return ExactLogSum(tuple(sorted((p, c) for p, c in acc.items() if c)))

    def __add__(self, other: "ExactLogSum") -> "ExactLogSum":
        acc = dict(self.coeffs)
        for p, c in other.coeffs:
            acc[p] = acc.get(p, Fraction(0)) + c
        return ExactLogSum._from_map(acc)

    def __sub__(self, other: "ExactLogSum") -> "ExactLogSum":
        return self + (-other)

    def __neg__(self) -> "ExactLogSum":
        return ExactLogSum(tuple((p, -c) for p, c in self.coeffs))

    def scaled(self, w: Fraction) -> "ExactLogSum":
        if w == 0:
            return ExactLogSum()
        return ExactLogSum(tuple((p, c * w) for p, c in self.coeffs))

    def to_float(self) -> float:
        return sum(float(c) * log2(p) for p, c in self.coeffs)

    def sign(self) -> int:
        """-1, 0 or +1, decided on big integers."""
        if not self.coeffs:
            return 0
        denom = lcm(*(c.denominator for _, c in self.coeffs))
        up, down = 1, 1
        for p, c in self.coeffs:
            e = int(c * denom)
            if e > 0:
                up *= p ** e
            elif e < 0:
                down *= p ** (-e)
        if up == down:
            return 0
        return 1 if up > down else -1

    def is_nonnegative(self) -> bool:
        return self.sign() >= 0


# --- joint distributions --------------------------------------------------------


@dataclass(frozen=True)
class VerifierBudget:
    max_outcomes: int = 250_000
    max_seconds: float | None = None


@dataclass(frozen=True)
class CodeUnderTest:
    """Deterministic code the verifier can enumerate.

    encode_fn(sources, key) takes per-source symbol tuples and a flat
    key tuple and returns one symbol tuple per encoder.  decode_fn takes
    {encoder: symbols} and returns the decodable leading sources.
    expected_sources says how many leading sources a subset of a given
    size must deliver.
    """

    q: int
    length: int
    wiretap: int
    source_symbols: tuple[int, ...]
    key_symbols: int
    encode_fn: Callable[[tuple, tuple], tuple]
    decode_fn: Callable[[dict], tuple]
    expected_sources: Callable[[int], int]

    @property
    def outcome_count(self) -> int:
        return self.q ** (sum(self.source_symbols) + self.key_symbols)


@dataclass(frozen=True)
class JointDistribution:
    """Integer counts over outcomes (sources, shares); every (source,
    key) pair contributes one count, so total = q ** (symbols + keys)."""

    q: int
    length: int
    wiretap: int
    source_symbols: tuple[int, ...]
    counts: Mapping[tuple, int]
    total: int


def enumerate_joint(code: CodeUnderTest,
                    budget: VerifierBudget = VerifierBudget()) -> JointDistribution:
    n_outcomes = code.outcome_count
    if n_outcomes > budget.max_outcomes:
        raise BudgetExceededError(
            f"{n_outcomes} outcomes exceed the budget of "
            f"{budget.max_outcomes}; refusing to enumerate")
    deadline = None
    if budget.max_seconds is not None:
        deadline = time.monotonic() + budget.max_seconds
    src_total = sum(code.source_symbols)
    cuts = []
    at = 0
    for h in code.source_symbols:
        cuts.append((at, at + h))
        at += h
    counts: dict[tuple, int] = {}
    tick = 0
    for word in product(range(code.q), repeat=src_total + code.key_symbols):
        sources = tuple(word[a:b] for a, b in cuts)
        key = word[src_total:]
        shares = code.encode_fn(sources, key)
        outcome = (sources, shares)
        counts[outcome] = counts.get(outcome, 0) + 1
        tick += 1
        if deadline is not None and tick % 4096 == 0 and time.monotonic() > deadline:
            raise BudgetExceededError("verification time budget exhausted")
    return JointDistribution(code.q, code.length, code.wiretap,
                             code.source_symbols, counts, n_outcomes)


# --- secrecy and reconstruction ----------------------------------------------------


@dataclass(frozen=True)
class SecrecyReport:
    tapped: tuple[int, ...]
    ok: bool
    counterexample: dict | None = None


def check_perfect_secrecy(dist: JointDistribution, tapped) -> SecrecyReport:
    """Exact independence of (all sources) from the tapped share tuple.

    Checks count(s, o) * total == count(s) * count(o) for every cell of
    the product support, zero cells included.
    """
    tapped = tuple(sorted(set(int(l) for l in tapped)))
    for l in tapped:
        if not 1 <= l <= dist.length:
            raise ParameterError(f"encoder {l} out of range")
    joint: dict[tuple, int] = {}
    m_src: dict[tuple, int] = {}
    m_obs: dict[tuple, int] = {}
    for (sources, shares), c in dist.counts.items():
        obs = tuple(shares[l - 1] for l in tapped)
        cell = (sources, obs)
        joint[cell] = joint.get(cell, 0) + c
        m_src[sources] = m_src.get(sources, 0) + c
        m_obs[obs] = m_obs.get(obs, 0) + c
    for sources in m_src:
        for obs in m_obs:
            lhs = joint.get((sources, obs), 0) * dist.total
            rhs = m_src[sources] * m_obs[obs]
            if lhs != rhs:
                return SecrecyReport(tapped, False, {
                    "sources": sources,
                    "observed": obs,
                    "count": joint.get((sources, obs), 0),
                    "total": dist.total,
                    "source_count": m_src[sources],
                    "observed_count": m_obs[obs],
                })
    return SecrecyReport(tapped, True)


@dataclass(frozen=True)
class ReconstructionReport:
    subset: tuple[int, ...]
    expected_sources: int
    ok: bool
    counterexample: dict | None = None


def check_reconstruction(code: CodeUnderTest, dist: JointDistribution,
                         subset, expected: int | None = None) -> ReconstructionReport:
    subset = tuple(sorted(set(int(l) for l in subset)))
    if expected is None:
        expected = code.expected_sources(len(subset))
    for (sources, shares), _ in dist.counts.items():
        observed = {l: shares[l - 1] for l in subset}
        got = code.decode_fn(observed)
        if len(got) < expected or tuple(got[:expected]) != sources[:expected]:
            return ReconstructionReport(subset, expected, False, {
                "sources": sources, "decoded": tuple(got)})
    return ReconstructionReport(subset, expected, True)


# --- entropies ------------------------------------------------------------------


def source_label(k: int) -> str:
    return f"S{k}"


def share_label(l: int) -> str:
    return f"X{l}"


def _component(dist: JointDistribution, outcome, label: str):
    sources, shares = outcome
    kind, idx = label[0], int(label[1:])
    if kind == "S":
        if not 1 <= idx <= len(dist.source_symbols):
            raise ParameterError(f"no source {label}")
        return sources[idx - 1]
    if kind == "X":
        if not 1 <= idx <= dist.length:
            raise ParameterError(f"no encoder {label}")
        return shares[idx - 1]
    raise ParameterError(f"unknown variable {label!r}")


def _grouped(dist: JointDistribution, targets: Sequence[str],
             given: Sequence[str]) -> dict[tuple, dict[tuple, int]]:
    groups: dict[tuple, dict[tuple, int]] = {}
    for outcome, c in dist.counts.items():
        g = tuple(_component(dist, outcome, lab) for lab in given)
        t = tuple(_component(dist, outcome, lab) for lab in targets)
        bucket = groups.setdefault(g, {})
        bucket[t] = bucket.get(t, 0) + c
    return groups


@dataclass(frozen=True)
class EntropyResult:
    bits: float
    exact: ExactLogSum
    float_agrees: bool


def conditional_entropy(dist: JointDistribution, targets: Sequence[str],
                        given: Sequence[str] = ()) -> EntropyResult:
    """H(targets | given) in bits: a float plus the exact value.

    float_agrees records whether the independently accumulated float
    matches the exact form within 1e-12.
    """
    targets = list(targets)
    given = list(given)
    groups = _grouped(dist, targets, given)
    exact_acc: dict[int, Fraction] = {}
    bits = 0.0
    for g, bucket in groups.items():
        c_g = sum(bucket.values())
        for t, c in bucket.items():
            w = Fraction(c, dist.total)
            # contribution w * log2(c_g / c)
            for p, e in _factorize(c_g):
                exact_acc[p] = exact_acc.get(p, Fraction(0)) + w * e
            for p, e in _factorize(c):
                exact_acc[p] = exact_acc.get(p, Fraction(0)) - w * e
            bits += float(w) * log2(c_g / c)
    exact = ExactLogSum._from_map(exact_acc)
    return EntropyResult(bits, exact, abs(bits - exact.to_float()) <= 1e-12)


def source_entropy(dist: JointDistribution, k: int) -> ExactLogSum:
    """H(S_k): exact, from the marginal (uniform by construction)."""
    return conditional_entropy(dist, [source_label(k)]).exact


@dataclass(frozen=True)
class Prop2Report:
    level: int
    tapped: tuple[int, ...]
    checked: tuple[int, ...]
    slack: ExactLogSum
    slack_bits: float
    ok: bool


def check_prop2_inequality(dist: JointDistribution, level: int,
                           tapped, checked) -> Prop2Report:
    """Exact test of the chain step used by the converse argument:

        H(X_D | S_<level, X_A) >= H(S_level) + H(X_D | S_<=level, X_A)

    with A the tapped set (size N) and D disjoint from A (size `level`).
    """
    tapped = tuple(sorted(set(int(l) for l in tapped)))
    checked = tuple(sorted(set(int(l) for l in checked)))
    if len(tapped) != dist.wiretap:
        raise ParameterError(
            f"tapped set must have exactly {dist.wiretap} encoders")
    if not 1 <= level <= len(dist.source_symbols):
        raise ParameterError(f"no source level {level}")
    if len(checked) != level:
        raise ParameterError(
            f"checked set must have exactly {level} encoders for level {level}")
    if set(tapped) & set(checked):
        raise ParameterError("tapped and checked sets must be disjoint")
    for l in tapped + checked:
        if not 1 <= l <= dist.length:
            raise ParameterError(f"encoder {l} out of range")

    d_labels = [share_label(l) for l in checked]
    a_labels = [share_label(l) for l in tapped]
    below = [source_label(k) for k in range(1, level)]
    upto = below + [source_label(level)]
    lhs = conditional_entropy(dist, d_labels, below + a_labels)
    rhs_tail = conditional_entropy(dist, d_labels, upto + a_labels)
    slack = lhs.exact - source_entropy(dist, level) - rhs_tail.exact
    return Prop2Report(level, tapped, checked, slack, slack.to_float(),
                       slack.is_nonnegative())


# --- code adapters -------------------------------------------------------------


def _compile_runs(layout: BundleLayout):
    """Flatten a layout into per-run tables for tight enumeration loops."""
    params = layout.params
    f = params.field
    runs = []
    for run in layout.runs:
        spec = params.run_spec(run.active, run.size)
        from .coset import generator_matrix  # local to avoid cycle at import

        gen = generator_matrix(spec)
        runs.append((run, spec, gen))
    return params, f, runs


def code_for_layout(layout: BundleLayout) -> CodeUnderTest:
    """Adapter for a single-source layout, with caching decoders."""
    params, f, runs = _compile_runs(layout)
    add, mul = f.add, f.mul
    wiretap = params.wiretap
    padded = layout.padded_symbols

    def encode_fn(sources: tuple, key: tuple) -> tuple:
        msg = sources[0] + (0,) * (padded - len(sources[0]))
        payloads = [[] for _ in range(params.length)]
        mo = 0
        ko = 0
        for run, spec, gen in runs:
            for _ in range(run.count):
                x = key[ko:ko + wiretap] + msg[mo:mo + run.size]
                ko += wiretap
                mo += run.size
                for pos, l in enumerate(run.active):
                    acc = 0
                    for c, v in zip(gen[pos], x):
                        acc = add(acc, mul(c, v))
                    payloads[l - 1].append(acc)
        return tuple(tuple(p) for p in payloads)

    decoders: dict[tuple[int, ...], list] = {}

    def _decoder_tables(subset: tuple[int, ...]):
        tables = []
        for run, spec, gen in runs:
            avail = [l for l in run.active if l in subset]
            need = wiretap + run.size
            if len(avail) < need:
                raise ParameterError(
                    f"subset {subset} cannot decode a run over {run.active}")
            use = avail[:need]
            rows = [list(gen[run.active.index(l)]) for l in use]
            inv_cols = []
            for j in range(need):
                e = [0] * need
                e[j] = 1
                inv_cols.append(solve_linear_int(f, rows, e))
            inv = [[inv_cols[j][i] for j in range(need)] for i in range(need)]
            tables.append((run, use, inv))
        return tables

    def decode_fn(observed: dict) -> tuple:
        subset = tuple(sorted(observed))
        if len(subset) < params.threshold:
            return ()
        if subset not in decoders:
            decoders[subset] = _decoder_tables(subset)
        offsets = {l: 0 for l in subset}
        out = []
        for run, use, inv in decoders[subset]:
            for _ in range(run.count):
                vals = [observed[l][offsets[l]] for l in use]
                x = []
                for row in inv:
                    acc = 0
                    for c, v in zip(row, vals):
                        acc = add(acc, mul(c, v))
                    x.append(acc)
                out.extend(x[wiretap:])
                for l in run.active:
                    if l in offsets:
                        offsets[l] += 1
        return (tuple(out[:layout.message_symbols]),)

    return CodeUnderTest(
        q=f.order, length=params.length, wiretap=wiretap,
        source_symbols=(layout.message_symbols,),
        key_symbols=layout.key_symbols,
        encode_fn=encode_fn, decode_fn=decode_fn,
        expected_sources=lambda size: 1 if size >= params.threshold else 0)


def code_for_multilevel(layout: SmdcLayout) -> CodeUnderTest:
    params = layout.params
    level_codes = [code_for_layout(level) for level in layout.levels]
    key_cuts = []
    at = 0
    for level in layout.levels:
        key_cuts.append((at, at + level.key_symbols))
        at += level.key_symbols

    def encode_fn(sources: tuple, key: tuple) -> tuple:
        payloads = [[] for _ in range(params.length)]
        for code, (a, b), src in zip(level_codes, key_cuts, sources):
            shares = code.encode_fn((src,), key[a:b])
            for l in range(params.length):
                payloads[l].append(shares[l])
        return tuple(tuple(p) for p in payloads)

    def decode_fn(observed: dict) -> tuple:
        depth = min(len(observed) - params.wiretap, params.source_count)
        out = []
        for k in range(depth):
            level_obs = {l: shares[k] for l, shares in observed.items()}
            got = level_codes[k].decode_fn(level_obs)
            out.append(got[0])
        return tuple(out)

    return CodeUnderTest(
        q=params.field.order, length=params.length, wiretap=params.wiretap,
        source_symbols=params.source_lengths,
        key_symbols=at,
        encode_fn=encode_fn, decode_fn=decode_fn,
        expected_sources=lambda size: max(
            0, min(size - params.wiretap, params.source_count)))


def product_code(code: CodeUnderTest, copies: int) -> CodeUnderTest:
    """Several independent uses of one code, keys drawn separately.

    Shares of each encoder are the concatenation across uses; sources
    are repeated per use.  Used to confirm that secrecy composes.
    """
    if copies < 1:
        raise ParameterError("need at least one copy")
    n_src = len(code.source_symbols)
    per_key = code.key_symbols

    def encode_fn(sources: tuple, key: tuple) -> tuple:
        payloads = [[] for _ in range(code.length)]
        for i in range(copies):
            shares = code.encode_fn(
                sources[i * n_src:(i + 1) * n_src],
                key[i * per_key:(i + 1) * per_key])
            for l in range(code.length):
                payloads[l].append(shares[l])
        return tuple(tuple(p) for p in payloads)

    def decode_fn(observed: dict) -> tuple:
        out = []
        done = True
        for i in range(copies):
            got = code.decode_fn({l: sh[i] for l, sh in observed.items()})
            if len(got) != n_src:
                done = False
                break
            out.extend(got)
        return tuple(out) if done else ()

    def expected(size: int) -> int:
        per = code.expected_sources(size)
        return copies * n_src if per == n_src else 0

    return CodeUnderTest(
        q=code.q, length=code.length, wiretap=code.wiretap,
        source_symbols=code.source_symbols * copies,
        key_symbols=per_key * copies,
        encode_fn=encode_fn, decode_fn=decode_fn,
        expected_sources=expected)


# --- whole-code reports -----------------------------------------------------------


def verification_report(code: CodeUnderTest,
                        budget: VerifierBudget = VerifierBudget()) -> dict:
    """Enumerate the code once and check secrecy for every tap set up to
    the wiretap size, and reconstruction for every usable subset.

    Each entry carries the verdict, a counterexample when one exists,
    and the conditional source entropy in bits for tap sets.
    """
    dist = enumerate_joint(code, budget)
    sources = [source_label(k)
               for k in range(1, len(code.source_symbols) + 1)]
    report: dict = {
        "q": code.q,
        "length": code.length,
        "wiretap": code.wiretap,
        "source_symbols": list(code.source_symbols),
        "key_symbols": code.key_symbols,
        "outcomes": dist.total,
        "source_entropy_bits": conditional_entropy(dist, sources).bits,
        "secrecy": {},
        "reconstruction": {},
    }
    ok = True
    encoders = range(1, code.length + 1)
    for size in range(1, code.wiretap + 1):
        for tapped in combinations(encoders, size):
            rep = check_perfect_secrecy(dist, tapped)
            given = [share_label(l) for l in tapped]
            report["secrecy"][",".join(map(str, tapped))] = {
                "ok": rep.ok,
                "conditional_entropy_bits":
                    conditional_entropy(dist, sources, given).bits,
                "counterexample": rep.counterexample,
            }
            ok = ok and rep.ok
    for size in range(code.wiretap + 1, code.length + 1):
        expected = code.expected_sources(size)
        if expected < 1:
            continue
        for subset in combinations(encoders, size):
            rep = check_reconstruction(code, dist, subset, expected)
            report["reconstruction"][",".join(map(str, subset))] = {
                "ok": rep.ok,
                "expected_sources": expected,
                "counterexample": rep.counterexample,
            }
            ok = ok and rep.ok
    report["ok"] = ok
    return report

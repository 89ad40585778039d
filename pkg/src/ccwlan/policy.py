"""Policy enumeration over activation patterns and the induced rate vectors.

A policy pairs an activation pattern with one feasible-set choice per active
helper; its rate vector gives every chosen user 1/n chunks per codeword slot,
where n is that helper's codeword count. Full mode enumerates every choice;
restricted mode keeps only maximum-size feasible sets (one user from each
nonempty profile class), which bounds the per-pattern policy count by the
product of class sizes.
"""

import csv
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cache import profile_partition
from .codebook import FeasibleSet, codeword_count, enumerate_feasible_sets
from .topology import ActivationPattern


class BudgetExceeded(RuntimeError):
    """Total policy count passed the enumeration budget."""

    def __init__(self, total, budget):
        self.total = total
        self.budget = budget
        super().__init__(f"enumeration needs {total} policies, budget is {budget}")


@dataclass(frozen=True)
class Policy:
    """Activation pattern plus one feasible set per active helper."""

    pattern: ActivationPattern
    choice: tuple  # ((helper, FeasibleSet), ...) sorted by helper

    def sort_key(self):
        return (
            self.pattern.bits,
            tuple((h, tuple(sorted(fs.users))) for h, fs in self.choice),
        )

    def choice_map(self):
        return dict(self.choice)


@dataclass(frozen=True)
class RateVector:
    """Per-user delivery rates as exact rationals; position k-1 is user k."""

    rates: tuple

    def __post_init__(self):
        object.__setattr__(self, "rates", tuple(Fraction(r) for r in self.rates))

    def as_floats(self):
        return [float(r) for r in self.rates]

    def is_zero(self):
        return all(r == 0 for r in self.rates)


def enumerate_patterns(H):
    """All 2^H activation patterns in ascending bit-tuple order."""
    if H < 1:
        raise ValueError("H must be >= 1")
    return [ActivationPattern(bits) for bits in product((0, 1), repeat=H)]


def policy_count(pattern, partitions):
    """Exact number of policies for one pattern: the product over active
    helpers of (prod_l (|class_l| + 1) - 1). Zero if some active helper
    reaches nobody; one (the idle policy) for the all-off pattern."""
    total = 1
    for i in pattern.active_helpers():
        classes = partitions[i]
        factor = 1
        for l in classes:
            factor *= len(classes[l]) + 1
        total *= factor - 1
    return total

def policy_count_restricted(pattern, partitions):
    """Upper bound on restricted-mode policies: product over active helpers
    of prod_l max(|class_l|, 1)."""
    total = 1
    for i in pattern.active_helpers():
        classes = partitions[i]
        for l in classes:
            total *= max(len(classes[l]), 1)
    return total


def rate_vector(policy, params, K):
    """Rates induced by a policy: 1/n(V_i) for each user in helper i's chosen
    feasible set, zero elsewhere."""
    rates = [Fraction(0)] * K
    for _, fs in policy.choice:
        if not fs.users:
            continue
        r = Fraction(1, codeword_count(params.L, params.t, len(fs.users)))
        for k in fs.users:
            rates[k - 1] = r
    return RateVector(tuple(rates))


def _pattern_partitions(topology, pattern, assignment, L):
    return {
        i: profile_partition(topology.reachable_users(pattern, i), assignment, L)[0]
        for i in pattern.active_helpers()
    }


def _restricted_options(helper, classes):
    """Maximum-size feasible sets: one user from every nonempty class. An
    empty reach leaves the single serve-nobody option."""
    pools = [sorted(classes[l]) for l in sorted(classes) if classes[l]]
    if not pools:
        return [FeasibleSet(helper=helper, users=frozenset())]
    return [FeasibleSet(helper=helper, users=frozenset(pick)) for pick in product(*pools)]


def enumerate_rate_vectors(
    topology,
    params,
    assignment,
    mode="restricted",
    budget=1_000_000,
    include_zero=False,
):
    """Enumerate (policy, rate vector) pairs across all activation patterns.

    mode='full' walks every feasible-set combination; mode='restricted' only
    the maximum-size ones. The total policy count is pre-checked against the
    budget (the full count grows exponentially). Zero-rate policies (idle
    pattern, nobody reachable) are dropped unless include_zero is set.
    """
    if mode not in ("full", "restricted"):
        raise ValueError(f"unknown enumeration mode {mode!r}")
    patterns = enumerate_patterns(topology.H)
    partitions = {p: _pattern_partitions(topology, p, assignment, params.L) for p in patterns}

    counter = policy_count if mode == "full" else policy_count_restricted
    total = sum(counter(p, partitions[p]) for p in patterns)
    if budget is not None and total > budget:
        raise BudgetExceeded(total, budget)

    out = []
    for pattern in patterns:
        per_helper = []
        skip_pattern = False
        for i in pattern.active_helpers():
            classes = partitions[pattern][i]
            if mode == "full":
                options = enumerate_feasible_sets(classes, helper=i)
                if not options:
                    skip_pattern = True  # an active helper must serve someone
                    break
            else:
                options = _restricted_options(i, classes)
            per_helper.append((i, options))
        if skip_pattern:
            continue
        helpers = [i for i, _ in per_helper]
        for combo in product(*(opts for _, opts in per_helper)):
            policy = Policy(pattern=pattern, choice=tuple(zip(helpers, combo)))
            rv = rate_vector(policy, params, topology.K)
            if rv.is_zero() and not include_zero:
                continue
            out.append((policy, rv))
    return out


def dedup_rate_vectors(pairs):
    """Collapse identical rate vectors, keeping the lexicographically first
    policy as the representative."""
    ordered = sorted(pairs, key=lambda pr: pr[0].sort_key())
    seen = {}
    for policy, rv in ordered:
        if rv.rates not in seen:
            seen[rv.rates] = (policy, rv)
    return list(seen.values())


def filter_maximal(vectors):
    """Drop duplicates and every vector componentwise dominated by another."""
    unique = []
    seen = set()
    for v in vectors:
        if v.rates not in seen:
            seen.add(v.rates)
            unique.append(v)
    out = []
    for v in unique:
        dominated = False
        for w in unique:
            if w is v:
                continue
            if all(b >= a for a, b in zip(v.rates, w.rates)) and any(
                b > a for a, b in zip(v.rates, w.rates)
            ):
                dominated = True
                break
        if not dominated:
            out.append(v)
    return out


def filter_maximal_entries(pairs):
    """filter_maximal over deduplicated (policy, vector) pairs."""
    entries = dedup_rate_vectors(pairs)
    keep = {v.rates for v in filter_maximal([rv for _, rv in entries])}
    return [(policy, rv) for policy, rv in entries if rv.rates in keep]


def export_rate_vectors_csv(pairs, K, path):
    """One row per policy: pattern bits, chosen users per helper, K exact
    rate columns like '1/3'."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["pattern", "choices"] + [f"r{k}" for k in range(1, K + 1)])
        for policy, rv in pairs:
            bits = "".join(str(b) for b in policy.pattern.bits)
            choices = ";".join(
                f"{h}:{{{','.join(str(u) for u in sorted(fs.users))}}}"
                for h, fs in policy.choice
            )
            writer.writerow([bits, choices] + [str(r) for r in rv.rates])

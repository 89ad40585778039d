"""Feasible-set enumeration and multicast codeword construction for one
active helper.

A feasible set is a group of reachable users with pairwise-distinct cache
profiles. It is padded with one phantom placeholder per missing profile,
every (t+1)-subset of the padded group yields a preliminary XOR codeword,
phantom terms are stripped, and all-phantom codewords are dropped. The
survivor count has the closed form C(L, t+1) - C(L - |V|, t+1).
"""

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .cache import SubpacketId


@dataclass(frozen=True)
class FeasibleSet:
    """Users servable together by one helper (distinct profiles each)."""

    helper: int
    users: frozenset

    def __post_init__(self):
        object.__setattr__(self, "users", frozenset(self.users))


@dataclass(frozen=True)
class Codeword:
    """XOR of one demanded subpacket per recipient; terms sorted by user."""

    recipients: frozenset
    terms: tuple


def enumerate_feasible_sets(classes, helper=0):
    """All nonempty picks of at most one user per profile class.

    The count equals prod_l (|class_l| + 1) - 1. Order is deterministic:
    profiles ascending, members ascending, empty-pick option first.
    """
    options = []
    for l in sorted(classes):
        options.append([None] + sorted(classes[l]))
    sets = []
    for pick in product(*options):
        users = frozenset(u for u in pick if u is not None)
        if users:
            sets.append(FeasibleSet(helper=helper, users=users))
    return sets


def codeword_count(L, t, v_size):
    """Codeword transmissions needed to serve a feasible set of v_size users."""
    if not 1 <= v_size <= L:
        raise ValueError(f"feasible-set size {v_size} out of range [1..{L}]")
    if not 0 <= t < L:
        raise ValueError(f"t = {t} out of range [0..{L - 1}]")
    return comb(L, t + 1) - comb(L - v_size, t + 1)


def build_codewords(v, params, demands, assignment):
    """Construct the final codeword list for feasible set v.

    Pads v with a phantom per profile absent from its support, forms one
    preliminary codeword per (t+1)-subset of the padded group, strips
    phantom terms, and drops all-phantom subsets. Codewords come out in
    lexicographic order of their profile subsets.
    """
    users = sorted(v.users)
    if not users:
        raise ValueError("feasible set is empty")
    profiles = {k: assignment.of(k) for k in users}
    if len(set(profiles.values())) != len(users):
        raise ValueError("feasible set has two users on the same profile")
    support = set(profiles.values())

    # (profile, user) entries, phantoms tagged with user=None; profile-sorted
    # so combinations() emits subsets in profile-set lexicographic order.
    padded = sorted(
        [(profiles[k], k) for k in users]
        + [(l, None) for l in range(1, params.L + 1) if l not in support]
    )

    codewords = []
    for group in combinations(padded, params.t + 1):
        group_profiles = frozenset(l for l, _ in group)
        terms = []
        for l, k in group:
            if k is None:
                continue  # phantom term: carries no real data, stripped
            terms.append((k, SubpacketId(chunk=demands.of(k), subset=group_profiles - {l})))
        if terms:
            terms.sort(key=lambda item: item[0])
            codewords.append(Codeword(recipients=frozenset(k for k, _ in terms), terms=tuple(terms)))
    return codewords


def render_codeword(cw):
    """Canonical text form, e.g. 'W[d3,{2}] ^ W[d4,{1}]'.

    The demand symbol uses the requesting user's index; profile subsets are
    ascending and comma-separated.
    """
    parts = []
    for k, sub in cw.terms:
        inner = ",".join(str(p) for p in sorted(sub.subset))
        parts.append(f"W[d{k},{{{inner}}}]")
    return " ^ ".join(parts)

"""Cache-profile parameters, user-to-profile assignment, and the shared-cache
placement predicate.

Every chunk is split into C(L, t) subpackets, one per t-subset of the L
profiles; a user assigned profile l stores exactly the subpackets whose
index subset contains l. Profiles, chunks, and users are 1-based.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class NonIntegralT(ValueError):
    """Raised when L*M/N is not an integer, which the coded pipeline requires."""

    def __init__(self, value):
        self.value = Fraction(value)
        super().__init__(f"L*M/N = {self.value} is not an integer")


@dataclass(frozen=True)
class CacheParams:
    L: int
    M: int
    N: int
    t: int


@dataclass(frozen=True)
class ProfileAssignment:
    """Total map user -> profile in [1..L]."""

    profile: dict

    def of(self, user):
        return self.profile[user]

    def users(self):
        return sorted(self.profile)


@dataclass(frozen=True)
class SubpacketId:
    """Subpacket of one chunk, indexed by a t-subset of profiles."""

    chunk: int
    subset: frozenset

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))


@dataclass(frozen=True)
class DemandMap:
    """Partial map user -> requested chunk; no chunk is requested twice."""

    demand: dict

    def __post_init__(self):
        chunks = list(self.demand.values())
        if len(set(chunks)) != len(chunks):
            raise ValueError("each chunk may be requested by at most one user")

    def of(self, user):
        return self.demand[user]

    @classmethod
    def synthetic(cls, users, N):
        """Assign distinct chunks 1, 2, ... to the given users."""
        users = sorted(users)
        if len(users) > N:
            raise ValueError(f"cannot give {len(users)} users distinct chunks out of {N}")
        return cls({u: i for i, u in enumerate(users, start=1)})


def validate_params(L, M, N):
    if L < 1 or M < 1 or N < 1:
        raise ValueError("L, M, N must be positive")
    if M >= N:
        raise ValueError("cache size M must be smaller than the catalog N")
    t = Fraction(L * M, N)
    if t.denominator != 1:
        raise NonIntegralT(t)
    t = int(t)
    if t >= L:
        raise ValueError(f"t = {t} must be < L = {L}")
    return CacheParams(L=L, M=M, N=N, t=t)


def assign_profiles(K, L, seed):
    """Assign each of K users an independent uniform profile in [1..L]."""
    if K < 1 or L < 1:
        raise ValueError("K and L must be >= 1")
    rng = np.random.default_rng(seed)
    draws = rng.integers(1, L + 1, size=K)
    return ProfileAssignment({k: int(draws[k - 1]) for k in range(1, K + 1)})


def caches(params, l, s):
    """True iff profile l stores subpacket s (its index subset contains l)."""
    if not 1 <= l <= params.L:
        raise IndexError(f"profile {l} out of range [1..{params.L}]")
    if len(s.subset) != params.t or not s.subset <= set(range(1, params.L + 1)):
        raise ValueError(f"subpacket subset {set(s.subset)} is not a t-subset of profiles")
    return l in s.subset


def profile_partition(users, assignment, L):
    """Split a user set by profile. Returns (classes, l_empty) where
    classes[l] holds the users of profile l and l_empty counts empty classes."""
    classes = {l: set() for l in range(1, L + 1)}
    for k in users:
        classes[assignment.of(k)].add(k)
    l_empty = sum(1 for l in classes if not classes[l])
    return classes, l_empty

"""One-vector-per-pattern restriction of the throughput region.

Users reachable from the same active helper and holding the same cache
profile are folded into a super-user: the helper runs its maximum-size
feasible set and each nonempty class splits that set's per-user rate equally
among its members (same-profile users are interchangeable inside codewords).
This shrinks the region to at most 2^H vectors, trading some optimality for
tractability.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import fairness
from .cache import profile_partition
from .policy import enumerate_patterns


@dataclass(frozen=True)
class SuperUserVector:
    """Equal-split rate vector for one activation pattern."""

    rates: tuple
    pattern: object

    def __post_init__(self):
        object.__setattr__(self, "rates", tuple(Fraction(r) for r in self.rates))

    def as_floats(self):
        return [float(r) for r in self.rates]

    def is_zero(self):
        return all(r == 0 for r in self.rates)


def superuser_vector(topology, pattern, params, assignment):
    """Per active helper i with class-emptiness count l(i): the helper rate is
    1/(C(L,t+1) - C(l(i),t+1)) and every reachable user gets that rate divided
    by its own class size. Unreached users get zero."""
    rates = [Fraction(0)] * topology.K
    for i in pattern.active_helpers():
        reach = topology.reachable_users(pattern, i)
        if not reach:
            continue
        classes, l_empty = profile_partition(reach, assignment, params.L)
        n = comb(params.L, params.t + 1) - comb(l_empty, params.t + 1)
        helper_rate = Fraction(1, n)
        for l, members in classes.items():
            if not members:
                continue
            share = helper_rate / len(members)
            for k in members:
                rates[k - 1] = share
    return SuperUserVector(rates=tuple(rates), pattern=pattern)


def enumerate_superuser_vectors(topology, params, assignment, include_zero=False):
    """One vector per activation pattern (2^H before zero pruning)."""
    out = []
    for pattern in enumerate_patterns(topology.H):
        vec = superuser_vector(topology, pattern, params, assignment)
        if vec.is_zero() and not include_zero:
            continue
        out.append(vec)
    return out


def solve_superuser(topology, params, assignment, alpha=1.0, tol=None, max_iters=100_000):
    """Build the per-pattern super-user vectors and hand them to the fairness
    solver. Errors from the solver propagate unchanged."""
    vectors = enumerate_superuser_vectors(topology, params, assignment)
    problem = fairness.FairnessProblem.from_rate_vectors(vectors, alpha=alpha, tol=tol)
    return fairness.solve(problem, max_iters=max_iters)

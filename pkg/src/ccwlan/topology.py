"""Physical network model: helper grid, user placement, reach and interference.

Helpers and users carry stable 1-based indices (helper i in [1..H], user k in
[1..K]); vector positions elsewhere in the package are 0-based, so position
k-1 belongs to user k. Distances are Euclidean in the plane, and "within" is
inclusive (<=) for both the transmission and the interference radius; ties
have probability zero under Poisson placement.
"""

import json
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")


@dataclass(frozen=True)
class ActivationPattern:
    """Binary on/off vector over helpers; bits[i-1] = 1 means helper i transmits."""

    bits: tuple

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("pattern bits must be 0/1")
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))

    @classmethod
    def from_active(cls, active, H):
        return cls(tuple(1 if i in set(active) else 0 for i in range(1, H + 1)))

    def active_helpers(self):
        return tuple(i for i, b in enumerate(self.bits, start=1) if b)

    def is_active(self, i):
        return self.bits[i - 1] == 1


class Topology:
    """Immutable helper/user geometry with precomputed radius predicates."""

    def __init__(self, helpers, users, r_trans, r_inter):
        if r_trans <= 0:
            raise ValueError("r_trans must be positive")
        if r_inter < r_trans:
            raise ValueError("r_inter must be >= r_trans")
        self.helpers = tuple(p if isinstance(p, Point2D) else Point2D(*p) for p in helpers)
        self.users = tuple(p if isinstance(p, Point2D) else Point2D(*p) for p in users)
        self.r_trans = float(r_trans)
        self.r_inter = float(r_inter)
        hxy = np.array([[p.x, p.y] for p in self.helpers], dtype=float).reshape(len(self.helpers), 2)
        uxy = np.array([[p.x, p.y] for p in self.users], dtype=float).reshape(len(self.users), 2)
        dist = np.sqrt(((hxy[:, None, :] - uxy[None, :, :]) ** 2).sum(axis=2))
        self._dist = dist  # (H, K)
        self.trans_mask = dist <= self.r_trans
        self.inter_mask = dist <= self.r_inter

    @property
    def H(self):
        return len(self.helpers)

    @property
    def K(self):
        return len(self.users)

    def _check_helper(self, i):
        if not 1 <= i <= self.H:
            raise IndexError(f"helper index {i} out of range [1..{self.H}]")

    def _check_user(self, k):
        if not 1 <= k <= self.K:
            raise IndexError(f"user index {k} out of range [1..{self.K}]")

    def distance(self, i, k):
        self._check_helper(i)
        self._check_user(k)
        return float(self._dist[i - 1, k - 1])

    def reachable_users(self, pattern, i):
        """Users decodable from active helper i under the given pattern.

        A user qualifies if it is within r_trans of helper i and outside
        r_inter of every other active helper.
        """
        self._check_helper(i)
        if not pattern.is_active(i):
            raise ValueError(f"helper {i} is not active in pattern {pattern.bits}")
        others = [j - 1 for j in pattern.active_helpers() if j != i]
        ok = self.trans_mask[i - 1].copy()
        if others:
            ok &= ~self.inter_mask[others].any(axis=0)
        return {k + 1 for k in np.flatnonzero(ok)}

    def user_degree(self, k):
        """Number of helpers (active or not) within r_inter of user k."""
        self._check_user(k)
        return int(self.inter_mask[:, k - 1].sum())

    def user_degrees(self):
        return self.inter_mask.sum(axis=0).astype(int)

    def connect(self, active, i, k):
        """True iff user k is within r_trans of helper i and outside r_inter
        of every active helper other than (possibly) helper i itself."""
        self._check_helper(i)
        self._check_user(k)
        if not self.trans_mask[i - 1, k - 1]:
            return False
        return not any(self.inter_mask[j - 1, k - 1] for j in active if j != i)

    def to_json(self):
        return {
            "helpers": [[p.x, p.y] for p in self.helpers],
            "users": [[p.x, p.y] for p in self.users],
            "r_trans": self.r_trans,
            "r_inter": self.r_inter,
        }

    @classmethod
    def from_json(cls, doc):
        return cls(doc["helpers"], doc["users"], doc["r_trans"], doc["r_inter"])

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def generate_hex_grid(rings, hex_radius):
    """Centers of a hexagonal tiling: one central cell plus `rings` rings.

    Adjacent centers sit sqrt(3)*hex_radius apart; the count is
    1 + 3*rings*(rings+1).
    """
    if rings < 0:
        raise ValueError("rings must be >= 0")
    if hex_radius <= 0:
        raise ValueError("hex_radius must be positive")
    step = math.sqrt(3.0) * hex_radius
    ax = (step, 0.0)
    bx = (step * 0.5, step * math.sqrt(3.0) / 2.0)
    centers = []
    for q in range(-rings, rings + 1):
        for r in range(max(-rings, -q - rings), min(rings, -q + rings) + 1):
            centers.append(Point2D(q * ax[0] + r * bx[0], q * ax[1] + r * bx[1]))
    return centers


def place_users_ppp(helpers, U, r_trans, seed, area_rel_err=1e-3):
    """Sample user locations from a homogeneous Poisson process restricted to
    the union of helper transmission disks.

    The intensity is set so the expected user count in the union equals
    U * len(helpers); the union area is itself estimated by Monte-Carlo
    integration (relative standard error <= area_rel_err) on the same seeded
    stream, so the whole placement is a deterministic function of the seed.
    """
    if U <= 0:
        raise ValueError("U must be positive")
    if not helpers:
        raise ValueError("need at least one helper")
    rng = np.random.default_rng(seed)
    hxy = np.array([[p.x, p.y] for p in helpers], dtype=float)
    lo = hxy.min(axis=0) - r_trans
    hi = hxy.max(axis=0) + r_trans
    box_area = float(np.prod(hi - lo))
    r2 = r_trans * r_trans

    def in_union(pts):
        d2 = ((pts[:, None, :] - hxy[None, :, :]) ** 2).sum(axis=2)
        return d2.min(axis=1) <= r2

    batch = 200_000
    inside = 0
    total = 0
    while True:
        pts = rng.uniform(lo, hi, size=(batch, 2))
        inside += int(in_union(pts).sum())
        total += batch
        if inside > 0:
            p = inside / total
            rel_se = math.sqrt((1.0 - p) / (p * total))
            if rel_se <= area_rel_err:
                break
        if total >= 100_000_000:
            raise RuntimeError("union-area estimate did not converge")
    union_area = (inside / total) * box_area

    intensity = U * len(helpers) / union_area
    count = int(rng.poisson(intensity * box_area))
    pts = rng.uniform(lo, hi, size=(count, 2))
    pts = pts[in_union(pts)]
    return [Point2D(float(x), float(y)) for x, y in pts]

"""Per-edge random bits, generated on demand from a global seed.

Every potential edge owns a partition index, a round and a color sequence.
They are pure functions of ``(seed, edge, incarnation)``: a keyed BLAKE2b
digest of that tuple either *is* the draw (partition index, round) or keys a
Philox counter-based generator (color sequence).  Nothing is precomputed:
the bits behave as if fixed before the stream starts, yet cost nothing until
an edge shows up.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidEpsilon
from .graph import Edge

PAPER_EPSILON_MAX = 0.1
EPSILON_MAX = 0.5

_MASK64 = (1 << 64) - 1
_TWO53 = float(1 << 53)


def _ceil(x: float, tol: float = 1e-9) -> int:
    # x = 2.0000000000000004 from a float power must still round to 2
    r = round(x)
    if abs(x - r) <= tol * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


@dataclass(frozen=True)
class Params:
    epsilon: float
    delta_cap: int
    T: int
    K: int
    gamma: float
    delta_prime: int
    eta: int
    sub_palette_size: int
    greedy_slack: float = 1.0
    collapsed: bool = False

    @property
    def nibble_colors(self) -> int:
        """Colors reserved for all subgraphs together."""
        return self.eta * self.sub_palette_size

    def round_probabilities(self) -> list[float]:
        eps = self.epsilon
        probs = [(1 - eps) ** (i - 1) * eps for i in range(1, self.T + 1)]
        probs.append((1 - eps) ** self.T)
        return probs

    def as_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "delta": self.delta_cap,
            "T": self.T,
            "K": self.K,
            "gamma": self.gamma,
            "delta_prime": self.delta_prime,
            "eta": self.eta,
            "sub_palette_size": self.sub_palette_size,
            "greedy_slack": self.greedy_slack,
            "collapsed": self.collapsed,
        }


def derive_params(epsilon: float, delta_cap: int, greedy_slack: float = 1.0) -> Params:
    """Compute rounds, sequence length and subsampling sizes (natural log).

    ``epsilon`` above 0.1 is accepted up to 0.5 with a ``UserWarning``.
    When the subgraph degree target would reach ``delta_cap`` no partitioning
    happens (``eta == 1``) and the single subgraph gets ceil((1+eps)*delta)
    colors, the palette Nibble uses on an unpartitioned graph.
    """
    if not (epsilon > 0 and epsilon <= EPSILON_MAX):
        raise InvalidEpsilon(f"epsilon must lie in (0, {EPSILON_MAX}], got {epsilon}")
    if epsilon > PAPER_EPSILON_MAX:
        warnings.warn(
            f"epsilon={epsilon} exceeds {PAPER_EPSILON_MAX}; guarantees do not apply",
            UserWarning,
            stacklevel=2,
        )
    if delta_cap < 1:
        raise ValueError("delta_cap must be a positive integer")
    if not 0 < greedy_slack <= 1:
        raise ValueError("greedy_slack must lie in (0, 1]")

    log_inv = math.log(1.0 / epsilon)
    T = math.floor(log_inv / epsilon)
    K = _ceil(8.0 / epsilon**2 * log_inv)
    if T < 1:
        raise InvalidEpsilon(f"epsilon={epsilon} gives zero rounds")
    gamma = 1.0 / (30 * T)
    scaled = float(delta_cap) ** gamma
    delta_prime = _ceil(scaled)
    if delta_cap >= 2:
        delta_prime = max(delta_prime, 2)

    if delta_prime >= delta_cap:
        return Params(
            epsilon=epsilon,
            delta_cap=delta_cap,
            T=T,
            K=K,
            gamma=gamma,
            delta_prime=delta_cap,
            eta=1,
            sub_palette_size=_ceil((1 + epsilon) * delta_cap),
            greedy_slack=greedy_slack,
            collapsed=True,
        )
    eta = -(-delta_cap // delta_prime)
    return Params(
        epsilon=epsilon,
        delta_cap=delta_cap,
        T=T,
        K=K,
        gamma=gamma,
        delta_prime=delta_prime,
        eta=eta,
        sub_palette_size=_ceil((1 + epsilon) ** 2 * scaled),
        greedy_slack=greedy_slack,
        collapsed=False,
    )


@dataclass(frozen=True)
class EdgeRandomness:
    j: int  # partition index, 1-based
    i: int  # round in 1..T+1
    c: tuple[int, ...]  # K colors, each in 1..sub_palette_size


# Domain tags keep the three draws for an edge independent of each other.
_TAG_PARTITION = b"part"
_TAG_ROUND = b"round"
_TAG_COLORS = b"color"


class Rng:
    """Seed plus a per-edge incarnation counter."""

    def __init__(self, seed: int, params: Params):
        self.seed = int(seed) & _MASK64
        self.params = params
        self._key = self.seed.to_bytes(8, "little")
        self._incarnation: dict[Edge, int] = {}
        self._log_keep = math.log1p(-params.epsilon)

    def incarnation(self, e: Edge) -> int:
        return self._incarnation.get(e, 0)

    def fresh_incarnation(self, e: Edge) -> None:
        self._incarnation[e] = self._incarnation.get(e, 0) + 1

    def _digest(self, tag: bytes, e: Edge) -> int:
        u, v = e
        h = hashlib.blake2b(tag, digest_size=16, key=self._key)
        h.update(
            u.to_bytes(8, "little")
            + v.to_bytes(8, "little")
            + self._incarnation.get(e, 0).to_bytes(8, "little")
        )
        return int.from_bytes(h.digest(), "little")

    def sample_partition_index(self, e: Edge) -> int:
        eta = self.params.eta
        if eta == 1:
            return 1
        # multiply-shift on 128 bits: bias below eta / 2**128
        return ((self._digest(_TAG_PARTITION, e) * eta) >> 128) + 1

    def sample_round(self, e: Edge) -> int:
        """Capped geometric on 1..T+1 via inverse transform."""
        T = self.params.T
        x = self._digest(_TAG_ROUND, e) >> 75  # top 53 bits
        u = (x + 1) / _TWO53  # in (0, 1]
        k = int(math.log(u) / self._log_keep)
        return min(k + 1, T + 1)

    def sample_color_sequence(self, e: Edge) -> tuple[int, ...]:
        p = self.params
        if p.sub_palette_size == 1:
            return (1,) * p.K
        gen = np.random.Generator(np.random.Philox(key=self._digest(_TAG_COLORS, e)))
        return tuple(gen.integers(1, p.sub_palette_size + 1, size=p.K).tolist())

    def draw(self, e: Edge) -> EdgeRandomness:
        return EdgeRandomness(
            j=self.sample_partition_index(e),
            i=self.sample_round(e),
            c=self.sample_color_sequence(e),
        )

"""Per-episode policy-mode selection and the three response rules.

Each episode an agent commits to one mode: the average policy (probability
1-eta), an epsilon-greedy best response (eta*rho), or the gradient-play
response (eta*(1-rho)) that projects the average policy plus a Q-derived
payoff direction back onto the probability simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class PolicyMode(Enum):
    AVERAGE = "average"
    BEST_RESPONSE = "best_response"
    GRADIENT_PLAY = "gradient_play"


@dataclass(frozen=True)
class MixtureConfig:
    """Anticipatory mixture parameters and the exploration schedule."""

    eta: float = 0.1
    rho: float = 0.92
    eps_start: float = 0.9
    eps_end: float = 0.02
    eps_decay_steps: int = 100_000
    q_ext_mode: str = "tiled"  # or "diag"

    def __post_init__(self) -> None:
        if not (0.0 <= self.eta <= 1.0 and 0.0 <= self.rho <= 1.0):
            raise ValueError("eta and rho must lie in [0,1]")
        slack = self.rho - (1.0 - self.eta)
        if not (-1e-12 <= slack <= 0.02 + 1e-12):
            raise ValueError("rho must lie in [1-eta, 1-eta+0.02]")
        if self.q_ext_mode not in ("tiled", "diag"):
            raise ValueError("q_ext_mode must be 'tiled' or 'diag'")
        if self.eps_decay_steps < 1:
            raise ValueError("eps_decay_steps must be >= 1")

    @property
    def gp_slack(self) -> float:
        return self.rho - (1.0 - self.eta)

    def epsilon_at(self, step: int) -> float:
        frac = min(1.0, max(0.0, step / self.eps_decay_steps))
        return self.eps_start + (self.eps_end - self.eps_start) * frac


def choose_policy_mode(config: MixtureConfig, rng: np.random.Generator) -> PolicyMode:
    """One draw per episode: (1-eta, eta*rho, eta*(1-rho)) over the modes."""
    u = rng.random()
    if u < 1.0 - config.eta:
        return PolicyMode.AVERAGE
    if u < (1.0 - config.eta) + config.eta * config.rho:
        return PolicyMode.BEST_RESPONSE
    return PolicyMode.GRADIENT_PLAY


def project_simplex(x: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-threshold)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("expected a nonempty 1-d vector")
    if not np.isfinite(x).all():
        raise ValueError("non-finite input")
    u = np.sort(x)[::-1]
    cssv = np.cumsum(u) - 1.0
    ks = np.arange(1, x.size + 1)
    valid = u - cssv / ks > 0
    k = np.max(np.flatnonzero(valid)) + 1
    theta = cssv[k - 1] / k
    return np.maximum(x - theta, 0.0)


def _check_legal(legal_mask: np.ndarray) -> np.ndarray:
    mask = np.asarray(legal_mask, dtype=bool)
    if not mask.any():
        raise ValueError("no legal actions")
    return mask


def greedy_beta(
    qvals: np.ndarray,
    legal_mask: np.ndarray,
    eps_explore: float,
    rng: np.random.Generator,
) -> int:
    """Legal-masked epsilon-greedy over Q values; ties go to the lowest index."""
    mask = _check_legal(legal_mask)
    if rng.random() < eps_explore:
        legal = np.flatnonzero(mask)
        return int(legal[rng.integers(legal.size)])
    masked = np.where(mask, np.asarray(qvals, dtype=np.float64), -np.inf)
    return int(np.argmax(masked))


def masked_softmax(logits: np.ndarray, legal_mask: np.ndarray) -> np.ndarray:
    """Softmax with illegal entries forced to probability zero."""
    mask = _check_legal(legal_mask)
    z = np.asarray(logits, dtype=np.float64).copy()
    z[~mask] = -np.inf
    z -= z[mask].max()
    e = np.exp(z, where=np.isfinite(z), out=np.zeros_like(z))
    return e / e.sum()


def average_pi(
    logits: np.ndarray, legal_mask: np.ndarray, rng: np.random.Generator
) -> int:
    """Sample from the legal-masked softmax of the average-policy logits."""
    probs = masked_softmax(logits, legal_mask)
    return int(rng.choice(probs.size, p=probs))


def q_extended_product(
    qvals: np.ndarray, opp_pi_probs: np.ndarray, mode: str = "tiled"
) -> np.ndarray:
    """The m-vector Q_ext @ opp_pi.

    'tiled' builds Q_ext with every column equal to qvals, so the product
    collapses to qvals exactly; 'diag' weighs each entry by the opponent's
    probability at the same index instead.
    """
    q = np.asarray(qvals, dtype=np.float64)
    p = np.asarray(opp_pi_probs, dtype=np.float64)
    if mode == "tiled":
        q_ext = np.tile(q[:, None], (1, q.size))
        return q_ext @ p
    if mode == "diag":
        return q * p
    raise ValueError("mode must be 'tiled' or 'diag'")


def gradient_play_probs(
    pi_probs: np.ndarray,
    qvals: np.ndarray,
    opp_pi_probs: np.ndarray,
    legal_mask: np.ndarray,
    q_ext_mode: str = "tiled",
) -> np.ndarray:
    """The projected response distribution S, masked and renormalized."""
    mask = _check_legal(legal_mask)
    drive = q_extended_product(qvals, opp_pi_probs, q_ext_mode)
    drive = drive / max(1.0, float(np.abs(drive).max()))
    s = project_simplex(np.asarray(pi_probs, dtype=np.float64) + drive)
    s = np.where(mask, s, 0.0)
    total = s.sum()
    if total <= 0.0:
        # Projection put all mass on illegal actions; fall back to uniform.
        s = mask.astype(np.float64)
        total = s.sum()
    return s / total


def gradient_play_s(
    pi_probs: np.ndarray,
    qvals: np.ndarray,
    opp_pi_probs: np.ndarray,
    legal_mask: np.ndarray,
    rng: np.random.Generator,
    q_ext_mode: str = "tiled",
) -> int:
    probs = gradient_play_probs(pi_probs, qvals, opp_pi_probs, legal_mask, q_ext_mode)
    return int(rng.choice(probs.size, p=probs))

"""Emitter activity: a per-entry Markov ON-OFF process with sparse dynamics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MarkovOnOff:
    """Transition probabilities of one emitter: eta0 = 0->P, eta1 = P->0."""

    eta0: float
    eta1: float
    power: float

    def __post_init__(self):
        if not (0.0 <= self.eta0 <= 1.0 and 0.0 <= self.eta1 <= 1.0):
            raise ValueError("transition probabilities must be in [0, 1]")
        if self.power <= 0:
            raise ValueError("power must be positive")

    @property
    def stationary_on(self) -> float:
        den = self.eta0 + self.eta1
        return self.eta0 / den if den > 0 else 0.5


@dataclass(frozen=True)
class SignalState:
    """Power vector with entries in {0, P} at window index k."""

    values: np.ndarray
    k: int = 0

    def support(self) -> np.ndarray:
        """1-based indices of active emitters."""
        return np.flatnonzero(self.values != 0) + 1


def initial_state(n: int, chain: MarkovOnOff, rng: np.random.Generator) -> SignalState:
    """Each entry independently ON with the chain's stationary probability."""
    on = rng.random(n) < chain.stationary_on
    return SignalState(np.where(on, chain.power, 0.0), k=0)


def step_signal(
    state: SignalState, chain: MarkovOnOff, rng: np.random.Generator
) -> SignalState:
    """Advance one window: OFF entries flip with prob eta0, ON with eta1.

    Consumes exactly one uniform per entry regardless of the state, so runs
    that share a seed see identical trajectories.
    """
    u = rng.random(len(state.values))
    off = state.values == 0
    flip = (off & (u < chain.eta0)) | (~off & (u < chain.eta1))
    values = np.where(flip, chain.power - state.values, state.values)
    return SignalState(values, k=state.k + 1)


def step_signal_capped(
    state: SignalState,
    chain: MarkovOnOff,
    rng: np.random.Generator,
    max_changes: int,
) -> SignalState:
    """Markov step that keeps at most `max_changes` toggles, reverting a
    uniformly chosen excess. Used to force a hard per-window sparsity bound."""
    nxt = step_signal(state, chain, rng)
    changed = np.flatnonzero(nxt.values != state.values)
    if len(changed) <= max_changes:
        return nxt
    keep = rng.choice(changed, size=max_changes, replace=False)
    values = state.values.copy()
    values[keep] = nxt.values[keep]
    return SignalState(values, k=nxt.k)


def expected_change_fraction(chain: MarkovOnOff) -> float:
    """Stationary per-entry toggle probability 2*eta0*eta1/(eta0 + eta1)."""
    den = chain.eta0 + chain.eta1
    if den == 0:
        raise ValueError("eta0 = eta1 = 0 has no defined stationary split")
    return 2.0 * chain.eta0 * chain.eta1 / den


def dynamics(prev: SignalState, nxt: SignalState) -> np.ndarray:
    """Elementwise difference next - prev; entries in {-P, 0, P}."""
    if len(prev.values) != len(nxt.values):
        raise ValueError(
            f"state length mismatch: {len(prev.values)} vs {len(nxt.values)}"
        )
    return nxt.values - prev.values

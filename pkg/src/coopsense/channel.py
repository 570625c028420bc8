"""Sensor measurement synthesis.

Three fidelities:
  * samples    -- per-slot Rayleigh fading plus receiver noise, averaged over
                  a W-slot window (the physical model),
  * surrogate  -- z = Lambda @ s + beta with beta Gaussian, variance matched
                  to the sample-level window average,
  * noiseless  -- z = Lambda @ s exactly (the W -> infinity limit).

Signal values are transmit powers, so amplitudes enter the slot synthesis as
sqrt(s); that is what makes E[z] = Lambda @ s hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import PathLossMatrix
from .signals import SignalState

# slots synthesized per vectorized block, keeps peak memory modest
_BLOCK = 512


@dataclass(frozen=True)
class MeasurementFrame:
    """Per-sensor power measurements for one window."""

    z: np.ndarray
    k: int
    window: int
    noise_var: float

    def __len__(self) -> int:
        return len(self.z)


def measure_window_samples(
    path_loss: PathLossMatrix,
    state: SignalState,
    window: int,
    noise_var: float,
    rng: np.random.Generator,
) -> MeasurementFrame:
    """Average |r|^2 over `window` slots and subtract the known noise power.

    Each slot draws fresh circularly-symmetric unit fading per (sensor,
    emitter) and complex receiver noise with E|v|^2 = noise_var.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if noise_var < 0:
        raise ValueError("noise_var must be >= 0")
    amp = np.sqrt(path_loss.values * state.values[None, :])  # (m, n)
    m, n = amp.shape
    acc = np.zeros(m)
    done = 0
    while done < window:
        w = min(_BLOCK, window - done)
        g = rng.standard_normal((w, m, n)) + 1j * rng.standard_normal((w, m, n))
        g *= np.sqrt(0.5)
        r = np.einsum("wmn,mn->wm", g, amp)
        if noise_var > 0:
            v = rng.standard_normal((w, m)) + 1j * rng.standard_normal((w, m))
            r += np.sqrt(noise_var / 2.0) * v
        acc += (np.abs(r) ** 2).sum(axis=0)
        done += w
    z = acc / window - noise_var
    return MeasurementFrame(z, state.k, window, noise_var)


def measure_window_surrogate(
    path_loss: PathLossMatrix,
    state: SignalState,
    window: int,
    noise_var: float,
    rng: np.random.Generator,
    calibration: float = 1.0,
) -> MeasurementFrame:
    """z = Lambda @ s + beta with Var(beta_m) = ((Lambda s)_m + noise_var)^2 * c / W.

    c = 1 reproduces the sample-level variance exactly for i.i.d. per-slot
    fading, since the slot power is exponential with mean (Lambda s)_m + noise_var.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    mean = path_loss.values @ state.values
    sd = (mean + noise_var) * np.sqrt(calibration / window)
    z = mean + rng.standard_normal(len(mean)) * sd
    return MeasurementFrame(z, state.k, window, noise_var)


def measure_window_noiseless(
    path_loss: PathLossMatrix, state: SignalState, window: int, noise_var: float
) -> MeasurementFrame:
    """Exact z = Lambda @ s; the beta term is forced to zero."""
    return MeasurementFrame(path_loss.values @ state.values, state.k, window, noise_var)


def difference_frames(a: MeasurementFrame, b: MeasurementFrame) -> np.ndarray:
    """b.z - a.z for consecutive windows (equals Lambda @ ds plus noise drift)."""
    if len(a) != len(b):
        raise ValueError(f"frame length mismatch: {len(a)} vs {len(b)}")
    if b.k != a.k + 1:
        raise ValueError(f"frames are not consecutive: k={a.k} then k={b.k}")
    return b.z - a.z

"""Linear dynamics x_{k+1} = M x_k and orbit synchronization.

When M is compatible with an automorphism, the subspace of vectors
constant on every orbit is invariant: states that start synchronized
across an orbit stay synchronized. The check scales its tolerance with
the observed state norm, since deviations grow with ||M||^k like the
state itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HypersymError
from .jsonutil import complex_pair
from .matrices import as_array
from .symmetry import OrbitPartition

SYNC_TOL = 1e-10


@dataclass(frozen=True)
class Trajectory:
    states: np.ndarray  # (steps + 1, n), states[0] = x0
    steps: int
    normalized: bool
    orbit_cells: tuple[tuple[int, ...], ...] | None
    sync_log: np.ndarray | None  # (steps + 1, n_cells) max in-cell deviation

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def to_document(self) -> dict:
        log = [] if self.sync_log is None else [
            [float(d) for d in row] for row in self.sync_log
        ]
        return {
            "steps": self.steps,
            "sync_log": log,
            "final_state": [complex_pair(z) for z in self.final_state],
        }


def _cell_deviations(x: np.ndarray, cells) -> np.ndarray:
    out = np.zeros(len(cells))
    for i, cell in enumerate(cells):
        if len(cell) > 1:
            vals = x[list(cell)]
            out[i] = float(np.abs(vals - vals.mean()).max())
    return out


def iterate(M, x0, steps: int, orbs: OrbitPartition | None = None, normalize: bool = False) -> Trajectory:
    """Run x_{k+1} = M x_k for the given number of steps.

    With orbs given, sync_log records the max in-orbit deviation from the
    orbit mean at every step. normalize rescales each state to unit
    sup-norm (useful when ||M|| > 1 over long runs).
    """
    A = as_array(M)
    x = np.asarray(x0, dtype=np.complex128)
    if x.shape != (A.shape[0],):
        raise HypersymError(
            f"initial state has shape {x.shape}, matrix order is {A.shape[0]}"
        )
    if not np.all(np.isfinite(x)):
        raise HypersymError("initial state has non-finite entries")
    if steps < 0:
        raise HypersymError(f"steps must be non-negative, got {steps}")
    cells = orbs.cells if orbs is not None else None
    states = np.zeros((steps + 1, A.shape[0]), dtype=np.complex128)
    states[0] = x
    log = np.zeros((steps + 1, len(cells))) if cells is not None else None
    if log is not None:
        log[0] = _cell_deviations(x, cells)
    for k in range(1, steps + 1):
        x = A @ x
        if normalize:
            peak = float(np.abs(x).max())
            if peak > 0:
                x = x / peak
        states[k] = x
        if log is not None:
            log[k] = _cell_deviations(x, cells)
    return Trajectory(
        states=states,
        steps=steps,
        normalized=normalize,
        orbit_cells=cells,
        sync_log=log,
    )


@dataclass(frozen=True)
class SyncReport:
    synchronized: bool
    first_violation_step: int | None
    max_scaled_deviation: float
    tol: float


def check_orbit_synchronization(traj: Trajectory, orbs: OrbitPartition | None = None, tol: float = SYNC_TOL) -> SyncReport:
    """Decide whether every state is constant on every orbit.

    The per-step threshold is tol * max(1, ||x_k||_inf), so growth under
    ||M|| > 1 does not produce false alarms. Reports the first violating
    step (0 means the initial state was already desynchronized).
    """
    if orbs is not None:
        cells = orbs.cells
        log = np.stack([_cell_deviations(x, cells) for x in traj.states])
    elif traj.sync_log is not None:
        log = traj.sync_log
    else:
        raise HypersymError("trajectory has no sync log; pass the orbit partition")
    first: int | None = None
    max_scaled = 0.0
    for k in range(log.shape[0]):
        scale = max(1.0, float(np.abs(traj.states[k]).max()))
        dev = float(log[k].max()) if log.shape[1] else 0.0
        max_scaled = max(max_scaled, dev / scale)
        if dev > tol * scale and first is None:
            first = k
    return SyncReport(
        synchronized=first is None,
        first_violation_step=first,
        max_scaled_deviation=max_scaled,
        tol=tol,
    )

"""Dense-eigensolve oracle and decomposition verification.

The oracle route ignores all symmetry structure: it hands the full matrix
to a dense solver, sorts the eigenvalues, and reports per-pair residuals.
verify_decomposition compares a block decomposition against it by greedy
nearest-neighbour multiset matching with a per-match tolerance scaled by
max(1, ||M||_inf), and checks every lifted eigenpair's residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HypersymError
from .jsonutil import complex_pair
from .matrices import as_array
from .spectral import SpectralDecomposition

MATCH_TOL = 1e-8


@dataclass(frozen=True)
class SpectrumReport:
    """Dense spectrum with residuals; verification adds matches and verdict."""

    eigenvalues: np.ndarray
    residuals: np.ndarray
    verdict: bool
    failures: tuple[str, ...] = ()
    matches: tuple[tuple[complex, complex, float], ...] | None = None
    max_match_error: float | None = None

    def to_document(self) -> dict:
        doc = {
            "eigenvalues": [complex_pair(z) for z in self.eigenvalues],
            "residuals": [float(r) for r in self.residuals],
            "verdict": "pass" if self.verdict else "fail",
            "failures": list(self.failures),
        }
        if self.max_match_error is not None:
            doc["max_match_error"] = float(self.max_match_error)
        return doc


def _sorted_eig(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    vals, vecs = np.linalg.eig(A)
    order = np.lexsort((vals.imag, vals.real))
    return vals[order], vecs[:, order]


def dense_spectrum(M) -> SpectrumReport:
    """Full spectrum by direct dense eigensolve, sorted by (real, imag)."""
    A = as_array(M)
    if not np.all(np.isfinite(A)):
        raise HypersymError("matrix has non-finite entries")
    vals, vecs = _sorted_eig(A)
    scale = max(1.0, float(np.abs(A).sum(axis=1).max())) if A.size else 1.0
    residuals = np.array(
        [
            np.linalg.norm(A @ vecs[:, i] - vals[i] * vecs[:, i])
            / max(1.0, np.linalg.norm(vecs[:, i]))
            for i in range(len(vals))
        ]
    )
    failures = tuple(
        f"dense eigenpair {i} residual {residuals[i]:.3e}"
        for i in range(len(vals))
        if residuals[i] > MATCH_TOL * scale
    )
    return SpectrumReport(
        eigenvalues=vals, residuals=residuals, verdict=not failures, failures=failures
    )


def match_multisets(a, b, tol: float):
    """Greedy nearest-neighbour matching of two complex multisets.

    Both are traversed in (real, imag) order; each element of a takes the
    nearest unused element of b within tol. Returns (pairs, unmatched_a,
    unmatched_b) with pairs as (x, y, |x - y|).
    """
    a = sorted((complex(z) for z in a), key=lambda z: (z.real, z.imag))
    b = sorted((complex(z) for z in b), key=lambda z: (z.real, z.imag))
    used = [False] * len(b)
    pairs: list[tuple[complex, complex, float]] = []
    unmatched_a: list[complex] = []
    for x in a:
        best, best_err = -1, np.inf
        for j, y in enumerate(b):
            if used[j]:
                continue
            err = abs(x - y)
            if err < best_err:
                best, best_err = j, err
        if best >= 0 and best_err <= tol:
            used[best] = True
            pairs.append((x, b[best], float(best_err)))
        else:
            unmatched_a.append(x)
    unmatched_b = [y for j, y in enumerate(b) if not used[j]]
    return pairs, unmatched_a, unmatched_b


def verify_decomposition(M, decomposition: SpectralDecomposition, tol: float = MATCH_TOL) -> SpectrumReport:
    """Check a decomposition against the dense oracle.

    The block eigenvalue multiset must match the dense spectrum within
    tol * max(1, ||M||_inf) per match, counts must agree with the matrix
    order, and every lifted pair's residual must clear the same threshold.
    On failure the report lists unmatched values with their source blocks
    and the offending residuals.
    """
    A = as_array(M)
    dense = dense_spectrum(A)
    claimed = decomposition.eigenvalues()
    scale = max(1.0, float(np.abs(A).sum(axis=1).max())) if A.size else 1.0
    threshold = tol * scale
    failures: list[str] = list(dense.failures)

    if len(claimed) != A.shape[0]:
        failures.append(
            f"decomposition carries {len(claimed)} eigenvalues for order {A.shape[0]}"
        )
    pairs, unmatched_claimed, unmatched_dense = match_multisets(
        claimed, dense.eigenvalues, threshold
    )
    for z in unmatched_claimed:
        source = next(
            (
                b.source
                for b in decomposition.blocks
                if any(abs(z - w) < 1e-12 for w in b.eigenvalues)
            ),
            None,
        )
        failures.append(f"decomposition value {z} unmatched (block {source})")
    for z in unmatched_dense:
        failures.append(f"dense value {z} missing from the decomposition")
    for pair in decomposition.lifted:
        if pair.residual > threshold:
            failures.append(
                f"lifted pair at {pair.value} from {pair.source} has residual "
                f"{pair.residual:.3e} > {threshold:.3e}"
            )
    max_err = max((err for _, _, err in pairs), default=0.0)
    return SpectrumReport(
        eigenvalues=dense.eigenvalues,
        residuals=dense.residuals,
        verdict=not failures,
        failures=tuple(failures),
        matches=tuple(pairs),
        max_match_error=max_err,
    )

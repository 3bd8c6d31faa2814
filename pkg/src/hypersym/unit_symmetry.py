"""Unit-level symmetry: compatible profiles, unit eigenvalues, quotients,
and decompositions driven by unit-automorphisms.

A matrix M is unit-compatible when, inside every unit W, the diagonal is
constant (d), all off-diagonal entries are one constant (r), and every
outside vertex sees constant rows and columns across W. Each unit of size
at least 2 then contributes the eigenvalue d - r with multiplicity |W| - 1
and eigenvectors chi_v - chi_v0; the remaining spectrum is that of the
unit quotient N, an extension of M to the contracted hypergraph, whose
eigenvectors blow up to eigenvectors of M constant on units.

A unit-automorphism permutes units so that edge covers map to edge
covers. It always induces an edge bijection; it lifts to a vertex
automorphism exactly when it preserves unit cardinalities. M follows the
symmetry when N is compatible with the unit permutation, in which case the
full spectrum decomposes into unit eigenvalues plus the rotation-block
decomposition of N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DocumentError,
    HypersymError,
    IncompatibleMatrixError,
    NotUnitAutomorphismError,
    NotUnitCompatibleError,
)
from .hypergraph import Hypergraph, UnitPartition, compute_units, edge_unit_covers
from .jsonutil import describe_value
from .matrices import as_array
from .spectral import LiftedPair, RotationBlock, SpectralDecomposition, decompose_automorphism
from .symmetry import COMPAT_TOL, Automorphism, Permutation, validate_automorphism

MERGE_TOL = 1e-9


@dataclass(frozen=True)
class UnitCompatibleProfile:
    """Per-unit constants of a unit-compatible matrix.

    d[i] is the shared diagonal of unit i, r[i] the shared off-diagonal
    (None for singletons), rows[i] the representative row, whose entries
    off the unit are the values s(W_i, w).
    """

    units: UnitPartition
    d: tuple[complex, ...]
    r: tuple[complex | None, ...]
    rows: np.ndarray

    def unit_eigenvalue(self, i: int) -> complex:
        if self.r[i] is None:
            raise HypersymError(f"unit {self.units.units[i].key!r} is a singleton")
        return self.d[i] - self.r[i]


def profile_unit_compatibility(M, units: UnitPartition, tol: float = COMPAT_TOL) -> UnitCompatibleProfile:
    """Verify the unit-compatibility conditions and extract (d, r, s).

    Raises NotUnitCompatibleError naming the violated unit and condition.
    """
    A = as_array(M)
    if A.shape[0] != units.n:
        raise HypersymError(f"matrix order {A.shape[0]} does not match {units.n} vertices")
    d: list[complex] = []
    r: list[complex | None] = []
    rows = np.zeros((len(units.units), units.n), dtype=np.complex128)
    for i, unit in enumerate(units.units):
        mem = list(unit.member_indices)
        key = unit.key
        rows[i] = A[mem[0]]
        diag = A[mem, mem]
        if np.abs(diag - diag[0]).max() > tol:
            k = int(np.argmax(np.abs(diag - diag[0])))
            raise NotUnitCompatibleError(
                f"unit {key!r}: diagonal entries differ: {diag[0]} at {mem[0]} "
                f"vs {diag[k]} at {mem[k]}"
            )
        d.append(complex(diag[0]))
        if len(mem) == 1:
            r.append(None)
        else:
            sub = A[np.ix_(mem, mem)]
            off = sub[~np.eye(len(mem), dtype=bool)]
            if np.abs(off - off[0]).max() > tol:
                raise NotUnitCompatibleError(
                    f"unit {key!r}: off-diagonal entries within the unit are not "
                    f"constant: {off[0]} vs {off[np.argmax(np.abs(off - off[0]))]}"
                )
            r.append(complex(off[0]))
            outside = [w for w in range(units.n) if w not in unit.member_indices]
            if outside:
                block = A[np.ix_(mem, outside)]
                dev = np.abs(block - block[0]).max(axis=0)
                if dev.max() > tol:
                    w = outside[int(np.argmax(dev))]
                    raise NotUnitCompatibleError(
                        f"unit {key!r}: rows toward outside vertex {w} differ "
                        f"(max deviation {dev.max():.3e})"
                    )
                blockT = A[np.ix_(outside, mem)]
                devc = np.abs(blockT - blockT[:, :1]).max(axis=1)
                if devc.max() > tol:
                    w = outside[int(np.argmax(devc))]
                    raise NotUnitCompatibleError(
                        f"unit {key!r}: columns from outside vertex {w} differ "
                        f"(max deviation {devc.max():.3e})"
                    )
    return UnitCompatibleProfile(units=units, d=tuple(d), r=tuple(r), rows=rows)


@dataclass(frozen=True)
class UnitEigenStructure:
    unit_index: int
    unit_key: str
    value: complex
    multiplicity: int
    vectors: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class UnitEigenReport:
    """Per-unit eigenvalues, plus a merged view grouping equal values."""

    structures: tuple[UnitEigenStructure, ...]
    merged: tuple[tuple[complex, int, tuple[str, ...]], ...]


def unit_eigenvalues(M, units: UnitPartition, tol: float = COMPAT_TOL, merge_tol: float = MERGE_TOL) -> UnitEigenReport:
    """Eigenvalue d - r with multiplicity |W| - 1 for every unit of size
    at least 2, eigenvectors chi_v - chi_v0 with v0 the smallest member.

    Entries sharing a value across units are merged in the report (the
    merge is cosmetic; per-unit structures are kept).
    """
    A = as_array(M)
    profile = profile_unit_compatibility(A, units, tol)
    structures: list[UnitEigenStructure] = []
    for i, unit in enumerate(units.units):
        if unit.size < 2:
            continue
        value = profile.unit_eigenvalue(i)
        mem = unit.member_indices
        vectors = []
        for v in mem[1:]:
            vec = np.zeros(units.n, dtype=np.complex128)
            vec[v] = 1.0
            vec[mem[0]] = -1.0
            vectors.append(vec)
        structures.append(
            UnitEigenStructure(
                unit_index=i,
                unit_key=unit.key,
                value=value,
                multiplicity=unit.size - 1,
                vectors=tuple(vectors),
            )
        )
    merged: list[tuple[complex, int, tuple[str, ...]]] = []
    for s in sorted(structures, key=lambda s: (s.value.real, s.value.imag)):
        if merged and abs(s.value - merged[-1][0]) <= merge_tol:
            value, mult, keys = merged[-1]
            merged[-1] = (value, mult + s.multiplicity, keys + (s.unit_key,))
        else:
            merged.append((s.value, s.multiplicity, (s.unit_key,)))
    return UnitEigenReport(structures=tuple(structures), merged=tuple(merged))


def unit_quotient(M, units: UnitPartition, tol: float = COMPAT_TOL) -> np.ndarray:
    """Quotient over units: row sums of a representative row into each unit.

    Diagonal entries come out as d + (|W| - 1) r. M must be unit-compatible
    (checked)."""
    A = as_array(M)
    profile_unit_compatibility(A, units, tol)
    q = len(units.units)
    N = np.zeros((q, q), dtype=np.complex128)
    for i, unit in enumerate(units.units):
        rep = unit.member_indices[0]
        for j, other in enumerate(units.units):
            N[i, j] = A[rep, list(other.member_indices)].sum()
    return N


def blow_up(y, units: UnitPartition) -> np.ndarray:
    """Extend a vector on units to the vertices, constant on each unit."""
    y = np.asarray(y, dtype=np.complex128)
    if y.shape != (len(units.units),):
        raise HypersymError(f"vector length {y.shape} does not match {len(units.units)} units")
    return y[np.array(units.unit_of)]


@dataclass(frozen=True)
class UnitAutomorphism:
    """A bijection of units inducing a bijection of edges."""

    hypergraph: Hypergraph
    units: UnitPartition
    perm: Permutation  # on unit indices, in unit order
    edge_map: dict[str, str]
    order: int
    cardinality_preserving: bool

    def unit_key_map(self) -> dict[str, str]:
        keys = [u.key for u in self.units.units]
        return {keys[i]: keys[self.perm(i)] for i in range(len(keys))}


def validate_unit_automorphism(h: Hypergraph, unit_map: dict[str, str] | Permutation) -> UnitAutomorphism:
    """Check that a unit bijection maps every edge cover onto an edge cover.

    unit_map is keyed by unit keys (comma-joined sorted member labels) or
    given directly as a Permutation on unit indices. Raises
    NotUnitAutomorphismError naming the first edge whose image cover is not
    an edge.
    """
    units = compute_units(h)
    key_index = units.key_index()
    if isinstance(unit_map, Permutation):
        if unit_map.n != len(units.units):
            raise HypersymError(
                f"permutation size {unit_map.n} does not match {len(units.units)} units"
            )
        perm = unit_map
    else:
        mapping = [-1] * len(units.units)
        for src, dst in unit_map.items():
            if src not in key_index:
                raise DocumentError(f"unit map names unknown unit {src!r}")
            if dst not in key_index:
                raise DocumentError(f"unit map sends {src!r} to unknown unit {dst!r}")
            mapping[key_index[src]] = key_index[dst]
        missing = [units.units[i].key for i, v in enumerate(mapping) if v < 0]
        if missing:
            raise DocumentError(f"unit map does not cover units {missing}")
        if len(set(mapping)) != len(mapping):
            raise DocumentError("unit map is not a bijection")
        perm = Permutation(tuple(mapping))

    covers = edge_unit_covers(h, units)
    cover_to_edge = {cover: j for j, cover in enumerate(covers)}
    edge_map: dict[str, str] = {}
    for j, cover in enumerate(covers):
        image = tuple(sorted(perm(ui) for ui in cover))
        k = cover_to_edge.get(image)
        if k is None:
            keys = [units.units[ui].key for ui in image]
            raise NotUnitAutomorphismError(
                f"image of edge {h.edge_ids[j]!r} covers units {keys}, "
                "which is not an edge"
            )
        edge_map[h.edge_ids[j]] = h.edge_ids[k]
    if len(set(edge_map.values())) != len(edge_map):
        raise NotUnitAutomorphismError("induced edge map is not a bijection")
    cardinality = all(
        units.units[i].size == units.units[perm(i)].size for i in range(len(units.units))
    )
    return UnitAutomorphism(
        hypergraph=h,
        units=units,
        perm=perm,
        edge_map=edge_map,
        order=perm.order,
        cardinality_preserving=cardinality,
    )


def induced_unit_automorphism(f: Automorphism) -> UnitAutomorphism:
    """The unit permutation induced by a vertex automorphism.

    Always valid and always cardinality-preserving: automorphisms map stars
    to stars, hence units onto units of equal size.
    """
    h = f.hypergraph
    units = compute_units(h)
    mapping = []
    for unit in units.units:
        images = {units.unit_of[f.perm(v)] for v in unit.member_indices}
        if len(images) != 1:
            raise AssertionError(
                f"automorphism splits unit {unit.key!r}; star computation is broken"
            )
        mapping.append(images.pop())
    perm = Permutation(tuple(mapping))
    return UnitAutomorphism(
        hypergraph=h,
        units=units,
        perm=perm,
        edge_map=dict(f.edge_map),
        order=perm.order,
        cardinality_preserving=True,
    )


def lift_cardinality_preserving(ua: UnitAutomorphism) -> Automorphism:
    """Lift a cardinality-preserving unit-automorphism to a vertex
    automorphism, mapping each unit's members positionally (both sides
    sorted by index)."""
    if not ua.cardinality_preserving:
        units = ua.units.units
        i = next(
            i for i in range(len(units)) if units[i].size != units[ua.perm(i)].size
        )
        raise NotUnitAutomorphismError(
            f"unit map is not cardinality-preserving: {units[i].key!r} has "
            f"{units[i].size} members but its image {units[ua.perm(i)].key!r} "
            f"has {units[ua.perm(i)].size}"
        )
    h = ua.hypergraph
    mapping = [0] * h.n
    for i, unit in enumerate(ua.units.units):
        target = ua.units.units[ua.perm(i)]
        for src, dst in zip(unit.member_indices, target.member_indices):
            mapping[src] = dst
    return validate_automorphism(h, Permutation(tuple(mapping)))


def unit_compatibility_witness(M, ua: UnitAutomorphism, tol: float = COMPAT_TOL) -> dict | None:
    """None when the unit quotient is compatible with the unit permutation,
    else a witness naming the offending quotient entries."""
    N = unit_quotient(M, ua.units, tol)
    idx = np.array(ua.perm.mapping)
    D = np.abs(N - N[np.ix_(idx, idx)])
    bad = np.argwhere(D > tol)
    if bad.size == 0:
        return None
    i, j = (int(v) for v in bad[0])  # first violation in row-major order
    keys = [u.key for u in ua.units.units]
    return {
        "units": (keys[i], keys[j]),
        "value": complex(N[i, j]),
        "image_units": (keys[ua.perm(i)], keys[ua.perm(j)]),
        "image_value": complex(N[ua.perm(i), ua.perm(j)]),
        "deviation": float(D[i, j]),
    }


def is_unit_automorphism_compatible(M, ua: UnitAutomorphism, tol: float = COMPAT_TOL) -> bool:
    """True when the unit quotient of M is compatible with the unit map.

    M itself must be unit-compatible (checked; raises otherwise)."""
    return unit_compatibility_witness(M, ua, tol) is None


def decompose_unit_automorphism(M, ua: UnitAutomorphism, tol: float = COMPAT_TOL, workers: int | None = None) -> SpectralDecomposition:
    """Unit eigenvalues plus the rotation-block decomposition of the unit
    quotient, blown back up to the vertices.

    Block eigenvalue counts add up to the matrix order: sum(|W| - 1) from
    units plus one eigenvalue per unit from the quotient decomposition.
    """
    A = as_array(M)
    units = ua.units
    if A.shape[0] != units.n:
        raise HypersymError(f"matrix order {A.shape[0]} does not match {units.n} vertices")
    witness = unit_compatibility_witness(A, ua, tol)
    if witness is not None:
        raise IncompatibleMatrixError(
            "unit quotient is not compatible with the unit map: entry "
            f"(W[{witness['units'][0]}], W[{witness['units'][1]}]) = "
            f"{describe_value(witness['value'])} but its image entry "
            f"(W[{witness['image_units'][0]}], W[{witness['image_units'][1]}]) = "
            f"{describe_value(witness['image_value'])}"
        )
    profile = profile_unit_compatibility(A, units, tol)
    N = unit_quotient(A, units, tol)

    blocks: list[RotationBlock] = []
    lifted: list[LiftedPair] = []
    for i, unit in enumerate(units.units):
        if unit.size < 2:
            continue
        value = profile.unit_eigenvalue(i)
        source = {"kind": "unit", "unit": unit.key}
        blocks.append(
            RotationBlock(
                source=source,
                order=unit.size - 1,
                eigenvalues=np.full(unit.size - 1, value, dtype=np.complex128),
                eigenvectors=None,
                matrix=None,
            )
        )
        mem = unit.member_indices
        for v in mem[1:]:
            vec = np.zeros(units.n, dtype=np.complex128)
            vec[v] = 1.0
            vec[mem[0]] = -1.0
            res = float(np.linalg.norm(A @ vec - value * vec) / max(1.0, np.linalg.norm(vec)))
            lifted.append(LiftedPair(value=value, vector=vec, source=source, residual=res))

    sub = decompose_automorphism(N, ua.perm, tol=tol, workers=workers)
    for block in sub.blocks:
        blocks.append(
            RotationBlock(
                source={**block.source, "level": "units"},
                order=block.order,
                eigenvalues=block.eigenvalues,
                eigenvectors=block.eigenvectors,
                matrix=block.matrix,
            )
        )
    for pair in sub.lifted:
        full = blow_up(pair.vector, units)
        res = float(
            np.linalg.norm(A @ full - pair.value * full) / max(1.0, np.linalg.norm(full))
        )
        lifted.append(
            LiftedPair(
                value=pair.value,
                vector=full,
                source={**pair.source, "level": "units"},
                residual=res,
            )
        )
    skipped = tuple({**entry, "level": "units"} for entry in sub.skipped)
    total = sum(b.order for b in blocks)
    if total != units.n:
        raise AssertionError(f"block orders sum to {total}, expected {units.n}")
    return SpectralDecomposition(
        n=units.n, blocks=tuple(blocks), lifted=tuple(lifted), skipped=skipped
    )

"""Brute-force generation of single-qudit Clifford groups with lookup tables.

The single-qutrit Clifford group is generated by the qutrit Hadamard H and the
phase gate S = diag(1, 1, w); breadth-first closure over products, deduplicated
up to a global phase, yields d^3(d^2-1) = 216 elements.  The same machinery
generates the 24-element qubit Clifford group (from the 2x2 H and S) used by
the qubit-like benchmarking variant.

Composition and inverse tables are precomputed by multiply-then-lookup and can
be cached to a versioned JSON artifact; the loader re-verifies the group
structure before trusting a cache file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Optional

import numpy as np

from .algebra import OMEGA, canonical_phase, global_phase_equal, is_unitary

if TYPE_CHECKING:
    from .compiler import NativeSequence

HADAMARD = np.array(
    [[1, 1, 1], [1, OMEGA, OMEGA**2], [1, OMEGA**2, OMEGA]], dtype=complex
) / np.sqrt(3)
S_GATE = np.diag([1, 1, OMEGA]).astype(complex)

QUBIT_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
QUBIT_S = np.diag([1, 1j]).astype(complex)

#: the expected group orders: d^3 (d^2 - 1)
GROUP_ORDER = {d: d**3 * (d**2 - 1) for d in (2, 3)}

PHASE_TOL = 1e-8
_HASH_DECIMALS = 6

CACHE_FORMAT_VERSION = 1


def _hash_key(M: np.ndarray) -> tuple:
    r = np.round(M.ravel().view(np.float64), _HASH_DECIMALS)
    r += 0.0  # normalize -0.0
    return tuple(r.tolist())


@dataclass
class CliffordElement:
    index: int
    matrix: np.ndarray
    pulse_sequence: Optional["NativeSequence"] = None


@dataclass
class CliffordTable:
    """Group elements (canonical phase) plus inverse and composition tables."""

    dim: int
    elements: list[CliffordElement]
    inverse: np.ndarray
    compose_table: np.ndarray
    identity_index: int
    _hash_index: dict[tuple, list[int]] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self._hash_index:
            for el in self.elements:
                self._hash_index.setdefault(_hash_key(el.matrix), []).append(el.index)

    @property
    def size(self) -> int:
        return len(self.elements)

    def matrix(self, index: int) -> np.ndarray:
        return self.elements[index].matrix

    def lookup(self, U: np.ndarray) -> int:
        """Index of the element global-phase-equal to U; ValueError if none."""
        canon = canonical_phase(U)
        for idx in self._hash_index.get(_hash_key(canon), []):
            if global_phase_equal(canon, self.elements[idx].matrix, PHASE_TOL):
                return idx
        # hash miss (rounding-boundary dust): fall back to a full phase-aware scan
        for el in self.elements:
            if global_phase_equal(canon, el.matrix, PHASE_TOL):
                return el.index
        raise ValueError("matrix is not an element of this Clifford group")

    def contains(self, U: np.ndarray) -> bool:
        try:
            self.lookup(U)
            return True
        except ValueError:
            return False

    def compose(self, i: int, j: int) -> int:
        """Index of elements[i].matrix @ elements[j].matrix."""
        return int(self.compose_table[i, j])

    def inverse_index(self, i: int) -> int:
        return int(self.inverse[i])


def _closure(generators: list[np.ndarray]) -> list[np.ndarray]:
    dim = generators[0].shape[0]
    elements: list[np.ndarray] = [canonical_phase(np.eye(dim, dtype=complex))]
    index: dict[tuple, list[int]] = {_hash_key(elements[0]): [0]}

    def find(canon: np.ndarray) -> int | None:
        for idx in index.get(_hash_key(canon), []):
            if global_phase_equal(canon, elements[idx], PHASE_TOL):
                return idx
        for idx, el in enumerate(elements):
            if global_phase_equal(canon, el, PHASE_TOL):
                return idx
        return None

    frontier = [elements[0]]
    while frontier:
        new: list[np.ndarray] = []
        for E in frontier:
            for G in generators:
                P = canonical_phase(G @ E)
                if find(P) is None:
                    index.setdefault(_hash_key(P), []).append(len(elements))
                    elements.append(P)
                    new.append(P)
        frontier = new
    return elements


def generate_clifford_table(dim: int = 3) -> CliffordTable:
    """Generate the full single-qudit Clifford group (d = 2 or 3) and its tables.

    Raises ``RuntimeError`` if the closure does not land exactly on the known
    group order d^3(d^2-1) - the signature of a phase-deduplication bug.
    """
    if dim == 3:
        generators = [HADAMARD, S_GATE]
    elif dim == 2:
        generators = [QUBIT_HADAMARD, QUBIT_S]
    else:
        raise ValueError("only d=2 and d=3 are supported")

    mats = _closure(generators)
    expected = GROUP_ORDER[dim]
    if len(mats) != expected:
        raise RuntimeError(
            f"closure produced {len(mats)} elements, expected {expected}: phase dedup bug"
        )

    elements = [CliffordElement(i, M) for i, M in enumerate(mats)]
    table = CliffordTable(
        dim=dim,
        elements=elements,
        inverse=np.zeros(expected, dtype=np.int32),
        compose_table=np.zeros((expected, expected), dtype=np.int32),
        identity_index=0,
    )
    table.identity_index = table.lookup(np.eye(dim, dtype=complex))

    stack = np.stack(mats)  # (N, d, d)
    for i, Mi in enumerate(mats):
        products = np.einsum("ab,nbc->nac", Mi, stack)
        for j in range(expected):
            table.compose_table[i, j] = table.lookup(products[j])
        table.inverse[i] = table.lookup(Mi.conj().T)
    return table


def verify_group_structure(table: CliffordTable, closure_samples: int = 1000, seed: int = 0) -> None:
    """Re-verify unitarity, inverses, and (sampled) closure; raise on failure."""
    expected = GROUP_ORDER[table.dim]
    if table.size != expected:
        raise ValueError(f"table has {table.size} elements, expected {expected}")
    for el in table.elements:
        if not is_unitary(el.matrix, 1e-10):
            raise ValueError(f"element {el.index} is not unitary")
    ident = table.matrix(table.identity_index)
    if not global_phase_equal(ident, np.eye(table.dim, dtype=complex), 1e-9):
        raise ValueError("identity index does not hold the identity")
    for i in range(table.size):
        if table.compose(i, table.inverse_index(i)) != table.identity_index:
            raise ValueError(f"inverse of element {i} fails compose(i, inv(i)) == id")
    rng = np.random.default_rng(seed)
    for _ in range(closure_samples):
        i, j = (int(v) for v in rng.integers(0, table.size, size=2))
        prod = table.matrix(i) @ table.matrix(j)
        if not global_phase_equal(prod, table.matrix(table.compose(i, j)), PHASE_TOL):
            raise ValueError(f"composition table wrong at ({i}, {j})")


def clifford_lookup(U: np.ndarray, table: CliffordTable) -> int:
    return table.lookup(U)


def random_clifford(table: CliffordTable, rng: np.random.Generator) -> int:
    """Uniform index into the table."""
    return int(rng.integers(0, table.size))


# ---------------------------------------------------------------------------
# cache artifact


def _matrix_to_pairs(M: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in M]


def _pairs_to_matrix(pairs: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in pairs])


def table_to_dict(table: CliffordTable) -> dict:
    from .compiler import sequence_to_dict

    return {
        "format_version": CACHE_FORMAT_VERSION,
        "dim": table.dim,
        "identity_index": table.identity_index,
        "elements": [
            {
                "index": el.index,
                "matrix": _matrix_to_pairs(el.matrix),
                "pulse_sequence": None
                if el.pulse_sequence is None
                else sequence_to_dict(el.pulse_sequence),
            }
            for el in table.elements
        ],
        "inverse": table.inverse.tolist(),
        "compose": table.compose_table.tolist(),
    }


def table_from_dict(data: dict) -> CliffordTable:
    from .compiler import sequence_from_dict

    if data.get("format_version") != CACHE_FORMAT_VERSION:
        raise ValueError(f"unsupported table format {data.get('format_version')}")
    elements = [
        CliffordElement(
            e["index"],
            _pairs_to_matrix(e["matrix"]),
            None if e.get("pulse_sequence") is None else sequence_from_dict(e["pulse_sequence"]),
        )
        for e in data["elements"]
    ]
    table = CliffordTable(
        dim=data["dim"],
        elements=elements,
        inverse=np.asarray(data["inverse"], dtype=np.int32),
        compose_table=np.asarray(data["compose"], dtype=np.int32),
        identity_index=data["identity_index"],
    )
    verify_group_structure(table)
    return table


def default_cache_path(dim: int = 3) -> Path:
    base = os.environ.get("QUTRIT_RB_CACHE_DIR")
    root = Path(base) if base else Path.home() / ".cache" / "qutrit-rb"
    return root / f"clifford_table_d{dim}_v{CACHE_FORMAT_VERSION}.json"


def load_or_generate(dim: int = 3, cache_path: Path | None = None, compile_pulses: bool = True) -> CliffordTable:
    """Load the (compiled) table from cache, regenerating and rewriting on any mismatch."""
    from .compiler import compile_clifford_table

    path = cache_path or default_cache_path(dim)
    if path.exists():
        try:
            table = table_from_dict(json.loads(path.read_text()))
            if not compile_pulses or all(el.pulse_sequence is not None for el in table.elements):
                return table
        except (ValueError, KeyError, json.JSONDecodeError):
            pass  # stale or corrupt cache: fall through and regenerate
    table = generate_clifford_table(dim)
    if compile_pulses:
        compile_clifford_table(table)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(table_to_dict(table)))
    tmp.replace(path)
    return table

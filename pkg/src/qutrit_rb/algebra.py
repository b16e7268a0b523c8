"""Dense complex linear algebra for qutrit registers.

Everything in this package works on plain ``numpy`` complex arrays of
dimension ``3**n`` (``n`` = 1 or 2 qutrits).  This module provides the shared
primitives: global-phase-aware comparison and canonicalization, density-matrix
evolution under unitaries and Kraus channels, Kronecker products, and
reproducible multinomial readout sampling.

All functions are pure; sampling takes an explicit integer seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OMEGA = np.exp(2j * np.pi / 3)

#: tolerance below which accumulated roundoff negativity in populations is clipped
NEGATIVITY_TOL = 1e-9


def is_power_of_three(dim: int) -> bool:
    while dim % 3 == 0:
        dim //= 3
    return dim == 1


def n_qutrits_of(dim: int) -> int:
    n = 0
    while dim > 1:
        if dim % 3:
            raise ValueError(f"dimension {dim} is not a power of 3")
        dim //= 3
        n += 1
    return max(n, 1)


def basis_state(dim: int, level: int) -> np.ndarray:
    """Density matrix |level><level| of the given dimension."""
    rho = np.zeros((dim, dim), dtype=complex)
    rho[level, level] = 1.0
    return rho


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def is_unitary(U: np.ndarray, tol: float = 1e-10) -> bool:
    return np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))) <= tol


def validate_density(rho: np.ndarray, tol: float = 1e-10) -> None:
    """Check trace one, Hermiticity, and positivity (up to roundoff)."""
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"density matrix trace {np.trace(rho)} != 1")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    if np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2)) < -NEGATIVITY_TOL:
        raise ValueError("density matrix has a significantly negative eigenvalue")


def _anchor_index(M: np.ndarray, tie_tol: float = 1e-12) -> int:
    """Row-major index of the first entry within tie_tol of the max magnitude."""
    mags = np.abs(M).ravel()
    return int(np.argmax(mags >= mags.max() - tie_tol))


def canonical_phase(U: np.ndarray) -> np.ndarray:
    """Rescale U by a unit phase so its largest-magnitude entry is real positive.

    Ties (within 1e-12 of the max magnitude) break to the first entry in
    row-major order, which makes the choice stable across different
    floating-point routes to the same matrix.  Idempotent.
    """
    flat = U.ravel()
    idx = _anchor_index(U)
    entry = flat[idx]
    if entry == 0:
        raise ValueError("cannot canonicalize the zero matrix")
    return U * (abs(entry) / entry)


def global_phase_equal(U: np.ndarray, V: np.ndarray, tol: float) -> bool:
    """True iff U == phi*V for some unit phase phi, to max-abs tolerance tol.

    The candidate phase is read off the largest-magnitude entry of V (stable
    against near-zero entries), then checked entrywise.
    """
    if U.shape != V.shape:
        raise ValueError(f"shape mismatch {U.shape} vs {V.shape}")
    idx = _anchor_index(V)
    denom = V.ravel()[idx]
    phi = U.ravel()[idx] / denom
    mag = abs(phi)
    if abs(mag - 1.0) > max(tol * 10, 1e-6):
        return False
    phi /= mag
    return bool(np.max(np.abs(U - phi * V)) <= tol)


def apply_unitary(rho: np.ndarray, U: np.ndarray) -> np.ndarray:
    if rho.shape != U.shape:
        raise ValueError(f"dimension mismatch: rho {rho.shape}, U {U.shape}")
    return U @ rho @ U.conj().T


def apply_kraus(rho: np.ndarray, kraus: list[np.ndarray]) -> np.ndarray:
    """Apply sum_k K rho K^dag after checking trace preservation."""
    dim = rho.shape[0]
    total = sum(K.conj().T @ K for K in kraus)
    if np.max(np.abs(total - np.eye(dim))) > 1e-10:
        raise ValueError("Kraus set is not trace preserving")
    out = np.zeros_like(rho)
    for K in kraus:
        out += K @ rho @ K.conj().T
    return out


def tensor(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.kron(A, B)


def embed_on_qutrit(U: np.ndarray, qutrit: int, n_qutrits: int) -> np.ndarray:
    """Extend a single-qutrit operator to the n-qutrit space (qutrit 0 leftmost)."""
    ops = [np.eye(3, dtype=complex)] * n_qutrits
    ops[qutrit] = U
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def index_to_ternary(index: int, n_qutrits: int) -> str:
    digits = []
    for _ in range(n_qutrits):
        digits.append(str(index % 3))
        index //= 3
    return "".join(reversed(digits))


@dataclass(frozen=True)
class MeasurementCounts:
    """Shot counts over ternary outcome strings (qutrit 0 is the leftmost digit)."""

    n_qutrits: int
    counts: dict[str, int]
    shots: int

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")

    def frequency(self, outcome: str) -> float:
        return self.counts.get(outcome, 0) / self.shots

    def frequencies(self) -> np.ndarray:
        """Frequency vector over all 3**n outcomes in computational order."""
        dim = 3**self.n_qutrits
        freq = np.zeros(dim)
        for outcome, c in self.counts.items():
            freq[int(outcome, 3)] = c / self.shots
        return freq

    def marginal(self, qutrit: int) -> np.ndarray:
        """Marginal outcome frequencies (length 3) of one qutrit."""
        freq = np.zeros(3)
        for outcome, c in self.counts.items():
            freq[int(outcome[qutrit])] += c / self.shots
        return freq


def clip_probabilities(diag: np.ndarray) -> np.ndarray:
    """Clip tiny negative populations (roundoff from long Kraus chains) and renormalize."""
    probs = np.real(diag).copy()
    if probs.min() < -NEGATIVITY_TOL:
        raise ValueError(f"population {probs.min()} below the -{NEGATIVITY_TOL} clip threshold")
    probs[probs < 0] = 0.0
    return probs / probs.sum()


def sample_counts(rho: np.ndarray, shots: int, seed: int) -> MeasurementCounts:
    """Multinomial readout sample over the diagonal of rho; deterministic in seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = clip_probabilities(np.diag(rho))
    rng = np.random.default_rng(seed)
    raw = rng.multinomial(shots, probs)
    n = n_qutrits_of(rho.shape[0])
    counts = {
        index_to_ternary(i, n): int(c) for i, c in enumerate(raw) if c > 0
    }
    return MeasurementCounts(n_qutrits=n, counts=counts, shots=shots)


def haar_random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))

"""Symbolic qutrit Pauli group.

The single-qutrit Pauli group is generated by the shift X (X|j> = |j-1 mod 3>,
i.e. column j of the matrix below carries a 1 in row j-1) and the clock
Z = diag(1, w, w^2) with w = exp(2*pi*i/3).  Every element is w^phi * X^a Z^b
and satisfies P^3 = I and P^dagger = P^2.

Labels track (a, b) exponents per qutrit plus an integer power of w.  Label
arithmetic is exact; the ZX reordering constant is *derived* from the matrices
at import time rather than assumed, and the label/matrix homomorphism is
checked against dense products in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import OMEGA, global_phase_equal

X_MATRIX = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
Z_MATRIX = np.diag([1, OMEGA, OMEGA**2]).astype(complex)


def _derive_commutation_exponent() -> int:
    """Solve Z X = w^kappa X Z from the dense matrices."""
    zx = Z_MATRIX @ X_MATRIX
    xz = X_MATRIX @ Z_MATRIX
    for k in range(3):
        if np.max(np.abs(zx - OMEGA**k * xz)) < 1e-12:
            return k
    raise AssertionError("Z and X do not satisfy a w-power commutation relation")


#: kappa with Z X = w^kappa X Z, fixed by the matrices above
KAPPA = _derive_commutation_exponent()


@dataclass(frozen=True)
class PauliLabel:
    """n-qutrit Pauli w^phase_exp * tensor_i X^xs[i] Z^zs[i]."""

    xs: tuple[int, ...]
    zs: tuple[int, ...]
    phase_exp: int = 0

    def __post_init__(self) -> None:
        if len(self.xs) != len(self.zs):
            raise ValueError("xs and zs must have equal length")
        object.__setattr__(self, "xs", tuple(a % 3 for a in self.xs))
        object.__setattr__(self, "zs", tuple(b % 3 for b in self.zs))
        object.__setattr__(self, "phase_exp", self.phase_exp % 3)

    @property
    def n_qutrits(self) -> int:
        return len(self.xs)

    @property
    def exponents(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.xs, self.zs))

    def is_identity(self) -> bool:
        return all(a == 0 and b == 0 for a, b in self.exponents)

    def weight(self) -> int:
        """Number of qutrits on which the label acts nontrivially."""
        return sum(1 for a, b in self.exponents if a or b)

    def without_phase(self) -> "PauliLabel":
        return PauliLabel(self.xs, self.zs, 0)

    def name(self) -> str:
        """Human-readable name, one token per qutrit joined by '.'."""
        return ".".join(_EXPONENT_NAMES[(a, b)] for a, b in self.exponents)


_EXPONENT_NAMES = {
    (0, 0): "I",
    (1, 0): "X",
    (2, 0): "X2",
    (0, 1): "Z",
    (0, 2): "Z2",
    (1, 1): "Y",
    (2, 2): "Y2",
    (1, 2): "V",
    (2, 1): "V2",
}
_NAME_EXPONENTS = {v: k for k, v in _EXPONENT_NAMES.items()}


def pauli_from_name(name: str) -> PauliLabel:
    pairs = [_NAME_EXPONENTS[tok] for tok in name.split(".")]
    return PauliLabel(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))


def identity_label(n_qutrits: int) -> PauliLabel:
    return PauliLabel((0,) * n_qutrits, (0,) * n_qutrits)


@lru_cache(maxsize=None)
def _single_qutrit_matrix(a: int, b: int) -> np.ndarray:
    M = np.linalg.matrix_power(X_MATRIX, a) @ np.linalg.matrix_power(Z_MATRIX, b)
    M.setflags(write=False)
    return M


def pauli_matrix(p: PauliLabel) -> np.ndarray:
    """Dense matrix realization of a label."""
    out = np.array([[OMEGA**p.phase_exp]], dtype=complex)
    for a, b in p.exponents:
        out = np.kron(out, _single_qutrit_matrix(a, b))
    return out


def pauli_mul(p: PauliLabel, q: PauliLabel) -> PauliLabel:
    """Label of pauli_matrix(p) @ pauli_matrix(q), with exact phase tracking.

    Per qutrit, moving Z^b past X^c costs w^(KAPPA*b*c).
    """
    if p.n_qutrits != q.n_qutrits:
        raise ValueError("qutrit count mismatch")
    phase = p.phase_exp + q.phase_exp
    xs, zs = [], []
    for (a1, b1), (a2, b2) in zip(p.exponents, q.exponents):
        phase += KAPPA * b1 * a2
        xs.append((a1 + a2) % 3)
        zs.append((b1 + b2) % 3)
    return PauliLabel(tuple(xs), tuple(zs), phase % 3)


def pauli_adjoint(p: PauliLabel) -> PauliLabel:
    """Label of P^dagger (which for qutrit Paulis equals P^2)."""
    xs = tuple((-a) % 3 for a in p.xs)
    zs = tuple((-b) % 3 for b in p.zs)
    phase = -p.phase_exp + KAPPA * sum(a * b for a, b in zip(xs, zs))
    return PauliLabel(xs, zs, phase % 3)


def conjugate_by_pauli(r: PauliLabel, q: PauliLabel) -> tuple[int, PauliLabel]:
    """R Q R^dagger for Pauli R: returns (k, Q) with the result w^k * Q.

    Paulis conjugate Paulis to themselves up to a phase; the exponent follows
    from pure label arithmetic (no dense matrices).
    """
    out = pauli_mul(pauli_mul(r, q), pauli_adjoint(r))
    assert (out.xs, out.zs) == (q.xs, q.zs)
    return (out.phase_exp - q.phase_exp) % 3, q


def all_labels(n_qutrits: int) -> list[PauliLabel]:
    """All 9^n phase-free labels in a fixed (lexicographic) order."""
    out = []
    for pattern in itertools.product(range(3), repeat=2 * n_qutrits):
        xs = pattern[0::2]
        zs = pattern[1::2]
        out.append(PauliLabel(xs, zs))
    return out


def conjugate_pauli(g: np.ndarray, p: PauliLabel) -> tuple[int, PauliLabel]:
    """Conjugate a Pauli by a Clifford matrix: g P g^dag = w^k * matrix(q).

    Scans all phase-free labels of the matching dimension for a global-phase
    match at tolerance 1e-8 and snaps the phase to an exact power of w (any
    unit-modulus residual beyond 1e-8 is an error: the conjugation of a Pauli
    by a qutrit Clifford always stays inside the w-phase Pauli group).

    Raises ``ValueError`` when no Pauli matches, i.e. g is not Clifford.
    """
    n = p.n_qutrits
    if g.shape[0] != 3**n:
        raise ValueError("dimension mismatch between g and p")
    M = g @ pauli_matrix(p) @ g.conj().T
    for q in all_labels(n):
        N = pauli_matrix(q)
        # anchor on a guaranteed-nonzero entry of the candidate
        idx = int(np.argmax(np.abs(N).ravel()))
        c = M.ravel()[idx] / N.ravel()[idx]
        if abs(abs(c) - 1.0) > 1e-8:
            continue
        if np.max(np.abs(M - c * N)) <= 1e-8:
            k = int(np.round(np.angle(c) / (2 * np.pi / 3))) % 3
            if abs(c - OMEGA**k) > 1e-8:
                raise ValueError(f"conjugation phase {c} is not a power of w")
            return k, q
    raise ValueError("g does not conjugate the Pauli group into itself (not Clifford)")


def is_clifford(g: np.ndarray, n_qutrits: int) -> bool:
    """Check the defining normalizer property on the X/Z generators of each qutrit."""
    try:
        for q in range(n_qutrits):
            xs = tuple(1 if i == q else 0 for i in range(n_qutrits))
            zs = tuple(1 if i == q else 0 for i in range(n_qutrits))
            conjugate_pauli(g, PauliLabel(xs, (0,) * n_qutrits))
            conjugate_pauli(g, PauliLabel((0,) * n_qutrits, zs))
    except ValueError:
        return False
    return True


def random_pauli(n_qutrits: int, rng: np.random.Generator) -> PauliLabel:
    """Uniform over the 9^n exponent patterns, phase exponent 0."""
    xs = tuple(int(v) for v in rng.integers(0, 3, size=n_qutrits))
    zs = tuple(int(v) for v in rng.integers(0, 3, size=n_qutrits))
    return PauliLabel(xs, zs)


def conjugate_pair_representative(p: PauliLabel) -> PauliLabel:
    """Canonical representative of the {Q, Q^dagger} pair (phase dropped)."""
    q = p.without_phase()
    adj = pauli_adjoint(q).without_phase()
    return min(q, adj, key=lambda l: (l.xs, l.zs))


def _self_check() -> None:
    # P^3 = I with zero phase, and adjoint == square, for all single-qutrit labels
    for lab in all_labels(1):
        cube = pauli_mul(pauli_mul(lab, lab), lab)
        assert cube == identity_label(1), lab
        assert pauli_adjoint(lab) == pauli_mul(lab, lab), lab
    # the label of Z*X must reproduce the dense product exactly, phase included
    zx = pauli_mul(PauliLabel((0,), (1,)), PauliLabel((1,), (0,)))
    assert np.max(np.abs(pauli_matrix(zx) - Z_MATRIX @ X_MATRIX)) < 1e-12
    assert global_phase_equal(pauli_matrix(PauliLabel((1,), (1,))), Z_MATRIX @ X_MATRIX, 1e-12)


_self_check()

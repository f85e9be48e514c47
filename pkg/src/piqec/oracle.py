"""Dense 2^n reference simulator used to cross-check the exact conditions.

Basis index convention: qubit 1 is the most significant bit, so basis state
``|x_1 x_2 ... x_n>`` sits at index ``int("x_1...x_n", 2)``.  Qubit positions in
this module are 1-based like in the operator notation ``A_{E,<c|}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .picode import PICode

MAX_QUBITS = 24
MAX_DENSITY_QUBITS = 12

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class DenseState:
    n: int
    amp: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def tensor(self) -> np.ndarray:
        return self.amp.reshape((2,) * self.n) if self.n else self.amp.reshape(())


@dataclass(frozen=True)
class DenseOperatorSpec:
    """An error operator: a Pauli string or a deletion bra ``A_{E,<c|}``.

    ``kind`` is ``"pauli"`` (``paulis`` = ((position, "X"|"Y"|"Z"), ...)) or
    ``"bra"`` (``positions`` = E, ``bits`` = c).  Positions are 1-based.
    """

    kind: str
    paulis: tuple[tuple[int, str], ...] = ()
    positions: tuple[int, ...] = ()
    bits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == "pauli":
            pos = [p for p, _ in self.paulis]
            if len(set(pos)) != len(pos) or any(l not in "XYZ" or len(l) != 1 for _, l in self.paulis):
                raise OracleError(f"bad Pauli placement {self.paulis}")
        elif self.kind == "bra":
            if len(set(self.positions)) != len(self.positions) or len(self.bits) != len(self.positions):
                raise OracleError("bra spec needs distinct positions and one bit each")
            if any(b not in (0, 1) for b in self.bits):
                raise OracleError("bra bits must be 0 or 1")
        else:
            raise OracleError(f"unknown operator kind {self.kind!r}")

    def validate(self, n: int) -> None:
        pos = [p for p, _ in self.paulis] if self.kind == "pauli" else list(self.positions)
        if any(p < 1 or p > n for p in pos):
            raise OracleError(f"positions {pos} outside 1..{n}")

    @classmethod
    def pauli(cls, *placements: tuple[int, str]) -> "DenseOperatorSpec":
        return cls("pauli", paulis=tuple(sorted(placements)))

    @classmethod
    def bra(cls, positions: Sequence[int], bits: Sequence[int]) -> "DenseOperatorSpec":
        return cls("bra", positions=tuple(positions), bits=tuple(bits))


def _guard(n: int, limit: int = MAX_QUBITS) -> None:
    if n > limit:
        raise OracleError(f"n={n} exceeds dense-simulation guard of {limit} qubits")


def _popcounts(n: int) -> np.ndarray:
    idx = np.arange(2**n, dtype=np.int64)
    counts = np.zeros(2**n, dtype=np.int64)
    for k in range(n):
        counts += (idx >> k) & 1
    return counts


def expand_dicke(n: int, w: int) -> DenseState:
    _guard(n)
    if not 0 <= w <= n:
        raise OracleError(f"weight {w} outside 0..{n}")
    amp = np.zeros(2**n, dtype=complex)
    amp[_popcounts(n) == w] = 1 / np.sqrt(comb(n, w))
    return DenseState(n, amp)


def expand_coefficients(n: int, alpha: Sequence[float], beta: Sequence[float]) -> tuple[DenseState, DenseState]:
    """Dense codewords from (floating) Dicke coefficient vectors."""
    _guard(n)
    weights = _popcounts(n)
    scale = np.array([1 / np.sqrt(comb(n, w)) for w in range(n + 1)])
    a = np.asarray(alpha, dtype=float) * scale
    b = np.asarray(beta, dtype=float) * scale
    return DenseState(n, a[weights].astype(complex)), DenseState(n, b[weights].astype(complex))


def expand_code(code: PICode) -> tuple[DenseState, DenseState]:
    alpha, beta = code.float_coefficients()
    return expand_coefficients(code.n, alpha, beta)


def apply_pauli(state: DenseState, spec: DenseOperatorSpec) -> DenseState:
    if spec.kind != "pauli":
        raise OracleError("apply_pauli needs a Pauli spec")
    spec.validate(state.n)
    psi = state.tensor()
    for pos, label in spec.paulis:
        psi = np.moveaxis(np.tensordot(_PAULI[label], psi, axes=([1], [pos - 1])), 0, pos - 1)
    return DenseState(state.n, psi.reshape(-1))


def apply_bra(state: DenseState, position: int, bit: int) -> DenseState:
    """Single-position deletion ``A_{i,<bit|}`` (F for bit 0, G for bit 1)."""
    if not 1 <= position <= state.n:
        raise OracleError(f"position {position} outside 1..{state.n}")
    psi = np.take(state.tensor(), bit, axis=position - 1)
    return DenseState(state.n - 1, np.asarray(psi).reshape(-1))


def apply_bra_string(state: DenseState, positions: Sequence[int], bits: Sequence[int]) -> DenseState:
    """``A_{E,<c|}`` as a product of single deletions, highest position first."""
    for pos, bit in sorted(zip(positions, bits), reverse=True):
        state = apply_bra(state, pos, bit)
    return state


def apply_operator(state: DenseState, spec: DenseOperatorSpec) -> DenseState:
    spec.validate(state.n)
    if spec.kind == "pauli":
        return apply_pauli(state, spec)
    return apply_bra_string(state, spec.positions, spec.bits)


def density(state: DenseState) -> np.ndarray:
    return np.outer(state.amp, state.amp.conj())


def delete_partial_trace(state: DenseState, E: Iterable[int]) -> np.ndarray:
    """Reduced density matrix after tracing out positions E, by definition."""
    E = sorted(set(E))
    n = state.n
    _guard(n, MAX_DENSITY_QUBITS)
    if any(e < 1 or e > n for e in E):
        raise OracleError(f"positions {E} outside 1..{n}")
    rho = density(state).reshape((2,) * (2 * n))
    k = n
    # trace the highest position first so lower labels stay valid
    for e in reversed(E):
        rho = np.trace(rho, axis1=e - 1, axis2=k + e - 1)
        k -= 1
    dim = 2**k
    return rho.reshape(dim, dim)


def delete_kraus(state: DenseState, E: Iterable[int]) -> np.ndarray:
    """``sum_c A_{E,<c|} rho A_{E,<c|}^dag`` over all bit strings c."""
    E = sorted(set(E))
    if any(e < 1 or e > state.n for e in E):
        raise OracleError(f"positions {E} outside 1..{state.n}")
    dim = 2 ** (state.n - len(E))
    out = np.zeros((dim, dim), dtype=complex)
    for bits in itertools.product((0, 1), repeat=len(E)):
        phi = apply_bra_string(state, E, bits).amp
        out += np.outer(phi, phi.conj())
    return out


# -- error sets ---------------------------------------------------------------


def pauli_errors(n: int, t: int) -> list[DenseOperatorSpec]:
    """All Pauli strings of weight <= t (identity included)."""
    out = [DenseOperatorSpec.pauli()]
    for w in range(1, t + 1):
        for pos in itertools.combinations(range(1, n + 1), w):
            for labels in itertools.product("XYZ", repeat=w):
                out.append(DenseOperatorSpec.pauli(*zip(pos, labels)))
    return out


def deletion_bra_errors(s: int, positions: Sequence[int] | None = None) -> list[DenseOperatorSpec]:
    """The 2^s bra operators deleting ``positions`` (default the first s qubits)."""
    positions = tuple(positions) if positions is not None else tuple(range(1, s + 1))
    return [DenseOperatorSpec.bra(positions, bits) for bits in itertools.product((0, 1), repeat=s)]


# -- Knill-Laflamme ------------------------------------------------------------


def gram_matrices(states: Sequence[DenseState], errors: Sequence[DenseOperatorSpec]) -> np.ndarray:
    """``G[a, b, i, j] = <c_i| A_a^dag A_b |c_j>``."""
    images = []
    for spec in errors:
        images.append(np.stack([apply_operator(s, spec).amp for s in states]))
    dims = {im.shape[1] for im in images}
    if len(dims) > 1:
        raise OracleError("error operators have different output dimensions")
    V = np.stack(images)  # (ops, codewords, dim)
    return np.einsum("aid,bjd->abij", V.conj(), V)


def kl_gram_check(code, errors: Sequence[DenseOperatorSpec], tol: float = 1e-10) -> dict:
    """Numerical Knill-Laflamme check.

    ``code`` is a :class:`PICode` or a ``(n, alpha, beta)`` triple of float
    coefficient vectors.  Passes when every cross term ``<c_0|A^dag B|c_1>`` and
    every diagonal mismatch ``<c_0|..|c_0> - <c_1|..|c_1>`` is below ``tol``.
    """
    if isinstance(code, PICode):
        n = code.n
        _guard(n)
        states = expand_code(code)
    else:
        n, alpha, beta = code
        states = expand_coefficients(n, alpha, beta)
    for spec in errors:
        spec.validate(n)
    G = gram_matrices(states, errors)
    k = G.shape[2]
    offdiag = max(
        (float(np.abs(G[:, :, i, j]).max()) for i in range(k) for j in range(k) if i != j),
        default=0.0,
    )
    diag = max(
        (float(np.abs(G[:, :, i, i] - G[:, :, 0, 0]).max()) for i in range(1, k)),
        default=0.0,
    )
    return {
        "passed": bool(offdiag < tol and diag < tol),
        "max_offdiag": offdiag,
        "max_diag_mismatch": diag,
        "gram": G,
    }


# -- amplitude damping ----------------------------------------------------------


def apply_ad_kraus(state: DenseState, support: Iterable[int], p: float) -> DenseState:
    """Product Kraus operator with A_1 on ``support`` and A_0 elsewhere."""
    A0 = np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex)
    A1 = np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex)
    support = set(support)
    psi = state.tensor()
    for pos in range(1, state.n + 1):
        op = A1 if pos in support else A0
        psi = np.moveaxis(np.tensordot(op, psi, axes=([1], [pos - 1])), 0, pos - 1)
    return DenseState(state.n, psi.reshape(-1))

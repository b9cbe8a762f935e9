"""Exact quantum states: dense amplitude vectors, symbolic coset labels, fidelities.

Basis-state indexing follows the package bit convention: the ket labelled by
the bit string ``b`` sits at amplitude index ``int(b, 2)``, so a ``BitVec``'s
``value`` is directly the index of its computational basis state.  Global
phases are tracked exactly where constructions produce them but every
acceptance-style quantity ignores them, as any projective measurement must.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Sequence, Union

import numpy as np

from .errors import BudgetExceededError
from .gf2 import BasisMap, BitVec, SubspaceBasis

if TYPE_CHECKING:
    from .codes import CodeSpec

# Dense allocation limits; callers may pass larger explicit budgets.
DEFAULT_PURE_QUBITS = 20
DEFAULT_MIXED_QUBITS = 14

ATOL_INVARIANT = 1e-9  # normalization, orthonormality, density checks
ATOL_EXACT = 1e-12  # self-consistency of exact constructions


def _check_pure_budget(n: int, max_qubits: int) -> None:
    if n > max_qubits:
        raise BudgetExceededError(f"{n} qubits exceed the dense budget of {max_qubits}")


class DenseState:
    """A pure n-qubit state as 2^n complex amplitudes."""

    __slots__ = ("n", "amplitudes")

    def __init__(self, n: int, amplitudes, *, check_norm: bool = True):
        arr = np.asarray(amplitudes, dtype=np.complex128)
        if arr.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} amplitudes for n={n}, got shape {arr.shape}")
        if check_norm:
            norm = float(np.linalg.norm(arr))
            if abs(norm - 1.0) > ATOL_INVARIANT:
                raise ValueError(f"state is not normalized: |psi| = {norm}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amplitudes", arr)

    def __setattr__(self, name, val):
        raise AttributeError("DenseState is immutable")

    @classmethod
    def basis_state(cls, n: int, b: BitVec | int) -> "DenseState":
        idx = b.value if isinstance(b, BitVec) else int(b)
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[idx] = 1.0
        return cls(n, amps)

    @classmethod
    def uniform(cls, n: int) -> "DenseState":
        amps = np.full(1 << n, 1.0 / math.sqrt(1 << n), dtype=np.complex128)
        return cls(n, amps)

    def amplitude(self, b: BitVec | int) -> complex:
        idx = b.value if isinstance(b, BitVec) else int(b)
        return complex(self.amplitudes[idx])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def support(self, atol: float = 0.0) -> list[BitVec]:
        idx = np.flatnonzero(np.abs(self.amplitudes) > atol)
        return [BitVec(self.n, int(i)) for i in idx]

    def __repr__(self) -> str:
        return f"DenseState(n={self.n}, support={len(self.support())})"


class MixedState:
    """A density matrix on n qubits, validated Hermitian, PSD, trace one."""

    __slots__ = ("n", "matrix")

    def __init__(self, n: int, matrix, *, validate: bool = True):
        mat = np.asarray(matrix, dtype=np.complex128)
        dim = 1 << n
        if mat.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix for n={n}")
        if validate:
            if not np.allclose(mat, mat.conj().T, atol=ATOL_INVARIANT):
                raise ValueError("density matrix is not Hermitian")
            tr = complex(np.trace(mat))
            if abs(tr - 1.0) > ATOL_INVARIANT:
                raise ValueError(f"density matrix has trace {tr}")
            eigs = np.linalg.eigvalsh(mat)
            if eigs.min() < -ATOL_INVARIANT:
                raise ValueError(f"density matrix has a negative eigenvalue {eigs.min()}")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", mat)

    def __setattr__(self, name, val):
        raise AttributeError("MixedState is immutable")

    @classmethod
    def maximally_mixed(cls, n: int, max_qubits: int = DEFAULT_MIXED_QUBITS) -> "MixedState":
        if n > max_qubits:
            raise BudgetExceededError(f"{n} qubits exceed the density budget of {max_qubits}")
        dim = 1 << n
        return cls(n, np.eye(dim, dtype=np.complex128) / dim, validate=False)

    @classmethod
    def from_pure(cls, st: DenseState) -> "MixedState":
        a = st.amplitudes
        return cls(st.n, np.outer(a, a.conj()), validate=False)

    def __repr__(self) -> str:
        return f"MixedState(n={self.n})"


State = Union[DenseState, MixedState]


@dataclass(frozen=True)
class CosetLabel:
    """Symbolic X^e Z^e' action on a code's subspace state, with exact global sign.

    O(n)-sized and exact; ``is_tolerated`` says whether both error weights
    stay within the code's tolerance q.  Arbitrary weights are legal (a
    wallet can hold an over-corrupted note), they just will not verify.
    """

    spec: "CodeSpec"
    e: BitVec
    e_prime: BitVec
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.e.n != self.spec.n or self.e_prime.n != self.spec.n:
            raise ValueError("error vector length differs from the code length")

    @property
    def is_tolerated(self) -> bool:
        return self.e.weight <= self.spec.q and self.e_prime.weight <= self.spec.q

    def compose_pauli(self, e: BitVec, e_prime: BitVec) -> "CosetLabel":
        """Label of X^e Z^e' applied on top of this state.

        Moving the new Z block past the old X block costs (-1)^(e'.e_old).
        """
        sign = self.sign * (-1 if e_prime.dot(self.e) else 1)
        return replace(self, e=self.e ^ e, e_prime=self.e_prime ^ e_prime, sign=sign)


def subspace_state(
    s: SubspaceBasis, max_qubits: int = DEFAULT_PURE_QUBITS
) -> DenseState:
    """Uniform superposition over all vectors of the subspace."""
    _check_pure_budget(s.n, max_qubits)
    values = np.array(s.vector_values(), dtype=np.int64)
    amps = np.zeros(1 << s.n, dtype=np.complex128)
    amps[values] = 1.0 / math.sqrt(len(values))
    return DenseState(s.n, amps)


def coset_state(
    s: SubspaceBasis,
    e: BitVec,
    e_prime: BitVec,
    sign: int = 1,
    max_qubits: int = DEFAULT_PURE_QUBITS,
) -> DenseState:
    """sign * X^e Z^e' applied to the subspace state: amplitudes sign*(-1)^(v.e') on v+e."""
    if e.n != s.n or e_prime.n != s.n:
        raise ValueError("error vector length differs from the ambient dimension")
    _check_pure_budget(s.n, max_qubits)
    values = np.array(s.vector_values(), dtype=np.int64)
    parity = (np.bitwise_count(values & np.int64(e_prime.value)) & 1).astype(np.float64)
    amps = np.zeros(1 << s.n, dtype=np.complex128)
    amps[values ^ np.int64(e.value)] = sign * (1.0 - 2.0 * parity) / math.sqrt(len(values))
    return DenseState(s.n, amps)


def coset_to_dense(label: CosetLabel, max_qubits: int = DEFAULT_PURE_QUBITS) -> DenseState:
    return coset_state(label.spec.code, label.e, label.e_prime, label.sign, max_qubits)


def apply_pauli(st: DenseState, e: BitVec, e_prime: BitVec) -> DenseState:
    """X^e Z^e' as an operator product on kets: phase from the pre-shift index.

    New amplitude at b+e is (-1)^(b.e') times the old amplitude at b.
    """
    if e.n != st.n or e_prime.n != st.n:
        raise ValueError("error vector length differs from the state size")
    idx = np.arange(1 << st.n, dtype=np.int64)
    parity = (np.bitwise_count(idx & np.int64(e_prime.value)) & 1).astype(np.float64)
    out = np.empty_like(st.amplitudes)
    out[idx ^ np.int64(e.value)] = (1.0 - 2.0 * parity) * st.amplitudes
    return DenseState(st.n, out, check_norm=False)


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis."""
    shape = a.shape
    size = shape[-1]
    a = a.reshape(-1, size).copy()
    h = 1
    while h < size:
        a = a.reshape(a.shape[0], -1, 2, h)
        top = a[:, :, 0, :] + a[:, :, 1, :]
        bottom = a[:, :, 0, :] - a[:, :, 1, :]
        a = np.stack([top, bottom], axis=2).reshape(a.shape[0], size)
        h *= 2
    return a.reshape(shape)


def hadamard_all(st: State) -> State:
    """Hadamard on every qubit; an involution.

    For a density matrix the transform conjugates both sides.
    """
    if isinstance(st, DenseState):
        out = fwht(st.amplitudes) / math.sqrt(1 << st.n)
        return DenseState(st.n, out, check_norm=False)
    scale = float(1 << st.n)
    mat = fwht(fwht(st.matrix).T).T / scale
    return MixedState(st.n, mat, validate=False)


def apply_basis_permutation(st: DenseState, b: BasisMap) -> DenseState:
    """The basis-permutation unitary of an invertible GF(2) map: |x> to |Bx>."""
    if b.n != st.n:
        raise ValueError("map dimension differs from the state size")
    idx = np.arange(1 << st.n, dtype=np.int64)
    images = np.zeros(1 << st.n, dtype=np.int64)
    for i in range(st.n):
        bit = (idx >> (st.n - 1 - i)) & 1
        images ^= bit * np.int64(b.column(i).value)
    out = np.empty_like(st.amplitudes)
    out[images] = st.amplitudes
    return DenseState(st.n, out, check_norm=False)


def inner(a: DenseState, b: DenseState) -> complex:
    """<a|b>, conjugating the first argument."""
    if a.n != b.n:
        raise ValueError("states act on different qubit counts")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def max_deviation(a: DenseState, b: DenseState) -> float:
    """Largest entrywise amplitude difference; exact state equality measure."""
    if a.n != b.n:
        raise ValueError("states act on different qubit counts")
    return float(np.abs(a.amplitudes - b.amplitudes).max())


def _clip_spectrum(eigs: np.ndarray) -> np.ndarray:
    """Zero out negative and numerically-spurious eigenvalues before sqrt."""
    out = np.clip(eigs, 0.0, None)
    floor = float(out.max(initial=0.0)) * 1e-13
    out[out < floor] = 0.0
    return out


def _sqrtm_psd(mat: np.ndarray) -> np.ndarray:
    eigs, vecs = np.linalg.eigh(mat)
    eigs = _clip_spectrum(eigs)
    return (vecs * np.sqrt(eigs)) @ vecs.conj().T


def fidelity(a: State, b: State) -> float:
    """Uhlmann fidelity; reduces to |<a|b>| for two pure states."""
    if a.n != b.n:
        raise ValueError("states act on different qubit counts")
    if isinstance(a, DenseState) and isinstance(b, DenseState):
        return abs(inner(a, b))
    if isinstance(a, DenseState):
        a, b = b, a
    if isinstance(b, DenseState):
        v = b.amplitudes
        val = float(np.real(np.vdot(v, a.matrix @ v)))
        return math.sqrt(max(val, 0.0))
    root = _sqrtm_psd(a.matrix)
    middle = root @ b.matrix @ root
    eigs = _clip_spectrum(np.linalg.eigvalsh(middle))
    return float(np.sqrt(eigs).sum())


def _basis_matrix(basis_states: Sequence[DenseState]) -> np.ndarray:
    if not basis_states:
        raise ValueError("need at least one basis state")
    n = basis_states[0].n
    if any(s.n != n for s in basis_states):
        raise ValueError("basis states act on different qubit counts")
    mat = np.stack([s.amplitudes for s in basis_states])
    gram = mat.conj() @ mat.T
    if not np.allclose(gram, np.eye(len(basis_states)), atol=ATOL_INVARIANT):
        raise ValueError("basis states are not orthonormal")
    return mat


def fidelity_with_span(st: State, basis_states: Sequence[DenseState]) -> float:
    """Fidelity of the state with the span of the given orthonormal states.

    Equals the largest overlap achievable with any unit vector of the span:
    sqrt(sum_i |<b_i|psi>|^2) for pure input, sqrt(sum_i <b_i|rho|b_i>) for
    mixed input.
    """
    mat = _basis_matrix(basis_states)
    if isinstance(st, DenseState):
        coeffs = mat.conj() @ st.amplitudes
        return float(np.sqrt((np.abs(coeffs) ** 2).sum()))
    overlaps = np.einsum("ix,xy,iy->i", mat.conj(), st.matrix, mat)
    return float(np.sqrt(max(np.real(overlaps.sum()), 0.0)))


def tolerated_coset_states(
    spec: "CodeSpec", max_qubits: int = DEFAULT_PURE_QUBITS
) -> list[DenseState]:
    """All tolerated noisy variants of the code's subspace state.

    Ordered with the bit-flip error as the major index and the phase-flip
    error as the minor one, both in lexicographic error order.  For an
    applicable code these states are pairwise orthonormal and span the
    acceptance subspace of the verifier.
    """
    from .codes import enumerate_errors

    errors = enumerate_errors(spec.n, spec.q)
    return [
        coset_state(spec.code, e, ep, max_qubits=max_qubits) for e in errors for ep in errors
    ]


def dump_state(st: DenseState) -> str:
    """One line per nonzero amplitude: '<bitstring> <re> <im>', in index order."""
    lines = []
    for i, amp in enumerate(st.amplitudes):
        if amp != 0:
            bits = format(i, f"0{st.n}b")
            lines.append(f"{bits} {amp.real:.17g} {amp.imag:.17g}")
    return "\n".join(lines) + "\n"


def load_state(text: str) -> DenseState:
    entries = []
    n = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        bits, re_s, im_s = line.split()
        if n is None:
            n = len(bits)
        elif len(bits) != n:
            raise ValueError("inconsistent bit-string lengths in state dump")
        entries.append((int(bits, 2), float(re_s), float(im_s)))
    if n is None:
        raise ValueError("empty state dump")
    amps = np.zeros(1 << n, dtype=np.complex128)
    for idx, re_v, im_v in entries:
        amps[idx] = complex(re_v, im_v)
    return DenseState(n, amps)

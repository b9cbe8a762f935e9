"""The noisy-projective mini-scheme: bank, serial registry, verifier, corrector.

The bank side is an OracleRegistry: a keyed deterministic map from bank
randomness r to a mint record (an applicable code, a distinct 3n-bit serial
and, on the conjugate route, a basis map plus the basis-choice string).
Everyone else interacts with a record only through its oracles: the serial
checker and the primal/dual membership testers, reached via a
charge-counting OracleSession.

Verification is the four-stage pipeline

    project onto tolerated bit-flip cosets, Hadamard everything, project
    onto tolerated phase-flip cosets (now bit-flips of the dual), Hadamard
    back,

whose composition is exactly the projector onto the span of all tolerated
noisy variants of the banknote state.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Union

import numpy as np

from .codes import (
    CodeSpec,
    certify,
    enumerate_errors,
    error_count,
    search_applicable_code,
)
from .errors import SerialCollisionError, UndecodableError, UnknownSerialError
from .gf2 import BasisMap, BitVec, Gf2Matrix, SubspaceBasis, random_bitvec
from .oracles import (
    CosetPredicate,
    ProjectionBranches,
    QueryLedger,
    apply_phase_oracle,
    project_via_control,
    subset_predicate,
    syndrome_predicate,
)
from .rng import Seed, as_generator, derive_sequence
from .states import (
    CosetLabel,
    DenseState,
    MixedState,
    State,
    apply_basis_permutation,
    apply_pauli,
    coset_to_dense,
    dump_state,
    fwht,
    hadamard_all,
    load_state,
    subspace_state,
    tolerated_coset_states,
)

BANKNOTE_FORMAT = "banknote-v1"
BANKKEY_FORMAT = "bankkey-v1"

DEFAULT_SERIAL_RETRIES = 64


@dataclass(frozen=True)
class Banknote:
    """A serial number and the money state a wallet holds for it."""

    serial: BitVec
    state: Union[DenseState, CosetLabel]

    @property
    def n(self) -> int:
        return self.serial.n // 3


@dataclass(frozen=True)
class MintRecord:
    """Bank-internal data for one banknote; never serialized toward wallets."""

    r: BitVec
    serial: BitVec
    spec: CodeSpec
    route: str  # "direct" | "conjugate"
    theta: BitVec | None = None
    basis_map: BasisMap | None = None

    def __post_init__(self):
        if self.route not in ("direct", "conjugate"):
            raise ValueError(f"unknown route {self.route!r}")
        if self.serial.n != 3 * self.spec.n:
            raise ValueError("serial length must be 3n")
        if self.route == "conjugate":
            if self.theta is None or self.basis_map is None:
                raise ValueError("conjugate records need theta and a basis map")
            if self.theta.weight != self.spec.n // 2:
                raise ValueError("theta must have weight n/2")
            selected = [self.basis_map.column(i) for i in self.theta.support()]
            if SubspaceBasis(self.spec.n, selected) != self.spec.code:
                raise ValueError("theta-selected basis columns do not span the code")


class VerifyOutcome(NamedTuple):
    accepted: bool
    accept_probability: float
    post_state: State | None
    reason: str | None = None


class DoubleVerifyOutcome(NamedTuple):
    accept_probability: float
    sampled: bool


class OracleSession:
    """Charge-counting access to one banknote's membership oracles.

    This is the only surface attack code may touch: predicates and
    projectors, never the code itself.  Every oracle use charges the
    session's ledger; the ledger is a value, so reading it at any point
    gives a consistent snapshot.
    """

    def __init__(self, registry: "OracleRegistry", serial: BitVec, approach: str = "subset"):
        if approach not in ("subset", "syndrome"):
            raise ValueError(f"unknown approach {approach!r}")
        record = registry.record_for_serial(serial)
        spec = record.spec
        make = subset_predicate if approach == "subset" else syndrome_predicate
        self._spec = spec
        self._primal = make(spec, "primal")
        self._dual = make(spec, "dual")
        self._coset_cache: dict[tuple[str, BitVec], CosetPredicate] = {}
        self.serial = serial
        self.approach = approach
        self.ledger = QueryLedger.fresh(error_count(spec.n, spec.q))

    @property
    def n(self) -> int:
        return self._spec.n

    def _charge(self, name: str, count: int = 1) -> None:
        self.ledger = self.ledger.charge(name, count)

    def member(self, side: str, x: BitVec) -> bool:
        pred = self._primal if side == "primal" else self._dual
        self._charge(side)
        return pred(x)

    def phase(self, side: str, st: State) -> State:
        pred = self._primal if side == "primal" else self._dual
        self._charge(side)
        return apply_phase_oracle(pred, st)

    def project(self, side: str, st: State) -> ProjectionBranches:
        pred = self._primal if side == "primal" else self._dual
        self._charge(side)
        return project_via_control(pred, st)

    def project_coset(self, side: str, error: BitVec, st: State) -> ProjectionBranches:
        key = (side, error)
        pred = self._coset_cache.get(key)
        if pred is None:
            pred = self._coset_cache[key] = CosetPredicate(self._spec, side, error)
        self._charge("coset")
        return project_via_control(pred, st)


class OracleRegistry:
    """The bank: lazy keyed generation of mint records and their public oracles."""

    def __init__(
        self,
        n: int,
        q: int,
        master_seed: int,
        *,
        route: str = "direct",
        max_attempts: int = 10_000,
        serial_retries: int = DEFAULT_SERIAL_RETRIES,
    ):
        if route not in ("direct", "conjugate"):
            raise ValueError(f"unknown route {route!r}")
        self.n = n
        self.q = q
        self.master_seed = int(master_seed)
        self.route = route
        self.max_attempts = max_attempts
        self.serial_retries = serial_retries
        self.records: dict[BitVec, MintRecord] = {}
        self.serial_index: dict[BitVec, BitVec] = {}
        self._tolerated_cache: dict[BitVec, np.ndarray] = {}
        # Stream for sampled accept/reject decisions when callers pass no rng.
        self._decision_rng = as_generator(derive_sequence(self.master_seed, 0xDEC1DE))

    # -- record generation ---------------------------------------------------

    def generate(self, r: BitVec) -> MintRecord:
        """The banknote generator: deterministic in (master_seed, r), cached.

        Serial distinctness is enforced actively: on a collision with an
        already-issued serial the whole derivation is redone with the next
        nonce.
        """
        if r.n != self.n:
            raise ValueError(f"r must have length n={self.n}")
        record = self.records.get(r)
        if record is not None:
            return record
        for nonce in range(self.serial_retries):
            seq = derive_sequence(self.master_seed, r.value, nonce)
            serial_seq, code_seq, basis_seq = seq.spawn(3)
            serial = random_bitvec(3 * self.n, as_generator(serial_seq))
            if serial in self.serial_index:
                continue
            spec = search_applicable_code(self.n, self.q, code_seq, self.max_attempts)
            theta = basis_map = None
            if self.route == "conjugate":
                theta, basis_map = _conjugate_parts(spec, as_generator(basis_seq))
            record = MintRecord(r, serial, spec, self.route, theta, basis_map)
            self._install(record)
            return record
        raise SerialCollisionError(
            f"could not find a fresh serial for r={r} in {self.serial_retries} tries"
        )

    def install_record(self, record: MintRecord, *, require_applicable: bool = True) -> None:
        """Register an externally-built record (worked examples, bank key files)."""
        if require_applicable and not certify(record.spec).passed:
            raise ValueError(
                "record's code fails certification; pass require_applicable=False to force"
            )
        if record.serial in self.serial_index and self.serial_index[record.serial] != record.r:
            raise SerialCollisionError(f"serial {record.serial} already issued")
        self._install(record)

    def _install(self, record: MintRecord) -> None:
        self.records[record.r] = record
        self.serial_index[record.serial] = record.r

    # -- public oracles -------------------------------------------------------

    def serial_check(self, z: BitVec) -> bool:
        """The serial number checker: 1 iff z was issued for some record."""
        if z.n != 3 * self.n:
            raise ValueError(f"serial length must be 3n={3 * self.n}")
        return z in self.serial_index

    def record_for_serial(self, z: BitVec) -> MintRecord:
        r = self.serial_index.get(z)
        if r is None:
            raise UnknownSerialError(str(z))
        return self.records[r]

    def session(self, serial: BitVec, approach: str = "subset") -> OracleSession:
        return OracleSession(self, serial, approach)

    def tester(self, side: str, z: BitVec, x: BitVec) -> bool:
        """The subset tester for serial z as a classical query.

        For an invalid serial the tester does nothing, which for a phase
        oracle means no sign flip: the predicate reads False.
        """
        if side not in ("primal", "dual"):
            raise ValueError(f"side must be primal or dual, got {side!r}")
        if not self.serial_check(z):
            return False
        spec = self.record_for_serial(z).spec
        return subset_predicate(spec, side)(x)

    def tolerated_matrix(self, serial: BitVec) -> np.ndarray:
        """Row-stacked amplitudes of all tolerated coset states for the serial's code."""
        mat = self._tolerated_cache.get(serial)
        if mat is None:
            spec = self.record_for_serial(serial).spec
            states = tolerated_coset_states(spec)
            mat = np.stack([s.amplitudes for s in states])
            mat.setflags(write=False)
            self._tolerated_cache[serial] = mat
        return mat


def _random_full_rank(rng: np.random.Generator, rows: int, n: int) -> list[BitVec]:
    while True:
        cand = [random_bitvec(n, rng) for _ in range(rows)]
        if SubspaceBasis(n, cand).dim == rows:
            return cand


def _conjugate_parts(spec: CodeSpec, rng: np.random.Generator) -> tuple[BitVec, BasisMap]:
    """Draw theta (weight n/2) and a basis whose theta-columns span the code."""
    n, k = spec.n, spec.n // 2
    positions = sorted(int(p) for p in rng.choice(n, size=k, replace=False))
    theta = BitVec.from_support(n, positions)
    # A uniformly random basis of the code: an invertible combination of its
    # RREF rows.
    mix = Gf2Matrix.from_rows(_random_full_rank(rng, k, k))
    inside = list(mix @ spec.code.basis)
    # Complete with random outside columns until the whole matrix is invertible.
    while True:
        outside = [random_bitvec(n, rng) for _ in range(n - k)]
        columns: list[BitVec] = []
        it_in = iter(inside)
        it_out = iter(outside)
        for i in range(n):
            columns.append(next(it_in) if theta.bit(i) else next(it_out))
        try:
            bmap = BasisMap.from_columns(columns)
        except ValueError:
            continue
        return theta, bmap


# -- minting -------------------------------------------------------------------


def mint_direct(registry: OracleRegistry, r: BitVec) -> Banknote:
    """Mint by preparing the code's subspace state directly."""
    record = registry.generate(r)
    return Banknote(record.serial, subspace_state(record.spec.code))


def mint_conjugate(
    registry: OracleRegistry, r: BitVec, x: BitVec | None = None, *, test_mode: bool = False
) -> Banknote:
    """Mint by preparing conjugate coding qubits and permuting basis states.

    Qubit i is |x_i> in the computational basis where theta_i = 0 and
    H|x_i> where theta_i = 1; the record's basis map then permutes the
    computational basis.  Scheme-conformant minting requires x = 0, which
    lands exactly on the code's subspace state; any other x is only allowed
    in test mode and produces a coset state of the code.
    """
    record = registry.generate(r)
    if record.route != "conjugate":
        raise ValueError("record was generated for the direct route")
    n = record.spec.n
    if x is None:
        x = BitVec.zeros(n)
    if x.n != n:
        raise ValueError(f"x must have length {n}")
    if x.value != 0 and not test_mode:
        raise ValueError("x != 0 is only allowed in test mode; banknotes need x = 0")
    state = conjugate_coding_state(x, record.theta)
    state = apply_basis_permutation(state, record.basis_map)
    return Banknote(record.serial, state)


def conjugate_coding_state(x: BitVec, theta: BitVec) -> DenseState:
    """The product state with qubit i in basis theta_i showing value x_i."""
    if x.n != theta.n:
        raise ValueError("x and theta lengths differ")
    amps = np.array([1.0], dtype=np.complex128)
    h = 1.0 / math.sqrt(2.0)
    for i in range(x.n):
        if theta.bit(i):
            local = np.array([h, -h if x.bit(i) else h], dtype=np.complex128)
        else:
            local = np.array(
                [0.0, 1.0] if x.bit(i) else [1.0, 0.0], dtype=np.complex128
            )
        amps = np.kron(amps, local)
    return DenseState(x.n, amps, check_norm=False)


def conjugate_coset_parameters(
    basis_map: BasisMap, theta: BitVec, x: BitVec
) -> tuple[BitVec, BitVec]:
    """The (t, t') for which the permuted conjugate-coding state is X^t Z^t' |A>.

    Here A is the span of the basis columns at Hadamard positions; t sums
    basis columns over computational positions, t' sums dual-basis rows over
    Hadamard positions.
    """
    n = basis_map.n
    if theta.n != n or x.n != n:
        raise ValueError("theta and x must match the basis-map dimension")
    dual_rows = basis_map.dual_basis()
    t = BitVec.zeros(n)
    t_prime = BitVec.zeros(n)
    for i in range(n):
        if not x.bit(i):
            continue
        if theta.bit(i):
            t_prime = t_prime ^ dual_rows.row(i)
        else:
            t = t ^ basis_map.column(i)
    return t, t_prime


# -- corruption ------------------------------------------------------------------


def corrupt(note: Banknote, e: BitVec, e_prime: BitVec) -> Banknote:
    """Apply the Pauli noise X^e Z^e' to the note's state, any weights allowed."""
    if isinstance(note.state, CosetLabel):
        return Banknote(note.serial, note.state.compose_pauli(e, e_prime))
    return Banknote(note.serial, apply_pauli(note.state, e, e_prime))


def random_corruption(n: int, weight: int, seed: Seed) -> tuple[BitVec, BitVec]:
    """Uniform bit-flip and phase-flip patterns of the given exact weight."""
    if not 0 <= weight <= n:
        raise ValueError("weight out of range")
    rng = as_generator(seed)
    e = BitVec.from_support(n, (int(i) for i in rng.choice(n, size=weight, replace=False)))
    ep = BitVec.from_support(n, (int(i) for i in rng.choice(n, size=weight, replace=False)))
    return e, ep


# -- verification -----------------------------------------------------------------


def _as_state(note_state: Union[DenseState, CosetLabel, MixedState]) -> State:
    if isinstance(note_state, CosetLabel):
        return coset_to_dense(note_state)
    return note_state


def apply_verifier(state: State, primal_pred, dual_pred) -> tuple[float, State | None]:
    """Run the four-stage verification pipeline on a dense or mixed state.

    Returns the exact acceptance probability (product of the two projective
    stage probabilities) and the accepted-branch post-state, already rotated
    back to the computational basis; None when the probability is zero.
    """
    prob1, branch, _ = project_via_control(primal_pred, state)
    if branch is None:
        return 0.0, None
    rotated = hadamard_all(branch)
    prob2, branch2, _ = project_via_control(dual_pred, rotated)
    if branch2 is None:
        return 0.0, None
    return prob1 * prob2, hadamard_all(branch2)


def verify(
    registry: OracleRegistry,
    note: Banknote,
    *,
    approach: str = "subset",
    rng: Seed | None = None,
    session: OracleSession | None = None,
) -> VerifyOutcome:
    """Ver: reject unknown serials, then run the projective pipeline.

    The outcome carries both the exact acceptance probability and one
    sampled decision; the post-state is the accepted branch whenever it
    exists, regardless of how the sample came out.
    """
    if not registry.serial_check(note.serial):
        return VerifyOutcome(False, 0.0, None, reason="unknown serial")
    if session is None:
        session = registry.session(note.serial, approach)
    state = _as_state(note.state)
    session._charge("primal")
    session._charge("dual")
    prob, post = apply_verifier(state, session._primal, session._dual)
    accepted = _sample(registry, rng, prob)
    return VerifyOutcome(accepted, prob, post)


def _sample(registry: OracleRegistry, rng: Seed | None, prob: float) -> bool:
    gen = registry._decision_rng if rng is None else as_generator(rng)
    return bool(gen.random() < prob)


def double_verify(
    registry: OracleRegistry,
    serial: BitVec,
    joint: Union[DenseState, MixedState, tuple],
    *,
    rng: Seed | None = None,
    session: OracleSession | None = None,
) -> DoubleVerifyOutcome:
    """Ver2: verify two (possibly entangled) registers under one serial number.

    The acceptance probability is the squared fidelity of the joint state
    with the two-fold tensor power of the tolerated span.  The joint state
    is either a 2n-qubit DenseState or MixedState, or a pair (sigma1,
    sigma2) meaning the product state sigma1 (x) sigma2.
    """
    record = registry.record_for_serial(serial)  # raises UnknownSerialError
    if session is None:
        session = registry.session(serial)
    session._charge("primal", 2)
    session._charge("dual", 2)
    mat = registry.tolerated_matrix(serial)
    n = record.spec.n

    if isinstance(joint, tuple):
        sigma1, sigma2 = joint
        prob = _register_probability(mat, sigma1, n) * _register_probability(mat, sigma2, n)
    elif isinstance(joint, DenseState):
        if joint.n != 2 * n:
            raise ValueError(f"joint state must act on 2n={2 * n} qubits")
        grid = joint.amplitudes.reshape(1 << n, 1 << n)
        coeffs = mat.conj() @ grid @ mat.conj().T
        prob = float((np.abs(coeffs) ** 2).sum())
    elif isinstance(joint, MixedState):
        if joint.n != 2 * n:
            raise ValueError(f"joint state must act on 2n={2 * n} qubits")
        dim = 1 << n
        rho = joint.matrix.reshape(dim, dim, dim, dim)
        prob = float(
            np.real(
                np.einsum(
                    "ix,jy,xyuv,iu,jv->",
                    mat.conj(),
                    mat.conj(),
                    rho,
                    mat,
                    mat,
                    optimize=True,
                )
            )
        )
    else:
        raise TypeError(f"unsupported joint state type {type(joint).__name__}")

    prob = min(max(prob, 0.0), 1.0)
    return DoubleVerifyOutcome(prob, _sample(registry, rng, prob))


def _register_probability(mat: np.ndarray, sigma: State, n: int) -> float:
    if sigma.n != n:
        raise ValueError(f"register must act on n={n} qubits")
    if isinstance(sigma, DenseState):
        coeffs = mat.conj() @ sigma.amplitudes
        return float((np.abs(coeffs) ** 2).sum())
    overlaps = np.einsum("ix,xy,iy->i", mat.conj(), sigma.matrix, mat)
    return float(np.real(overlaps.sum()))


def verification_matrix(spec: CodeSpec, approach: str = "subset") -> np.ndarray:
    """The dense matrix of the verification pipeline as a linear map.

    For an applicable code this equals the projector onto the span of all
    tolerated coset states.
    """
    make = subset_predicate if approach == "subset" else syndrome_predicate
    primal_mask = make(spec, "primal").support_mask()
    dual_mask = make(spec, "dual").support_mask()
    dim = 1 << spec.n
    mat = np.eye(dim, dtype=np.complex128)
    mat[~primal_mask, :] = 0.0
    mat = fwht(mat.T).T / math.sqrt(dim)
    mat[~dual_mask, :] = 0.0
    mat = fwht(mat.T).T / math.sqrt(dim)
    return mat


def tolerated_projector(spec: CodeSpec) -> np.ndarray:
    """Sum of |c><c| over all tolerated coset states."""
    states = tolerated_coset_states(spec)
    mat = np.stack([s.amplitudes for s in states])
    return mat.T @ mat.conj()


# -- correction -------------------------------------------------------------------


def diagnose(
    registry: OracleRegistry,
    note: Banknote,
    *,
    session: OracleSession | None = None,
) -> tuple[BitVec, BitVec]:
    """Identify the Pauli error on a tolerated coset state via per-coset oracles.

    Tests the bit-flip cosets in lexicographic error order, then the
    phase-flip cosets in the Hadamard basis, charging one coset query per
    test.  Raises UndecodableError when no coset matches cleanly.
    """
    record = registry.record_for_serial(note.serial)
    if session is None:
        session = registry.session(note.serial)
    spec = record.spec
    state = _as_state(note.state)
    errors = enumerate_errors(spec.n, spec.q)

    found_e = None
    for e in errors:
        prob, _, _ = session.project_coset("primal", e, state)
        if prob > 1.0 - 1e-9:
            found_e = e
            break
    if found_e is None:
        raise UndecodableError("state lies in no tolerated bit-flip coset")

    rotated = hadamard_all(state)
    for ep in errors:
        prob, _, _ = session.project_coset("dual", ep, rotated)
        if prob > 1.0 - 1e-9:
            return found_e, ep
    raise UndecodableError("state lies in no tolerated phase-flip coset")


def correct(
    registry: OracleRegistry,
    note: Banknote,
    *,
    session: OracleSession | None = None,
) -> Banknote:
    """Identify and invert the note's Pauli error, restoring the fresh codeword.

    The inverse of X^e Z^e' is applied with its commutation sign, so for a
    state that was exactly a signed coset state the result equals the fresh
    subspace state exactly, not just up to phase.
    """
    e, ep = diagnose(registry, note, session=session)
    state = _as_state(note.state)
    fixed = apply_pauli(state, e, ep)
    if e.dot(ep):
        fixed = DenseState(fixed.n, -fixed.amplitudes, check_norm=False)
    return Banknote(note.serial, fixed)


# -- file formats -----------------------------------------------------------------


def banknote_to_json_dict(note: Banknote) -> dict:
    if isinstance(note.state, CosetLabel):
        state = {
            "kind": "coset",
            "e": str(note.state.e),
            "e_prime": str(note.state.e_prime),
            "sign": note.state.sign,
        }
    else:
        state = {"kind": "dense", "dump": dump_state(note.state)}
    return {"format": BANKNOTE_FORMAT, "serial": str(note.serial), "state": state}


def banknote_from_json_dict(data: dict, registry: OracleRegistry | None = None) -> Banknote:
    if data.get("format") != BANKNOTE_FORMAT:
        raise ValueError(f"unsupported banknote format: {data.get('format')!r}")
    serial = BitVec.from_string(data["serial"])
    state = data["state"]
    if state["kind"] == "dense":
        return Banknote(serial, load_state(state["dump"]))
    if state["kind"] == "coset":
        if registry is None:
            raise ValueError("coset banknotes need a registry to resolve the code")
        spec = registry.record_for_serial(serial).spec
        label = CosetLabel(
            spec,
            BitVec.from_string(state["e"]),
            BitVec.from_string(state["e_prime"]),
            int(state["sign"]),
        )
        return Banknote(serial, label)
    raise ValueError(f"unknown state kind {state.get('kind')!r}")


def dumps_banknote(note: Banknote) -> str:
    return json.dumps(banknote_to_json_dict(note), indent=2, sort_keys=True) + "\n"


def save_banknote(note: Banknote, path: str | Path) -> None:
    Path(path).write_text(dumps_banknote(note))


def load_banknote(path: str | Path, registry: OracleRegistry | None = None) -> Banknote:
    return banknote_from_json_dict(json.loads(Path(path).read_text()), registry)


def record_to_json_dict(record: MintRecord) -> dict:
    data = {
        "format": BANKKEY_FORMAT,
        "r": str(record.r),
        "serial": str(record.serial),
        "route": record.route,
        "spec": record.spec.to_json_dict(),
    }
    if record.route == "conjugate":
        data["theta"] = str(record.theta)
        data["basis_columns"] = [str(c) for c in record.basis_map.columns()]
    return data


def record_from_json_dict(data: dict) -> MintRecord:
    if data.get("format") != BANKKEY_FORMAT:
        raise ValueError(f"unsupported bank key format: {data.get('format')!r}")
    spec = CodeSpec.from_json_dict(data["spec"])
    theta = basis_map = None
    if data["route"] == "conjugate":
        theta = BitVec.from_string(data["theta"])
        basis_map = BasisMap.from_columns(
            [BitVec.from_string(c) for c in data["basis_columns"]]
        )
    return MintRecord(
        r=BitVec.from_string(data["r"]),
        serial=BitVec.from_string(data["serial"]),
        spec=spec,
        route=data["route"],
        theta=theta,
        basis_map=basis_map,
    )


def dumps_record(record: MintRecord) -> str:
    return json.dumps(record_to_json_dict(record), indent=2, sort_keys=True) + "\n"


def save_record(record: MintRecord, path: str | Path) -> None:
    Path(path).write_text(dumps_record(record))


def load_record(path: str | Path) -> MintRecord:
    return record_from_json_dict(json.loads(Path(path).read_text()))


def registry_for_record(record: MintRecord, master_seed: int = 0) -> OracleRegistry:
    """A verification-side registry reconstituted from one bank key file."""
    registry = OracleRegistry(
        record.spec.n, record.spec.q, master_seed, route=record.route
    )
    registry.install_record(record)
    return registry

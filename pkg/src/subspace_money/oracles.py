"""Classical membership oracles, their action on states, and query accounting.

Verification never touches a code directly: it asks membership predicates.
The subset predicates decide "is x within q bit flips of the code (or its
dual)" by decoding the syndrome against an explicit table; the syndrome
predicates decide the very same set through an independent route, testing
the syndrome against the good-syndrome key set with no decoding.  Keeping
the two code paths separate gives a free cross-validation oracle.

A phase oracle flips the sign of basis states inside the predicate's set;
the projector form runs the oracle controlled on a |+> ancilla and measures
the ancilla in the Hadamard basis, which reduces algebraically to amplitude
masking and is implemented that way, branch by branch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .codes import CodeSpec, SyndromeTable, build_syndrome_table, enumerate_errors
from .gf2 import BitVec, Gf2Matrix
from .states import DenseState, MixedState, State

SIDES = ("primal", "dual")

SUBSET_KINDS = ("subset-primal", "subset-dual")
SYNDROME_KINDS = ("syndrome-primal", "syndrome-dual")


def _parity_for(spec: CodeSpec, side: str) -> Gf2Matrix:
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    return spec.parity_primal if side == "primal" else spec.parity_dual


class MembershipPredicate:
    """A pure boolean function on n-bit strings backed by one code.

    kind fixes both the tested set (primal: union of code cosets by
    tolerated bit-flips; dual: same for the dual code) and the decision
    route (subset: syndrome-table decode; syndrome: good-syndrome key set).
    """

    __slots__ = ("kind", "spec", "table", "good_syndromes", "_mask")

    def __init__(
        self,
        kind: str,
        spec: CodeSpec,
        table: SyndromeTable | None = None,
        good_syndromes: frozenset[BitVec] | None = None,
    ):
        if kind not in SUBSET_KINDS + SYNDROME_KINDS:
            raise ValueError(f"unknown predicate kind {kind!r}")
        if kind in SUBSET_KINDS and table is None:
            raise ValueError("subset predicates need a syndrome table")
        if kind in SYNDROME_KINDS and good_syndromes is None:
            raise ValueError("syndrome predicates need the good-syndrome set")
        self.kind = kind
        self.spec = spec
        self.table = table
        self.good_syndromes = good_syndromes
        self._mask = None

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def side(self) -> str:
        return self.kind.split("-")[1]

    def __call__(self, x: BitVec) -> bool:
        if x.n != self.spec.n:
            raise ValueError(f"length mismatch: {x.n} vs {self.spec.n}")
        syndrome = _parity_for(self.spec, self.side).mul_vec(x)
        if self.kind in SUBSET_KINDS:
            return self.table.decode(syndrome) is not None
        return syndrome in self.good_syndromes

    def support_mask(self) -> np.ndarray:
        """Boolean truth table over all 2^n inputs, cached after first use."""
        if self._mask is None:
            self._mask = _truth_table(self)
        return self._mask


def _truth_table(pred) -> np.ndarray:
    n = pred.n
    mask = np.fromiter(
        (pred(BitVec(n, v)) for v in range(1 << n)), dtype=bool, count=1 << n
    )
    mask.setflags(write=False)
    return mask


def subset_predicate(spec: CodeSpec, side: str) -> MembershipPredicate:
    """Membership in the union of cosets side-code + e over tolerated e."""
    table = build_syndrome_table(_parity_for(spec, side), spec.q)
    return MembershipPredicate(f"subset-{side}", spec, table=table)


def syndrome_predicate(spec: CodeSpec, side: str) -> MembershipPredicate:
    """The same set, decided by good-syndrome membership with no decoding.

    The key set is computed here directly from weight-limited vectors, not
    taken from a SyndromeTable, so the two predicate families share no code.
    """
    parity = _parity_for(spec, side)
    good = set()
    for j in range(min(spec.q, spec.n) + 1):
        for positions in itertools.combinations(range(spec.n), j):
            good.add(parity.mul_vec(BitVec.from_support(spec.n, positions)))
    return MembershipPredicate(f"syndrome-{side}", spec, good_syndromes=frozenset(good))


class CosetPredicate:
    """Membership in a single coset side-code + e (the error-correcting collection).

    One such oracle exists per tolerated error vector; testing them in
    sequence identifies which error occurred, at one query charge each.
    """

    __slots__ = ("spec", "side", "error", "_mask")

    def __init__(self, spec: CodeSpec, side: str, error: BitVec):
        if side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")
        if error.n != spec.n:
            raise ValueError("error vector length differs from the code length")
        self.spec = spec
        self.side = side
        self.error = error
        self._mask = None

    @property
    def n(self) -> int:
        return self.spec.n

    def __call__(self, x: BitVec) -> bool:
        if x.n != self.spec.n:
            raise ValueError(f"length mismatch: {x.n} vs {self.spec.n}")
        code = self.spec.code if self.side == "primal" else self.spec.dual_code
        return code.member(x ^ self.error)

    def support_mask(self) -> np.ndarray:
        if self._mask is None:
            self._mask = _truth_table(self)
        return self._mask


def member_subset(pred: MembershipPredicate, x: BitVec) -> bool:
    if pred.kind not in SUBSET_KINDS:
        raise ValueError(f"not a subset predicate: {pred.kind}")
    return pred(x)


def member_syndrome(pred: MembershipPredicate, x: BitVec) -> bool:
    if pred.kind not in SYNDROME_KINDS:
        raise ValueError(f"not a syndrome predicate: {pred.kind}")
    return pred(x)


def apply_phase_oracle(pred, st: State) -> State:
    """Negate the amplitude of every basis state inside the predicate's set."""
    mask = pred.support_mask()
    signs = np.where(mask, -1.0, 1.0)
    if isinstance(st, DenseState):
        return DenseState(st.n, signs * st.amplitudes, check_norm=False)
    return MixedState(st.n, signs[:, None] * st.matrix * signs[None, :], validate=False)


class ProjectionBranches(NamedTuple):
    prob_in: float
    state_in: State | None
    state_out: State | None


def project_via_control(pred, st: State) -> ProjectionBranches:
    """Measure membership through a controlled phase oracle on a |+> ancilla.

    The |-> ancilla outcome projects onto the predicate set.  With the
    oracle-applied amplitudes U psi, the two ancilla branches carry
    (psi - U psi)/2 and (psi + U psi)/2, which are exactly the masked and
    complementary amplitudes; zero-probability branches come back as None.
    """
    mask = pred.support_mask()
    if isinstance(st, DenseState):
        oracle_amps = np.where(mask, -st.amplitudes, st.amplitudes)
        raw_in = (st.amplitudes - oracle_amps) / 2.0
        raw_out = (st.amplitudes + oracle_amps) / 2.0
        prob_in = float((np.abs(raw_in) ** 2).sum())
        prob_out = float((np.abs(raw_out) ** 2).sum())
        state_in = (
            DenseState(st.n, raw_in / np.sqrt(prob_in), check_norm=False)
            if prob_in > 0.0
            else None
        )
        state_out = (
            DenseState(st.n, raw_out / np.sqrt(prob_out), check_norm=False)
            if prob_out > 0.0
            else None
        )
        return ProjectionBranches(prob_in, state_in, state_out)

    diag = np.real(np.diag(st.matrix))
    prob_in = float(diag[mask].sum())
    prob_out = float(diag[~mask].sum())
    state_in = state_out = None
    if prob_in > 0.0:
        kept = st.matrix * np.outer(mask, mask)
        state_in = MixedState(st.n, kept / prob_in, validate=False)
    if prob_out > 0.0:
        kept = st.matrix * np.outer(~mask, ~mask)
        state_out = MixedState(st.n, kept / prob_out, validate=False)
    return ProjectionBranches(prob_in, state_in, state_out)


class CombinedOracle:
    """All per-coset membership predicates packed behind one tag-extended oracle.

    The tag is the leftmost k bits of a (k+n)-bit query.  Even tag values
    address primal cosets, odd ones dual cosets, with the error index in the
    remaining high bits, matching the layout (00, C+e) u (01, C~+e') u
    (10, C+t) u (11, C~+t').  k = 1 + ceil(log2 |E_X|); when |E_X| is not a
    power of two the leftover tags are constant-false padding.
    """

    __slots__ = ("spec", "k", "tag_map", "errors")

    def __init__(self, spec: CodeSpec):
        errors = enumerate_errors(spec.n, spec.q)
        m = len(errors)
        self.spec = spec
        self.errors = errors
        self.k = 1 + (m - 1).bit_length()
        tag_map: dict[int, tuple[str, BitVec]] = {}
        for i, e in enumerate(errors):
            tag_map[2 * i] = ("primal", e)
            tag_map[2 * i + 1] = ("dual", e)
        self.tag_map = tag_map

    @property
    def n(self) -> int:
        return self.spec.n + self.k

    def tag_for(self, side: str, e: BitVec) -> BitVec:
        """The tag addressing the coset side-code + e."""
        if side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")
        value = 2 * self.errors.index(e) + (0 if side == "primal" else 1)
        return BitVec(self.k, value)

    def member(self, tagged_x: BitVec) -> bool:
        if tagged_x.n != self.k + self.spec.n:
            raise ValueError(
                f"length mismatch: expected {self.k}+{self.spec.n} bits, got {tagged_x.n}"
            )
        tag, x = tagged_x.split(self.k)
        entry = self.tag_map.get(tag.value)
        if entry is None:
            return False  # padding tag
        side, e = entry
        code = self.spec.code if side == "primal" else self.spec.dual_code
        return code.member(x ^ e)

    __call__ = member


def member_combined(oracle: CombinedOracle, tagged_x: BitVec) -> bool:
    return oracle.member(tagged_x)


ORACLE_NAMES = ("primal", "dual", "combined", "coset")


@dataclass(frozen=True)
class QueryLedger:
    """Immutable query counters with the combined-oracle conversion applied.

    One subset query (primal or dual) costs conversion_factor = |E_X|
    combined-oracle queries; direct combined queries and per-coset queries
    cost one each.
    """

    conversion_factor: int
    counts: tuple[int, int, int, int] = (0, 0, 0, 0)

    @classmethod
    def fresh(cls, conversion_factor: int) -> "QueryLedger":
        if conversion_factor < 1:
            raise ValueError("conversion factor must be >= 1")
        return cls(conversion_factor)

    @property
    def counters(self) -> dict[str, int]:
        return dict(zip(ORACLE_NAMES, self.counts))

    def count(self, name: str) -> int:
        return self.counts[self._index(name)]

    @staticmethod
    def _index(name: str) -> int:
        try:
            return ORACLE_NAMES.index(name)
        except ValueError:
            raise ValueError(f"unknown oracle name {name!r}; known: {ORACLE_NAMES}") from None

    def charge(self, name: str, count: int = 1) -> "QueryLedger":
        if count < 0:
            raise ValueError("count must be >= 0")
        i = self._index(name)
        counts = list(self.counts)
        counts[i] += count
        return QueryLedger(self.conversion_factor, tuple(counts))

    def merge(self, other: "QueryLedger") -> "QueryLedger":
        if other.conversion_factor != self.conversion_factor:
            raise ValueError("cannot merge ledgers with different conversion factors")
        counts = tuple(a + b for a, b in zip(self.counts, other.counts))
        return QueryLedger(self.conversion_factor, counts)

    @property
    def combined_equivalent(self) -> int:
        primal, dual, combined, coset = self.counts
        return self.conversion_factor * (primal + dual) + combined + coset


def ledger_charge(ledger: QueryLedger, name: str, count: int = 1) -> QueryLedger:
    return ledger.charge(name, count)

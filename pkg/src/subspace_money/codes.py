"""Applicable CSS codes: search, certification, error sets, syndrome tables, bounds.

A code is "applicable" for tolerance q when it is an n/2-dimensional
subspace C of F_2^n and both C and its dual have minimum distance at least
2q+1, so each side corrects q classical errors.  Such codes give a CSS code
with a single codeword; that codeword is the banknote state.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Mapping

from .errors import BudgetExceededError, CodeSearchError, SyndromeCollisionError
from .gf2 import DEFAULT_ENUM_BUDGET, BitVec, Gf2Matrix, SubspaceBasis, random_subspace
from .rng import Seed, as_generator

DEFAULT_MAX_ATTEMPTS = 10_000
CODESPEC_FORMAT = "codespec-v1"


@dataclass(frozen=True)
class CodeSpec:
    """A candidate CSS code with its derived data.

    ``parity_primal`` (the check matrix of the code itself) has the dual's
    basis for rows; ``parity_dual`` checks the dual code and has the code's
    basis for rows.  Distances are exhaustively computed; ``certify``
    recomputes everything from scratch and reports whether the spec really
    tolerates q errors per type.
    """

    n: int
    q: int
    code: SubspaceBasis
    dual_code: SubspaceBasis
    d_primal: int  # math.inf when the code has no nonzero words
    d_dual: int
    parity_primal: Gf2Matrix
    parity_dual: Gf2Matrix

    @classmethod
    def build(cls, code: SubspaceBasis, q: int, budget: int = DEFAULT_ENUM_BUDGET) -> "CodeSpec":
        """Derive duals, parities and distances for any subspace.

        Deliberately permissive: specs violating the applicability bounds can
        be built so that ``certify`` has something to fail on.
        """
        if q < 0:
            raise ValueError("q must be >= 0")
        dual = code.dual()
        return cls(
            n=code.n,
            q=q,
            code=code,
            dual_code=dual,
            d_primal=_distance_or_inf(code, budget),
            d_dual=_distance_or_inf(dual, budget),
            parity_primal=dual.basis,
            parity_dual=code.basis,
        )

    @property
    def is_applicable(self) -> bool:
        need = 2 * self.q + 1
        return (
            self.n % 2 == 0
            and self.code.dim == self.n // 2
            and self.d_primal >= need
            and self.d_dual >= need
        )

    def to_json_dict(self) -> dict:
        return {
            "format": CODESPEC_FORMAT,
            "n": self.n,
            "q": self.q,
            "code_rows": self.code.basis.to_strings(),
            "dual_rows": self.dual_code.basis.to_strings(),
            "parity_primal": self.parity_primal.to_strings(),
            "parity_dual": self.parity_dual.to_strings(),
            "d_primal": None if math.isinf(self.d_primal) else self.d_primal,
            "d_dual": None if math.isinf(self.d_dual) else self.d_dual,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "CodeSpec":
        if data.get("format") != CODESPEC_FORMAT:
            raise ValueError(f"unsupported code file format: {data.get('format')!r}")
        n = int(data["n"])
        return cls(
            n=n,
            q=int(data["q"]),
            code=SubspaceBasis(n, data["code_rows"]),
            dual_code=SubspaceBasis(n, data["dual_rows"]),
            d_primal=math.inf if data["d_primal"] is None else int(data["d_primal"]),
            d_dual=math.inf if data["d_dual"] is None else int(data["d_dual"]),
            parity_primal=Gf2Matrix.from_strings(data["parity_primal"]),
            parity_dual=Gf2Matrix.from_strings(data["parity_dual"]),
        )


def _distance_or_inf(s: SubspaceBasis, budget: int):
    return s.min_distance(budget) if s.dim > 0 else math.inf


def _annihilates(parity: Gf2Matrix, rows) -> bool:
    if parity.rows == 0:
        return True
    return all(parity.mul_vec(g).value == 0 for g in rows)


def save_code(spec: CodeSpec, path: str | Path) -> None:
    Path(path).write_text(dumps_code(spec))


def load_code(path: str | Path) -> CodeSpec:
    return CodeSpec.from_json_dict(json.loads(Path(path).read_text()))


def dumps_code(spec: CodeSpec) -> str:
    return json.dumps(spec.to_json_dict(), indent=2, sort_keys=True) + "\n"


def search_applicable_code(
    n: int,
    q: int,
    seed: Seed,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> CodeSpec:
    """Rejection-sample uniformly random n/2-dim subspaces until one is applicable.

    Raises CodeSearchError after max_attempts; a persistent failure at
    negative ``gv_margin(n, q)`` would be surprising, while failure at
    positive margin usually means the parameters are infeasible.
    """
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    if q < 0:
        raise ValueError("q must be >= 0")
    if 1 << (n // 2) > budget:
        raise BudgetExceededError(f"2^{n // 2} codewords exceed budget {budget}")
    need = 2 * q + 1
    rng = as_generator(seed)
    for _ in range(max_attempts):
        code = random_subspace(n, n // 2, rng)
        d_p = code.min_distance(budget)
        if d_p < need:
            continue
        dual = code.dual()
        d_d = dual.min_distance(budget)
        if d_d < need:
            continue
        return CodeSpec(
            n=n,
            q=q,
            code=code,
            dual_code=dual,
            d_primal=d_p,
            d_dual=d_d,
            parity_primal=dual.basis,
            parity_dual=code.basis,
        )
    raise CodeSearchError(
        f"no applicable code found for n={n}, q={q} in {max_attempts} attempts "
        f"(gv_margin={gv_margin(n, q):+.4f}; negative means one should exist)"
    )


@dataclass(frozen=True)
class CertCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class CertificationReport:
    checks: tuple[CertCheck, ...]
    d_primal: int
    d_dual: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> str:
        lines = [f"{'pass' if c.passed else 'FAIL'}  {c.name}: {c.detail}" for c in self.checks]
        verdict = "certified" if self.passed else "REJECTED"
        return "\n".join(lines + [f"=> {verdict} (d_primal={self.d_primal}, d_dual={self.d_dual})"])


def certify(spec: CodeSpec, budget: int = DEFAULT_ENUM_BUDGET) -> CertificationReport:
    """Recompute every invariant of the spec from scratch and report pass/fail.

    A passing report means the spec is an applicable CSS code for its q.
    """
    checks = []
    need = 2 * spec.q + 1

    checks.append(CertCheck("even_length", spec.n % 2 == 0, f"n={spec.n}"))

    dim_ok = spec.code.dim == spec.n // 2
    checks.append(CertCheck("code_dimension", dim_ok, f"dim={spec.code.dim}, want {spec.n // 2}"))

    recomputed_dual = spec.code.dual()
    dual_ok = recomputed_dual == spec.dual_code and recomputed_dual.dual() == spec.code
    checks.append(CertCheck("dual_match", dual_ok, "dual(code) == dual_code and involutive"))

    pp_ok = SubspaceBasis(spec.n, list(spec.parity_primal)) == recomputed_dual and _annihilates(
        spec.parity_primal, spec.code.basis_rows()
    )
    checks.append(CertCheck("parity_primal", pp_ok, "rows span the dual and annihilate the code"))

    pd_ok = SubspaceBasis(spec.n, list(spec.parity_dual)) == spec.code and _annihilates(
        spec.parity_dual, recomputed_dual.basis_rows()
    )
    checks.append(CertCheck("parity_dual", pd_ok, "rows span the code and annihilate the dual"))

    d_p = _distance_or_inf(spec.code, budget)
    d_d = _distance_or_inf(recomputed_dual, budget)
    checks.append(
        CertCheck("distance_primal", d_p >= need, f"d={d_p}, need >= {need} for q={spec.q}")
    )
    checks.append(
        CertCheck("distance_dual", d_d >= need, f"d={d_d}, need >= {need} for q={spec.q}")
    )
    checks.append(
        CertCheck(
            "recorded_distances",
            spec.d_primal == d_p and spec.d_dual == d_d,
            f"recorded ({spec.d_primal}, {spec.d_dual}) vs recomputed ({d_p}, {d_d})",
        )
    )
    return CertificationReport(tuple(checks), d_p, d_d)


@dataclass(frozen=True)
class ErrorSet:
    """All error vectors of weight at most q on n coordinates, lexicographically sorted."""

    n: int
    q: int
    vectors: tuple[BitVec, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[BitVec]:
        return iter(self.vectors)

    def __getitem__(self, i: int) -> BitVec:
        return self.vectors[i]

    def index(self, e: BitVec) -> int:
        return self.vectors.index(e)


def error_count(n: int, q: int) -> int:
    """Number of vectors of weight <= q on n coordinates (exact)."""
    if n < 1 or q < 0:
        raise ValueError("need n >= 1 and q >= 0")
    return sum(math.comb(n, j) for j in range(min(q, n) + 1))


def enumerate_errors(n: int, q: int, budget: int = DEFAULT_ENUM_BUDGET) -> ErrorSet:
    count = error_count(n, q)
    if count > budget:
        raise BudgetExceededError(f"{count} error vectors exceed budget {budget}")
    values = []
    for j in range(min(q, n) + 1):
        for positions in itertools.combinations(range(n), j):
            values.append(BitVec.from_support(n, positions).value)
    values.sort()
    return ErrorSet(n, q, tuple(BitVec(n, v) for v in values))


def count_error_pairs(n: int, q: int) -> int:
    """Size of the tolerated (bit-flip, phase-flip) pair set, exactly."""
    return error_count(n, q) ** 2


@dataclass(frozen=True)
class SyndromeTable:
    """Bijection between syndromes of weight-<=q errors and the errors themselves.

    Existence of the bijection is exactly the statement d >= 2q+1;
    construction fails loudly on any collision.
    """

    parity: Gf2Matrix
    q: int
    entries: Mapping[BitVec, BitVec]

    def decode(self, syndrome: BitVec) -> BitVec | None:
        return self.entries.get(syndrome)

    def syndromes(self) -> frozenset[BitVec]:
        return frozenset(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def build_syndrome_table(
    parity: Gf2Matrix, q: int, budget: int = DEFAULT_ENUM_BUDGET
) -> SyndromeTable:
    n = parity.cols
    entries: dict[BitVec, BitVec] = {}
    for e in enumerate_errors(n, q, budget):
        s = parity.mul_vec(e)
        if s in entries:
            raise SyndromeCollisionError(
                f"errors {entries[s]} and {e} share syndrome {s}; "
                f"the code does not have d >= {2 * q + 1}"
            )
        entries[s] = e
    return SyndromeTable(parity, q, entries)


@dataclass(frozen=True)
class StabilizerSet:
    """Stabilizer generators of the single-codeword CSS code.

    X-type generators come from the dual's parity check, Z-type from the
    code's own; together they form the block-diagonal check matrix with n
    generators in total.
    """

    x_type_rows: Gf2Matrix
    z_type_rows: Gf2Matrix

    @property
    def generator_count(self) -> int:
        return self.x_type_rows.rows + self.z_type_rows.rows

    def check_matrix(self) -> Gf2Matrix:
        n = self.x_type_rows.cols
        rows = [v << n for v in self.x_type_rows.row_values]
        rows += list(self.z_type_rows.row_values)
        return Gf2Matrix(len(rows), 2 * n, rows)

    def pauli_strings(self) -> list[str]:
        out = []
        for r in self.x_type_rows:
            out.append("".join("X" if r.bit(i) else "I" for i in range(r.n)))
        for r in self.z_type_rows:
            out.append("".join("Z" if r.bit(i) else "I" for i in range(r.n)))
        return out


def stabilizer_generators(spec: CodeSpec) -> StabilizerSet:
    return StabilizerSet(x_type_rows=spec.parity_dual, z_type_rows=spec.parity_primal)


def binary_entropy(x: float) -> float:
    """Binary Shannon entropy with H(0) = H(1) = 0 fixed by continuity."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def gv_margin(n: int, q: int) -> float:
    """Gilbert-Varshamov existence margin 1 - 2 H(2q/n).

    A negative margin guarantees that an applicable code for (n, q) exists;
    the k=0 code of this scheme corresponds to the zero left-hand side.
    """
    if n < 1 or q < 0 or 2 * q > n:
        raise ValueError(f"need 0 <= 2q <= n, got n={n}, q={q}")
    return 1.0 - 2.0 * binary_entropy(2.0 * q / n)


def soundness_log2(n: int, q: int, eps: float | None = None) -> float:
    """log2 of the soundness bound |E_q|^2 * eps, default eps = 2^(-n/2)."""
    if n < 1 or n % 2:
        raise ValueError("n must be even and >= 2")
    if eps is None:
        log2_eps = -n / 2.0
    else:
        if eps <= 0:
            raise ValueError("eps must be positive")
        log2_eps = math.log2(eps)
    return 4.0 * math.log2(error_count(n, q)) + log2_eps


def soundness_tradeoff(n: int, q: int, eps: float | None = None) -> float:
    """The soundness bound |E_q|^2 * eps as a float, computed in the log domain."""
    return float(2.0 ** soundness_log2(n, q, eps))

"""Acceptance criteria, one test per criterion, at the stated tolerances.

Each test prints a single pass/fail line (visible with pytest -s or in the
captured output section) and enforces the stated runtime ceiling.
"""

import contextlib
import itertools
import math
import time

import numpy as np
import pytest

from subspace_money.codes import (
    CodeSpec,
    build_syndrome_table,
    certify,
    count_error_pairs,
    enumerate_errors,
    error_count,
    gv_margin,
    search_applicable_code,
    soundness_log2,
    soundness_tradeoff,
)
from subspace_money.errors import UndecodableError
from subspace_money.experiments import completeness_sweep, run_attack
from subspace_money.gf2 import (
    BitVec,
    Gf2Matrix,
    SubspaceBasis,
    random_basis_map,
    random_bitvec,
    random_isometry,
)
from subspace_money.oracles import subset_predicate, syndrome_predicate
from subspace_money.scheme import (
    MintRecord,
    OracleRegistry,
    apply_verifier,
    conjugate_coding_state,
    conjugate_coset_parameters,
    correct,
    corrupt,
    mint_conjugate,
    mint_direct,
    tolerated_projector,
    verification_matrix,
)
from subspace_money.states import (
    apply_basis_permutation,
    coset_state,
    max_deviation,
    subspace_state,
)

from conftest import WORKED_CODEWORDS, WORKED_GENERATORS, WORKED_PARITY_ROWS


@contextlib.contextmanager
def criterion(num: int, description: str, runtime_limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {num:02d} [{description}]: FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"criterion {num:02d} [{description}]: PASS ({elapsed:.2f}s)")
    if runtime_limit is not None:
        assert elapsed < runtime_limit, f"runtime {elapsed:.2f}s exceeds {runtime_limit}s"


def test_criterion_01_golden_code_reproduction():
    with criterion(1, "golden worked-code reproduction", runtime_limit=1.0):
        code = SubspaceBasis.from_strings(WORKED_GENERATORS)
        assert code.min_distance() == 3
        assert code.dual().min_distance() == 3

        h_c = Gf2Matrix.from_strings(WORKED_PARITY_ROWS)
        g_c = Gf2Matrix.from_strings(WORKED_GENERATORS).transpose()
        assert (h_c @ g_c).is_zero()

        state = subspace_state(code)
        assert {str(b) for b in state.support()} == set(WORKED_CODEWORDS)
        amp = 1.0 / math.sqrt(8.0)
        for w in WORKED_CODEWORDS:
            assert abs(state.amplitude(BitVec.from_string(w)) - amp) <= 1e-12


def test_criterion_02_perfect_completeness():
    with criterion(2, "perfect completeness on random certified codes", runtime_limit=60.0):
        rng = np.random.default_rng(1001)
        for n, q in ((6, 1), (8, 1), (10, 1)):
            for _ in range(10):
                spec = search_applicable_code(n, q, seed=rng)
                assert certify(spec).passed
                report = completeness_sweep(spec)
                assert len(report.rows) == count_error_pairs(n, q)
                for row in report.rows:
                    assert abs(row[2] - 1.0) <= 1e-9


def test_criterion_03_projector_identity(worked_spec):
    with criterion(
        3, "verification pipeline equals the tolerated-span projector", runtime_limit=10.0
    ):
        v = verification_matrix(worked_spec)
        target = tolerated_projector(worked_spec)
        assert np.abs(v - target).max() < 1e-10
        assert np.abs(v @ v - v).max() < 1e-10
        assert np.abs(v - v.conj().T).max() < 1e-10
        rank = int((np.linalg.eigvalsh(v) >= 0.5).sum())
        assert rank == 49


def test_criterion_04_subset_subspace_equivalence():
    with criterion(4, "subset and syndrome predicates agree exhaustively", runtime_limit=30.0):
        rng = np.random.default_rng(1004)
        for n in (6, 8, 10, 12):
            spec = search_applicable_code(n, 1, seed=rng)
            for side in ("primal", "dual"):
                subset_mask = subset_predicate(spec, side).support_mask()
                syndrome_mask = syndrome_predicate(spec, side).support_mask()
                assert np.array_equal(subset_mask, syndrome_mask)


def test_criterion_05_conjugate_coding_identity():
    with criterion(5, "conjugate coding states match coset states", runtime_limit=60.0):
        rng = np.random.default_rng(1005)
        for n in (4, 6, 8):
            for _ in range(50):
                basis_map = random_basis_map(n, rng)
                positions = sorted(int(p) for p in rng.choice(n, size=n // 2, replace=False))
                theta = BitVec.from_support(n, positions)
                x = random_bitvec(n, rng)

                produced = apply_basis_permutation(conjugate_coding_state(x, theta), basis_map)
                subspace = SubspaceBasis(
                    n, [basis_map.column(i) for i in theta.support()]
                )
                t, t_prime = conjugate_coset_parameters(basis_map, theta, x)
                expected = coset_state(subspace, t, t_prime)
                assert max_deviation(produced, expected) < 1e-12

        # The x = 0 route coincides with direct minting exactly.
        for n, q, seed in ((4, 0, 51), (6, 1, 52), (8, 1, 53)):
            reg = OracleRegistry(n, q, master_seed=seed, route="conjugate")
            r = random_bitvec(n, seed)
            assert max_deviation(mint_direct(reg, r).state, mint_conjugate(reg, r).state) < 1e-12


def test_criterion_06_error_pair_count():
    with criterion(6, "tolerated error-pair count formula", runtime_limit=30.0):
        for n in range(1, 17):
            for q in range(4):
                assert count_error_pairs(n, q) == len(enumerate_errors(n, q)) ** 2
        assert count_error_pairs(6, 1) == 49


def test_criterion_07_gv_margin():
    with criterion(7, "existence margin value and crossing shape", runtime_limit=10.0):
        assert abs(gv_margin(6, 1) - (-0.8365916681089791)) <= 1e-9
        for q in (1, 2, 3):
            # The negative stretch sits between roughly 2.25q and 18.2q, so a
            # 20q scan sees both zero crossings.
            margins = {n: gv_margin(n, q) for n in range(2 * q, 20 * q + 1)}
            assert margins[2 * q] == 1.0
            assert margins[4 * q] == -1.0
            # Monotone decrease from the peak down to the trough at n = 4q.
            down = [margins[n] for n in range(2 * q, 4 * q + 1)]
            assert all(a > b for a, b in zip(down, down[1:]))
            # Monotone increase beyond the trough (2q/n < 1/2).
            up = [margins[n] for n in range(4 * q, 20 * q + 1)]
            assert all(a < b for a, b in zip(up, up[1:]))
            # Exactly one sign change on the way down, one on the way up.
            signs = [margins[n] < 0 for n in sorted(margins)]
            flips = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
            assert flips == 2 and not signs[0]


def test_criterion_08_soundness_tradeoff_table():
    with criterion(8, "soundness bound table in the log domain", runtime_limit=10.0):
        for q in range(5):
            for n in range(4, 41, 2):
                pairs = count_error_pairs(n, q)
                expected_log2 = 2 * math.log2(pairs) - n / 2
                assert soundness_log2(n, q) == pytest.approx(expected_log2, abs=1e-9)
                assert soundness_tradeoff(n, q) == pytest.approx(
                    pairs**2 * 2.0 ** (-n / 2), rel=1e-12
                )
        assert soundness_tradeoff(6, 1) == pytest.approx(49**2 / 8, rel=1e-12)


def test_criterion_09_attack_baselines():
    with criterion(9, "attack baselines match analytic rates", runtime_limit=120.0):
        for kind, seed in (("passthrough-mixed", 2001), ("measure-and-copy", 2002)):
            registry = OracleRegistry(6, 1, master_seed=seed)
            report = run_attack(registry, kind, trials=10_000, seed=seed)
            row = dict(zip(report.columns, report.rows[0]))
            assert row["analytic_rate"] == pytest.approx(49 / 64, abs=1e-12)
            assert row["mean_probability"] == pytest.approx(49 / 64, abs=1e-9)
            assert row["wilson_low"] <= 49 / 64 <= row["wilson_high"]


def test_criterion_10_correction_round_trip(worked_spec):
    with criterion(10, "correction identifies and inverts tolerated errors", runtime_limit=120.0):
        rng = np.random.default_rng(1010)
        setups = []
        reg6 = OracleRegistry(6, 1, master_seed=3001)
        rec6 = reg6.generate(BitVec.zeros(6))
        reg6.records[rec6.r] = MintRecord(rec6.r, rec6.serial, worked_spec, "direct")
        setups.append((reg6, rec6.r, 6))
        reg8 = OracleRegistry(8, 1, master_seed=3002)
        rec8 = reg8.generate(BitVec.zeros(8))
        setups.append((reg8, rec8.r, 8))

        for reg, r, n in setups:
            fresh = mint_direct(reg, r)
            errors = enumerate_errors(n, 1)
            for _ in range(100):
                e = errors[int(rng.integers(len(errors)))]
                ep = errors[int(rng.integers(len(errors)))]
                fixed = correct(reg, corrupt(fresh, e, ep))
                assert max_deviation(fixed.state, fresh.state) <= 1e-12

        # Every undecodable bit-flip pattern fails loudly.
        spec6 = reg6.records[rec6.r].spec
        table = build_syndrome_table(spec6.parity_primal, 1)
        fresh6 = mint_direct(reg6, rec6.r)
        undecodable = [
            BitVec.from_support(6, positions)
            for positions in itertools.combinations(range(6), 2)
            if table.decode(spec6.parity_primal.mul_vec(BitVec.from_support(6, positions))) is None
        ]
        assert undecodable
        for e in undecodable:
            with pytest.raises(UndecodableError):
                correct(reg6, corrupt(fresh6, e, BitVec.zeros(6)))


def test_criterion_11_query_accounting():
    with criterion(11, "combined-oracle query conversion", runtime_limit=10.0):
        rng = np.random.default_rng(1011)
        registry = OracleRegistry(6, 1, master_seed=4001)
        factor = error_count(6, 1)
        assert factor == 7
        for _ in range(20):
            note = mint_direct(registry, random_bitvec(6, rng))
            session = registry.session(note.serial)
            primal_queries = int(rng.integers(1, 12))
            dual_queries = int(rng.integers(0, 12))
            for _ in range(primal_queries):
                session.member("primal", random_bitvec(6, rng))
            for _ in range(dual_queries):
                session.member("dual", random_bitvec(6, rng))
            ledger = session.ledger
            assert ledger.combined_equivalent == factor * (primal_queries + dual_queries)
            assert ledger.counters["primal"] == primal_queries
            assert ledger.counters["dual"] == dual_queries


def test_criterion_12_isometry_covariance(worked_spec):
    with criterion(12, "isometry covariance of verification", runtime_limit=60.0):
        rng = np.random.default_rng(1012)
        base_primal = subset_predicate(worked_spec, "primal")
        base_dual = subset_predicate(worked_spec, "dual")
        errors = enumerate_errors(6, 1)
        for _ in range(20):
            f = random_isometry(6, rng)
            mapped_spec = CodeSpec.build(f.map_subspace(worked_spec.code), q=1)
            assert certify(mapped_spec).passed

            mapped_primal = subset_predicate(mapped_spec, "primal")
            mapped_dual = subset_predicate(mapped_spec, "dual")

            e = errors[int(rng.integers(len(errors)))]
            ep = errors[int(rng.integers(len(errors)))]
            state = coset_state(worked_spec.code, e, ep)
            mapped_state = apply_basis_permutation(state, f)

            p_base, _ = apply_verifier(state, base_primal, base_dual)
            p_mapped, _ = apply_verifier(mapped_state, mapped_primal, mapped_dual)
            assert abs(p_base - p_mapped) <= 1e-10

            # Also on states outside the tolerated span.
            amps = rng.standard_normal(64) + 1j * rng.standard_normal(64)
            psi_amps = amps / np.linalg.norm(amps)
            from subspace_money.states import DenseState

            psi = DenseState(6, psi_amps)
            p_base, _ = apply_verifier(psi, base_primal, base_dual)
            p_mapped, _ = apply_verifier(
                apply_basis_permutation(psi, f), mapped_primal, mapped_dual
            )
            assert abs(p_base - p_mapped) <= 1e-10

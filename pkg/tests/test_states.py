"""Tests for the exact state layer."""

import math

import numpy as np
import pytest

from subspace_money.codes import search_applicable_code
from subspace_money.errors import BudgetExceededError
from subspace_money.gf2 import BitVec, SubspaceBasis, random_basis_map, random_bitvec
from subspace_money.states import (
    ATOL_EXACT,
    CosetLabel,
    DenseState,
    MixedState,
    apply_basis_permutation,
    apply_pauli,
    coset_state,
    coset_to_dense,
    dump_state,
    fidelity,
    fidelity_with_span,
    hadamard_all,
    inner,
    load_state,
    max_deviation,
    subspace_state,
    tolerated_coset_states,
)

from conftest import WORKED_CODEWORDS


def bv(s):
    return BitVec.from_string(s)


# ---------------------------------------------------------------------------
# subspace and coset states


def test_subspace_state_bell_like():
    st = subspace_state(SubspaceBasis.from_strings(["11"]))
    assert st.amplitude(0) == pytest.approx(1 / math.sqrt(2))
    assert st.amplitude(3) == pytest.approx(1 / math.sqrt(2))
    assert st.amplitude(1) == 0 and st.amplitude(2) == 0


def test_subspace_state_worked_codewords(worked_code):
    st = subspace_state(worked_code)
    support = {str(b) for b in st.support()}
    assert support == set(WORKED_CODEWORDS)
    for w in WORKED_CODEWORDS:
        assert st.amplitude(bv(w)) == pytest.approx(1 / math.sqrt(8), abs=1e-15)


def test_subspace_state_zero_space():
    st = subspace_state(SubspaceBasis.zero(3))
    assert st.amplitude(0) == 1
    assert len(st.support()) == 1


def test_subspace_state_budget():
    with pytest.raises(BudgetExceededError):
        subspace_state(SubspaceBasis.zero(8), max_qubits=6)


def test_coset_state_trivial_label(worked_spec):
    label = CosetLabel(worked_spec, BitVec.zeros(6), BitVec.zeros(6))
    assert label.is_tolerated
    assert max_deviation(coset_to_dense(label), subspace_state(worked_spec.code)) == 0


def test_coset_state_x_shift(worked_spec):
    st = coset_state(worked_spec.code, bv("100000"), BitVec.zeros(6))
    support = {str(b) for b in st.support()}
    assert support == {str(bv(w) ^ bv("100000")) for w in WORKED_CODEWORDS}
    assert all(a.real > 0 for a in st.amplitudes[st.probabilities() > 0])


def test_coset_state_z_phases(worked_spec):
    ep = bv("000001")
    st = coset_state(worked_spec.code, BitVec.zeros(6), ep)
    for w in WORKED_CODEWORDS:
        v = bv(w)
        expected = (-1) ** v.dot(ep) / math.sqrt(8)
        assert st.amplitude(v) == pytest.approx(expected, abs=1e-15)


def test_coset_label_compose(worked_spec):
    rng = np.random.default_rng(8)
    label = CosetLabel(worked_spec, BitVec.zeros(6), BitVec.zeros(6))
    dense = coset_to_dense(label)
    for _ in range(6):
        e, ep = random_bitvec(6, rng), random_bitvec(6, rng)
        label = label.compose_pauli(e, ep)
        dense = apply_pauli(dense, e, ep)
        assert max_deviation(coset_to_dense(label), dense) < ATOL_EXACT


# ---------------------------------------------------------------------------
# Pauli action


def test_apply_pauli_identity(worked_code):
    st = subspace_state(worked_code)
    out = apply_pauli(st, BitVec.zeros(6), BitVec.zeros(6))
    assert max_deviation(st, out) == 0


def test_apply_pauli_involution_up_to_global_sign():
    # X^e Z^e' X^e Z^e' = (-1)^(e.e') times the identity: commuting the inner
    # Z block past the X block costs one sign, and the squares cancel.
    rng = np.random.default_rng(4)
    amps = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    st = DenseState(4, amps / np.linalg.norm(amps))

    e, ep = bv("1010"), bv("0101")  # e.e' = 0: exact involution
    twice = apply_pauli(apply_pauli(st, e, ep), e, ep)
    assert max_deviation(st, twice) < ATOL_EXACT

    e, ep = bv("1010"), bv("0110")  # e.e' = 1: involution up to a global -1
    twice = apply_pauli(apply_pauli(st, e, ep), e, ep)
    negated = DenseState(4, -st.amplitudes)
    assert max_deviation(negated, twice) < ATOL_EXACT


def test_apply_pauli_matches_coset_construction(worked_spec):
    rng = np.random.default_rng(10)
    base = subspace_state(worked_spec.code)
    for _ in range(20):
        e, ep = random_bitvec(6, rng), random_bitvec(6, rng)
        via_pauli = apply_pauli(base, e, ep)
        via_label = coset_to_dense(CosetLabel(worked_spec, e, ep, 1))
        assert max_deviation(via_pauli, via_label) < ATOL_EXACT


def test_apply_pauli_preserves_norm():
    rng = np.random.default_rng(12)
    amps = rng.standard_normal(32) + 1j * rng.standard_normal(32)
    st = DenseState(5, amps / np.linalg.norm(amps))
    out = apply_pauli(st, bv("10110"), bv("01011"))
    assert abs(out.norm() - 1.0) < ATOL_EXACT


# ---------------------------------------------------------------------------
# Hadamard transform


def test_hadamard_zero_state_gives_uniform():
    st = hadamard_all(DenseState.basis_state(3, 0))
    assert np.allclose(st.amplitudes, 1 / math.sqrt(8))


def test_hadamard_phase_kernel():
    # H|x> has amplitude (-1)^(x.z)/sqrt(2^n) at z.
    x = bv("101")
    st = hadamard_all(DenseState.basis_state(3, x))
    for z in range(8):
        expected = (-1) ** BitVec(3, z).dot(x) / math.sqrt(8)
        assert st.amplitude(z) == pytest.approx(expected, abs=1e-15)


def test_hadamard_involution():
    rng = np.random.default_rng(2)
    amps = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    st = DenseState(6, amps / np.linalg.norm(amps))
    assert max_deviation(st, hadamard_all(hadamard_all(st))) < ATOL_EXACT


def test_hadamard_maps_code_to_dual(worked_code):
    mapped = hadamard_all(subspace_state(worked_code))
    assert max_deviation(mapped, subspace_state(worked_code.dual())) < ATOL_EXACT


def test_hadamard_swaps_coset_roles_with_global_sign(worked_spec):
    rng = np.random.default_rng(6)
    dual = worked_spec.dual_code
    for _ in range(10):
        e, ep = random_bitvec(6, rng), random_bitvec(6, rng)
        lhs = hadamard_all(coset_state(worked_spec.code, e, ep))
        sign = -1 if e.dot(ep) else 1
        rhs = coset_state(dual, ep, e, sign)
        assert max_deviation(lhs, rhs) < ATOL_EXACT


def test_hadamard_on_mixed_state():
    rho = MixedState.from_pure(DenseState.basis_state(2, 0))
    out = hadamard_all(rho)
    assert np.allclose(out.matrix, 0.25)
    # Maximally mixed is invariant.
    mm = MixedState.maximally_mixed(3)
    assert np.allclose(hadamard_all(mm).matrix, mm.matrix, atol=1e-15)


# ---------------------------------------------------------------------------
# basis permutation unitary


def test_apply_basis_permutation_moves_kets():
    b = random_basis_map(5, 21)
    for val in (0, 7, 19, 31):
        x = BitVec(5, val)
        st = apply_basis_permutation(DenseState.basis_state(5, x), b)
        assert st.amplitude(b.apply(x)) == 1.0


def test_apply_basis_permutation_is_unitary():
    rng = np.random.default_rng(22)
    b = random_basis_map(6, rng)
    amps = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    st = DenseState(6, amps / np.linalg.norm(amps))
    out = apply_basis_permutation(st, b)
    assert abs(out.norm() - 1.0) < ATOL_EXACT
    assert sorted(np.abs(out.amplitudes)) == pytest.approx(sorted(np.abs(st.amplitudes)))


# ---------------------------------------------------------------------------
# inner products and fidelities


def test_inner_self_is_one(worked_code):
    st = subspace_state(worked_code)
    assert inner(st, st) == pytest.approx(1.0)


def test_inner_half_for_overlapping_codes(worked_spec):
    # Two applicable codes whose intersection has dimension n/2 - 1 overlap
    # in exactly half of their codewords.
    rng = np.random.default_rng(14)
    c = worked_spec.code
    while True:
        other = search_applicable_code(6, 1, seed=rng)
        if other.code != c and c.intersection_dim(other.code) == 2:
            break
    val = inner(subspace_state(c), subspace_state(other.code))
    assert val == pytest.approx(0.5, abs=1e-12)


def test_tolerated_coset_states_orthonormal(worked_spec):
    states = tolerated_coset_states(worked_spec)
    assert len(states) == 49
    mat = np.stack([s.amplitudes for s in states])
    gram = mat.conj() @ mat.T
    assert np.abs(gram - np.eye(49)).max() < 1e-10


def test_fidelity_with_span_basic(worked_spec):
    states = tolerated_coset_states(worked_spec)
    inside = states[5]
    assert fidelity_with_span(inside, states) == pytest.approx(1.0, abs=1e-12)
    outside = DenseState.basis_state(6, bv("000111"))
    # 000111 is not in any tolerated coset of the worked code.
    assert fidelity_with_span(outside, states) < 1e-12
    mixed = MixedState.maximally_mixed(6)
    assert fidelity_with_span(mixed, states) == pytest.approx(math.sqrt(49 / 64), abs=1e-12)


def test_fidelity_with_span_rejects_non_orthonormal(worked_spec):
    st = subspace_state(worked_spec.code)
    with pytest.raises(ValueError):
        fidelity_with_span(st, [st, st])


def test_fidelity_with_span_is_max_overlap(worked_spec):
    # No unit vector in the span can beat the reported value.
    rng = np.random.default_rng(18)
    states = tolerated_coset_states(worked_spec)[:5]
    amps = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    psi = DenseState(6, amps / np.linalg.norm(amps))
    best = fidelity_with_span(psi, states)
    for _ in range(50):
        coeffs = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        coeffs /= np.linalg.norm(coeffs)
        vec = sum(c * s.amplitudes for c, s in zip(coeffs, states))
        overlap = abs(np.vdot(vec, psi.amplitudes))
        assert overlap <= best + 1e-9


def test_fidelity_pure_and_mixed_agree():
    rng = np.random.default_rng(25)
    amps = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    psi = DenseState(3, amps / np.linalg.norm(amps))
    rho = MixedState.from_pure(psi)
    assert fidelity(psi, rho) == pytest.approx(1.0, abs=1e-9)
    assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)
    phi = DenseState.basis_state(3, 0)
    assert fidelity(psi, phi) == pytest.approx(abs(inner(psi, phi)), abs=1e-9)


def test_fidelity_triangle_inequality():
    # With <psi|rho|psi> >= 1-eps and <phi|sigma|phi> >= 1-eps,
    # F(rho, sigma) <= |<psi|phi>| + 2 eps^(1/4).
    rng = np.random.default_rng(33)
    checked = 0
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        dim = 1 << n
        eps = float(rng.uniform(1e-6, 0.2))

        def random_pure():
            a = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            return a / np.linalg.norm(a)

        def noisy_density(vec):
            a = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            junk = np.outer(a, a.conj())
            junk /= np.trace(junk).real
            lam = eps * float(rng.uniform(0, 1))
            return (1 - lam) * np.outer(vec, vec.conj()) + lam * junk

        psi, phi = random_pure(), random_pure()
        rho = MixedState(n, noisy_density(psi), validate=False)
        sigma = MixedState(n, noisy_density(phi), validate=False)
        assert np.vdot(psi, rho.matrix @ psi).real >= 1 - eps - 1e-12
        bound = abs(np.vdot(psi, phi)) + 2 * eps**0.25
        assert fidelity(rho, sigma) <= bound + 1e-9
        checked += 1
    assert checked == 1000


# ---------------------------------------------------------------------------
# dumps


def test_state_dump_round_trip(worked_code):
    st = subspace_state(worked_code)
    text = dump_state(st)
    assert text.splitlines()[0].startswith("000000 ")
    back = load_state(text)
    assert max_deviation(st, back) == 0
    # Deterministic: dumping again is byte-identical.
    assert dump_state(back) == text


def test_state_dump_complex_phases():
    amps = np.zeros(4, dtype=np.complex128)
    amps[1] = 0.6
    amps[2] = 0.8j
    st = DenseState(2, amps)
    text = dump_state(st)
    assert "01 0.59999999999999998 0" in text
    back = load_state(text)
    assert max_deviation(st, back) == 0

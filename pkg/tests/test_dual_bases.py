"""
对偶 Fock 基的单元测试

测试多重指标枚举、双正交性、截断余量与展开/配对。
"""

import math

import numpy as np
import pytest

from src.core.dual_bases import (
    MultiIndex,
    build_dual_basis,
    duality_pairing,
    enumerate_multi_indices,
    expand_observable,
    expand_state,
    max_safe_index,
)
from src.core.exceptions import InvalidModeSystemError, TruncationMarginError
from src.core.fock_space import (
    ModeSystem,
    devec,
    identity_op,
    number_op,
    operator_bra,
    trace_pair,
    vacuum_state,
    vec,
)
from src.core.supermaps import map_family
from tests.conftest import random_density_matrix


class TestMultiIndex:
    """多重指标测试类"""

    def test_graded_lexicographic_order(self):
        """测试先按阶数、同阶内 (1,0) 在 (0,1) 之前"""
        indices = enumerate_multi_indices(ModeSystem.fermionic(1), 1)
        assert [m.values for m in indices] == [(0, 0), (1, 0), (0, 1), (1, 1)]

    def test_count(self):
        """测试枚举数量"""
        assert len(enumerate_multi_indices(ModeSystem.fermionic(3), 1)) == 64
        assert len(enumerate_multi_indices(ModeSystem.bosonic(1, 6), 2)) == 9

    def test_components(self):
        """测试分量访问"""
        m = MultiIndex((1, 0, 2, 1))
        assert m.n_modes == 2
        assert m.degree == 4
        assert m.component(1, 1) == 2
        assert m.label() == "1021"
        assert MultiIndex.unit(2, 1, 2).values == (0, 0, 0, 1)


class TestFermionicBasis:
    """费米对偶基测试类"""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_bi_orthonormal(self, n):
        """测试 ⟪m′|m⟩ = δ"""
        basis = build_dual_basis(map_family(ModeSystem.fermionic(n)))
        assert basis.size == 4 ** n
        assert basis.gram_deviation() <= 1e-13

    def test_single_mode_has_four_kets(self):
        """测试单模有 4 个 ket 且 Gram = I₄"""
        basis = build_dual_basis(map_family(ModeSystem.fermionic(1)))
        np.testing.assert_allclose(basis.gram(), np.eye(4), atol=1e-14)

    def test_complete(self):
        """测试 kets 张成整个算符空间"""
        basis = build_dual_basis(map_family(ModeSystem.fermionic(2)))
        assert basis.smallest_singular_value() > 1e-6

    def test_vacuum_elements(self):
        """测试 |0⟩ = |ρ0⟩ 且 ⟪0| = ⟪1|"""
        sys = ModeSystem.fermionic(2)
        basis = build_dual_basis(map_family(sys))
        np.testing.assert_allclose(basis.kets[:, 0], vec(vacuum_state(sys)))
        np.testing.assert_allclose(basis.bras[0], operator_bra(identity_op(sys)))

    def test_alternative_order(self):
        """测试任意乘积顺序下仍然双正交"""
        fam = map_family(ModeSystem.fermionic(2))
        order = [(1, 2), (0, 1), (1, 1), (0, 2)]
        basis = build_dual_basis(fam, order=order)
        assert basis.order == order
        assert basis.gram_deviation() <= 1e-13

    def test_invalid_order(self):
        """测试非排列的顺序被拒绝"""
        fam = map_family(ModeSystem.fermionic(1))
        with pytest.raises(ValueError):
            build_dual_basis(fam, order=[(0, 1), (0, 1)])

    def test_max_index_must_be_one(self):
        """测试费米分量上界只能为 1"""
        with pytest.raises(InvalidModeSystemError):
            build_dual_basis(map_family(ModeSystem.fermionic(1)), max_index=2)


class TestBosonicBasis:
    """玻色对偶基测试类"""

    def test_bi_orthonormal_within_margin(self):
        """测试 cutoff=6、max_index=2 时 9 个元素 Gram = I₉"""
        basis = build_dual_basis(map_family(ModeSystem.bosonic(1, 6)), max_index=2)
        assert basis.size == 9
        assert basis.gram_deviation() <= 1e-10

    @pytest.mark.parametrize("n,cutoff,max_index", [(2, 4, 1), (2, 3, 0)])
    def test_two_mode_bi_orthonormal(self, n, cutoff, max_index):
        """测试玻色 n=2 内部枚举的 Gram = I"""
        basis = build_dual_basis(
            map_family(ModeSystem.bosonic(n, cutoff)), max_index=max_index
        )
        assert basis.size == (max_index + 1) ** (2 * n)
        assert basis.gram_deviation() <= 1e-10

    def test_margin_violation(self):
        """测试超出截断余量时报错并给出所需 cutoff"""
        fam = map_family(ModeSystem.bosonic(1, 4))
        with pytest.raises(TruncationMarginError, match="6"):
            build_dual_basis(fam, max_index=2)

    def test_max_safe_index(self):
        """测试安全上界"""
        assert max_safe_index(ModeSystem.bosonic(1, 6)) == 2
        assert max_safe_index(ModeSystem.bosonic(1, 3)) == 0
        assert max_safe_index(ModeSystem.fermionic(2)) == 1

    def test_factorial_normalization(self):
        """测试 ⟪1| 对 |m⟩ 的配对只在 m=0 时非零"""
        sys = ModeSystem.bosonic(1, 6)
        basis = build_dual_basis(map_family(sys), max_index=2)
        one = operator_bra(identity_op(sys))
        pairing = one @ basis.kets
        np.testing.assert_allclose(pairing[0], 1.0)
        np.testing.assert_allclose(pairing[1:], 0, atol=1e-12)

    def test_single_excitation_is_number_coherence(self):
        """测试 x′_{0}|ρ0⟩ = |1⟩⟨0|"""
        sys = ModeSystem.bosonic(1, 4)
        basis = build_dual_basis(map_family(sys), max_index=1)
        ket = basis.kets[:, basis.index_of(MultiIndex((1, 0)))]
        expected = np.zeros((sys.dim, sys.dim), dtype=complex)
        expected[1, 0] = 1.0
        np.testing.assert_allclose(ket, vec(expected), atol=1e-14)
        assert math.isclose(np.linalg.norm(ket), 1.0)


class TestExpansion:
    """展开与对偶配对测试类"""

    def test_state_expansion_complete(self, rng):
        """测试费米系统中任意 ρ 的展开残差为零"""
        sys = ModeSystem.fermionic(2)
        basis = build_dual_basis(map_family(sys))
        rho = random_density_matrix(rng, sys.dim)
        result = expand_state(rho, basis)
        assert result.residual <= 1e-12
        assert result.coefficients[0] == pytest.approx(1.0)

    def test_pairing_reproduces_expectation(self, rng):
        """测试 Σ S_m σ_m = tr(Aρ)，且不超过 Cauchy-Schwarz 上界"""
        sys = ModeSystem.fermionic(2)
        basis = build_dual_basis(map_family(sys))
        rho = random_density_matrix(rng, sys.dim)
        observable = number_op(sys)
        sigma = expand_state(rho, basis).coefficients
        s = expand_observable(observable, basis).coefficients
        value, bound = duality_pairing(s, sigma)
        assert value == pytest.approx(trace_pair(observable, rho))
        assert abs(value) <= bound + 1e-12

    @pytest.mark.parametrize(
        "sys,max_index",
        [
            (ModeSystem.fermionic(2), None),
            (ModeSystem.bosonic(1, 6), 2),
            (ModeSystem.bosonic(2, 4), 1),
        ],
        ids=lambda value: value.describe() if isinstance(value, ModeSystem) else None,
    )
    def test_span_confined_pairs(self, sys, max_index, rng):
        """测试 100 组张成空间内的 (A, ρ)：配对等于 tr(Aρ) 且满足 Cauchy-Schwarz"""
        basis = build_dual_basis(map_family(sys), max_index=max_index)

        def complex_normal(size):
            return rng.normal(size=size) + 1j * rng.normal(size=size)

        for _ in range(100):
            sigma = complex_normal(basis.size)
            s = complex_normal(basis.size)
            rho = devec(basis.kets @ sigma)
            observable = devec(s @ basis.bras).T

            state = expand_state(rho, basis)
            assert state.residual <= 1e-10 * max(1.0, np.linalg.norm(sigma))
            np.testing.assert_allclose(state.coefficients, sigma, atol=1e-10)
            coefficients = expand_observable(observable, basis).coefficients
            np.testing.assert_allclose(coefficients, s, atol=1e-10)

            value, bound = duality_pairing(coefficients, state.coefficients)
            expected = trace_pair(observable, rho)
            assert abs(value - expected) <= 1e-9 * max(1.0, abs(expected))
            assert abs(value) <= bound * (1 + 1e-12)

    def test_truncated_expansion_reports_residual(self, rng):
        """测试玻色截断基下展开残差非零但不抛异常"""
        sys = ModeSystem.bosonic(1, 4)
        basis = build_dual_basis(map_family(sys), max_index=1)
        rho = random_density_matrix(rng, sys.dim)
        assert expand_state(rho, basis).residual > 1e-3

    def test_vacuum_expansion(self):
        """测试 ρ0 只有 m=0 分量"""
        sys = ModeSystem.bosonic(1, 4)
        basis = build_dual_basis(map_family(sys), max_index=1)
        result = expand_state(vacuum_state(sys), basis)
        np.testing.assert_allclose(result.coefficients, [1, 0, 0, 0], atol=1e-14)
        assert result.residual <= 1e-14

    def test_to_dict(self):
        """测试序列化"""
        basis = build_dual_basis(map_family(ModeSystem.fermionic(1)))
        data = basis.to_dict()
        assert data["indices"][1] == [1, 0]
        assert len(data["kets"]) == 4
        assert data["system"]["statistics"] == "fermionic"

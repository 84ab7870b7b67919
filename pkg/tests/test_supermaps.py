"""
超算符与正则伴随映射的单元测试

测试左右乘约定、几乎-CCR/CAR、真空条件与宇称超算符。
"""

import numpy as np
import pytest

from src.core.exceptions import StatisticsMismatchError
from src.core.fock_space import (
    ModeSystem,
    annihilation_op,
    creation_op,
    devec,
    identity_op,
    operator_bra,
    vacuum_state,
    vec,
)
from src.core.supermaps import (
    apply_to_bra,
    apply_to_ket,
    bosonic_maps,
    canonical_order,
    fermionic_maps,
    hermitian_adjoint_gap,
    interior_columns,
    left_mult,
    map_family,
    parity_superop,
    physical_columns,
    right_mult,
    sandwich,
    verify_algebra,
)
from tests.conftest import random_density_matrix, random_hermitian


class TestMultiplicationMaps:
    """左乘/右乘映射测试类"""

    def test_left_right_action(self, rng):
        """测试 bᴸ|ρ⟩ = |bρ⟩ 与 bᴿ|ρ⟩ = |ρb⟩"""
        b = random_hermitian(rng, 3) + 1j * random_hermitian(rng, 3)
        rho = random_density_matrix(rng, 3)
        np.testing.assert_allclose(left_mult(b) @ vec(rho), vec(b @ rho), atol=1e-12)
        np.testing.assert_allclose(right_mult(b) @ vec(rho), vec(rho @ b), atol=1e-12)

    def test_sandwich(self, rng):
        """测试 ρ ↦ AρB"""
        a = random_hermitian(rng, 3)
        b = random_hermitian(rng, 3) * 1j
        rho = random_density_matrix(rng, 3)
        result = devec(apply_to_ket(sandwich(a, b), vec(rho)))
        np.testing.assert_allclose(result, a @ rho @ b, atol=1e-12)

    def test_bra_action(self, rng):
        """测试 ⟪A|bᴸ = ⟪Ab|"""
        a = random_hermitian(rng, 3)
        b = random_hermitian(rng, 3)
        np.testing.assert_allclose(
            apply_to_bra(operator_bra(a), left_mult(b)), operator_bra(a @ b), atol=1e-12
        )

    def test_left_right_commute(self, rng):
        """测试左乘与右乘映射对易"""
        x = random_hermitian(rng, 4)
        y = random_hermitian(rng, 4)
        lx, ry = left_mult(x), right_mult(y)
        np.testing.assert_allclose(lx @ ry, ry @ lx, atol=1e-12)

    def test_right_mult_reverses_products(self, rng):
        """测试 (xy)ᴿ = yᴿ xᴿ"""
        x = random_hermitian(rng, 3)
        y = random_hermitian(rng, 3)
        np.testing.assert_allclose(
            right_mult(x @ y), right_mult(y) @ right_mult(x), atol=1e-12
        )


class TestFermionicMaps:
    """费米映射族测试类"""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_almost_car(self, n):
        """测试几乎-CAR 在整个算符空间上成立"""
        fam = fermionic_maps(ModeSystem.fermionic(n))
        report = verify_algebra(fam, interior_only=False)
        assert report.max_residual() <= 1e-13
        assert report.passed(1e-13)
        assert report.left_vacuum.max() <= 1e-13
        assert report.right_vacuum.max() <= 1e-13

    @pytest.mark.slow
    def test_almost_car_four_modes(self):
        """测试 n=4 的几乎-CAR"""
        report = verify_algebra(fermionic_maps(ModeSystem.fermionic(4)))
        assert report.max_residual() <= 1e-13
        assert report.left_vacuum.max() <= 1e-13
        assert report.right_vacuum.max() <= 1e-13

    def test_vacuum_conditions(self):
        """测试 ⟪1|ĉ′ = 0 与 ĉ|ρ0⟩ = 0"""
        sys = ModeSystem.fermionic(2)
        fam = fermionic_maps(sys)
        one = operator_bra(identity_op(sys))
        rho0 = vec(vacuum_state(sys))
        for low, high in zip(fam.lowering, fam.raising):
            np.testing.assert_allclose(one @ high, 0, atol=1e-14)
            np.testing.assert_allclose(low @ rho0, 0, atol=1e-14)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_parity_superop(self, n):
        """测试 P̂ 固定 ⟪1| 与 |ρ0⟩，且与所有映射反对易"""
        sys = ModeSystem.fermionic(n)
        p_hat = parity_superop(sys)
        one = operator_bra(identity_op(sys))
        rho0 = vec(vacuum_state(sys))
        np.testing.assert_allclose(one @ p_hat, one)
        np.testing.assert_allclose(p_hat @ rho0, rho0)
        np.testing.assert_allclose(p_hat @ p_hat, np.eye(sys.superop_dim), atol=1e-14)
        fam = fermionic_maps(sys)
        for _, _, superop in fam.as_list():
            assert np.max(np.abs(p_hat @ superop + superop @ p_hat)) <= 1e-13
        assert verify_algebra(fam).parity["anticommutes_raising"] <= 1e-13

    def test_definitions(self):
        """测试映射按约定由左右乘构成"""
        sys = ModeSystem.fermionic(1)
        fam = fermionic_maps(sys)
        c, c_dag = annihilation_op(sys, 1), creation_op(sys, 1)
        p_hat = parity_superop(sys)
        np.testing.assert_allclose(fam.lowering_at(0, 1), left_mult(c))
        np.testing.assert_allclose(fam.lowering_at(1, 1), p_hat @ right_mult(c_dag))
        np.testing.assert_allclose(
            fam.raising_at(0, 1), left_mult(c_dag) - p_hat @ right_mult(c_dag)
        )
        np.testing.assert_allclose(
            fam.raising_at(1, 1), left_mult(c) - p_hat @ right_mult(c)
        )

    def test_not_hermitian_adjoints(self):
        """测试 ĉ′ 不是 ĉ 的厄米伴随"""
        gaps = hermitian_adjoint_gap(fermionic_maps(ModeSystem.fermionic(1)))
        assert np.all(gaps > 0.5)

    def test_statistics_mismatch(self):
        """测试对玻色系统请求费米映射"""
        with pytest.raises(StatisticsMismatchError):
            fermionic_maps(ModeSystem.bosonic(1, cutoff=3))
        with pytest.raises(StatisticsMismatchError):
            parity_superop(ModeSystem.bosonic(1, cutoff=3))


class TestBosonicMaps:
    """玻色映射族测试类"""

    @pytest.mark.parametrize(
        "n,cutoff", [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4)]
    )
    def test_almost_ccr_interior(self, n, cutoff):
        """测试内部子空间上的几乎-CCR 与真空条件"""
        report = verify_algebra(bosonic_maps(ModeSystem.bosonic(n, cutoff)))
        assert report.max_residual() <= 1e-12
        assert report.left_vacuum.max() <= 1e-12
        assert report.right_vacuum.max() <= 1e-12

    @pytest.mark.slow
    def test_almost_ccr_two_modes_cutoff_five(self):
        """测试 n=2、cutoff=5 的几乎-CCR"""
        report = verify_algebra(bosonic_maps(ModeSystem.bosonic(2, 5)))
        assert report.max_residual() <= 1e-12

    def test_truncation_edge_defect(self):
        """测试在全部列上检验时截断边界的残差为 cutoff+1"""
        cutoff = 4
        fam = bosonic_maps(ModeSystem.bosonic(1, cutoff))
        report = verify_algebra(fam, interior_only=False)
        assert report.mixed.max() == pytest.approx(cutoff + 1, rel=1e-12)
        assert report.lowering.max() <= 1e-12

    def test_right_vacuum_and_left_vacuum(self):
        """测试真空条件"""
        sys = ModeSystem.bosonic(1, cutoff=4)
        report = verify_algebra(bosonic_maps(sys))
        assert report.left_vacuum.max() <= 1e-14
        assert report.right_vacuum.max() <= 1e-14
        assert report.parity == {}

    def test_definitions(self):
        """测试 â′_{0} = â†ᴸ − â†ᴿ 与 â′_{1} = âᴿ − âᴸ"""
        sys = ModeSystem.bosonic(1, cutoff=3)
        fam = bosonic_maps(sys)
        a, a_dag = annihilation_op(sys, 1), creation_op(sys, 1)
        np.testing.assert_allclose(fam.lowering_at(0, 1), left_mult(a))
        np.testing.assert_allclose(fam.lowering_at(1, 1), right_mult(a_dag))
        np.testing.assert_allclose(
            fam.raising_at(0, 1), left_mult(a_dag) - right_mult(a_dag)
        )
        np.testing.assert_allclose(fam.raising_at(1, 1), right_mult(a) - left_mult(a))

    def test_interior_columns(self):
        """测试内部列数为 cutoff² (n=1)"""
        sys = ModeSystem.bosonic(1, cutoff=4)
        assert interior_columns(sys).size == 16
        np.testing.assert_array_equal(physical_columns(sys), interior_columns(sys))


class TestMapFamily:
    """映射族辅助方法测试类"""

    def test_canonical_order(self):
        """测试规范顺序"""
        assert canonical_order(2) == [(0, 1), (0, 2), (1, 1), (1, 2)]

    def test_position_and_list(self):
        """测试位置与列表"""
        fam = map_family(ModeSystem.fermionic(2))
        assert fam.position(1, 2) == 3
        items = fam.as_list()
        assert len(items) == 8
        assert items[0][0] == "lowering" and items[-1][0] == "raising"
        with pytest.raises(ValueError):
            fam.position(2, 1)

    def test_dispatch(self):
        """测试按统计类型分派"""
        assert map_family(ModeSystem.fermionic(1)).parity is not None
        assert map_family(ModeSystem.bosonic(1, 3)).parity is None

    def test_fermionic_physical_columns_are_parity_even(self):
        """测试费米物理扇区为偶宇称算符"""
        sys = ModeSystem.fermionic(2)
        columns = physical_columns(sys)
        assert columns.size == sys.superop_dim // 2
        p_hat = parity_superop(sys)
        np.testing.assert_allclose(np.diag(p_hat)[columns], 1)

    @pytest.mark.parametrize(
        "sys",
        [ModeSystem.fermionic(2), ModeSystem.bosonic(2, 3)],
        ids=lambda s: s.describe(),
    )
    def test_bra_ket_action_associates(self, sys, rng):
        """测试 ⟪A|(M̂|ρ⟩) = (⟪A|M̂)|ρ⟩ 对映射族中每个映射成立"""
        a = random_hermitian(rng, sys.dim) + 1j * random_hermitian(rng, sys.dim)
        rho = vec(random_density_matrix(rng, sys.dim))
        bra = operator_bra(a)
        for _, _, superop in map_family(sys).as_list():
            ket_first = bra @ apply_to_ket(superop, rho)
            bra_first = apply_to_bra(bra, superop) @ rho
            assert abs(ket_first - bra_first) <= 1e-12 * max(1.0, abs(ket_first))

    def test_report_dict(self):
        """测试报告可序列化"""
        report = verify_algebra(map_family(ModeSystem.fermionic(1)))
        data = report.to_dict()
        assert data["relation"] == "anticommutator"
        assert data["indices"] == ["0,1", "1,1"]
        assert data["max_residual"] == report.max_residual()

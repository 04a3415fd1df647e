"""R-matrices: construction, Yang-Baxter checks, classical limit, cocommutators."""

import pytest

from hopf_forge.algebras import classical_presentation, preset
from hopf_forge.coeff import DeformationSeries, FE_ONE, FieldElem
from hopf_forge.ncalg import TensorElement
from hopf_forge.rmat import (NotAntisymmetric, build_universal_r,
                             check_classical_r, check_cocommutator_link,
                             check_cybe, check_factorization, check_intertwiner,
                             check_np_cocommutator_table, check_qybe,
                             check_triangularity, classical_r_of_preset,
                             cocommutator, cybe_residual, extract_classical_r,
                             preset_r, qybe_residual, triangularity_residual)


def mono1(alg, v):
    return DeformationSeries.monomial(FieldElem(v), 1, alg.param, alg.order)


class TestConstruction:
    def test_sl2_first_order(self):
        r = preset_r("sl2", 1)
        alg = preset("sl2", 1).presentation
        ap, a = ((alg.index["A_plus"], 1),), ((alg.index["A"], 1),)
        want = TensorElement.unit(alg, 2) \
            + TensorElement(alg, 2, {(a, ap): mono1(alg, 1), (ap, a): mono1(alg, -1)})
        assert r == want

    def test_nullplane_first_order(self):
        r = preset_r("nullplane", 1)
        alg = preset("nullplane", 1).presentation

        def w(g):
            return ((alg.index[g], 1),)

        want = TensorElement.unit(alg, 2) + TensorElement(alg, 2, {
            (w("K_2"), w("P_plus")): mono1(alg, 2),
            (w("P_plus"), w("K_2")): mono1(alg, -2),
            (w("E_1"), w("P_1")): mono1(alg, 2),
            (w("P_1"), w("E_1")): mono1(alg, -2),
        })
        assert r == want

    def test_zero_scalar_gives_unit(self):
        alg = preset("sl2", 2).presentation
        r = build_universal_r(alg, ((FieldElem(0), "A_plus", "A"),))
        assert r == TensorElement.unit(alg, 2)


class TestQYBE:
    def test_sl2_order3(self):
        assert check_qybe("sl2", 3).passed

    def test_nullplane_order3(self):
        assert check_qybe("nullplane", 3).passed

    def test_so22_order2(self):
        assert check_qybe("so22", 2).passed

    def test_unit_r_trivially_solves(self):
        alg = preset("sl2", 2).presentation
        assert qybe_residual(TensorElement.unit(alg, 2)).is_zero()

    def test_corrupted_factor_breaks_intertwining(self):
        from hopf_forge.algebras import build_preset
        from hopf_forge.rmat import build_universal_r, intertwiner_residual
        bad = build_preset("nullplane", 2, fault="rmat-factor")
        r = build_universal_r(bad.presentation, bad.rfactors)
        bad_any = any(
            not intertwiner_residual(r, bad.hopf, g).is_zero()
            for g in bad.presentation.generators)
        assert bad_any


class TestIntertwining:
    @pytest.mark.parametrize("name", ["sl2", "nullplane"])
    def test_presets(self, name):
        assert check_intertwiner(name, 3).passed

    def test_so22_low_order(self):
        assert check_intertwiner("so22", 2).passed


class TestTriangularity:
    @pytest.mark.parametrize("name", ["sl2", "so22", "nullplane"])
    def test_presets(self, name):
        assert check_triangularity(name, 3).passed

    def test_unit_r(self):
        alg = preset("sl2", 2).presentation
        assert triangularity_residual(TensorElement.unit(alg, 2)).is_zero()


class TestClassicalR:
    def test_so22_wedges(self):
        alg = preset("so22", 2).presentation
        got = extract_classical_r(preset_r("so22", 2))
        i = alg.index
        # z (J ^ P0 + D ^ P), stored with ordered index pairs
        want = {(i["P0_hat"], i["J_hat"]): FieldElem(-1),
                (i["P"], i["D"]): FieldElem(-1)}
        assert got == want

    def test_nullplane_wedges(self):
        alg = preset("nullplane", 2).presentation
        got = extract_classical_r(preset_r("nullplane", 2))
        i = alg.index
        want = {(i["P_plus"], i["K_2"]): FieldElem(-2),
                (i["P_1"], i["E_1"]): FieldElem(-2)}
        assert got == want

    def test_matches_factor_reading(self):
        for name in ("sl2", "so22", "nullplane"):
            assert check_classical_r(name, 2).passed

    def test_symmetric_part_rejected(self):
        alg = preset("sl2", 2).presentation
        r = build_universal_r(alg, ((FE_ONE, "A", "A_plus"),))
        with pytest.raises(NotAntisymmetric):
            extract_classical_r(r)

    def test_linearity_in_factor_scalars(self):
        alg = preset("sl2", 2).presentation
        base = ((FieldElem(-1), "A_plus", "A"), (FE_ONE, "A", "A_plus"))
        tripled = tuple((c * FieldElem(3), l, r) for c, l, r in base)
        r1 = extract_classical_r(build_universal_r(alg, base))
        r3 = extract_classical_r(build_universal_r(alg, tripled))
        assert r3 == {k: v * FieldElem(3) for k, v in r1.items()}


class TestCYBE:
    @pytest.mark.parametrize("name", ["so22", "nullplane"])
    def test_presets(self, name):
        assert check_cybe(name, 2).passed

    def test_zero_r(self):
        calg = classical_presentation("nullplane", 2)
        assert cybe_residual({}, calg).is_zero()


class TestCocommutators:
    def test_table(self):
        assert check_np_cocommutator_table(2).passed

    def test_link_reports(self):
        assert check_cocommutator_link("so22", 2).passed
        assert check_cocommutator_link("nullplane", 2).passed

    def test_primitive_generators_have_zero_cocommutator(self):
        calg = classical_presentation("nullplane", 2)
        wedges = classical_r_of_preset("nullplane", 2)
        assert cocommutator(wedges, "P_plus", calg).is_zero()
        assert cocommutator(wedges, "E_1", calg).is_zero()


class TestFactorization:
    def test_four_vs_merged(self):
        assert check_factorization(3).passed

"""Hopf layer: structure maps, axiom checks, subalgebras, injected faults."""

import pytest

from hopf_forge.algebras import build_preset, preset
from hopf_forge.coeff import DeformationSeries, FE_ONE, FieldElem
from hopf_forge.hopf import HopfMaps
from hopf_forge.ncalg import tensor_pair


class TestCoproduct:
    def test_primitive_p_plus(self):
        b = preset("nullplane", 2)
        alg = b.presentation
        want = tensor_pair(alg.unit(), alg.gen("P_plus")) \
            + tensor_pair(alg.gen("P_plus"), alg.unit())
        assert b.hopf.delta[alg.index["P_plus"]] == want

    def test_coproduct_of_unit(self):
        b = preset("sl2", 2)
        alg = b.presentation
        from hopf_forge.ncalg import TensorElement
        assert b.hopf.coproduct(alg.unit()) == TensorElement.unit(alg, 2)

    def test_multiplicative_extension_matches_tensor_product(self):
        # Delta(P_1 P_plus) computed by extension equals Delta(P_1) Delta(P_plus)
        b = preset("nullplane", 3)
        alg = b.presentation
        d = b.hopf.coproduct(alg.gen("P_1") * alg.gen("P_plus"))
        oracle = b.hopf.delta[alg.index["P_1"]] * b.hopf.delta[alg.index["P_plus"]]
        assert d == oracle

    def test_counit_and_antipode_on_unit(self):
        b = preset("so22", 2)
        alg = b.presentation
        assert b.hopf.counit_of(alg.unit()) == alg.domain.one
        assert b.hopf.antipode_of(alg.unit()) == alg.unit()

    def test_counit_vanishes_on_generators(self):
        b = preset("so22", 2)
        for i in range(6):
            assert b.hopf.counit[i] == FieldElem(0)


class TestAxiomChecks:
    @pytest.mark.parametrize("name", ["sl2", "so22", "nullplane", "sl2-jbasis"])
    def test_all_axioms_pass(self, name):
        b = preset(name, 3)
        for rep in b.hopf.run_all_checks():
            assert rep.passed, rep

    def test_antipode_is_antihomomorphism_on_rules(self):
        b = preset("nullplane", 3)
        assert b.hopf.check_antipode_antihom().passed

    def test_corrupted_coproduct_detected(self):
        bad = build_preset("nullplane", 2, fault="hopf-coproduct")
        anti = bad.hopf.check_antipode()
        hom = bad.hopf.check_coproduct_hom()
        assert not anti.passed or not hom.passed
        # coproduct-hom pinpoints the F_1 relations
        assert any("F_1" in f["input"] for f in hom.failures)


class TestPrimitiveGenerators:
    def test_tables(self):
        assert preset("so22", 2).hopf.primitive_generators() == ["P", "P0_hat"]
        assert preset("nullplane", 2).hopf.primitive_generators() == ["P_plus", "E_1"]
        assert preset("sl2", 2).hopf.primitive_generators() == ["A_plus"]


class TestSubalgebra:
    def test_stability_group_closes(self):
        b = preset("nullplane", 3)
        rep = b.hopf.subalgebra_check(("P_plus", "P_1", "E_1", "K_2"))
        assert rep.passed

    def test_p_minus_alone_fails(self):
        b = preset("nullplane", 3)
        rep = b.hopf.subalgebra_check(("P_minus",))
        assert not rep.passed
        assert any("Delta(P_minus)" in f["input"] for f in rep.failures)

    def test_full_set_passes(self):
        b = preset("nullplane", 2)
        assert b.hopf.subalgebra_check(b.presentation.generators).passed

    def test_empty_subset_rejected(self):
        b = preset("nullplane", 2)
        with pytest.raises(ValueError):
            b.hopf.subalgebra_check(())


class TestTransportedStructure:
    def test_jbasis_counit_is_scalar_zero(self):
        b = preset("sl2-jbasis", 3)
        for i in range(3):
            assert b.hopf.counit[i] == FieldElem(0)

    def test_jbasis_primitive(self):
        assert preset("sl2-jbasis", 3).hopf.primitive_generators() == ["J_plus"]

"""Noncommutative kernel: normal ordering, products, tensors, serialization."""

import random

import pytest

from hopf_forge.coeff import DeformationSeries, FieldElem, rat
from hopf_forge.ncalg import (AlgebraMismatch, ArityMismatch, MissingRule,
                              NCElement, TensorElement, UnmappedGenerator,
                              tensor_pair)
from hopf_forge.algebras import preset


def mono(alg, value, degree=0):
    fe = FieldElem(rat(*value)) if isinstance(value, tuple) else FieldElem(value)
    return DeformationSeries.monomial(fe, degree, alg.param, alg.order)


class TestNormalize:
    def test_a_times_aplus(self):
        alg = preset("sl2", 2).presentation
        got = alg.gen("A") * alg.gen("A_plus")
        want = alg.element({
            ((0, 1), (1, 1)): mono(alg, 1),
            ((0, 1),): mono(alg, 2),
            ((0, 2),): mono(alg, 2, 1),
            ((0, 3),): mono(alg, (4, 3), 2),
        })
        assert got == want

    def test_already_normal(self):
        alg = preset("sl2", 2).presentation
        x = alg.gen("A_plus") * alg.gen("A")
        assert set(x.terms) == {((0, 1), (1, 1))}

    def test_aminus_times_a(self):
        alg = preset("sl2", 2).presentation
        got = alg.gen("A_minus") * alg.gen("A")
        want = alg.element({
            ((1, 1), (2, 1)): mono(alg, 1),
            ((2, 1),): mono(alg, 2),
            ((1, 2),): mono(alg, -1, 1),
        })
        assert got == want

    def test_idempotent_on_random_words(self):
        alg = preset("nullplane", 2).presentation
        rng = random.Random(11)
        for _ in range(20):
            word = tuple(rng.randrange(6) for _ in range(rng.randint(1, 5)))
            nf = alg.normal_form_of_word(word)
            # every output word is sorted, and renormalizing is the identity
            for w, c in nf.items():
                flat = tuple(g for g, e in w for _ in range(e))
                assert flat == tuple(sorted(flat))
                again = alg.normal_form_of_word(flat)
                assert again == {w: alg.domain.one}

    def test_missing_rule_raises(self):
        from hopf_forge.ncalg import AlgebraPresentation
        alg = AlgebraPresentation("partial", ("a", "b"), "z", 1)
        alg.set_rules({(1, 0): None})
        with pytest.raises(MissingRule):
            alg.gen("b") * alg.gen("a")


class TestMul:
    def test_in_order_product(self):
        alg = preset("sl2", 2).presentation
        x = alg.gen("A_plus") * alg.gen("A_minus")
        assert set(x.terms) == {((0, 1), (2, 1))}

    def test_out_of_order_product(self):
        alg = preset("sl2", 2).presentation
        got = alg.gen("A_minus") * alg.gen("A_plus")
        want = alg.element({((0, 1), (2, 1)): mono(alg, 1), ((1, 1),): mono(alg, -1)})
        assert got == want

    def test_unit(self):
        alg = preset("sl2", 2).presentation
        x = alg.gen("A") * alg.gen("A_minus") + alg.unit() * mono(alg, (1, 2))
        assert alg.unit() * x == x

    def test_algebra_mismatch(self):
        a = preset("sl2", 2).presentation
        b = preset("nullplane", 2).presentation
        with pytest.raises(AlgebraMismatch):
            a.gen("A") * b.gen("P_1")

    def test_associativity_random(self):
        alg = preset("so22", 2).presentation
        rng = random.Random(5)

        def rand_elem():
            out = alg.zero()
            for _ in range(rng.randint(1, 3)):
                word = tuple(rng.randrange(6) for _ in range(rng.randint(0, 3)))
                coeff = mono(alg, rng.randint(-3, 3), rng.randint(0, 1))
                out = out + alg.normalize([(word, coeff)])
            return out

        for _ in range(8):
            x, y, z = rand_elem(), rand_elem(), rand_elem()
            assert (x * y) * z == x * (y * z)

    def test_bilinearity_of_commutator(self):
        alg = preset("nullplane", 2).presentation
        x, y, z = alg.gen("K_2"), alg.gen("P_minus"), alg.gen("F_1")
        assert x.commutator(y) == -(y.commutator(x))
        # Leibniz: [x, yz] = [x,y]z + y[x,z]
        assert x.commutator(y * z) == x.commutator(y) * z + y * x.commutator(z)

    def test_jacobi_on_all_preset_triples(self):
        for name in ("sl2", "so22", "nullplane", "sl2-jbasis"):
            alg = preset(name, 2).presentation
            n = len(alg.generators)
            for i in range(n):
                for j in range(i + 1, n):
                    for k in range(j + 1, n):
                        x, y, z = alg.gen(i), alg.gen(j), alg.gen(k)
                        acc = (x.commutator(y.commutator(z))
                               + y.commutator(z.commutator(x))
                               + z.commutator(x.commutator(y)))
                        assert acc.is_zero(), (name, i, j, k)


class TestConsistency:
    def test_presets_pass(self):
        for name in ("sl2", "so22", "nullplane", "sl2-jbasis"):
            assert preset(name, 3).presentation.consistency_check().passed

    def test_corrupted_rule_fails(self):
        from hopf_forge.algebras import build_preset
        bad = build_preset("nullplane", 2, fault="ncalg-rule")
        rep = bad.presentation.consistency_check()
        assert not rep.passed
        assert rep.failures[0]["residual"]


class TestTensor:
    def test_embed(self):
        alg = preset("sl2", 2).presentation
        t = tensor_pair(alg.gen("A"), alg.gen("A_plus"))
        e = t.embed((0, 2), 3)
        assert set(e.terms) == {(((1, 1),), (), ((0, 1),))}

    def test_flip_symmetric_element(self):
        alg = preset("sl2", 2).presentation
        t = tensor_pair(alg.unit(), alg.gen("A_plus")) \
            + tensor_pair(alg.gen("A_plus"), alg.unit())
        assert t.flip() == t

    def test_tensor_mul(self):
        alg = preset("sl2", 2).presentation
        t1 = tensor_pair(alg.gen("A_plus"), alg.unit())
        t2 = tensor_pair(alg.unit(), alg.gen("A"))
        assert t1 * t2 == tensor_pair(alg.gen("A_plus"), alg.gen("A"))

    def test_arity_mismatch(self):
        alg = preset("sl2", 2).presentation
        t = tensor_pair(alg.unit(), alg.unit())
        with pytest.raises(ArityMismatch):
            t * t.embed((0, 1), 3)

    def test_flip_is_involutive_and_linear(self):
        alg = preset("nullplane", 2).presentation
        t = tensor_pair(alg.gen("K_2"), alg.gen("P_plus")) * mono(alg, 3, 1) \
            + tensor_pair(alg.gen("E_1"), alg.gen("P_1"))
        assert t.flip().flip() == t


class TestSubstitution:
    def test_identity_map(self):
        alg = preset("sl2", 2).presentation
        x = alg.gen("A_minus") * alg.gen("A") + alg.gen("A_plus")
        images = {g: alg.gen(g) for g in alg.generators}
        assert x.substitute(alg, images) == x

    def test_unmapped_generator(self):
        alg = preset("sl2", 2).presentation
        with pytest.raises(UnmappedGenerator):
            alg.gen("A").substitute(alg, {"A_plus": alg.gen("A_plus")})

    def test_classical_limit_drops_higher_orders(self):
        alg = preset("nullplane", 2).presentation
        x = alg.gen("K_2").commutator(alg.gen("P_plus"))
        assert x.classical_limit() == alg.gen("P_plus").classical_limit()
        assert alg.unit().classical_limit() == alg.unit()


class TestSerialization:
    def test_round_trip(self):
        alg = preset("nullplane", 2).presentation
        x = alg.gen("F_1") * alg.gen("P_1") + alg.unit() * mono(alg, (1, 3), 1)
        data = x.to_dict()
        assert any(t["word"] for t in data["terms"])  # schema: [[gen, exp], ...]
        y = NCElement.from_dict(alg, data)
        assert x == y

    def test_coeff_quads(self):
        alg = preset("sl2", 1).presentation
        x = alg.gen("A_plus") * mono(alg, (2, 3))
        t = x.to_dict()["terms"][0]
        assert t["word"] == [["A_plus", 1]]
        assert t["coeff"] == [[2, 3, 0, 1], [0, 1, 0, 1]]

    def test_tensor_dict(self):
        alg = preset("sl2", 1).presentation
        t = tensor_pair(alg.gen("A"), alg.gen("A_plus")).to_dict()
        assert t["arity"] == 2
        assert t["terms"][0]["word"] == [[["A", 1]], [["A_plus", 1]]]

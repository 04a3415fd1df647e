"""Hopf-structure layer: coproduct, counit, antipode and the axiom checks.

The three maps are given on generators and extended multiplicatively
(anti-multiplicatively for the antipode); every check below re-verifies the
axioms mechanically on generators plus all degree-2 normal words, which also
exercises the rewriting kernel on both tensor slots.
"""

from __future__ import annotations

from .coeff import FE_ONE
from .ncalg import NCElement, TensorElement
from .report import CheckReport


class HopfMaps:
    """Coproduct/counit/antipode data for one presentation."""

    def __init__(self, algebra, delta, counit, antipode):
        self.algebra = algebra
        self.delta = {algebra.index.get(g, g): t for g, t in delta.items()}
        self.counit = {algebra.index.get(g, g): c for g, c in counit.items()}
        self.antipode = {algebra.index.get(g, g): e for g, e in antipode.items()}
        for i in range(len(algebra.generators)):
            if i not in self.delta or i not in self.counit or i not in self.antipode:
                raise ValueError(f"Hopf data missing for generator {algebra.generators[i]}")
        self._delta_word = {}
        self._antipode_word = {}

    # -- structure maps ------------------------------------------------------

    def coproduct_word(self, word):
        """Coproduct of a normal word (multiplicative extension), cached."""
        t = self._delta_word.get(word)
        if t is None:
            alg = self.algebra
            t = TensorElement.unit(alg, 2)
            for g, e in word:
                for _ in range(e):
                    t = t * self.delta[g]
            self._delta_word[word] = t
        return t

    def coproduct(self, x):
        out = TensorElement.zero(self.algebra, 2)
        for w, c in x.terms.items():
            out = out + self.coproduct_word(w) * c
        return out

    def antipode_word(self, word):
        """Antipode of a normal word: reversed product of generator images."""
        e = self._antipode_word.get(word)
        if e is None:
            alg = self.algebra
            e = alg.unit()
            for g, k in reversed(word):
                for _ in range(k):
                    e = e * self.antipode[g]
            self._antipode_word[word] = e
        return e

    def antipode_of(self, x):
        out = self.algebra.zero()
        for w, c in x.terms.items():
            out = out + self.antipode_word(w) * c
        return out

    def counit_word(self, word):
        acc = FE_ONE
        for g, e in word:
            acc = acc * (self.counit[g] ** e)
            if acc.is_zero():
                break
        return acc

    def counit_of(self, x):
        """Counit of an element, as a scalar series."""
        acc = self.algebra.domain.zero
        for w, c in x.terms.items():
            f = self.counit_word(w)
            if not f.is_zero():
                acc = acc + c * f
        return acc

    def delta_on_slot(self, t, slot):
        """Apply the coproduct to one slot of an arity-2 tensor (-> arity 3)."""
        alg = self.algebra
        out = TensorElement.zero(alg, 3)
        acc = {}
        for ws, c in t.terms.items():
            dt = self.coproduct_word(ws[slot])
            for dws, dc in dt.terms.items():
                if slot == 0:
                    key = (dws[0], dws[1], ws[1])
                else:
                    key = (ws[0], dws[0], dws[1])
                v = c * dc
                if v.is_zero():
                    continue
                cur = acc.get(key)
                s = v if cur is None else cur + v
                if s.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = s
        return TensorElement(alg, 3, acc)

    # -- default test set ----------------------------------------------------

    def default_test_words(self):
        """All generators plus all degree-2 normal words."""
        n = len(self.algebra.generators)
        words = [((i, 1),) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                words.append(((i, 2),) if i == j else ((i, 1), (j, 1)))
        return words

    def _label(self, word):
        return "*".join(f"{self.algebra.generators[g]}^{e}" if e > 1
                        else self.algebra.generators[g] for g, e in word) or "1"

    # -- axiom checks ----------------------------------------------------------

    def check_coassociativity(self, test_words=None):
        rep = CheckReport(check="coassociativity", algebra=self.algebra.name,
                          order=self.algebra.order)
        for w in test_words or self.default_test_words():
            t = self.coproduct_word(w)
            res = self.delta_on_slot(t, 0) - self.delta_on_slot(t, 1)
            if not res.is_zero():
                rep.add_failure(self._label(w), repr(res))
        return rep

    def check_counit(self, test_words=None):
        alg = self.algebra
        rep = CheckReport(check="counit", algebra=alg.name, order=alg.order)
        for w in test_words or self.default_test_words():
            x = NCElement(alg, {w: alg.domain.one})
            t = self.coproduct_word(w)
            left = alg.zero()
            right = alg.zero()
            for (w1, w2), c in t.terms.items():
                f1 = self.counit_word(w1)
                if not f1.is_zero():
                    left = left + NCElement(alg, {w2: c * f1})
                f2 = self.counit_word(w2)
                if not f2.is_zero():
                    right = right + NCElement(alg, {w1: c * f2})
            if not (left - x).is_zero():
                rep.add_failure(self._label(w), repr(left - x))
            if not (right - x).is_zero():
                rep.add_failure(self._label(w), repr(right - x))
        return rep

    def check_antipode(self, test_words=None):
        alg = self.algebra
        rep = CheckReport(check="antipode", algebra=alg.name, order=alg.order)
        for w in test_words or self.default_test_words():
            t = self.coproduct_word(w)
            # batch by the slot the antipode acts on: one kernel product per
            # distinct word instead of one per tensor term
            by_w1 = {}
            by_w2 = {}
            for (w1, w2), c in t.terms.items():
                by_w1.setdefault(w1, {})[w2] = c
                by_w2.setdefault(w2, {})[w1] = c
            left = alg.zero()
            for w1, terms in by_w1.items():
                left = left + self.antipode_word(w1) * NCElement(alg, terms)
            right = alg.zero()
            for w2, terms in by_w2.items():
                right = right + NCElement(alg, terms) * self.antipode_word(w2)
            target = alg.scalar(self.counit_of(NCElement(alg, {w: alg.domain.one})))
            if not (left - target).is_zero():
                rep.add_failure(self._label(w) + " (gamma(x1)x2)", repr(left - target))
            if not (right - target).is_zero():
                rep.add_failure(self._label(w) + " (x1 gamma(x2))", repr(right - target))
        return rep

    def check_coproduct_hom(self):
        """Delta([X,Y]) = [Delta(X), Delta(Y)] for every generator pair."""
        alg = self.algebra
        rep = CheckReport(check="coproduct-hom", algebra=alg.name, order=alg.order)
        n = len(alg.generators)
        for j in range(n):
            for i in range(j):
                x, y = alg.gen(j), alg.gen(i)
                lhs = self.coproduct(x.commutator(y))
                rhs = self.delta[j].commutator(self.delta[i])
                if not (lhs - rhs).is_zero():
                    rep.add_failure(f"[{alg.generators[j]},{alg.generators[i]}]",
                                    repr(lhs - rhs))
        return rep

    def check_antipode_antihom(self):
        """gamma applied to both sides of each rewrite rule agrees."""
        alg = self.algebra
        rep = CheckReport(check="antipode-antihom", algebra=alg.name, order=alg.order)
        for (j, i), rhs in alg.rules.items():
            lhs = self.antipode[i] * self.antipode[j]   # gamma(g_j g_i), reversed
            img = self.antipode_of(rhs)
            if not (lhs - img).is_zero():
                rep.add_failure(f"{alg.generators[j]}*{alg.generators[i]}", repr(lhs - img))
        return rep

    def primitive_generators(self):
        """Generators X with Delta(X) = 1(x)X + X(x)1."""
        alg = self.algebra
        out = []
        for i, name in enumerate(alg.generators):
            g = ((i, 1),)
            prim = TensorElement(alg, 2, {((), g): alg.domain.one,
                                          (g, ()): alg.domain.one})
            if (self.delta[i] - prim).is_zero():
                out.append(name)
        return out

    def subalgebra_check(self, subset):
        """Do the given generators close a Hopf subalgebra?

        Checks that coproducts land in span(x)span, antipodes in span, and
        pairwise commutators in the enveloping span of the subset.
        """
        alg = self.algebra
        idx = {g if isinstance(g, int) else alg.index[g] for g in subset}
        if not idx:
            raise ValueError("subset must be nonempty")
        rep = CheckReport(check="hopf-subalgebra", algebra=alg.name, order=alg.order,
                          details={"subset": sorted(alg.generators[i] for i in idx)})

        def in_span(word):
            return all(g in idx for g, _ in word)

        for i in sorted(idx):
            name = alg.generators[i]
            for (w1, w2) in self.delta[i].terms:
                if not (in_span(w1) and in_span(w2)):
                    rep.add_failure(f"Delta({name})", self._label(w1) + "(x)" + self._label(w2))
            for w in self.antipode[i].terms:
                if not in_span(w):
                    rep.add_failure(f"gamma({name})", self._label(w))
            for j in sorted(idx):
                if j <= i:
                    continue
                comm = alg.gen(j).commutator(alg.gen(i))
                for w in comm.terms:
                    if not in_span(w):
                        rep.add_failure(
                            f"[{alg.generators[j]},{alg.generators[i]}]", self._label(w))
        return rep

    def run_all_checks(self):
        return [
            self.check_coassociativity(),
            self.check_counit(),
            self.check_antipode(),
            self.check_coproduct_hom(),
        ]

"""Universal R-matrices and the Yang-Baxter verification suite.

The R-matrices are ordered products of exponential factors exp{c * param *
X (x) Y}; everything is expanded to the working truncation order and every
identity (quantum Yang-Baxter, intertwining of the coproduct with its flip,
triangularity, the classical limit and its classical Yang-Baxter equation,
Lie-bialgebra cocommutators) is checked with exactly-zero residuals.

Intertwining and triangularity are verified multiplicatively (residuals of
the form sigma(Delta(X)) * R - R * Delta(X)) so no series inversion in the
tensor algebra is ever needed.
"""

from __future__ import annotations

from math import factorial

from .coeff import DeformationSeries, FE_ONE, FieldElem
from .ncalg import TensorElement
from .algebras import classical_presentation, preset
from .report import CheckReport


class NotAntisymmetric(Exception):
    """First-order term of R has a symmetric part."""


def build_universal_r(algebra, rfactors, order=None):
    """Ordered product of exp{c * param * left (x) right} factors."""
    alg = algebra
    out = TensorElement.unit(alg, 2)
    for c, left, right in rfactors:
        li, ri = alg.index[left], alg.index[right]
        terms = {}
        for k in range(alg.order + 1):
            coeff = DeformationSeries.monomial(
                (c ** k) / factorial(k), k, alg.param, alg.order)
            if coeff.is_zero():
                continue
            w = (((li, k),) if k else (), ((ri, k),) if k else ())
            terms[w] = coeff
        out = out * TensorElement(alg, 2, terms)
    return out


def preset_r(name, order):
    bundle = preset(name, order)
    if bundle.rfactors is None:
        raise ValueError(f"preset {name} has no R-matrix recipe")
    return build_universal_r(bundle.presentation, bundle.rfactors)


def qybe_residual(r):
    """R12 R13 R23 - R23 R13 R12 in the three-fold tensor algebra."""
    r12 = r.embed((0, 1), 3)
    r13 = r.embed((0, 2), 3)
    r23 = r.embed((1, 2), 3)
    return (r12 * r13) * r23 - (r23 * r13) * r12


def intertwiner_residual(r, hopf, gen):
    """sigma(Delta(X)) * R - R * Delta(X); zero iff R intertwines."""
    d = hopf.delta[hopf.algebra.index[gen] if isinstance(gen, str) else gen]
    return d.flip() * r - r * d


def triangularity_residual(r):
    """flip(R) * R - 1 (x) 1."""
    return r.flip() * r - TensorElement.unit(r.algebra, 2)


def extract_classical_r(r):
    """First-order part of R as an antisymmetric wedge combination.

    Returns {(i, j): c} with i < j meaning sum_{ij} c * X_i ^ X_j (the
    deformation parameter stripped); raises NotAntisymmetric otherwise.
    """
    alg = r.algebra
    first = {}
    for (w1, w2), c in r.terms.items():
        v = c.coefficient(1)
        if v.is_zero():
            continue
        if sum(e for _, e in w1) != 1 or sum(e for _, e in w2) != 1:
            raise NotAntisymmetric("first-order term is not generator (x) generator")
        first[(w1[0][0], w2[0][0])] = v
    out = {}
    seen = set()
    for (i, j), c in first.items():
        if (i, j) in seen:
            continue
        if i == j:
            raise NotAntisymmetric(f"diagonal first-order term at {alg.generators[i]}")
        mirror = first.get((j, i))
        if mirror is None or not (mirror + c).is_zero():
            raise NotAntisymmetric(
                f"first-order term at ({alg.generators[i]},{alg.generators[j]}) "
                "has a symmetric part")
        seen.add((i, j))
        seen.add((j, i))
        if i < j:
            out[(i, j)] = c
        else:
            out[(j, i)] = -c
    return out


def classical_r_of_preset(name, order):
    """The wedge data of the preset's R recipe, read off the factor list.

    Each factor exp{c * param * L (x) R} contributes c * L (x) R at first
    order; the sum must be antisymmetric and is returned in wedge form.
    """
    bundle = preset(name, order)
    alg = bundle.presentation
    pair = {}
    for c, left, right in bundle.rfactors:
        i, j = alg.index[left], alg.index[right]
        pair[(i, j)] = pair.get((i, j), FieldElem(0)) + c
    out = {}
    for (i, j), c in pair.items():
        if c.is_zero():
            continue
        mirror = pair.get((j, i), FieldElem(0))
        if not (mirror + c).is_zero():
            raise NotAntisymmetric(
                f"factor recipe of {name} is not antisymmetric at first order")
        if i < j:
            out[(i, j)] = c
    return out


def _wedge_tensor(alg, wedges):
    """sum c * (X (x) Y - Y (x) X) as an order-0 tensor element."""
    t = TensorElement.zero(alg, 2)
    one = DeformationSeries.one(alg.param, alg.order)
    for (i, j), c in wedges.items():
        wi, wj = ((i, 1),), ((j, 1),)
        t = t + TensorElement(alg, 2, {(wi, wj): one * c, (wj, wi): one * (-c)})
    return t


def cybe_residual(wedges, classical_alg):
    """[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23] in the classical envelope."""
    r = _wedge_tensor(classical_alg, wedges)
    r12 = r.embed((0, 1), 3)
    r13 = r.embed((0, 2), 3)
    r23 = r.embed((1, 2), 3)
    return (r12.commutator(r13) + r12.commutator(r23) + r13.commutator(r23))


def cocommutator(wedges, gen, classical_alg):
    """delta(X) = [1 (x) X + X (x) 1, r] at the classical level."""
    alg = classical_alg
    i = alg.index[gen] if isinstance(gen, str) else gen
    one = alg.domain.one
    x = TensorElement(alg, 2, {((), ((i, 1),)): one, (((i, 1),), ()): one})
    return x.commutator(_wedge_tensor(alg, wedges))


def skew_first_order(t, classical_alg):
    """(first-order part of a coproduct) minus its flip, as an order-0 tensor."""
    out = {}
    for ws, c in t.terms.items():
        v = c.coefficient(1)
        if v.is_zero():
            continue
        out[ws] = out.get(ws, FieldElem(0)) + v
        key = (ws[1], ws[0])
        out[key] = out.get(key, FieldElem(0)) - v
    one = DeformationSeries.one(classical_alg.param, classical_alg.order)
    return TensorElement(classical_alg, 2,
                         {w: one * c for w, c in out.items() if not c.is_zero()})


# -- check drivers -------------------------------------------------------------

def check_qybe(name, order):
    r = preset_r(name, order)
    rep = CheckReport(check="qybe", algebra=name, order=order)
    res = qybe_residual(r)
    if not res.is_zero():
        rep.add_failure("R12 R13 R23 - R23 R13 R12", repr(res))
    return rep


def check_intertwiner(name, order):
    bundle = preset(name, order)
    r = preset_r(name, order)
    rep = CheckReport(check="intertwine", algebra=name, order=order)
    for g in bundle.presentation.generators:
        res = intertwiner_residual(r, bundle.hopf, g)
        if not res.is_zero():
            rep.add_failure(f"sigma.Delta({g}).R - R.Delta({g})", repr(res))
    return rep


def check_triangularity(name, order):
    r = preset_r(name, order)
    rep = CheckReport(check="triangular", algebra=name, order=order)
    res = triangularity_residual(r)
    if not res.is_zero():
        rep.add_failure("flip(R).R - 1(x)1", repr(res))
    return rep


def check_classical_r(name, order):
    """extract_classical_r(R) agrees with the factor-level wedge reading."""
    rep = CheckReport(check="classical-r", algebra=name, order=order)
    r = preset_r(name, order)
    try:
        got = extract_classical_r(r)
    except NotAntisymmetric as e:
        rep.add_failure("antisymmetry", str(e))
        return rep
    want = classical_r_of_preset(name, order)
    if got != want:
        alg = preset(name, order).presentation
        rep.add_failure("wedge data", f"got {_wedge_str(alg, got)}, "
                                      f"expected {_wedge_str(alg, want)}")
    return rep


def check_cybe(name, order):
    rep = CheckReport(check="cybe", algebra=name, order=order)
    calg = classical_presentation(name, order)
    res = cybe_residual(classical_r_of_preset(name, order), calg)
    if not res.is_zero():
        rep.add_failure("[[r,r]]", repr(res))
    return rep


def check_cocommutator_link(name, order):
    """delta(X) from the classical r equals Delta_(1) - flip(Delta_(1))."""
    bundle = preset(name, order)
    calg = classical_presentation(name, order)
    wedges = classical_r_of_preset(name, order)
    rep = CheckReport(check="cocommutator", algebra=name, order=order)
    for g in bundle.presentation.generators:
        d = bundle.hopf.delta[bundle.presentation.index[g]]
        lhs = skew_first_order(d, calg)
        rhs = cocommutator(wedges, g, calg)
        if not (lhs - rhs).is_zero():
            rep.add_failure(f"delta({g})", repr(lhs - rhs))
    return rep


def check_factorization(order):
    """The four-factor so(2,2) R equals the merged two-factor form."""
    bundle = preset("so22", order)
    alg = bundle.presentation
    rep = CheckReport(check="r-factorization", algebra="so22", order=order)
    four = preset_r("so22", order)
    one = DeformationSeries.monomial(FE_ONE, 1, alg.param, alg.order)

    def leg(c, left, right):
        return TensorElement(alg, 2, {(((alg.index[left], 1),),
                                       ((alg.index[right], 1),)): one * c})

    merged = (leg(FieldElem(-1), "P0_hat", "J_hat")
              + leg(FieldElem(-1), "P", "D")).exp() \
        * (leg(FE_ONE, "J_hat", "P0_hat") + leg(FE_ONE, "D", "P")).exp()
    if not (four - merged).is_zero():
        rep.add_failure("four-factor vs merged", repr(four - merged))
    return rep


def _wedge_str(alg, wedges):
    bits = []
    for (i, j), c in sorted(wedges.items()):
        bits.append(f"{c}*{alg.generators[i]}^{alg.generators[j]}")
    return " + ".join(bits) or "0"


NP_EXPECTED_COCOMMUTATORS = {
    # delta(X) wedge tables of the null-plane bialgebra
    "P_plus": {},
    "E_1": {},
    "P_1": {("P_1", "P_plus"): 2},
    "P_minus": {("P_minus", "P_plus"): 2},
    "F_1": {("F_1", "P_plus"): 2, ("E_1", "P_minus"): 2},
    "K_2": {("K_2", "P_plus"): 2, ("E_1", "P_1"): 2},
}


def check_np_cocommutator_table(order):
    """The engine's cocommutators equal the published null-plane table."""
    calg = classical_presentation("nullplane", order)
    wedges = classical_r_of_preset("nullplane", order)
    rep = CheckReport(check="cocommutator-table", algebra="nullplane", order=order)
    for g, table in NP_EXPECTED_COCOMMUTATORS.items():
        want_wedges = {}
        for (x, y), c in table.items():
            i, j = calg.index[x], calg.index[y]
            key, v = ((i, j), FieldElem(c)) if i < j else ((j, i), FieldElem(-c))
            want_wedges[key] = v
        want = _wedge_tensor(calg, want_wedges)
        got = cocommutator(wedges, g, calg)
        if not (got - want).is_zero():
            rep.add_failure(f"delta({g})", repr(got - want))
    return rep

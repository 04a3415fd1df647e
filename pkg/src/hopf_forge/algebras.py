"""Preset catalog: the three quantum algebras with full Hopf data.

Builds, in exact arithmetic at a chosen truncation order:

* ``sl2``        -- the non-standard quantum sl(2,R) in the A-basis,
* ``so22``       -- the conformal so(2,2) deformation (two commuting sl(2,R)
                    copies with opposite parameters),
* ``nullplane``  -- the (2+1) null-plane quantum Poincare algebra,
* ``sl2-jbasis`` -- the J-basis presentation of the same sl(2,R) deformation,
                    with its relation table derived mechanically by
                    transporting the A-basis rules through the change of basis.

Every exponential is stored pre-expanded to the working order; changing the
order rebuilds the preset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .coeff import DeformationSeries, FE_ONE, FieldElem, rat
from .hopf import HopfMaps
from .ncalg import AlgebraPresentation, NCElement, tensor_of, tensor_pair
from .report import CheckReport

PRESET_NAMES = ("sl2", "so22", "nullplane", "sl2-jbasis")

# faults deliberately corrupt one structure each; used by the CLI test hook
FAULTS = {
    "ncalg-rule": "corrupt the [E_1,F_1]=K_2 rewrite rule of the nullplane preset",
    "hopf-coproduct": "drop the P_minus term from the nullplane coproduct of F_1",
    "algebras-casimir": "double the P_1^2 term of the nullplane mass Casimir",
    "rmat-factor": "flip the sign of the last nullplane R-matrix factor",
    "repfrt-rule": "flip the sign of the quantum-group rule [a_plus, a_1]",
    "diffrep-op": "insert a spurious exponential into the F_1 differential operator",
}


@dataclass
class PresetBundle:
    """One quantum algebra with its Hopf maps, Casimirs and R-matrix recipe."""

    name: str
    presentation: AlgebraPresentation
    hopf: HopfMaps
    casimirs: dict
    rfactors: tuple | None
    aux: dict = field(default_factory=dict)

    def validate(self):
        """Run the kernel and Hopf checks; returns the list of reports."""
        reports = [self.presentation.consistency_check()]
        reports += self.hopf.run_all_checks()
        return reports


# -- series-element builders -------------------------------------------------

def _mono(alg, value, degree):
    return DeformationSeries.monomial(value, degree, alg.param, alg.order)


def one_gen_series(alg, g, c, parity=None, shift=0):
    """sum_b c^b/b! * param^(b+shift) * g^b over admissible b.

    ``parity`` restricts b to even/odd (cosh/sinh pieces); terms whose
    parameter power b+shift falls outside [0, order] are dropped, which
    implements the ``(exp(...) - 1)/param`` constructions exactly.
    """
    i = g if isinstance(g, int) else alg.index[g]
    cf = c if isinstance(c, FieldElem) else FieldElem(c)
    terms = {}
    b = 0
    while b + shift <= alg.order:
        if (parity is None or b % 2 == parity) and b + shift >= 0:
            coeff = (cf ** b) / factorial(b)
            word = () if b == 0 else ((i, b),)
            terms[word] = _mono(alg, coeff, b + shift)
        b += 1
    return alg.element(terms)


def two_gen_series(alg, gx, cx, gy, cy, parity_y=None, shift=0):
    """sum_{a,b} cx^a cy^b/(a! b!) * param^(a+b+shift) * gx^a gy^b.

    Requires gx < gy in the presentation order so the words are normal; used
    for the exp(zP)*cosh/sinh(zP0) structure functions of the so(2,2) preset.
    """
    ix = gx if isinstance(gx, int) else alg.index[gx]
    iy = gy if isinstance(gy, int) else alg.index[gy]
    if ix >= iy:
        raise ValueError("two_gen_series needs gx < gy")
    cfx = cx if isinstance(cx, FieldElem) else FieldElem(cx)
    cfy = cy if isinstance(cy, FieldElem) else FieldElem(cy)
    terms = {}
    for a in range(alg.order - shift + 1):
        for b in range(alg.order - shift - a + 1):
            if parity_y is not None and b % 2 != parity_y:
                continue
            if a + b + shift < 0:
                continue
            coeff = (cfx ** a) * (cfy ** b) / (factorial(a) * factorial(b))
            word = []
            if a:
                word.append((ix, a))
            if b:
                word.append((iy, b))
            terms[tuple(word)] = _mono(alg, coeff, a + b + shift)
    return alg.element(terms)


def exp_gen(alg, c, g):
    """exp(c * param * g) expanded to the working order."""
    return one_gen_series(alg, g, c, parity=None, shift=0)


def exp_div_param(alg, c, g):
    """(exp(c * param * g) - 1) / param, exact to the working order."""
    return one_gen_series(alg, g, c, parity=None, shift=-1)


def param_monomial(alg, value, degree=1):
    return alg.scalar(_mono(alg, value if isinstance(value, FieldElem) else FieldElem(value),
                            degree))


# -- shared structure data -----------------------------------------------------

# classical null-plane brackets [X, Y] -> {generator: coefficient}
NP_CLASSICAL_BRACKETS = {
    ("K_2", "P_plus"): {"P_plus": 1},
    ("K_2", "P_minus"): {"P_minus": -1},
    ("K_2", "E_1"): {"E_1": 1},
    ("K_2", "F_1"): {"F_1": -1},
    ("E_1", "P_1"): {"P_plus": 1},
    ("F_1", "P_1"): {"P_minus": 1},
    ("E_1", "F_1"): {"K_2": 1},
    ("P_plus", "F_1"): {"P_1": -1},
    ("P_minus", "E_1"): {"P_1": -1},
}

NP_GENERATORS = ("P_plus", "P_1", "P_minus", "E_1", "K_2", "F_1")
SO22_GENERATORS = ("P", "P0_hat", "J_hat", "D", "C_1", "C_2")

# so(2,2) quantum Casimirs as factor recipes, reused by the two-copy and
# contraction cross-checks (each environment supplies the factor elements)
SO22_C1Q_RECIPE = (
    (1, ("J", "Fcosh", "J")),
    (1, ("D", "Fcosh", "D")),
    (-1, ("J", "Fsinh", "D")),
    (-1, ("D", "Fsinh", "J")),
    (1, ("G", "C2")),
    (1, ("C2", "G")),
    (-1, ("H", "C1")),
    (-1, ("C1", "H")),
    (2, ("Fcosh",)),
    (-2, ("one",)),
)
SO22_C2Q_RECIPE = (
    (1, ("J", "Fcosh", "D")),
    (1, ("D", "Fcosh", "J")),
    (-1, ("J", "Fsinh", "J")),
    (-1, ("D", "Fsinh", "D")),
    (-1, ("G", "C1")),
    (-1, ("C1", "G")),
    (1, ("H", "C2")),
    (1, ("C2", "H")),
    (-2, ("Fsinh",)),
)


def eval_recipe(recipe, env):
    out = None
    for c, tags in recipe:
        piece = env[tags[0]]
        for t in tags[1:]:
            piece = piece * env[t]
        piece = piece * c
        out = piece if out is None else out + piece
    return out


def so22_structure_env(alg, gen_of=None):
    """Factor elements of the so(2,2) Casimir recipes, built inside ``alg``.

    ``gen_of`` maps the abstract names P/P0/J/D/C1/C2 to elements; defaults
    to the algebra's own generators (the plain so(2,2) preset).
    """
    if gen_of is None:
        gen_of = {n: alg.gen(g) for n, g in
                  zip(("P", "P0", "J", "D", "C1", "C2"), SO22_GENERATORS)}
    half = FieldElem(rat(1, 2))
    env = {
        "one": alg.unit(),
        "J": gen_of["J"],
        "D": gen_of["D"],
        "C1": gen_of["C1"],
        "C2": gen_of["C2"],
        # e^{-zP} cosh(z P0) and e^{-zP} sinh(z P0)
        "Fcosh": two_gen_series(alg, "P", -1, "P0_hat", 1, parity_y=0),
        "Fsinh": two_gen_series(alg, "P", -1, "P0_hat", 1, parity_y=1),
        # (1 - e^{-zP} cosh(z P0))/(2z) and e^{-zP} sinh(z P0)/(2z)
        "G": two_gen_series(alg, "P", -1, "P0_hat", 1, parity_y=0, shift=-1) * (-half),
        "H": two_gen_series(alg, "P", -1, "P0_hat", 1, parity_y=1, shift=-1) * half,
    }
    return env


def sl2_casimir(alg, ap, a, am, sign=1):
    """Quantum Casimir of one non-standard sl(2,R) copy (parameter sign*z)."""
    a_e, am_e = alg.gen(a), alg.gen(am)
    e_minus = exp_gen(alg, -2 * sign, ap)
    g = exp_div_param(alg, -2 * sign, ap) * FieldElem(rat(-sign, 2))
    half = FieldElem(rat(1, 2))
    return (a_e * e_minus * a_e) * half + g * am_e + am_e * g + e_minus - alg.unit()


# -- preset builders -----------------------------------------------------------

def build_preset(name, order, fault=None):
    if name == "sl2":
        return _build_sl2(order, fault)
    if name == "so22":
        return _build_so22(order, fault)
    if name == "nullplane":
        return _build_nullplane(order, fault)
    if name == "sl2-jbasis":
        return _build_jbasis(order, fault)
    raise ValueError(f"unknown preset {name!r} (choose from {', '.join(PRESET_NAMES)})")


class PresetConstructionError(RuntimeError):
    """A preset failed its construction-time consistency check."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


_ACTIVE_FAULT = None


def set_active_fault(name):
    """Install a named fault (or None); a testing hook used by the CLI."""
    global _ACTIVE_FAULT
    if name is not None and name not in FAULTS:
        raise ValueError(f"unknown fault {name!r}")
    _ACTIVE_FAULT = name


def active_fault():
    return _ACTIVE_FAULT


@lru_cache(maxsize=None)
def _built_cached(name, order, fault):
    return build_preset(name, order, fault)


def preset(name, order):
    """Preset bundle whose construction-time consistency check passed.

    The cache is keyed by the active fault so corrupted structures never
    leak into fault-free runs (and vice versa).
    """
    bundle = _built_cached(name, order, _ACTIVE_FAULT)
    rep = bundle.aux.get("_consistency")
    if rep is None:
        rep = bundle.presentation.consistency_check()
        bundle.aux["_consistency"] = rep
    if not rep.passed:
        raise PresetConstructionError(rep)
    return bundle


def _build_sl2(order, fault=None):
    alg = AlgebraPresentation("sl2", ("A_plus", "A", "A_minus"), "z", order)
    alg.latex_names = {"A_plus": "A_+", "A": "A", "A_minus": "A_-"}
    one = alg.domain.one
    ap, a, am = 0, 1, 2

    rules = {
        # A*A+ = A+*A + (e^{2zA+}-1)/z
        (a, ap): alg.element({((ap, 1), (a, 1)): one})
        + one_gen_series(alg, ap, 2, shift=-1),
        # A-*A = A*A- + 2A- - zA^2
        (am, a): alg.element({((a, 1), (am, 1)): one,
                              ((am, 1),): _mono(alg, FieldElem(2), 0),
                              ((a, 2),): _mono(alg, FieldElem(-1), 1)}),
        # A-*A+ = A+*A- - A
        (am, ap): alg.element({((ap, 1), (am, 1)): one,
                               ((a, 1),): -_mono(alg, FE_ONE, 0)}),
    }
    alg.set_rules(rules)

    gen = alg.gen
    e2p = exp_gen(alg, 2, ap)
    e2m = exp_gen(alg, -2, ap)
    unit = alg.unit()
    delta = {
        ap: tensor_of(alg, [(unit, gen(ap)), (gen(ap), unit)]),
        a: tensor_of(alg, [(unit, gen(a)), (gen(a), e2p)]),
        am: tensor_of(alg, [(unit, gen(am)), (gen(am), e2p)]),
    }
    counit = {i: FieldElem(0) for i in range(3)}
    antipode = {ap: -gen(ap), a: -(gen(a) * e2m), am: -(gen(am) * e2m)}
    hopf = HopfMaps(alg, delta, counit, antipode)

    casimirs = {"C_z": sl2_casimir(alg, ap, a, am)}
    rfactors = ((FieldElem(-1), "A_plus", "A"), (FieldElem(1), "A", "A_plus"))
    return PresetBundle("sl2", alg, hopf, casimirs, rfactors)


def _so22_commutators(alg):
    """[g_i, g_j] for i < j in the order P < P0 < J < D < C1 < C2."""
    P, P0, J, D, C1, C2 = range(6)
    gen = alg.gen
    z = lambda v, d=1: param_monomial(alg, v, d)  # noqa: E731
    # (e^{zP} cosh(z P0) - 1)/z  and  e^{zP} sinh(z P0)/z
    cosh_div = two_gen_series(alg, P, 1, P0, 1, parity_y=0, shift=-1)
    sinh_div = two_gen_series(alg, P, 1, P0, 1, parity_y=1, shift=-1)
    jj_dd = gen(J) * gen(J) + gen(D) * gen(D)
    jd = gen(J) * gen(D)
    zero = alg.zero()
    return {
        (P, P0): zero,
        (P, J): -sinh_div,
        (P, D): -cosh_div,
        (P, C1): gen(J) * FieldElem(-2),
        (P, C2): gen(D) * FieldElem(2),
        (P0, J): -cosh_div,
        (P0, D): -sinh_div,
        (P0, C1): gen(D) * FieldElem(-2),
        (P0, C2): gen(J) * FieldElem(2),
        (J, D): zero,
        (J, C1): gen(C2) - z(1) * jj_dd,
        (J, C2): gen(C1) + z(2) * jd,
        (D, C1): -gen(C1) - z(2) * jd,
        (D, C2): -gen(C2) + z(1) * jj_dd,
        (C1, C2): zero,
    }


def _build_so22(order, fault=None):
    alg = AlgebraPresentation("so22", SO22_GENERATORS, "z", order)
    alg.latex_names = {"P": "P", "P0_hat": r"\hat{P}_0", "J_hat": r"\hat{J}",
                       "D": "D", "C_1": "C_1", "C_2": "C_2"}
    one = alg.domain.one
    comm = _so22_commutators(alg)
    rules = {}
    for (i, j), c in comm.items():
        rules[(j, i)] = alg.element({((i, 1), (j, 1)): one}) - c
    alg.set_rules(rules)

    P, P0, J, D, C1, C2 = range(6)
    gen, unit = alg.gen, alg.unit()
    ecosh = two_gen_series(alg, P, 1, P0, 1, parity_y=0)    # e^{zP} cosh(z P0)
    esinh = two_gen_series(alg, P, 1, P0, 1, parity_y=1)    # e^{zP} sinh(z P0)
    mcosh = two_gen_series(alg, P, -1, P0, 1, parity_y=0)   # e^{-zP} cosh(z P0)
    msinh = two_gen_series(alg, P, -1, P0, 1, parity_y=1)   # e^{-zP} sinh(z P0)
    delta = {
        P0: tensor_of(alg, [(unit, gen(P0)), (gen(P0), unit)]),
        P: tensor_of(alg, [(unit, gen(P)), (gen(P), unit)]),
        J: tensor_of(alg, [(unit, gen(J)), (gen(J), ecosh), (gen(D), esinh)]),
        D: tensor_of(alg, [(unit, gen(D)), (gen(D), ecosh), (gen(J), esinh)]),
        C1: tensor_of(alg, [(unit, gen(C1)), (gen(C1), ecosh), (-gen(C2), esinh)]),
        C2: tensor_of(alg, [(unit, gen(C2)), (gen(C2), ecosh), (-gen(C1), esinh)]),
    }
    counit = {i: FieldElem(0) for i in range(6)}
    antipode = {
        P0: -gen(P0),
        P: -gen(P),
        J: -(gen(J) * mcosh) + gen(D) * msinh,
        D: -(gen(D) * mcosh) + gen(J) * msinh,
        C1: -(gen(C1) * mcosh) - gen(C2) * msinh,
        C2: -(gen(C2) * mcosh) - gen(C1) * msinh,
    }
    hopf = HopfMaps(alg, delta, counit, antipode)

    env = so22_structure_env(alg)
    casimirs = {"C1_q": eval_recipe(SO22_C1Q_RECIPE, env),
                "C2_q": eval_recipe(SO22_C2Q_RECIPE, env)}
    rfactors = ((FieldElem(-1), "P0_hat", "J_hat"), (FieldElem(-1), "P", "D"),
                (FieldElem(1), "D", "P"), (FieldElem(1), "J_hat", "P0_hat"))
    return PresetBundle("so22", alg, hopf, casimirs, rfactors)


def _build_nullplane(order, fault=None):
    alg = AlgebraPresentation("nullplane", NP_GENERATORS, "w", order)
    alg.latex_names = {"P_plus": "P_+", "P_1": "P_1", "P_minus": "P_-",
                       "E_1": "E_1", "K_2": "K_2", "F_1": "F_1"}
    one = alg.domain.one
    Pp, P1, Pm, E1, K2, F1 = range(6)
    gen = alg.gen
    half = FieldElem(rat(1, 2))
    w1 = lambda v: param_monomial(alg, v, 1)  # noqa: E731

    exp2 = exp_gen(alg, 2, Pp)                         # e^{2wP+}
    exp_div = one_gen_series(alg, Pp, 2, shift=-1) * half  # (e^{2wP+}-1)/(2w)

    comm = {
        (Pp, P1): alg.zero(),
        (Pp, Pm): alg.zero(),
        (Pp, E1): alg.zero(),
        (Pp, K2): -exp_div,
        (Pp, F1): -gen(P1),
        (P1, Pm): alg.zero(),
        (P1, E1): -exp_div,
        (P1, K2): alg.zero(),
        (P1, F1): -(gen(Pm) + w1(1) * gen(P1) * gen(P1)),
        (Pm, E1): -gen(P1),
        (Pm, K2): gen(Pm) + w1(1) * gen(P1) * gen(P1),
        (Pm, F1): alg.zero(),
        (E1, K2): -(exp2 * gen(E1)),
        (E1, F1): gen(K2),
        (K2, F1): -gen(F1) - w1(2) * gen(P1) * gen(K2),
    }
    if fault == "ncalg-rule":
        comm[(E1, F1)] = gen(K2) * FieldElem(2)
    rules = {}
    for (i, j), c in comm.items():
        rules[(j, i)] = alg.element({((i, 1), (j, 1)): one}) - c
    alg.set_rules(rules)

    unit = alg.unit()
    delta = {
        Pp: tensor_of(alg, [(unit, gen(Pp)), (gen(Pp), unit)]),
        E1: tensor_of(alg, [(unit, gen(E1)), (gen(E1), unit)]),
        Pm: tensor_of(alg, [(unit, gen(Pm)), (gen(Pm), exp2)]),
        P1: tensor_of(alg, [(unit, gen(P1)), (gen(P1), exp2)]),
        F1: tensor_of(alg, [(unit, gen(F1)), (gen(F1), exp2)])
        + tensor_pair(gen(Pm), exp2 * gen(E1)) * _mono(alg, FieldElem(-2), 1),
        K2: tensor_of(alg, [(unit, gen(K2)), (gen(K2), exp2)])
        + tensor_pair(gen(P1), exp2 * gen(E1)) * _mono(alg, FieldElem(-2), 1),
    }
    if fault == "hopf-coproduct":
        delta[F1] = tensor_of(alg, [(unit, gen(F1)), (gen(F1), exp2)])
    counit = {i: FieldElem(0) for i in range(6)}
    exp2m = exp_gen(alg, -2, Pp)
    antipode = {
        Pp: -gen(Pp),
        E1: -gen(E1),
        Pm: -(gen(Pm) * exp2m),
        P1: -(gen(P1) * exp2m),
        F1: -(gen(F1) * exp2m) - w1(2) * gen(Pm) * exp2m * gen(E1),
        K2: -(gen(K2) * exp2m) - w1(2) * gen(P1) * exp2m * gen(E1),
    }
    hopf = HopfMaps(alg, delta, counit, antipode)

    # (1 - e^{-2wP+})/w  and the quantum Casimirs
    kw = -one_gen_series(alg, Pp, -2, shift=-1)
    mq2 = gen(Pm) * kw - gen(P1) * gen(P1) * exp2m
    if fault == "algebras-casimir":
        mq2 = gen(Pm) * kw - gen(P1) * gen(P1) * exp2m * FieldElem(2)
    lq = (gen(K2) * gen(P1) * exp2m
          + gen(E1) * (gen(Pm) + w1(1) * gen(P1) * gen(P1)) * exp2m
          - gen(F1) * (kw * half))
    casimirs = {"M_q2": mq2, "L_q": lq}

    rfactors = [(FieldElem(2), "E_1", "P_1"), (FieldElem(-2), "P_plus", "K_2"),
                (FieldElem(2), "K_2", "P_plus"), (FieldElem(-2), "P_1", "E_1")]
    if fault == "rmat-factor":
        rfactors[-1] = (FieldElem(2), "P_1", "E_1")
    return PresetBundle("nullplane", alg, hopf, casimirs, tuple(rfactors),
                        aux={"stability_subalgebra": ("P_plus", "P_1", "E_1", "K_2")})


# -- J-basis preset (derived through the change of basis) ----------------------

def _transfer(element, target):
    """Move an element to an identically-ordered rebuilt presentation."""
    return NCElement(target, dict(element.terms))


def jbasis_maps(order):
    """The change-of-basis substitution data between the A- and J-bases.

    ``alpha`` sends A-generators to J-elements (A+ = J+, A = e^{zJ+} J3,
    A- = e^{zJ+} J- - (z/4) e^{zJ+} sinh(zJ+)); ``beta`` is its inverse.
    Returned as functions of the respective target presentations.
    """
    def alpha(jalg):
        quarter = FieldElem(rat(1, 4))
        ezjp = exp_gen(jalg, 1, "J_plus")
        sinh = one_gen_series(jalg, "J_plus", 1, parity=1)
        return {
            "A_plus": jalg.gen("J_plus"),
            "A": ezjp * jalg.gen("J_3"),
            "A_minus": ezjp * jalg.gen("J_minus")
            - param_monomial(jalg, quarter, 1) * ezjp * sinh,
        }

    def beta(aalg):
        quarter = FieldElem(rat(1, 4))
        emzap = exp_gen(aalg, -1, "A_plus")
        sinh = one_gen_series(aalg, "A_plus", 1, parity=1)
        return {
            "J_plus": aalg.gen("A_plus"),
            "J_3": emzap * aalg.gen("A"),
            "J_minus": emzap * aalg.gen("A_minus")
            + param_monomial(aalg, quarter, 1) * sinh,
        }

    return alpha, beta


def _build_jbasis(order, fault=None):
    sl2 = preset("sl2", order)
    aalg = sl2.presentation
    alpha_fn, beta_fn = jbasis_maps(order)
    beta = beta_fn(aalg)

    gens = ("J_plus", "J_3", "J_minus")

    def fresh(rules_so_far):
        alg = AlgebraPresentation("sl2-jbasis", gens, "z", order)
        alg.latex_names = {"J_plus": "J_+", "J_3": "J_3", "J_minus": "J_-"}
        built = {}
        for key in ((1, 0), (2, 0), (2, 1)):
            data = rules_so_far.get(key)
            built[key] = None if data is None else alg.element(data)
        alg.set_rules(built)
        return alg

    def commutator_in_a(x, y):
        return beta[x].commutator(beta[y])

    rules_data = {}
    # stage 1: [J3, J+] lands in the J+ subalgebra; no reordering needed
    stage1 = fresh(rules_data)
    c3p = commutator_in_a("J_3", "J_plus")
    c3p_j = c3p.substitute(stage1, alpha_fn(stage1))
    rules_data[(1, 0)] = {
        **{w: c for w, c in (stage1.element({((0, 1), (1, 1)): stage1.domain.one})
                             + c3p_j).terms.items()}}
    # stage 2: [J+, J-] = J3 after transport
    stage2 = fresh(rules_data)
    cpm = commutator_in_a("J_plus", "J_minus")
    cpm_j = cpm.substitute(stage2, alpha_fn(stage2))
    rules_data[(2, 0)] = dict(
        (stage2.element({((0, 1), (2, 1)): stage2.domain.one}) - cpm_j).terms)
    # stage 3: [J3, J-], which needs the two rules already derived
    stage3 = fresh(rules_data)
    c3m = commutator_in_a("J_3", "J_minus")
    c3m_j = c3m.substitute(stage3, alpha_fn(stage3))
    rules_data[(2, 1)] = dict(
        (stage3.element({((1, 1), (2, 1)): stage3.domain.one}) - c3m_j).terms)

    jalg = fresh(rules_data)
    alpha = alpha_fn(jalg)

    # transport the Hopf structure through the isomorphism
    a_hopf = sl2.hopf
    delta = {}
    antipode = {}
    counit = {}
    for jg in gens:
        img = beta[jg]
        delta[jg] = a_hopf.coproduct(img).substitute(jalg, alpha)
        antipode[jg] = a_hopf.antipode_of(img).substitute(jalg, alpha)
        eps = a_hopf.counit_of(img)
        for k in range(1, order + 1):
            if not eps.coefficient(k).is_zero():
                raise RuntimeError("transported counit is not scalar")
        counit[jg] = eps.constant_term()
    hopf = HopfMaps(jalg, delta, counit, antipode)

    casimirs = {"C_z": sl2.casimirs["C_z"].substitute(jalg, alpha)}
    return PresetBundle("sl2-jbasis", jalg, hopf, casimirs, None,
                        aux={"alpha": alpha, "beta": beta, "abasis": sl2})


def check_basis_change(order):
    """The A-basis relations hold for the transported generators, and the
    change of basis is invertible (round trips on generators)."""
    jb = preset("sl2-jbasis", order)
    sl2 = preset("sl2", order)
    jalg, aalg = jb.presentation, sl2.presentation
    alpha, beta = jb.aux["alpha"], jb.aux["beta"]
    rep = CheckReport(check="basis-change", algebra="sl2-jbasis", order=order)

    a_p, a_3, a_m = alpha["A_plus"], alpha["A"], alpha["A_minus"]
    # the three A-basis commutators, rebuilt inside the J algebra
    lhs1 = a_3.commutator(a_p)
    rhs1 = one_gen_series(jalg, "J_plus", 2, shift=-1)
    if not (lhs1 - rhs1).is_zero():
        rep.add_failure("[A,A_plus]", repr(lhs1 - rhs1))
    lhs2 = a_3.commutator(a_m)
    rhs2 = a_m * FieldElem(-2) + param_monomial(jalg, FE_ONE, 1) * a_3 * a_3
    if not (lhs2 - rhs2).is_zero():
        rep.add_failure("[A,A_minus]", repr(lhs2 - rhs2))
    lhs3 = a_p.commutator(a_m)
    if not (lhs3 - a_3).is_zero():
        rep.add_failure("[A_plus,A_minus]", repr(lhs3 - a_3))

    # z -> 0 the map is the identity relabeling
    if not (a_3.classical_limit() - jalg.gen("J_3")).is_zero():
        rep.add_failure("classical limit of A", repr(a_3.classical_limit()))
    if not (a_m.classical_limit() - jalg.gen("J_minus")).is_zero():
        rep.add_failure("classical limit of A_minus", repr(a_m.classical_limit()))

    # round trip: beta then alpha is the identity on J generators
    for g in jalg.generators:
        back = beta[g].substitute(jalg, alpha)
        if not (back - jalg.gen(g)).is_zero():
            rep.add_failure(f"roundtrip({g})", repr(back - jalg.gen(g)))
    # and alpha then beta on A generators
    for g in aalg.generators:
        back = alpha[g].substitute(aalg, beta)
        if not (back - aalg.gen(g)).is_zero():
            rep.add_failure(f"roundtrip({g})", repr(back - aalg.gen(g)))
    return rep


# -- two commuting sl(2,R) copies ----------------------------------------------

TWOCOPY_GENERATORS = ("A1_plus", "A2_plus", "A1", "A2", "A1_minus", "A2_minus")


def build_twocopy(order):
    """Two commuting copies of the sl(2,R) preset, parameters z and -z."""
    alg = AlgebraPresentation("sl2-twocopy", TWOCOPY_GENERATORS, "z", order)
    one = alg.domain.one
    idx = alg.index
    copies = {
        1: ("A1_plus", "A1", "A1_minus", 1),
        2: ("A2_plus", "A2", "A2_minus", -1),
    }
    comm = {}
    for ap_n, a_n, am_n, s in copies.values():
        ap, a, am = idx[ap_n], idx[a_n], idx[am_n]
        # copy parameter is s*z: [A, A+] = (e^{2szA+}-1)/(sz)
        exp_div = one_gen_series(alg, ap, 2 * s, shift=-1) * FieldElem(s)
        comm[(ap, a)] = -exp_div
        comm[(a, am)] = alg.gen(am) * FieldElem(-2) \
            + param_monomial(alg, FieldElem(s), 1) * alg.gen(a) * alg.gen(a)
        comm[(ap, am)] = alg.gen(a)
    zero = alg.zero()
    for i in range(6):
        for j in range(i + 1, 6):
            if (i, j) not in comm:
                comm[(i, j)] = zero
    rules = {}
    for (i, j), c in comm.items():
        rules[(j, i)] = alg.element({((i, 1), (j, 1)): one}) - c
    alg.set_rules(rules)

    unit = alg.unit()
    delta = {}
    antipode = {}
    for ap_n, a_n, am_n, s in copies.values():
        ap, a, am = idx[ap_n], idx[a_n], idx[am_n]
        e_p = exp_gen(alg, 2 * s, ap)
        e_m = exp_gen(alg, -2 * s, ap)
        delta[ap] = tensor_of(alg, [(unit, alg.gen(ap)), (alg.gen(ap), unit)])
        delta[a] = tensor_of(alg, [(unit, alg.gen(a)), (alg.gen(a), e_p)])
        delta[am] = tensor_of(alg, [(unit, alg.gen(am)), (alg.gen(am), e_p)])
        antipode[ap] = -alg.gen(ap)
        antipode[a] = -(alg.gen(a) * e_m)
        antipode[am] = -(alg.gen(am) * e_m)
    counit = {i: FieldElem(0) for i in range(6)}
    hopf = HopfMaps(alg, delta, counit, antipode)

    half = FieldElem(rat(1, 2))
    g = alg.gen
    tau = {
        "J_hat": (g("A1") - g("A2")) * half,
        "D": (g("A1") + g("A2")) * half,
        "P0_hat": g("A1_plus") + g("A2_plus"),
        "P": g("A1_plus") - g("A2_plus"),
        "C_1": -g("A1_minus") - g("A2_minus"),
        "C_2": g("A1_minus") - g("A2_minus"),
    }
    cas1 = sl2_casimir(alg, idx["A1_plus"], idx["A1"], idx["A1_minus"], 1)
    cas2 = sl2_casimir(alg, idx["A2_plus"], idx["A2"], idx["A2_minus"], -1)
    return alg, hopf, tau, cas1, cas2


def cross_check_two_copy(order):
    """The so(2,2) preset equals the two-copy construction under the map tau."""
    so22 = preset("so22", order)
    alg2, hopf2, tau, cas1, cas2 = build_twocopy(order)
    salg = so22.presentation
    reports = []

    rep = CheckReport(check="twocopy-commutators", algebra="so22", order=order)
    for j in range(6):
        for i in range(j):
            gi, gj = salg.generators[i], salg.generators[j]
            lhs = tau[gi].commutator(tau[gj])
            rhs = salg.gen(gi).commutator(salg.gen(gj)).substitute(alg2, tau)
            if not (lhs - rhs).is_zero():
                rep.add_failure(f"[{gi},{gj}]", repr(lhs - rhs))
    reports.append(rep)

    rep = CheckReport(check="twocopy-coproducts", algebra="so22", order=order)
    for name in salg.generators:
        lhs = hopf2.coproduct(tau[name])
        rhs = so22.hopf.delta[salg.index[name]].substitute(alg2, tau)
        if not (lhs - rhs).is_zero():
            rep.add_failure(f"Delta({name})", repr(lhs - rhs))
    reports.append(rep)

    rep = CheckReport(check="twocopy-casimirs", algebra="so22", order=order)
    for label, combo, target in (("C1_q", cas1 + cas2, so22.casimirs["C1_q"]),
                                 ("C2_q", cas1 - cas2, so22.casimirs["C2_q"])):
        rhs = target.substitute(alg2, tau)
        if not (combo - rhs).is_zero():
            rep.add_failure(label, repr(combo - rhs))
    reports.append(rep)
    return reports


# -- classical limits -----------------------------------------------------------

@lru_cache(maxsize=None)
def classical_presentation(name, order):
    """The order-0 limit of a preset's rewriting system (same generators)."""
    bundle = preset(name, order)
    src = bundle.presentation
    alg = AlgebraPresentation(f"{name}-classical", src.generators, src.param, order)
    alg.latex_names = getattr(src, "latex_names", {})
    rules = {k: NCElement(alg, dict(r.classical_limit().terms))
             for k, r in src.rules.items()}
    alg.set_rules(rules)
    return alg


def check_classical_limits(order):
    """w -> 0 of the nullplane preset: brackets and both Casimirs."""
    bundle = preset("nullplane", order)
    alg = bundle.presentation
    rep = CheckReport(check="classical-limit", algebra="nullplane", order=order)
    names = alg.generators
    for j in range(6):
        for i in range(j):
            x, y = names[j], names[i]
            got = alg.gen(j).commutator(alg.gen(i)).classical_limit()
            table = NP_CLASSICAL_BRACKETS.get((x, y))
            sign = 1
            if table is None:
                table = NP_CLASSICAL_BRACKETS.get((y, x))
                sign = -1
            want = alg.zero()
            if table:
                for g, c in table.items():
                    want = want + alg.gen(g) * FieldElem(sign * c)
            if not (got - want).is_zero():
                rep.add_failure(f"[{x},{y}]", repr(got - want))

    g = alg.gen
    m_cl = (g("P_minus") * g("P_plus")) * FieldElem(2) - g("P_1") * g("P_1")
    l_cl = g("K_2") * g("P_1") + g("E_1") * g("P_minus") - g("F_1") * g("P_plus")
    if not (bundle.casimirs["M_q2"].classical_limit() - m_cl.classical_limit()).is_zero():
        rep.add_failure("M_q2 -> M^2", repr(bundle.casimirs["M_q2"].classical_limit()))
    if not (bundle.casimirs["L_q"].classical_limit() - l_cl.classical_limit()).is_zero():
        rep.add_failure("L_q -> L", repr(bundle.casimirs["L_q"].classical_limit()))
    return rep


def check_casimir_centrality(name, order):
    bundle = preset(name, order)
    alg = bundle.presentation
    rep = CheckReport(check="casimir-centrality", algebra=name, order=order)
    for label, cas in bundle.casimirs.items():
        for g in alg.generators:
            res = cas.commutator(alg.gen(g))
            if not res.is_zero():
                rep.add_failure(f"[{label},{g}]", repr(res))
    return rep

"""Finite-dimensional sector of the null-plane deformation.

Contains the exact 4x4 matrix representation and the 16x16 matrix R (checked
against the matrix Yang-Baxter equation exactly, not just order by order),
the Sklyanin Poisson structure on the Poincare group read off from the
bivector identity, the FRT quantization with its noncommutative coordinate
algebra and RTT residuals, the Weyl-correspondence check, the quantum group
coproduct, and the quantum plane quotient.

Conventions (a recurring source of sign errors, so fixed here once):

* Kronecker products are row-major: (A (x) B)[4i+k][4j+l] = A[i][j] B[k][l];
  T1 = T (x) I and T2 = I (x) T.
* The Lorentz block of the group element is L[row][col]; the
  pseudo-orthogonality constraint is L eta L^T = eta with eta = diag(1,-1,-1).
* The Poisson bivector is evaluated as {T (x,) T} = [T (x) T, r] with
  r = 2(D(K_2) ^ D(P_+) + D(E_1) ^ D(P_1)); this is the sign that reproduces
  the published bracket table, the RTT relations and the Weyl correspondence.
"""

from __future__ import annotations

from functools import lru_cache

from .coeff import DeformationSeries, FE_ONE, FE_ZERO, FieldElem, rat
from .ncalg import AlgebraPresentation, NCElement, TensorElement
from .ratfunc import PolyRing, Polynomial, groebner, reduce_poly
from .report import CheckReport
from .algebras import NP_CLASSICAL_BRACKETS, NP_GENERATORS, preset

HALF = FieldElem(rat(1, 2))
ETA = (1, -1, -1)

# -- exact 4x4 representation ---------------------------------------------------

_REP_ENTRIES = {
    "P_plus": {(1, 0): HALF, (3, 0): HALF},
    "P_minus": {(1, 0): FE_ONE, (3, 0): FieldElem(-1)},
    "P_1": {(2, 0): FE_ONE},
    "E_1": {(1, 2): HALF, (2, 1): HALF, (2, 3): -HALF, (3, 2): HALF},
    "F_1": {(1, 2): FE_ONE, (2, 1): FE_ONE, (2, 3): FE_ONE, (3, 2): FieldElem(-1)},
    "K_2": {(1, 3): FE_ONE, (3, 1): FE_ONE},
}


def matrix_rep():
    """Generator -> 4x4 tuple-of-tuples over FieldElem."""
    out = {}
    for name, entries in _REP_ENTRIES.items():
        out[name] = tuple(tuple(entries.get((i, j), FE_ZERO) for j in range(4))
                          for i in range(4))
    return out


def mat_mul(a, b, zero=FE_ZERO):
    n, m, p = len(a), len(b[0]), len(b)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(p)
                            if not a[i][k].is_zero() and not b[k][j].is_zero()),
                           zero)
                       for j in range(m)) for i in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def kron(a, b, zero=FE_ZERO):
    n, m = len(a), len(b)
    return tuple(tuple(a[i][j] * b[k][l] if not a[i][j].is_zero() else zero
                       for j in range(n) for l in range(m))
                 for i in range(n) for k in range(m))


def check_matrix_rep(order=0):
    """Lie-homomorphism on all 15 pairs plus nilpotency of D(P_+)."""
    rep = matrix_rep()
    out = CheckReport(check="matrixrep", algebra="nullplane", order=order)
    names = NP_GENERATORS
    for a in range(6):
        for b in range(a + 1, 6):
            x, y = names[a], names[b]
            comm = mat_sub(mat_mul(rep[x], rep[y]), mat_mul(rep[y], rep[x]))
            table = NP_CLASSICAL_BRACKETS.get((x, y))
            sign = 1
            if table is None:
                table = NP_CLASSICAL_BRACKETS.get((y, x))
                sign = -1
            want = tuple(tuple(FE_ZERO for _ in range(4)) for _ in range(4))
            if table:
                for g, c in table.items():
                    want = mat_add(want, mat_scale(rep[g], FieldElem(sign * c)))
            if not mat_is_zero(mat_sub(comm, want)):
                out.add_failure(f"[D({x}),D({y})]", "mismatch with structure constants")
    if not mat_is_zero(mat_mul(rep["P_plus"], rep["P_plus"])):
        out.add_failure("D(P_plus)^2", "not nilpotent")
    return out


# -- matrix R and the matrix Yang-Baxter equation --------------------------------

def _wedge16():
    rep = matrix_rep()
    w = kron(rep["K_2"], rep["P_plus"])
    w = mat_sub(w, kron(rep["P_plus"], rep["K_2"]))
    w = mat_add(w, kron(rep["E_1"], rep["P_1"]))
    w = mat_sub(w, kron(rep["P_1"], rep["E_1"]))
    return w


def matrix_r(order=3):
    """16x16 R = I (x) I + 2w * wedge, entries w-series of the given order."""
    def s(v, d=0):
        return DeformationSeries.monomial(v, d, "w", order)

    zero = DeformationSeries.zero("w", order)
    wedge = _wedge16()
    out = []
    for i in range(16):
        row = []
        for j in range(16):
            e = s(FE_ONE) if i == j else zero
            if not wedge[i][j].is_zero():
                e = e + s(wedge[i][j] * FieldElem(2), 1)
            row.append(e)
        out.append(tuple(row))
    return tuple(out)


def _embed64(r, slots):
    """Place a 16x16 two-site matrix on the given pair of three sites."""
    zero = DeformationSeries.zero("w", r[0][0].order)
    other = ({0, 1, 2} - set(slots)).pop()

    def split(idx):
        return (idx >> 4) & 3, (idx >> 2) & 3, idx & 3

    out = [[zero] * 64 for _ in range(64)]
    for a in range(64):
        ia = split(a)
        for b in range(64):
            ib = split(b)
            if ia[other] != ib[other]:
                continue
            rrow = 4 * ia[slots[0]] + ia[slots[1]]
            rcol = 4 * ib[slots[0]] + ib[slots[1]]
            e = r[rrow][rcol]
            if not e.is_zero():
                out[a][b] = e
    return tuple(tuple(row) for row in out)


def check_matrix_r(order=3):
    """Matrix QYBE and triangularity hold exactly (R is linear in w)."""
    out = CheckReport(check="matrix-r", algebra="nullplane", order=order)
    r = matrix_r(order)
    zero = DeformationSeries.zero("w", order)
    r12 = _embed64(r, (0, 1))
    r13 = _embed64(r, (0, 2))
    r23 = _embed64(r, (1, 2))
    lhs = mat_mul(mat_mul(r12, r13, zero), r23, zero)
    rhs = mat_mul(mat_mul(r23, r13, zero), r12, zero)
    if not mat_is_zero(mat_sub(lhs, rhs)):
        out.add_failure("matrix QYBE", "nonzero residual")
    # R21 R = identity
    r21 = tuple(tuple(r[4 * (i % 4) + i // 4][4 * (j % 4) + j // 4]
                      for j in range(16)) for i in range(16))
    prod = mat_mul(r21, r, zero)
    ident = tuple(tuple(DeformationSeries.one("w", order) if i == j else zero
                        for j in range(16)) for i in range(16))
    if not mat_is_zero(mat_sub(prod, ident)):
        out.add_failure("matrix triangularity", "R21 R != I")
    # w = 0 gives the identity
    at0 = tuple(tuple(e.constant_term() for e in row) for row in r)
    for i in range(16):
        for j in range(16):
            want = FE_ONE if i == j else FE_ZERO
            if at0[i][j] != want:
                out.add_failure("w=0 specialization", f"entry {(i, j)}")
    # the first-order block is the representation of the classical r
    from .rmat import classical_r_of_preset
    np_alg = preset("nullplane", max(order, 1)).presentation
    rep = matrix_rep()
    acc = tuple(tuple(FE_ZERO for _ in range(16)) for _ in range(16))
    for (i, j), c in classical_r_of_preset("nullplane", max(order, 1)).items():
        gi, gj = np_alg.generators[i], np_alg.generators[j]
        acc = mat_add(acc, mat_scale(mat_sub(kron(rep[gi], rep[gj]),
                                             kron(rep[gj], rep[gi])), c))
    first = tuple(tuple(e.coefficient(1) for e in row) for row in r)
    if not mat_is_zero(mat_sub(first, acc)):
        out.add_failure("first-order block", "does not represent the classical r")
    return out


# -- coordinate ring and the pseudo-orthogonality ideal --------------------------

L_NAMES = tuple(f"L{m}{n}" for m in range(3) for n in range(3))
A_NAMES = ("a_plus", "a_1", "a_minus")
COORD_NAMES = L_NAMES + A_NAMES
RING12 = PolyRing(COORD_NAMES)


def lvar(m, n, ring=RING12):
    return ring.var(f"L{m}{n}")


def orthogonality_quadrics(ring=RING12):
    """The six L eta L^T = eta quadrics (mu <= rho)."""
    out = []
    for mu in range(3):
        for rho in range(mu, 3):
            q = ring.constant(FieldElem(-ETA[mu] if mu == rho else 0))
            for nu in range(3):
                q = q + lvar(mu, nu, ring) * lvar(rho, nu, ring) * FieldElem(ETA[nu])
            out.append(q)
    return out


@lru_cache(maxsize=None)
def orthogonality_groebner():
    return tuple(groebner(orthogonality_quadrics()))


def ideal_reduce(p):
    return reduce_poly(p, list(orthogonality_groebner()))


# -- the symbolic group element --------------------------------------------------

def group_matrix(ring=RING12):
    """D(g) with symbolic entries: translations in column 0, Lorentz block."""
    one = ring.one()
    zero = ring.zero()
    ap = ring.var("a_plus")
    a1 = ring.var("a_1")
    am = ring.var("a_minus")
    rows = [[one, zero, zero, zero],
            [ap * HALF + am, lvar(0, 0, ring), lvar(0, 1, ring), lvar(0, 2, ring)],
            [a1, lvar(1, 0, ring), lvar(1, 1, ring), lvar(1, 2, ring)],
            [ap * HALF - am, lvar(2, 0, ring), lvar(2, 1, ring), lvar(2, 2, ring)]]
    return tuple(tuple(r) for r in rows)


class InconsistentBivector(Exception):
    """The bivector identity assigns two inequivalent brackets to one pair."""


def _affine_parts(p):
    """(constant, {var_index: coeff}) of an affine polynomial."""
    const = FE_ZERO
    lin = {}
    for e, c in p.terms.items():
        d = sum(e)
        if d == 0:
            const = c
        elif d == 1:
            lin[e.index(1)] = c
        else:
            raise InconsistentBivector("group-element entry is not affine")
    return const, lin


@lru_cache(maxsize=None)
def sklyanin_table():
    """Solve {T (x,) T} = [T (x) T, r] for the coordinate brackets.

    Returns {(i, j): Polynomial} for coordinate indices i < j; the entries are
    the w-stripped brackets (every bracket carries one overall power of w).
    """
    t = group_matrix()
    zero = RING12.zero()
    tt = tuple(tuple(t[i][j] * t[k][l]
                     for j in range(4) for l in range(4))
               for i in range(4) for k in range(4))
    wedge = _wedge16()
    r2 = tuple(tuple(RING12.constant(wedge[i][j] * FieldElem(2)) for j in range(16))
               for i in range(16))
    rhs = mat_sub(mat_mul(tt, r2, zero), mat_mul(r2, tt, zero))

    nvar = len(COORD_NAMES)
    unknowns = [(i, j) for i in range(nvar) for j in range(i + 1, nvar)]
    col = {p: k for k, p in enumerate(unknowns)}
    rows = []
    for i in range(4):
        for k in range(4):
            for j in range(4):
                for l in range(4):
                    c1, l1 = _affine_parts(t[i][j])
                    c2, l2 = _affine_parts(t[k][l])
                    coeffs = {}
                    for x, ax in l1.items():
                        for y, by in l2.items():
                            if x == y:
                                continue
                            key, sign = ((x, y), 1) if x < y else ((y, x), -1)
                            v = ax * by * FieldElem(sign)
                            cur = coeffs.get(key)
                            s = v if cur is None else cur + v
                            if s.is_zero():
                                coeffs.pop(key, None)
                            else:
                                coeffs[key] = s
                    rows.append((coeffs, rhs[4 * i + k][4 * j + l]))

    # Gaussian elimination over the pair-unknowns, polynomial right-hand sides
    solved = {}
    pivots = []
    for coeffs, rhs_p in rows:
        coeffs = dict(coeffs)
        rhs_p = rhs_p
        for key, val, srhs in pivots:
            c = coeffs.pop(key, None)
            if c is not None:
                for k2, v2 in val.items():
                    cur = coeffs.get(k2, FE_ZERO) - c * v2
                    if cur.is_zero():
                        coeffs.pop(k2, None)
                    else:
                        coeffs[k2] = cur
                rhs_p = rhs_p - srhs * c
        if not coeffs:
            if not ideal_reduce(rhs_p).is_zero():
                raise InconsistentBivector(f"0 = {rhs_p!r}")
            continue
        key = min(coeffs, key=col.get)
        inv = coeffs.pop(key).inverse()
        val = {k2: v2 * inv for k2, v2 in coeffs.items()}
        srhs = rhs_p * inv
        pivots.append((key, val, srhs))

    # back-substitute
    pending = list(reversed(pivots))
    for key, val, srhs in pending:
        acc = srhs
        for k2, v2 in val.items():
            acc = acc - solved[k2] * v2
        solved[key] = acc
    missing = [p for p in unknowns if p not in solved]
    if missing:
        raise InconsistentBivector(f"bivector leaves {missing} undetermined")
    return {p: solved[p] for p in unknowns}


def coord_index(name):
    return RING12.index[name]


def expected_poisson_table():
    """The published bracket table, transcribed (w-stripped, as-printed indices)."""
    r = RING12
    exp = {}

    def setb(x, y, value):
        i, j = coord_index(x), coord_index(y)
        if i < j:
            exp[(i, j)] = value
        else:
            exp[(j, i)] = -value

    setb("a_plus", "a_1", r.var("a_1") * FieldElem(-2))
    setb("a_plus", "a_minus", r.var("a_minus") * FieldElem(-2))
    setb("a_1", "a_minus", r.zero())
    for m in range(3):
        for n in range(3):
            for m2 in range(3):
                for n2 in range(3):
                    if (m, n) < (m2, n2):
                        setb(f"L{m}{n}", f"L{m2}{n2}", r.zero())
    for mu in range(3):
        for nu in range(3):
            l = f"L{mu}{nu}"
            row_sum = lvar(mu, 0) + lvar(mu, 2)
            col_sum = lvar(0, nu) + lvar(2, nu)
            col_dif = lvar(0, nu) - lvar(2, nu)
            v_ap = r.constant(FieldElem(-(mu - 1) * (nu - 1))) \
                + row_sum * col_sum
            if mu == 0:
                v_ap = v_ap - lvar(2, nu) * FieldElem(2)
            if mu == 2:
                v_ap = v_ap - lvar(0, nu) * FieldElem(2)
            setb(l, "a_plus", v_ap)
            v_a1 = lvar(1, nu) * (row_sum - 1)
            if mu == 1:
                v_a1 = v_a1 + r.constant(FieldElem(1 - nu)) \
                    - lvar(0, nu) + lvar(1, nu) + lvar(2, nu)
            setb(l, "a_1", v_a1)
            v_am = r.constant(FieldElem(rat((mu - 1) ** 2 * (nu - 1), 2))) \
                + row_sum * col_dif * HALF
            setb(l, "a_minus", v_am)
    return exp


def check_poisson_table(order=1):
    """Derived bivector brackets equal the published table modulo the ideal."""
    rep = CheckReport(check="poisson-table", algebra="poincare-group", order=order,
                      details={"index_reading": "as printed (L[mu][nu] = row mu, col nu)"})
    got = sklyanin_table()
    want = expected_poisson_table()
    names = COORD_NAMES
    for key in sorted(want):
        diff = ideal_reduce(got[key] - want[key])
        if not diff.is_zero():
            rep.add_failure(f"{{{names[key[0]]},{names[key[1]]}}}", repr(diff))
    return rep


def poisson_bracket(p, q, table=None):
    """Extend the coordinate brackets to polynomials by the Leibniz rule."""
    table = table if table is not None else sklyanin_table()
    out = RING12.zero()
    for x in range(len(COORD_NAMES)):
        dp = p.derivative(COORD_NAMES[x])
        if dp.is_zero():
            continue
        for y in range(len(COORD_NAMES)):
            if x == y:
                continue
            dq = q.derivative(COORD_NAMES[y])
            if dq.is_zero():
                continue
            b = table[(x, y)] if x < y else -table[(y, x)]
            out = out + dp * dq * b
    return out


def check_poisson_jacobi(order=1):
    """Cyclic Jacobi sums vanish modulo the ideal on all coordinate triples."""
    rep = CheckReport(check="poisson-jacobi", algebra="poincare-group", order=order)
    table = sklyanin_table()
    n = len(COORD_NAMES)
    vars_ = [RING12.var(v) for v in COORD_NAMES]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                x, y, z = vars_[i], vars_[j], vars_[k]
                s = (poisson_bracket(x, poisson_bracket(y, z, table), table)
                     + poisson_bracket(y, poisson_bracket(z, x, table), table)
                     + poisson_bracket(z, poisson_bracket(x, y, table), table))
                if not ideal_reduce(s).is_zero():
                    rep.add_failure(
                        f"({COORD_NAMES[i]},{COORD_NAMES[j]},{COORD_NAMES[k]})",
                        repr(ideal_reduce(s)))
    return rep


def bracket_table_json():
    """BracketTable export: {pair: rendered bracket (the w coefficient)}."""
    got = sklyanin_table()
    names = COORD_NAMES
    return {f"{{{names[i]},{names[j]}}}": repr(got[(i, j)])
            for (i, j) in sorted(got)}


# -- the quantum coordinate algebra ----------------------------------------------

def _poly_to_element(alg, p, w_degree=0):
    """Commutative L/a polynomial -> normal-ordered element, times w^w_degree."""
    terms = {}
    for e, c in p.terms.items():
        word = tuple((i, k) for i, k in enumerate(e) if k)
        terms[word] = DeformationSeries.monomial(c, w_degree, alg.param, alg.order)
    return alg.element(terms)


@lru_cache(maxsize=None)
def quantum_presentation(order, fault=None):
    """The quantum Poincare group coordinate algebra as a rewriting system."""
    alg = AlgebraPresentation("qpoincare", COORD_NAMES, "w", order)
    one = alg.domain.one
    table = expected_poisson_table()
    rules = {}
    n = len(COORD_NAMES)
    for j in range(n):
        for i in range(j):
            # [x_i, x_j] = w * table[(i,j)]  (Weyl form: same right-hand sides)
            comm = _poly_to_element(alg, table[(i, j)], 1)
            if fault == "repfrt-rule" and (COORD_NAMES[i], COORD_NAMES[j]) == ("a_plus", "a_1"):
                comm = -comm
            rules[(j, i)] = alg.element({((i, 1), (j, 1)): one}) - comm
    alg.set_rules(rules)
    return alg


def _element_ideal_reduce(x):
    """Reduce the L-polynomial part of each a-monomial block modulo the ideal."""
    alg = x.algebra
    n_l = len(L_NAMES)
    blocks = {}
    for w, c in x.terms.items():
        lpart = tuple((g, e) for g, e in w if g < n_l)
        apart = tuple((g, e) for g, e in w if g >= n_l)
        blocks.setdefault(apart, {})[lpart] = c
    out = {}
    for apart, lterms in blocks.items():
        for k in range(alg.order + 1):
            poly_terms = {}
            for lpart, c in lterms.items():
                v = c.coefficient(k)
                if v.is_zero():
                    continue
                e = [0] * len(COORD_NAMES)
                for g, ex in lpart:
                    e[g] = ex
                poly_terms[tuple(e)] = v
            if not poly_terms:
                continue
            red = ideal_reduce(Polynomial(RING12, poly_terms))
            for e, c in red.terms.items():
                word = tuple((i, ex) for i, ex in enumerate(e) if ex) + apart
                cur = out.get(word)
                s = DeformationSeries.monomial(c, k, alg.param, alg.order)
                s = s if cur is None else cur + s
                if s.is_zero():
                    out.pop(word, None)
                else:
                    out[word] = s
    return NCElement(alg, out)


def quantum_t(alg):
    """The group element with noncommutative entries, as NCElements."""
    idx = alg.index
    one = alg.unit()

    def g(name):
        return alg.gen(idx[name])

    ap, a1, am = g("a_plus"), g("a_1"), g("a_minus")
    rows = [[one, alg.zero(), alg.zero(), alg.zero()],
            [ap * HALF + am, g("L00"), g("L01"), g("L02")],
            [a1, g("L10"), g("L11"), g("L12")],
            [ap * HALF - am, g("L20"), g("L21"), g("L22")]]
    return tuple(tuple(r) for r in rows)


def check_rtt(order=2, fault=None):
    """All 256 entries of R T1 T2 - T2 T1 R vanish modulo the ideal."""
    alg = quantum_presentation(order, fault)
    rep = CheckReport(check="rtt", algebra="qpoincare", order=order)
    t = quantum_t(alg)
    wedge = _wedge16()

    def rmat_entry(i, j):
        # R = I + 2w * wedge as a scalar series
        e = DeformationSeries.zero("w", order)
        if i == j:
            e = e + DeformationSeries.one("w", order)
        if not wedge[i][j].is_zero():
            e = e + DeformationSeries.monomial(wedge[i][j] * FieldElem(2), 1, "w", order)
        return e

    t1t2 = {}
    t2t1 = {}
    for i in range(4):
        for k in range(4):
            for j in range(4):
                for l in range(4):
                    x, y = t[i][j], t[k][l]
                    if x.is_zero() or y.is_zero():
                        continue
                    t1t2[(4 * i + k, 4 * j + l)] = x * y
                    t2t1[(4 * i + k, 4 * j + l)] = y * x

    for row in range(16):
        for colm in range(16):
            acc = alg.zero()
            for mid in range(16):
                r_e = rmat_entry(row, mid)
                m = t1t2.get((mid, colm))
                if m is not None and not r_e.is_zero():
                    acc = acc + m * r_e
                m2 = t2t1.get((row, mid))
                r_e2 = rmat_entry(mid, colm)
                if m2 is not None and not r_e2.is_zero():
                    acc = acc - m2 * r_e2
            if acc.is_zero():
                continue
            red = _element_ideal_reduce(acc)
            if not red.is_zero():
                rep.add_failure(f"entry ({row},{colm})", repr(red))
    return rep


def check_weyl_correspondence(order=2):
    """Quantum commutators equal w times the Poisson brackets, table-wide."""
    alg = quantum_presentation(order)
    rep = CheckReport(check="weyl", algebra="qpoincare", order=order)
    table = sklyanin_table()
    n = len(COORD_NAMES)
    for i in range(n):
        for j in range(i + 1, n):
            qc = alg.gen(j).commutator(alg.gen(i))     # [x_j, x_i]
            want = _poly_to_element(alg, -table[(i, j)], 1)
            diff = _element_ideal_reduce(qc - want)
            if not diff.is_zero():
                rep.add_failure(f"[{COORD_NAMES[j]},{COORD_NAMES[i]}]", repr(diff))
    return rep


# -- group coproduct --------------------------------------------------------------

def _tensor18_reduce(t):
    """Reduce both tensor slots' L-polynomials modulo the (doubled) ideal."""
    alg = t.algebra
    n_l = len(L_NAMES)
    ring18 = PolyRing(tuple(f"s1_{v}" for v in L_NAMES)
                      + tuple(f"s2_{v}" for v in L_NAMES))
    gb = [_lift_poly(g, ring18, 0) for g in orthogonality_groebner()] + \
         [_lift_poly(g, ring18, n_l) for g in orthogonality_groebner()]
    blocks = {}
    for (w1, w2), c in t.terms.items():
        l1 = tuple((g, e) for g, e in w1 if g < n_l)
        a1 = tuple((g, e) for g, e in w1 if g >= n_l)
        l2 = tuple((g, e) for g, e in w2 if g < n_l)
        a2 = tuple((g, e) for g, e in w2 if g >= n_l)
        blocks.setdefault((a1, a2), {})[(l1, l2)] = c
    out = {}
    for (a1, a2), lterms in blocks.items():
        for k in range(alg.order + 1):
            poly_terms = {}
            for (l1, l2), c in lterms.items():
                v = c.coefficient(k)
                if v.is_zero():
                    continue
                e = [0] * 18
                for g, ex in l1:
                    e[g] = ex
                for g, ex in l2:
                    e[n_l + g] = ex
                poly_terms[tuple(e)] = poly_terms.get(tuple(e), FE_ZERO) + v
            if not poly_terms:
                continue
            red = reduce_poly(Polynomial(ring18, poly_terms), gb)
            for e, c in red.terms.items():
                w1 = tuple((i, ex) for i, ex in enumerate(e[:n_l]) if ex) + a1
                w2 = tuple((i, ex) for i, ex in enumerate(e[n_l:]) if ex) + a2
                key = (w1, w2)
                s = DeformationSeries.monomial(c, k, alg.param, alg.order)
                cur = out.get(key)
                s = s if cur is None else cur + s
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
    return TensorElement(alg, 2, out)


def _lift_poly(p, ring, offset):
    """Lift an L-only polynomial into a doubled-variable ring at an offset."""
    n_l = len(L_NAMES)
    terms = {}
    for e, c in p.terms.items():
        if any(e[n_l:]):
            raise ValueError("ideal generator involves translation coordinates")
        ee = [0] * len(ring.vars)
        for i, ex in enumerate(e[:n_l]):
            ee[offset + i] = ex
        terms[tuple(ee)] = c
    return Polynomial(ring, terms)


def group_coproduct(alg):
    """Delta on coordinate generators, read off Delta(T) = T (x,) T."""
    from .ncalg import tensor_pair
    t = quantum_t(alg)

    def dmat(i, j):
        out = TensorElement.zero(alg, 2)
        for k in range(4):
            if t[i][k].is_zero() or t[k][j].is_zero():
                continue
            out = out + tensor_pair(t[i][k], t[k][j])
        return out

    delta = {}
    for m in range(3):
        for n in range(3):
            delta[alg.index[f"L{m}{n}"]] = dmat(m + 1, n + 1)
    d10, d30 = dmat(1, 0), dmat(3, 0)
    delta[alg.index["a_plus"]] = d10 + d30
    delta[alg.index["a_minus"]] = (d10 - d30) * HALF
    delta[alg.index["a_1"]] = dmat(2, 0)
    return delta


def expected_group_coproduct(alg):
    """The published coproduct display, transcribed for comparison."""
    from .ncalg import tensor_pair
    idx = alg.index

    def g(name):
        return alg.gen(idx[name])

    def lv(m, n):
        return g(f"L{m}{n}")

    one = alg.unit()
    quarter = FieldElem(rat(1, 4))
    delta = {}
    for m in range(3):
        for n in range(3):
            out = TensorElement.zero(alg, 2)
            for s in range(3):
                out = out + tensor_pair(lv(m, s), lv(s, n))
            delta[idx[f"L{m}{n}"]] = out
    delta[idx["a_plus"]] = (
        tensor_pair(g("a_plus"), one)
        + tensor_pair((lv(0, 0) + lv(2, 0) + lv(0, 2) + lv(2, 2)) * HALF, g("a_plus"))
        + tensor_pair(lv(0, 1) + lv(2, 1), g("a_1"))
        + tensor_pair(lv(0, 0) + lv(2, 0) - lv(0, 2) - lv(2, 2), g("a_minus")))
    delta[idx["a_1"]] = (
        tensor_pair(g("a_1"), one)
        + tensor_pair((lv(1, 0) + lv(1, 2)) * HALF, g("a_plus"))
        + tensor_pair(lv(1, 1), g("a_1"))
        + tensor_pair(lv(1, 0) - lv(1, 2), g("a_minus")))
    delta[idx["a_minus"]] = (
        tensor_pair(g("a_minus"), one)
        + tensor_pair((lv(0, 0) - lv(2, 0) + lv(0, 2) - lv(2, 2)) * quarter, g("a_plus"))
        + tensor_pair((lv(0, 1) - lv(2, 1)) * HALF, g("a_1"))
        + tensor_pair((lv(0, 0) - lv(2, 0) - lv(0, 2) + lv(2, 2)) * HALF, g("a_minus")))
    return delta


def check_group_coproduct(order=2):
    """Display match, coassociativity, counit, and relation compatibility."""
    alg = quantum_presentation(order)
    rep = CheckReport(check="group-coproduct", algebra="qpoincare", order=order)
    delta = group_coproduct(alg)
    want = expected_group_coproduct(alg)
    for i, d in delta.items():
        if not (d - want[i]).is_zero():
            rep.add_failure(f"Delta({COORD_NAMES[i]}) display", repr(d - want[i]))

    # multiplicative extension of Delta on words
    cache = {}

    def delta_word(word):
        t = cache.get(word)
        if t is None:
            t = TensorElement.unit(alg, 2)
            for g, e in word:
                for _ in range(e):
                    t = t * delta[g]
            cache[word] = t
        return t

    def delta_elem(x):
        out = TensorElement.zero(alg, 2)
        for w, c in x.terms.items():
            out = out + delta_word(w) * c
        return out

    # coassociativity on every generator (exact, no ideal needed)
    for i in range(len(COORD_NAMES)):
        t = delta[i]
        left = {}
        right = {}
        for (w1, w2), c in t.terms.items():
            for (u1, u2), cc in delta_word(w1).terms.items():
                key = (u1, u2, w2)
                v = c * cc
                left[key] = left.get(key, alg.domain.zero) + v
            for (u1, u2), cc in delta_word(w2).terms.items():
                key = (w1, u1, u2)
                v = c * cc
                right[key] = right.get(key, alg.domain.zero) + v
        res = {k: left.get(k, alg.domain.zero) - right.get(k, alg.domain.zero)
               for k in set(left) | set(right)}
        if any(not v.is_zero() for v in res.values()):
            rep.add_failure(f"coassociativity({COORD_NAMES[i]})", "nonzero residual")

    # counit from epsilon(T) = I
    n_l = len(L_NAMES)
    for i in range(len(COORD_NAMES)):
        acc = alg.zero()
        for (w1, w2), c in delta[i].terms.items():
            # epsilon on the first slot: products of delta_{mu nu} / zeros
            val = FE_ONE
            for g, e in w1:
                if g >= n_l:
                    val = FE_ZERO
                    break
                m, n = divmod(g, 3)
                if m != n:
                    val = FE_ZERO
                    break
            if not val.is_zero():
                acc = acc + NCElement(alg, {w2: c * val})
        if not (acc - alg.gen(i)).is_zero():
            rep.add_failure(f"counit({COORD_NAMES[i]})", repr(acc - alg.gen(i)))

    # Delta respects the commutation rules and the constraint ideal
    n = len(COORD_NAMES)
    for j in range(n):
        for i in range(j):
            lhs = delta[j] * delta[i] - delta[i] * delta[j]
            rhs = delta_elem(alg.gen(j).commutator(alg.gen(i)))
            res = _tensor18_reduce(lhs - rhs)
            if not res.is_zero():
                rep.add_failure(f"Delta respects [{COORD_NAMES[j]},{COORD_NAMES[i]}]",
                                repr(res))
    for q in orthogonality_quadrics():
        img = delta_elem(_poly_to_element(alg, q, 0))
        # Delta(quadric) must reduce to the quadric's counit image: zero
        res = _tensor18_reduce(img)
        if not res.is_zero():
            rep.add_failure("Delta respects the orthogonality ideal", repr(res))
    return rep


# -- quantum plane ------------------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_plane(order=2):
    """Coordinate relations of the quantum (2+1) Poincare plane."""
    alg = AlgebraPresentation("qplane", ("x_plus", "x_1", "x_minus"), "w", order)
    one = alg.domain.one
    w1 = DeformationSeries.monomial(FieldElem(-2), 1, "w", order)
    rules = {
        (1, 0): alg.element({((0, 1), (1, 1)): one, ((1, 1),): -w1}),
        (2, 0): alg.element({((0, 1), (2, 1)): one, ((2, 1),): -w1}),
        (2, 1): alg.element({((1, 1), (2, 1)): one}),
    }
    alg.set_rules(rules)
    return alg


def check_quantum_plane(order=2):
    """The plane relations equal the translation sector of the quantum group."""
    alg = quantum_plane(order)
    rep = CheckReport(check="qplane", algebra="qplane", order=order)
    qp = quantum_presentation(order)
    pairs = {("x_plus", "x_1"): ("a_plus", "a_1"),
             ("x_plus", "x_minus"): ("a_plus", "a_minus"),
             ("x_1", "x_minus"): ("a_1", "a_minus")}
    for (xi, xj), (ai, aj) in pairs.items():
        got = alg.gen(xi).commutator(alg.gen(xj))
        want = qp.gen(ai).commutator(qp.gen(aj))
        # compare after renaming a -> x
        ren = {qp.index[a]: alg.index[x] for a, x in
               zip(("a_plus", "a_1", "a_minus"), ("x_plus", "x_1", "x_minus"))}
        want_terms = {}
        for w, c in want.terms.items():
            if any(g < len(L_NAMES) for g, _ in w):
                rep.add_failure(f"[{ai},{aj}]", "translation sector is not closed")
                break
            want_terms[tuple((ren[g], e) for g, e in w)] = c
        else:
            if NCElement(alg, want_terms) != got:
                rep.add_failure(f"[{xi},{xj}]", repr(got))
    if not (alg.consistency_check()).passed:
        rep.add_failure("consistency", "quantum plane rewriting inconsistent")
    # w = 0: the plane is commutative
    for r in ((1, 0), (2, 0), (2, 1)):
        cls = alg.rules[r].classical_limit()
        i, j = r[1], r[0]
        if cls != alg.element({((i, 1), (j, 1)): alg.domain.one}).classical_limit():
            rep.add_failure("classical limit", f"rule {r} not commutative at w=0")
    return rep

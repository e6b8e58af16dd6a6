"""The ten-dimensional quaternionic unitary Lie algebra, exactly.

Two bases are carried in parallel:

* the vector basis (j1, j2, j3, p0, p1, p2, p3, k1, k2, k3) coming from the
  antihermitean quaternionic 2x2 matrices, with real structure constants;
* the spinor basis (J^{ab}, P^a_{adot}, K_{adot bdot}) obtained from the
  complex linear change of basis

      J^{++} = -2 j1 + 2i j2     J^{+-} = -2 j3      J^{--} = 2 j1 + 2i j2
      P^+_+. = -p3 - i p0        P^+_-. = -p1 + i p2
      P^-_+. =  p1 + i p2        P^-_-. = -p3 + i p0
      K_+.+. = 2 k1 + 2i k2      K_+.-. = -2 k3      K_-.-. = -2 k1 + 2i k2

Spinor generator names use two sign characters: "J++", "J+-", "J--" (the
undotted symmetric pair), "P++" .. "P--" (first sign undotted, second dotted),
"K++", "K+-", "K--" (dotted symmetric pair).  All coefficients are exact
complex rationals; every identity checked here is checked exactly.
"""

from fractions import Fraction
from itertools import combinations

from .rational import CRat, crat, frac_mat_inverse

SPINOR_GENERATORS = ("J++", "J+-", "J--",
                     "P++", "P+-", "P-+", "P--",
                     "K++", "K+-", "K--")

VECTOR_GENERATORS = ("j1", "j2", "j3", "p0", "p1", "p2", "p3",
                     "k1", "k2", "k3")

# epsilon^{ab} with (-eps^{ab}) = [[0,-1],[1,0]], indices in {+,-}
EPS_UP = {("+", "+"): 0, ("+", "-"): 1, ("-", "+"): -1, ("-", "-"): 0}
# eps_{adot bdot} = [[0,-1],[1,0]]
EPS_DN = {("+", "+"): 0, ("+", "-"): -1, ("-", "+"): 1, ("-", "-"): 0}
# eta_{adot bdot} = [[0,1],[1,0]] (its own inverse)
ETA = {("+", "+"): 0, ("+", "-"): 1, ("-", "+"): 1, ("-", "-"): 0}

_I = CRat(0, 1)


def _jkey(a, b):
    return "J" + "".join(sorted((a, b), key="+-".index))


def _kkey(a, b):
    return "K" + "".join(sorted((a, b), key="+-".index))


def _pkey(a, adot):
    return "P" + a + adot


class LieElement:
    """Finitely supported exact-coefficient combination of basis generators."""

    __slots__ = ("coeffs", "basis")

    def __init__(self, coeffs=None, basis="spinor"):
        self.basis = basis
        self.coeffs = {}
        if coeffs:
            for g, c in coeffs.items():
                c = crat(c)
                if c:
                    self.coeffs[g] = c

    @classmethod
    def gen(cls, name, basis=None):
        if basis is None:
            basis = "spinor" if name in SPINOR_GENERATORS else "vector"
        return cls({name: 1}, basis)

    def __add__(self, other):
        assert self.basis == other.basis
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            s = out.get(g, CRat()) + c
            if s:
                out[g] = s
            else:
                out.pop(g, None)
        return LieElement(out, self.basis)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = crat(c)
        return LieElement({g: v * c for g, v in self.coeffs.items()}, self.basis)

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self):
        return not self.coeffs

    def max_abs(self):
        return max((abs(c) for c in self.coeffs.values()), default=Fraction(0))

    def __eq__(self, other):
        return (self.basis == other.basis and self.coeffs == other.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{g}" for g, c in sorted(self.coeffs.items()))


def _build_spinor_table():
    """All nonvanishing spinor-basis brackets from the epsilon contractions."""
    table = {}
    signs = ("+", "-")

    def put(g1, g2, result):
        acc = table.setdefault((g1, g2), {})
        for g, c in result.items():
            s = acc.get(g, CRat()) + c
            if s:
                acc[g] = s
            else:
                acc.pop(g, None)

    jpairs = [("+", "+"), ("+", "-"), ("-", "-")]
    # J-J
    for a, b in jpairs:
        for c, d in jpairs:
            res = {}
            for coe, key in ((EPS_UP[a, c], _jkey(b, d)),
                             (EPS_UP[a, d], _jkey(b, c)),
                             (EPS_UP[b, c], _jkey(a, d)),
                             (EPS_UP[b, d], _jkey(a, c))):
                if coe:
                    res[key] = res.get(key, CRat()) + _I * coe
            put(_jkey(a, b), _jkey(c, d), res)
    # J-P
    for a, b in jpairs:
        for c in signs:
            for cd in signs:
                res = {}
                for coe, key in ((EPS_UP[a, c], _pkey(b, cd)),
                                 (EPS_UP[b, c], _pkey(a, cd))):
                    if coe:
                        res[key] = res.get(key, CRat()) + _I * coe
                put(_jkey(a, b), _pkey(c, cd), res)
    # P-P
    for a in signs:
        for ad in signs:
            for b in signs:
                for bd in signs:
                    res = {}
                    if EPS_DN[ad, bd]:
                        k = _jkey(a, b)
                        res[k] = res.get(k, CRat()) + _I * EPS_DN[ad, bd]
                    if EPS_UP[a, b]:
                        k = _kkey(ad, bd)
                        res[k] = res.get(k, CRat()) + _I * EPS_UP[a, b]
                    put(_pkey(a, ad), _pkey(b, bd), res)
    # K-P
    kpairs = jpairs
    for ad, bd in kpairs:
        for c in signs:
            for cd in signs:
                res = {}
                for coe, key in ((EPS_DN[ad, cd], _pkey(c, bd)),
                                 (EPS_DN[bd, cd], _pkey(c, ad))):
                    if coe:
                        res[key] = res.get(key, CRat()) + _I * coe
                put(_kkey(ad, bd), _pkey(c, cd), res)
    # K-K
    for ad, bd in kpairs:
        for cd, dd in kpairs:
            res = {}
            for coe, key in ((EPS_DN[ad, cd], _kkey(bd, dd)),
                             (EPS_DN[ad, dd], _kkey(bd, cd)),
                             (EPS_DN[bd, cd], _kkey(ad, dd)),
                             (EPS_DN[bd, dd], _kkey(ad, cd))):
                if coe:
                    res[key] = res.get(key, CRat()) + _I * coe
            put(_kkey(ad, bd), _kkey(cd, dd), res)
    # fill antisymmetric partners and J-K zeros, drop zero entries
    full = {}
    for g1 in SPINOR_GENERATORS:
        for g2 in SPINOR_GENERATORS:
            res = table.get((g1, g2))
            if res is None:
                rev = table.get((g2, g1), {})
                res = {g: -c for g, c in rev.items()}
            full[(g1, g2)] = {g: c for g, c in res.items() if c}
    return full


def _build_vector_table():
    """The real-form bracket list in the (j, p0, p, k) basis."""
    eps = {}
    for i in range(3):
        for jj in range(3):
            for k in range(3):
                if {i, jj, k} == {0, 1, 2}:
                    # parity of the permutation (i, jj, k)
                    eps[(i, jj, k)] = 1 if (jj - i) % 3 == 1 else -1
    half = Fraction(1, 2)
    t = {}

    def put(a, b, res):
        t[(a, b)] = {g: crat(c) for g, c in res.items() if c}
        t[(b, a)] = {g: -crat(c) for g, c in res.items() if c}

    for i in range(3):
        for jj in range(3):
            if i == jj:
                continue
            res_jj = {}
            res_kk = {}
            res_pp = {}
            for k in range(3):
                e = eps.get((i, jj, k), 0)
                if e:
                    res_jj[f"j{k+1}"] = e
                    res_kk[f"k{k+1}"] = e
                    res_pp[f"j{k+1}"] = e
                    res_pp[f"k{k+1}"] = e
            if i < jj:
                put(f"j{i+1}", f"j{jj+1}", res_jj)
                put(f"k{i+1}", f"k{jj+1}", res_kk)
                put(f"p{i+1}", f"p{jj+1}", res_pp)
    for i in range(3):
        for jj in range(3):
            res_pj = {}
            res_pk = {}
            for k in range(3):
                e = eps.get((i, jj, k), 0)
                if e:
                    res_pj[f"p{k+1}"] = half * e
                    res_pk[f"p{k+1}"] = half * e
            if i == jj:
                res_pj["p0"] = half
                res_pk["p0"] = -half
            put(f"p{i+1}", f"j{jj+1}", res_pj)
            put(f"p{i+1}", f"k{jj+1}", res_pk)
    for i in range(3):
        put("p0", f"j{i+1}", {f"p{i+1}": -half})
        put("p0", f"k{i+1}", {f"p{i+1}": half})
        put("p0", f"p{i+1}", {f"j{i+1}": 1, f"k{i+1}": -1})
    full = {}
    for g1 in VECTOR_GENERATORS:
        for g2 in VECTOR_GENERATORS:
            full[(g1, g2)] = t.get((g1, g2), {})
    return full


_SPINOR_TABLE = _build_spinor_table()
_VECTOR_TABLE = _build_vector_table()

# spinor generators written in the vector basis
SPINOR_IN_VECTOR = {
    "J++": {"j1": -2, "j2": CRat(0, 2)},
    "J+-": {"j3": -2},
    "J--": {"j1": 2, "j2": CRat(0, 2)},
    "P++": {"p3": -1, "p0": CRat(0, -1)},
    "P+-": {"p1": -1, "p2": CRat(0, 1)},
    "P-+": {"p1": 1, "p2": CRat(0, 1)},
    "P--": {"p3": -1, "p0": CRat(0, 1)},
    "K++": {"k1": 2, "k2": CRat(0, 2)},
    "K+-": {"k3": -2},
    "K--": {"k1": -2, "k2": CRat(0, 2)},
}

_q = Fraction(1, 4)
_h = Fraction(1, 2)
# vector generators written in the spinor basis (the inverse map)
VECTOR_IN_SPINOR = {
    "j1": {"J--": _q, "J++": -_q},
    "j2": {"J++": CRat(0, -_q), "J--": CRat(0, -_q)},
    "j3": {"J+-": -_h},
    "p0": {"P++": CRat(0, _h), "P--": CRat(0, -_h)},
    "p1": {"P-+": _h, "P+-": -_h},
    "p2": {"P-+": CRat(0, -_h), "P+-": CRat(0, -_h)},
    "p3": {"P++": -_h, "P--": -_h},
    "k1": {"K++": _q, "K--": -_q},
    "k2": {"K++": CRat(0, -_q), "K--": CRat(0, -_q)},
    "k3": {"K+-": -_h},
}

SPINOR_IN_VECTOR = {k: {g: crat(c) for g, c in v.items()}
                    for k, v in SPINOR_IN_VECTOR.items()}
VECTOR_IN_SPINOR = {k: {g: crat(c) for g, c in v.items()}
                    for k, v in VECTOR_IN_SPINOR.items()}

# the conjugate-linear involution X -> X^dagger on generators
REALITY_SPINOR = {
    "J++": {"J--": 1}, "J--": {"J++": 1}, "J+-": {"J+-": -1},
    "P++": {"P--": -1}, "P--": {"P++": -1},
    "P+-": {"P-+": 1}, "P-+": {"P+-": 1},
    "K++": {"K--": 1}, "K--": {"K++": 1}, "K+-": {"K+-": -1},
}
REALITY_SPINOR = {k: {g: crat(c) for g, c in v.items()}
                  for k, v in REALITY_SPINOR.items()}


def bracket_table(basis="spinor", mutate=None):
    """Structure constants as {(g1, g2): {gen: CRat}}.

    mutate="k-bracket" deliberately corrupts one K-K constant; it exists so
    that failure paths of the verification drivers can be exercised.
    """
    table = _SPINOR_TABLE if basis == "spinor" else _VECTOR_TABLE
    if mutate is None:
        return table
    if mutate == "k-bracket":
        bad = {k: dict(v) for k, v in table.items()}
        key = ("K+-", "K++") if basis == "spinor" else ("k1", "k2")
        tgt = dict(bad[key])
        first = next(iter(tgt))
        tgt[first] = tgt[first] + 1
        bad[key] = tgt
        return bad
    raise ValueError(f"unknown mutation {mutate!r}")


def bracket(x, y, table=None):
    """Bilinear bracket of two LieElements in a common basis."""
    assert x.basis == y.basis
    if table is None:
        table = bracket_table(x.basis)
    out = {}
    for g1, c1 in x.coeffs.items():
        for g2, c2 in y.coeffs.items():
            c12 = c1 * c2
            for g, c in table[(g1, g2)].items():
                s = out.get(g, CRat()) + c12 * c
                if s:
                    out[g] = s
                else:
                    out.pop(g, None)
    return LieElement(out, x.basis)


def bracket_gens(g1, g2, basis="spinor"):
    return LieElement(bracket_table(basis)[(g1, g2)], basis)


def verify_jacobi(basis="spinor", mutate=None):
    """Max residual of [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] over generator triples.

    Returns (max_residual, worst_triple); the residual is exactly zero for the
    genuine tables.
    """
    gens = SPINOR_GENERATORS if basis == "spinor" else VECTOR_GENERATORS
    table = bracket_table(basis, mutate)
    worst = Fraction(0)
    worst_triple = None
    for a, b, c in combinations(gens, 3):
        ea, eb, ec = (LieElement.gen(g, basis) for g in (a, b, c))
        res = (bracket(ea, bracket(eb, ec, table), table)
               + bracket(eb, bracket(ec, ea, table), table)
               + bracket(ec, bracket(ea, eb, table), table))
        r = res.max_abs()
        if r > worst:
            worst, worst_triple = r, (a, b, c)
    return worst, worst_triple


def reality(x):
    """Conjugate-linear involution X -> X^dagger extended to elements.

    On the spinor generators it is the table above; every vector-basis
    generator is antihermitean, X^dagger = -X.
    """
    if isinstance(x, str):
        x = LieElement.gen(x)
    out = {}
    for g, c in x.coeffs.items():
        cc = c.conj()
        img = REALITY_SPINOR[g] if x.basis == "spinor" else {g: -1}
        for g2, s in img.items():
            v = out.get(g2, CRat()) + cc * crat(s)
            if v:
                out[g2] = v
            else:
                out.pop(g2, None)
    return LieElement(out, x.basis)


def basis_change(x, to):
    """Map a LieElement to the other basis; round trips are exact."""
    if x.basis == to:
        return x
    table = SPINOR_IN_VECTOR if to == "vector" else VECTOR_IN_SPINOR
    out = {}
    for g, c in x.coeffs.items():
        for g2, s in table[g].items():
            v = out.get(g2, CRat()) + c * crat(s)
            if v:
                out[g2] = v
            else:
                out.pop(g2, None)
    return LieElement(out, to)


# ---------------------------------------------------------------------------
# contraction to the three-oscillator Heisenberg algebra plus one compact factor
# ---------------------------------------------------------------------------

CONTRACTED_GENERATORS = ("J++", "J+-", "J--",
                         "pi++", "pi+-", "pi-+", "pi--",
                         "Z++", "Z--", "I")

# contracted generator -> (original generator, power of 1/lambda)
_CONTRACTION_SCALING = {
    "J++": ("J++", 0), "J+-": ("J+-", 0), "J--": ("J--", 0),
    "pi++": ("P++", 1), "pi+-": ("P+-", 1),
    "pi-+": ("P-+", 1), "pi--": ("P--", 1),
    "Z++": ("K++", 1), "Z--": ("K--", 1),
    "I": ("K+-", 2),
}
_ORIG_TO_CONTRACTED = {v[0]: (k, v[1]) for k, v in _CONTRACTION_SCALING.items()}


def _contraction_bracket_laurent(g1, g2):
    """[g1, g2] of rescaled generators as {lambda-exponent: {gen: CRat}}."""
    o1, e1 = _CONTRACTION_SCALING[g1]
    o2, e2 = _CONTRACTION_SCALING[g2]
    out = {}
    for g, c in _SPINOR_TABLE[(o1, o2)].items():
        gc, eg = _ORIG_TO_CONTRACTED[g]
        # bracket of old/lambda^e generators re-expanded: exponent of 1/lambda
        e = e1 + e2 - eg
        if e < 0:
            raise ValueError("contraction limit does not exist")
        out.setdefault(e, {})[gc] = c
    return out


def contraction_constants(lam):
    """Structure constants of the rescaled basis at a finite parameter.

    The rescaled generators are the original ones divided by lambda (momenta
    and the off-diagonal compact pair) or lambda^2 (the future central
    element); at lambda -> infinity the constants converge to
    contraction_limit() with per-entry residual O(1/lambda).
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    table = {}
    for g1 in CONTRACTED_GENERATORS:
        for g2 in CONTRACTED_GENERATORS:
            acc = {}
            for e, res in _contraction_bracket_laurent(g1, g2).items():
                w = crat(Fraction(1) / lam ** e)
                for g, c in res.items():
                    v = acc.get(g, CRat()) + c * w
                    if v:
                        acc[g] = v
                    else:
                        acc.pop(g, None)
            table[(g1, g2)] = acc
    return table


def contraction_limit():
    """The lambda -> infinity structure constants; "I" is central."""
    table = {}
    for g1 in CONTRACTED_GENERATORS:
        for g2 in CONTRACTED_GENERATORS:
            res = _contraction_bracket_laurent(g1, g2).get(0, {})
            table[(g1, g2)] = {g: c for g, c in res.items() if c}
    return table


def grading_decomposition(d):
    """Partition the generators by exact ad(d) eigenvalue.

    Raises ValueError when some generator is not an eigenvector of ad(d).
    Eigenvalue keys are (re, im) Fraction pairs; for the documented grading
    elements they are integers (im = 0).
    """
    if isinstance(d, str):
        d = LieElement.gen(d)
    gens = SPINOR_GENERATORS if d.basis == "spinor" else VECTOR_GENERATORS
    grades = {}
    for g in gens:
        res = bracket(d, LieElement.gen(g, d.basis))
        if res.is_zero():
            ev = CRat()
        elif set(res.coeffs) == {g}:
            ev = res.coeffs[g]
        else:
            raise ValueError(f"not a grading element: ad on {g} is not diagonal")
        key = (ev.re, ev.im)
        grades.setdefault(key, set()).add(g)
    return grades


GRADING_ELEMENT = LieElement({"K+-": CRat(0, -1)})  # -i K_{+.-.}


# ---------------------------------------------------------------------------
# Killing form and quadratic Casimir data
# ---------------------------------------------------------------------------

def _ad_matrix_vector(g):
    n = len(VECTOR_GENERATORS)
    idx = {name: i for i, name in enumerate(VECTOR_GENERATORS)}
    m = [[Fraction(0)] * n for _ in range(n)]
    for jcol, h in enumerate(VECTOR_GENERATORS):
        for out, c in _VECTOR_TABLE[(g, h)].items():
            assert c.im == 0
            m[idx[out]][jcol] += c.re
    return m


def killing_form():
    """B(X,Y) = tr(ad X ad Y) on the vector basis, exact Fractions."""
    n = len(VECTOR_GENERATORS)
    ads = [_ad_matrix_vector(g) for g in VECTOR_GENERATORS]
    b = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for bb in range(a, n):
            tr = sum(ads[a][i][j] * ads[bb][j][i]
                     for i in range(n) for j in range(n))
            b[a][bb] = tr
            b[bb][a] = tr
    return b


def casimir_pairs():
    """Dual-basis pairs (g_a, g_b, coeff) with C2 = sum coeff * g_a g_b."""
    binv = frac_mat_inverse(killing_form())
    pairs = []
    for a, ga in enumerate(VECTOR_GENERATORS):
        for b, gb in enumerate(VECTOR_GENERATORS):
            if binv[a][b] != 0:
                pairs.append((ga, gb, binv[a][b]))
    return pairs


def cross_basis_residual():
    """Exact max deviation between brackets computed in either basis.

    For every spinor generator pair, [X, Y] computed from the spinor table
    is mapped to the vector basis and compared against the bracket of the
    mapped arguments computed with the vector table, and vice versa.
    """
    worst = Fraction(0)
    for g1 in SPINOR_GENERATORS:
        for g2 in SPINOR_GENERATORS:
            e1, e2 = LieElement.gen(g1), LieElement.gen(g2)
            spin = basis_change(bracket(e1, e2), "vector")
            vect = bracket(basis_change(e1, "vector"), basis_change(e2, "vector"))
            worst = max(worst, (spin - vect).max_abs())
    for g1 in VECTOR_GENERATORS:
        for g2 in VECTOR_GENERATORS:
            e1 = LieElement.gen(g1, "vector")
            e2 = LieElement.gen(g2, "vector")
            vect = basis_change(bracket(e1, e2), "spinor")
            spin = bracket(basis_change(e1, "spinor"), basis_change(e2, "spinor"))
            worst = max(worst, (vect - spin).max_abs())
    return worst


def reality_bracket_residual():
    """Exact check that the involution antiautomorphizes the bracket."""
    worst = Fraction(0)
    for g1 in SPINOR_GENERATORS:
        for g2 in SPINOR_GENERATORS:
            lhs = reality(bracket_gens(g1, g2))
            rhs = bracket(reality(g1), reality(g2)).scale(-1)
            worst = max(worst, (lhs - rhs).max_abs())
    return worst


def structure_constants_json(basis="spinor"):
    """Exportable structure-constant records."""
    gens = SPINOR_GENERATORS if basis == "spinor" else VECTOR_GENERATORS
    table = bracket_table(basis)
    records = []
    for g1 in gens:
        for g2 in gens:
            res = table[(g1, g2)]
            if res:
                records.append({
                    "X": g1, "Y": g2,
                    "result": [{"gen": g, "re": str(c.re), "im": str(c.im)}
                               for g, c in sorted(res.items())],
                })
    return records

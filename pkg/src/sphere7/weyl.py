"""Normal-ordered oscillator algebra on six generators and formal square roots.

Generators are indexed by slots

    creators:      0 = ad   (a^dagger)   1 = amm  (a^-_-.)   2 = apm  (a^+_-.)
    annihilators:  3 = a                 4 = app  (a^+_+.)   5 = amp  (a^-_+.)

with the only nonvanishing commutators

    [a, ad] = 1        [app, amm] = -1       [amp, apm] = +1.

A monomial is an exponent 6-tuple (creators then annihilators); elements are
finitely supported maps from monomials to exact complex rationals, kept in
canonical normal order (creators to the left).  Formal Laurent series in the
square root of the deformation parameter are maps from integer grades to such
elements, where the grade of hbar^(k/2) is k.

The dagger is the conjugate-linear antiautomorphism fixed by

    (a)^dagger = ad,  (app)^dagger = -amm,  (apm)^dagger = amp.
"""

from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .rational import CRat, crat

SLOT_NAMES = ("ad", "amm", "apm", "a", "app", "amp")

_ZERO_KEY = (0, 0, 0, 0, 0, 0)


class WeylElement:
    """Normal-ordered polynomial in the six oscillator generators."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = crat(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def unit(cls, c=1):
        return cls({_ZERO_KEY: c})

    @classmethod
    def gen(cls, slot):
        key = [0] * 6
        key[slot] = 1
        return cls({tuple(key): 1})

    @classmethod
    def zero(cls):
        return cls()

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = WeylElement.__new__(WeylElement)
        res.terms = out
        return res

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = crat(c)
        if not c:
            return WeylElement.zero()
        res = WeylElement.__new__(WeylElement)
        res.terms = {k: v * c for k, v in self.terms.items()}
        return res

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        """Product, re-normal-ordered through the three oscillator pairs."""
        out = {}
        for k1, c1 in self.terms.items():
            d1, d2, d3, e1, e2, e3 = k1
            for k2, c2 in other.terms.items():
                f1, f2, f3, g1, g2, g3 = k2
                c12 = c1 * c2
                # move the annihilator block of k1 past the creator block of k2
                for j1 in range(min(e1, f1) + 1):
                    w1 = c12 * (factorial(j1) * comb(e1, j1) * comb(f1, j1))
                    for j2 in range(min(e2, f2) + 1):
                        s2 = factorial(j2) * comb(e2, j2) * comb(f2, j2)
                        w2 = w1 * (s2 if j2 % 2 == 0 else -s2)
                        for j3 in range(min(e3, f3) + 1):
                            w3 = w2 * (factorial(j3) * comb(e3, j3) * comb(f3, j3))
                            key = (d1 + f1 - j1, d2 + f2 - j2, d3 + f3 - j3,
                                   e1 - j1 + g1, e2 - j2 + g2, e3 - j3 + g3)
                            s = out.get(key)
                            s = w3 if s is None else s + w3
                            if s:
                                out[key] = s
                            else:
                                del out[key]
        res = WeylElement.__new__(WeylElement)
        res.terms = out
        return res

    def comm(self, other):
        return self * other - other * self

    def dagger(self):
        """Reverse the word, dagger each generator, conjugate coefficients."""
        out = {}
        for (d1, d2, d3, e1, e2, e3), c in self.terms.items():
            cc = c.conj()
            if (d2 + e2) % 2:
                cc = -cc
            out[(e1, e2, e3, d1, d2, d3)] = cc
        res = WeylElement.__new__(WeylElement)
        res.terms = out
        return res

    def is_zero(self):
        return not self.terms

    def max_abs(self):
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def __eq__(self, other):
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            word = "".join(f"{SLOT_NAMES[i]}^{e} " if e > 1 else
                           (f"{SLOT_NAMES[i]} " if e == 1 else "")
                           for i, e in enumerate(key))
            bits.append(f"({self.terms[key]})*{word.strip() or '1'}")
        return " + ".join(bits)


def weyl_mul(x, y):
    return x * y


def weyl_comm(x, y):
    return x * y - y * x


def weyl_dagger(x):
    return x.dagger()


def number_op():
    """n = 2 ad a."""
    return WeylElement({(1, 0, 0, 1, 0, 0): 2})


def total_number_op():
    """N = apm amp - app amm, normal ordered: apm amp - amm app + 1."""
    return WeylElement({(0, 0, 1, 0, 0, 1): 1,
                        (0, 1, 0, 0, 1, 0): -1,
                        _ZERO_KEY: 1})


# ---------------------------------------------------------------------------
# formal Laurent series in sqrt(hbar)
# ---------------------------------------------------------------------------

class LaurentElement:
    """Map from sqrt(hbar)-grade to coefficient element, truncated above cap.

    cap is the exactness bound: grades <= cap are exact, higher grades are
    discarded; `dropped` records whether any discard actually happened, so a
    zero residual can honestly be reported as exact.
    """

    __slots__ = ("grades", "cap", "dropped")

    def __init__(self, grades=None, cap=None, dropped=False):
        self.cap = cap
        self.dropped = dropped
        self.grades = {}
        if grades:
            for g, w in grades.items():
                if not w.is_zero():
                    if cap is not None and g > cap:
                        self.dropped = True
                        continue
                    self.grades[g] = w

    @classmethod
    def from_weyl(cls, w, grade=0, cap=None):
        return cls({grade: w}, cap=cap)

    def __add__(self, other):
        cap = _min_cap(self.cap, other.cap)
        out = dict(self.grades)
        for g, w in other.grades.items():
            s = out.get(g)
            s = w if s is None else s + w
            if s.is_zero():
                out.pop(g, None)
            else:
                out[g] = s
        return LaurentElement(out, cap=cap,
                              dropped=self.dropped or other.dropped)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return LaurentElement({g: w.scale(c) for g, w in self.grades.items()},
                              cap=self.cap, dropped=self.dropped)

    def shift(self, dgrade):
        """Multiply by sqrt(hbar)^dgrade."""
        return LaurentElement({g + dgrade: w for g, w in self.grades.items()},
                              cap=self.cap, dropped=self.dropped)

    def __mul__(self, other):
        cap = _min_cap(self.cap, other.cap)
        out = {}
        dropped = self.dropped or other.dropped
        for g1, w1 in self.grades.items():
            for g2, w2 in other.grades.items():
                g = g1 + g2
                if cap is not None and g > cap:
                    dropped = True
                    continue
                p = w1 * w2
                s = out.get(g)
                s = p if s is None else s + p
                out[g] = s
        out = {g: w for g, w in out.items() if not w.is_zero()}
        return LaurentElement(out, cap=cap, dropped=dropped)

    def comm(self, other):
        return self * other - other * self

    def dagger(self):
        # sqrt(hbar) is dagger-fixed
        return LaurentElement({g: w.dagger() for g, w in self.grades.items()},
                              cap=self.cap, dropped=self.dropped)

    def is_zero(self):
        return not self.grades

    def min_grade(self):
        return min(self.grades) if self.grades else None

    def coefficient(self, grade):
        return self.grades.get(grade, WeylElement.zero())

    def __eq__(self, other):
        return self.grades == other.grades

    def __repr__(self):
        if not self.grades:
            return "0"
        return " + ".join(f"h^({g}/2)*[{w!r}]"
                          for g, w in sorted(self.grades.items()))


def _min_cap(c1, c2):
    if c1 is None:
        return c2
    if c2 is None:
        return c1
    return min(c1, c2)


# ---------------------------------------------------------------------------
# polymeromorphic elements: Laurent series with polynomial coefficients in n, N
# ---------------------------------------------------------------------------

class PolyNM:
    """Polynomial in the two commuting number operators, exponents (n, N)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = crat(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def var_n(cls):
        return cls({(1, 0): 1})

    @classmethod
    def var_N(cls):
        return cls({(0, 1): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, CRat()) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return PolyNM(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = crat(c)
        return PolyNM({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                s = out.get(k, CRat()) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return PolyNM(out)

    def shift(self, dn, dN):
        """Substitute n -> n + dn, N -> N + dN (argument shift)."""
        out = PolyNM()
        for (i, j), c in self.terms.items():
            poly = PolyNM({(0, 0): c})
            binom_n = PolyNM({(1, 0): 1, (0, 0): dn})
            binom_N = PolyNM({(0, 1): 1, (0, 0): dN})
            for _ in range(i):
                poly = poly * binom_n
            for _ in range(j):
                poly = poly * binom_N
            out = out + poly
        return out

    def conj(self):
        return PolyNM({k: c.conj() for k, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def is_real(self):
        return all(c.im == 0 for c in self.terms.values())

    def to_weyl(self):
        n_w = number_op()
        N_w = total_number_op()
        powers_n = _power_cache(n_w)
        powers_N = _power_cache(N_w)
        out = WeylElement.zero()
        for (i, j), c in self.terms.items():
            out = out + (powers_n(i) * powers_N(j)).scale(c)
        return out

    def eval_at(self, n_val, N_val):
        """Exact value on a joint eigenvector of (n, N)."""
        tot = CRat()
        for (i, j), c in self.terms.items():
            tot = tot + c * (Fraction(n_val) ** i) * (Fraction(N_val) ** j)
        return tot

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*n^{i}*N^{j}"
                          for (i, j), c in sorted(self.terms.items()))


def _power_cache(base):
    cache = {0: WeylElement.unit()}

    def power(k):
        if k not in cache:
            cache[k] = power(k - 1) * base
        return cache[k]

    return power


class Polymeromorphic:
    """Laurent series in sqrt(hbar) whose coefficients are PolyNM polynomials."""

    __slots__ = ("grades",)

    def __init__(self, grades=None):
        self.grades = {g: p for g, p in (grades or {}).items() if not p.is_zero()}

    def __add__(self, other):
        out = dict(self.grades)
        for g, p in other.grades.items():
            s = out.get(g, PolyNM()) + p
            if s.is_zero():
                out.pop(g, None)
            else:
                out[g] = s
        return Polymeromorphic(out)

    def scale(self, c):
        return Polymeromorphic({g: p.scale(c) for g, p in self.grades.items()})

    def __mul__(self, other):
        out = {}
        for g1, p1 in self.grades.items():
            for g2, p2 in other.grades.items():
                g = g1 + g2
                out[g] = out.get(g, PolyNM()) + p1 * p2
        return Polymeromorphic(out)

    def shift_args(self, dn, dN):
        return Polymeromorphic({g: p.shift(dn, dN)
                                for g, p in self.grades.items()})

    def dagger(self):
        return Polymeromorphic({g: p.conj() for g, p in self.grades.items()})

    def is_real(self):
        return all(p.is_real() for p in self.grades.values())

    def expand(self, cap=None):
        return LaurentElement({g: p.to_weyl() for g, p in self.grades.items()},
                              cap=cap)

    def min_grade(self):
        return min(self.grades) if self.grades else None

    def __repr__(self):
        return " + ".join(f"h^({g}/2)*[{p!r}]"
                          for g, p in sorted(self.grades.items())) or "0"


# argument shifts of the passage rules: slot -> (dn, dN) such that
# f(n, N) * gen = gen * f(n + dn, N + dN)
PASSAGE_SHIFTS = {
    3: (-2, 0),   # a
    0: (2, 0),    # ad
    4: (0, -1),   # app
    2: (0, 1),    # apm
    5: (0, -1),   # amp
    1: (0, 1),    # amm
}


def passage(f, slot):
    """Return f' with f * gen(slot) = gen(slot) * f'."""
    dn, dN = PASSAGE_SHIFTS[slot]
    return f.shift_args(dn, dN)


def sqrt_coefficient(k):
    """Taylor coefficient b_k(x) = b_k * x^k of sqrt(1 - hx)/sqrt(h): the number."""
    num = 1
    for l in range(k):
        num *= 1 - 2 * l
    sign = -1 if k % 2 else 1
    return Fraction(sign * num, (2 ** k) * factorial(k))


def sqrt_coefficient_poly(k):
    """b_k(N + n/2) as a polynomial in (n, N)."""
    c = sqrt_coefficient(k)
    half = Fraction(1, 2)
    out = {}
    for r in range(k + 1):
        out[(r, k - r)] = crat(c * comb(k, r) * half ** r)
    return PolyNM(out)


def sqrt_partial_sum(ell):
    """Partial sum S_ell = h^(-1/2) * sum_{k<=ell} b_k(N + n/2) h^k.

    Its square equals 1/h - (N + n/2) up to terms of sqrt(h)-grade >= 2*ell.
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    return Polymeromorphic({2 * k - 1: sqrt_coefficient_poly(k)
                            for k in range(ell + 1)})


# ---------------------------------------------------------------------------
# the ten formal generators at truncation ell
# ---------------------------------------------------------------------------

def _bilinears():
    g = WeylElement.gen
    i = CRat(0, 1)
    jpp = (g(2) * g(4)).scale(-2 * i)            # -2i apm app
    jpm = (g(4) * g(1) + g(5) * g(2)).scale(-i)  # -i(app amm + amp apm)
    jmm = (g(5) * g(1)).scale(-2 * i)            # -2i amp amm
    return jpp, jpm, jmm


def embedded_generators(ell, cap=None):
    """Images of the ten Lie algebra generators in the formal oscillator ring.

    The square roots are replaced by the partial sums S_ell; the compact
    bilinears and the grade (-2, 0) diagonal element are ell-independent.
    Keys match the spinor-basis generator names of the u2h module.
    """
    s = sqrt_partial_sum(ell).expand(cap)
    g = WeylElement.gen
    i = CRat(0, 1)
    lw = lambda w, grade=0: LaurentElement.from_weyl(w, grade, cap=cap)
    jpp, jpm, jmm = _bilinears()
    n_plus_N = number_op() + total_number_op()
    out = {
        "J++": lw(jpp),
        "J+-": lw(jpm),
        "J--": lw(jmm),
        "K++": (s * lw(g(3))).scale(-2 * i),
        "K+-": lw(WeylElement.unit(i), -2) + lw(n_plus_N.scale(-i)),
        "K--": (lw(g(0)) * s).scale(2 * i),
        "P++": lw((g(2) * g(3)).scale(-1)) + s * lw(g(4)),
        "P--": lw(g(0) * g(5)) + lw(g(1)) * s,
        "P+-": lw(g(0) * g(4)) + lw(g(2)) * s,
        "P-+": lw((g(1) * g(3)).scale(-1)) + s * lw(g(5)),
    }
    return out


def generator_pairs():
    from .u2h import SPINOR_GENERATORS
    return list(combinations(SPINOR_GENERATORS, 2))


def verify_embedding(ell, gradecap=None):
    """Bracket report for the 45 unordered generator pairs at truncation ell.

    For each pair the commutator of the truncated images minus the image of
    the structure-constant target is reduced to its minimal sqrt(h)-grade.
    Entries: {"pair", "residual_min_grade" (None if no residual below the
    cap), "exact" (residual identically zero, nothing discarded), "cap"}.
    """
    from .u2h import bracket_table
    if gradecap is None:
        gradecap = 2 * ell + 4
    gens = embedded_generators(ell, cap=gradecap)
    table = bracket_table("spinor")
    report = {}
    for x, y in generator_pairs():
        comm = gens[x].comm(gens[y])
        target = LaurentElement(cap=gradecap)
        for g, c in table[(x, y)].items():
            target = target + gens[g].scale(c)
        res = comm - target
        report[f"{x}|{y}"] = {
            "pair": [x, y],
            "residual_min_grade": res.min_grade(),
            "exact": res.is_zero() and not res.dropped,
            "cap": gradecap,
        }
    return report


def reality_report(ell, cap=None):
    """Exact check that daggering each image lands on the image of X^dagger."""
    from .u2h import REALITY_SPINOR
    gens = embedded_generators(ell, cap=cap)
    out = {}
    for name, lau in gens.items():
        target = LaurentElement(cap=cap)
        for g, c in REALITY_SPINOR[name].items():
            target = target + gens[g].scale(c)
        out[name] = (lau.dagger() - target).is_zero()
    return out

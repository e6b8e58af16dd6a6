"""Finite-dimensional representations on truncated three-oscillator Fock spaces.

The space at level m is spanned by occupation states |n1, n2, n3> with
n1 + n2 + n3 <= m - 1, dimension binom(m+2, 3), ordered graded-lex by
(total, n1, n2) ascending, so each level is the prefix of the next.

Two constructions are provided: build_rho transcribes the closed-form matrix
elements of the exact representation (deformation parameter 1/m), and
build_rho_partial substitutes the finite square-root partial sums, producing
operators that map level m into the ambient level m+1 block.  The symbolic
Laurent generators of the weyl module can be evaluated to the same matrices,
which closes the algebra <-> operator consistency loop.
"""

import json
import math
from itertools import combinations

import numpy as np
import scipy.linalg
import scipy.sparse

from .rational import CRat
from .tolerances import TAU_REP
from .u2h import (REALITY_SPINOR, SPINOR_GENERATORS, VECTOR_IN_SPINOR,
                  bracket_table, casimir_pairs)

GENERATOR_NAMES = SPINOR_GENERATORS


def dim(m):
    if m < 1:
        raise ValueError("m must be a positive integer")
    return math.comb(m + 2, 3)


def basis(m):
    """Occupation triples with total <= m-1, graded-lex (total, n1, n2)."""
    out = []
    for total in range(m):
        for n1 in range(total + 1):
            for n2 in range(total - n1 + 1):
                out.append((n1, n2, total - n1 - n2))
    return out


def basis_index(m):
    return {state: i for i, state in enumerate(basis(m))}


def _sq(v):
    # radicands that are analytically >= 0 may float slightly negative
    if v < 0:
        if v < -1e-12:
            raise ValueError(f"negative radicand {v}")
        return 0.0
    return math.sqrt(v)


def _exact_actions(m):
    """state -> [(out_state, amplitude)] for the ten closed-form generators."""

    def k_pp(n1, n2, n3):
        return [((n1 - 1, n2, n3),
                 -2j * _sq(n1) * _sq(m - n1 - n2 - n3))]

    def k_pm(n1, n2, n3):
        return [((n1, n2, n3), 1j * (m - 2 * n1 - n2 - n3 - 1))]

    def k_mm(n1, n2, n3):
        return [((n1 + 1, n2, n3),
                 2j * _sq(n1 + 1) * _sq(m - n1 - n2 - n3 - 1))]

    def p_pp(n1, n2, n3):
        return [((n1 - 1, n2, n3 + 1), -_sq(n1) * _sq(n3 + 1)),
                ((n1, n2 - 1, n3), -_sq(n2) * _sq(m - n1 - n2 - n3))]

    def p_mm(n1, n2, n3):
        return [((n1 + 1, n2, n3 - 1), _sq(n1 + 1) * _sq(n3)),
                ((n1, n2 + 1, n3), _sq(n2 + 1) * _sq(m - n1 - n2 - n3 - 1))]

    def p_mp(n1, n2, n3):
        return [((n1 - 1, n2 + 1, n3), -_sq(n1) * _sq(n2 + 1)),
                ((n1, n2, n3 - 1), _sq(n3) * _sq(m - n1 - n2 - n3))]

    def p_pm(n1, n2, n3):
        return [((n1 + 1, n2 - 1, n3), -_sq(n1 + 1) * _sq(n2)),
                ((n1, n2, n3 + 1), _sq(n3 + 1) * _sq(m - n1 - n2 - n3 - 1))]

    def j_pp(n1, n2, n3):
        return [((n1, n2 - 1, n3 + 1), 2j * _sq(n3 + 1) * _sq(n2))]

    def j_pm(n1, n2, n3):
        return [((n1, n2, n3), -1j * (n3 - n2))]

    def j_mm(n1, n2, n3):
        return [((n1, n2 + 1, n3 - 1), -2j * _sq(n2 + 1) * _sq(n3))]

    return {"K++": k_pp, "K+-": k_pm, "K--": k_mm,
            "P++": p_pp, "P--": p_mm, "P-+": p_mp, "P+-": p_pm,
            "J++": j_pp, "J+-": j_pm, "J--": j_mm}


def _assemble(actions, dom_basis, cod_index, cod_dim):
    mats = {}
    for name, act in actions.items():
        mat = np.zeros((cod_dim, len(dom_basis)), dtype=complex)
        for col, st in enumerate(dom_basis):
            for out, amp in act(*st):
                if amp == 0:
                    continue
                if min(out) < 0:
                    if abs(amp) > 1e-12:
                        raise ValueError("nonzero amplitude out of the lattice")
                    continue
                row = cod_index.get(out)
                if row is None:
                    raise ValueError(f"state {out} escapes the codomain block")
                mat[row, col] = amp
        mats[name] = mat
    return mats


def build_rho(m):
    """The exact level-m representation: ten D x D complex matrices."""
    b = basis(m)
    return _assemble(_exact_actions(m), b, basis_index(m), dim(m))


def sqrt_series_value(ell, x):
    """Partial sum of the sqrt(1 - x) Taylor series through order ell."""
    acc, c = 0.0, 1.0
    for k in range(ell + 1):
        acc += c * x ** k
        c *= (2 * k - 1) / (2 * k + 2)
    return acc


def _partial_svals(m, ell, max_total):
    # diagonal values of the truncated square-root operator: argument tau is
    # the (total+1) eigenvalue, hbar = 1/m
    return {t: math.sqrt(m) * sqrt_series_value(ell, t / m)
            for t in range(max_total + 2)}


def _partial_actions(m, ell, domain_m):
    sval = _partial_svals(m, ell, domain_m)

    def k_pp(n1, n2, n3):
        return [((n1 - 1, n2, n3), -2j * _sq(n1) * sval[n1 + n2 + n3])]

    def k_pm(n1, n2, n3):
        return [((n1, n2, n3), 1j * (m - 2 * n1 - n2 - n3 - 1))]

    def k_mm(n1, n2, n3):
        return [((n1 + 1, n2, n3), 2j * _sq(n1 + 1) * sval[n1 + n2 + n3 + 1])]

    def p_pp(n1, n2, n3):
        return [((n1 - 1, n2, n3 + 1), -_sq(n1) * _sq(n3 + 1)),
                ((n1, n2 - 1, n3), -_sq(n2) * sval[n1 + n2 + n3])]

    def p_mm(n1, n2, n3):
        return [((n1 + 1, n2, n3 - 1), _sq(n1 + 1) * _sq(n3)),
                ((n1, n2 + 1, n3), _sq(n2 + 1) * sval[n1 + n2 + n3 + 1])]

    def p_mp(n1, n2, n3):
        return [((n1 - 1, n2 + 1, n3), -_sq(n1) * _sq(n2 + 1)),
                ((n1, n2, n3 - 1), _sq(n3) * sval[n1 + n2 + n3])]

    def p_pm(n1, n2, n3):
        return [((n1 + 1, n2 - 1, n3), -_sq(n1 + 1) * _sq(n2)),
                ((n1, n2, n3 + 1), _sq(n3 + 1) * sval[n1 + n2 + n3 + 1])]

    exact = _exact_actions(m)
    return {"K++": k_pp, "K+-": k_pm, "K--": k_mm,
            "P++": p_pp, "P--": p_mm, "P-+": p_mp, "P+-": p_pm,
            "J++": exact["J++"], "J+-": exact["J+-"], "J--": exact["J--"]}


def build_rho_partial(m, ell, domain_m=None):
    """Square roots replaced by partial sums; maps level m into level m+1.

    Matrices are D(domain_m + 1) x D(domain_m) with hbar fixed at 1/m
    (domain_m defaults to m; passing domain_m = m + 1 gives the next block
    of the same operator, as needed for curvature compositions).
    """
    dm = m if domain_m is None else domain_m
    return _assemble(_partial_actions(m, ell, dm), basis(dm),
                     basis_index(dm + 1), dim(dm + 1))


def embed_exact_in_ambient(m):
    """build_rho(m) zero-padded to the D(m+1) x D(m) ambient shape."""
    d, d1 = dim(m), dim(m + 1)
    out = {}
    for name, mat in build_rho(m).items():
        big = np.zeros((d1, d), dtype=complex)
        big[:d, :] = mat
        out[name] = big
    return out


def matrix_of_weyl(w, m_domain, m_codomain):
    """Evaluate a normal-ordered symbolic element on occupation states.

    Monomial amplitudes are products of ladder factors (the a^+_+. slot
    carries the sign of its Fock action); no intermediate truncation occurs.
    """
    dom = basis(m_domain)
    cod = basis_index(m_codomain)
    mat = np.zeros((dim(m_codomain), len(dom)), dtype=complex)
    for key, coeff in w.terms.items():
        d1, d2, d3, e1, e2, e3 = key
        c = coeff.to_complex()
        for col, (n1, n2, n3) in enumerate(dom):
            if e1 > n1 or e2 > n2 or e3 > n3:
                continue
            amp = 1.0
            for base, down, up in ((n1, e1, d1), (n2, e2, d2), (n3, e3, d3)):
                for t in range(down):
                    amp *= math.sqrt(base - t)
                for t in range(up):
                    amp *= math.sqrt(base - down + 1 + t)
            if e2 % 2:
                amp = -amp
            out = (n1 - e1 + d1, n2 - e2 + d2, n3 - e3 + d3)
            row = cod.get(out)
            if row is None:
                raise ValueError(f"state {out} escapes the codomain block")
            mat[row, col] += c * amp
    return mat


def matrix_of_laurent(lau, m, m_domain=None, m_codomain=None):
    """Evaluate a Laurent element at hbar = 1/m, grade g -> m^(-g/2)."""
    md = m if m_domain is None else m_domain
    mc = md + 1 if m_codomain is None else m_codomain
    total = np.zeros((dim(mc), dim(md)), dtype=complex)
    for g, w in lau.grades.items():
        total += float(m) ** (-g / 2.0) * matrix_of_weyl(w, md, mc)
    return total


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------

def _lie_to_matrix(rep, coeffs):
    d = next(iter(rep.values())).shape
    out = np.zeros(d, dtype=complex)
    for g, c in coeffs.items():
        cc = c.to_complex() if isinstance(c, CRat) else complex(c)
        out += cc * rep[g]
    return out


def verify_brackets(rep, table=None):
    """(max residual, worst pair) of [rho X, rho Y] = rho([X, Y])."""
    if table is None:
        table = bracket_table("spinor")
    worst, worst_pair = 0.0, None
    for x, y in combinations(GENERATOR_NAMES, 2):
        lhs = rep[x] @ rep[y] - rep[y] @ rep[x]
        rhs = _lie_to_matrix(rep, table[(x, y)])
        r = float(np.max(np.abs(lhs - rhs)))
        if r > worst:
            worst, worst_pair = r, (x, y)
    return worst, worst_pair


def verify_reality(rep):
    """Max residual of (rho X)^dagger = rho(X^dagger)."""
    worst = 0.0
    for x in GENERATOR_NAMES:
        rhs = _lie_to_matrix(rep, REALITY_SPINOR[x])
        worst = max(worst, float(np.max(np.abs(rep[x].conj().T - rhs))))
    return worst


def verify_traceless(rep):
    return max(abs(complex(np.trace(rep[x]))) for x in GENERATOR_NAMES)


def k_spectrum(rep):
    """Sorted eigenvalues of -i rho(K_+.-.), exactly integer in theory."""
    herm = -1j * rep["K+-"]
    return np.sort(np.linalg.eigvalsh(herm))


def expected_k_spectrum(m):
    vals = [m - 2 * n1 - n2 - n3 - 1 for (n1, n2, n3) in basis(m)]
    return np.sort(np.array(vals, dtype=float))


def commutant_dimension(rep, tol=1e-8):
    """Dimension of {M : [M, rho X] = 0 for all X}; 1 means irreducible.

    M is restricted upfront to the joint eigenspaces of the two diagonal
    generators (their eigenvalues are exact integers read off the basis),
    then the remaining commutation constraints are solved by a dense
    eigenvalue count on the small Gram matrix.
    """
    d = next(iter(rep.values())).shape[0]
    m = next((mm for mm in range(1, 4096) if dim(mm) == d), None)
    if m is None:
        raise ValueError(f"matrix dimension {d} is not a truncation level")
    states = basis(m)
    label = [(2 * n1 + n2 + n3, n2 - n3) for (n1, n2, n3) in states]
    blocks = {}
    for i, lab in enumerate(label):
        blocks.setdefault(lab, []).append(i)
    allowed = [(i, j) for ids in blocks.values() for i in ids for j in ids]
    ncols = len(allowed)
    gram = np.zeros((ncols, ncols), dtype=complex)
    offdiag = [g for g in GENERATOR_NAMES if g not in ("K+-", "J+-")]
    for name in offdiag:
        x = rep[name]
        rows, cols, vals = [], [], []
        xs = scipy.sparse.csr_matrix(x)
        xt = xs.T.tocsr()
        for col_idx, (i0, j0) in enumerate(allowed):
            # [E_{i0 j0}, X]_{pq} = delta_{p i0} X_{j0 q} - X_{p i0} delta_{q j0}
            r = xs.getrow(j0)
            for q, v in zip(r.indices, r.data):
                rows.append(i0 * d + q)
                cols.append(col_idx)
                vals.append(v)
            r = xt.getrow(i0)
            for p, v in zip(r.indices, r.data):
                rows.append(p * d + j0)
                cols.append(col_idx)
                vals.append(-v)
        c = scipy.sparse.csr_matrix((vals, (rows, cols)),
                                    shape=(d * d, ncols))
        gram += (c.getH() @ c).toarray()
    evals = np.linalg.eigvalsh(gram)
    scale = max(1.0, float(evals[-1]) if len(evals) else 1.0)
    return int(np.sum(evals < tol * scale))


def casimir_deviation(rep):
    """Distance of the quadratic Casimir from a scalar matrix.

    The Casimir is built from the exact inverse Killing form on the vector
    basis, with the vector generators expressed through the spinor matrices.
    """
    d = next(iter(rep.values())).shape[0]
    rho_vec = {g: _lie_to_matrix(rep, VECTOR_IN_SPINOR[g])
               for g in VECTOR_IN_SPINOR}
    c2 = np.zeros((d, d), dtype=complex)
    for ga, gb, coeff in casimir_pairs():
        c2 += float(coeff) * (rho_vec[ga] @ rho_vec[gb])
    scalar = np.trace(c2) / d
    return float(np.max(np.abs(c2 - scalar * np.eye(d))))


def exponentiate(x, t=1.0, tol=TAU_REP):
    """exp(t X) for antihermitean X; rejects non-antihermitean input."""
    defect = float(np.max(np.abs(x + x.conj().T)))
    if defect > tol:
        raise ValueError(f"matrix is not antihermitean (defect {defect:.3g})")
    return scipy.linalg.expm(t * x)


def filtration_check(m_max):
    """Basis-compatibility of the level inclusions, and the off-block fact.

    Verifies that dimensions strictly increase and each level's basis is the
    prefix of the next level's.  Restricting the level-(m+1) matrices to the
    level-m block is NOT a subrepresentation; the maximal off-block column
    entry per level is reported as evidence.
    """
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    report = {"dims": [dim(m) for m in range(1, m_max + 1)],
              "prefix_ok": True, "off_block_norm": {}}
    for m in range(1, m_max):
        if dim(m) >= dim(m + 1):
            report["prefix_ok"] = False
        if basis(m) != basis(m + 1)[:dim(m)]:
            report["prefix_ok"] = False
        rep = build_rho(m + 1)
        d = dim(m)
        off = max(float(np.max(np.abs(rep[g][d:, :d]))) for g in rep)
        report["off_block_norm"][m + 1] = off
    report["is_subrepresentation"] = all(
        v < 1e-14 for v in report["off_block_norm"].values())
    return report


# ---------------------------------------------------------------------------
# partial-sum convergence diagnostics
# ---------------------------------------------------------------------------

def partial_sum_distance(m, ell, block="all"):
    """Sup-entry distance between the truncated and exact level-m operators.

    Computed from the closed form: every differing entry is a fixed ladder
    factor times the square-root series tail at x = tau/m.  block="interior"
    restricts to columns whose states have total < m-1 (where x < 1 and the
    tail is geometric); boundary columns decay only like 1/sqrt(ell).
    """
    err = {t: abs(math.sqrt(m) * (sqrt_series_value(ell, t / m)
                                  - _sq(1.0 - t / m)))
           for t in range(m + 1)}
    worst = 0.0
    for (n1, n2, n3) in basis(m):
        t = n1 + n2 + n3
        if block == "interior" and t >= m - 1:
            continue
        worst = max(
            worst,
            2 * _sq(n1) * err[t],            # K++ column entry
            2 * _sq(n1 + 1) * err[t + 1],    # K--
            _sq(n2) * err[t],                # P++
            _sq(n3) * err[t],                # P-+
            _sq(n2 + 1) * err[t + 1],        # P--
            _sq(n3 + 1) * err[t + 1],        # P+-
        )
    return worst


def full_convergence_ell(m, threshold=1e-3, ell_max=20_000_000):
    """Smallest ell with sup-entry distance below threshold (boundary included).

    The boundary tail decays like 1/sqrt(ell), so this can be millions; the
    series partial sums are scanned vectorized.  Measured at the default
    threshold: m=2 -> 5_092_958, m=3 -> 11_459_156, m=4 -> 20_371_833
    (the interior block alone is already below 1e-6 by ell ~ 30).
    """
    # largest ladder factor hitting the x = 1 tail: K-- gives 2 sqrt(n1+1)
    # with n1 <= m-1, so 2 sqrt(m); the tail value itself carries sqrt(m)
    boundary_factor = 2.0 * m
    chunk = 1 << 20
    run_coeff = 1.0  # c_k arriving at each chunk boundary
    run_sum = 1.0    # S_k(1) partial sum
    k0 = 1
    ell0 = None
    if boundary_factor * run_sum < threshold:
        ell0 = 0
    while ell0 is None and k0 <= ell_max:
        k = np.arange(k0, min(k0 + chunk, ell_max + 1), dtype=float)
        ratios = (2 * k - 3) / (2 * k)
        coeffs = run_coeff * np.cumprod(ratios)
        sums = run_sum + np.cumsum(coeffs)
        hits = np.nonzero(boundary_factor * np.abs(sums) < threshold)[0]
        if len(hits):
            ell0 = k0 + int(hits[0])
            break
        run_coeff = float(coeffs[-1])
        run_sum = float(sums[-1])
        k0 += len(k)
    if ell0 is None:
        return None
    # exact check including interior entries (cheap around the candidate)
    while partial_sum_distance(m, ell0) >= threshold:
        ell0 += 1
    return ell0


# ---------------------------------------------------------------------------
# matrix dumps
# ---------------------------------------------------------------------------

def dump_representation(m, outdir, mode="binary"):
    """Write the level-m matrices with their basis-order header.

    binary mode: one JSON header plus per-generator little-endian float64
    [re, im] row-major sidecars; json mode inlines the matrices.
    """
    import pathlib
    outdir = pathlib.Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rep = build_rho(m)
    header = {"m": m, "dim": dim(m),
              "basis_order": [list(s) for s in basis(m)],
              "layout": "row-major", "dtype": "float64-le-re-im-pairs",
              "generators": list(GENERATOR_NAMES), "mode": mode}
    files = {}
    for name in GENERATOR_NAMES:
        mat = rep[name]
        safe = name.replace("+", "p").replace("-", "m")
        if mode == "binary":
            pairs = np.stack([mat.real, mat.imag], axis=-1).astype("<f8")
            fname = f"rho_m{m}_{safe}.bin"
            pairs.tofile(outdir / fname)
            files[name] = fname
        elif mode == "json":
            files[name] = [[[float(v.real), float(v.imag)] for v in row]
                           for row in mat]
        else:
            raise ValueError("mode must be binary or json")
    header["matrices"] = files
    path = outdir / f"rho_m{m}.json"
    path.write_text(json.dumps(header, indent=1, sort_keys=True))
    return path


def load_representation(path):
    import pathlib
    path = pathlib.Path(path)
    header = json.loads(path.read_text())
    d = header["dim"]
    rep = {}
    for name, src in header["matrices"].items():
        if header["mode"] == "binary":
            pairs = np.fromfile(path.parent / src, dtype="<f8")
            pairs = pairs.reshape(d, d, 2)
            rep[name] = pairs[..., 0] + 1j * pairs[..., 1]
        else:
            rep[name] = np.array([[complex(re, im) for re, im in row]
                                  for row in src])
    return header, rep

"""Selection functions on the Chevalley base of gl_n and the identities they satisfy.

Cartan subalgebras ``t_w`` live inside ``E^n`` with ``E = F_{q^M}``,
``M = lcm(1..n)``, as the fixed points of ``x -> w . Fr(x)`` where
``(w . y)_i = y_{w^{-1}(i)}``.  A linear functional on ``t_w`` is stored
by the coefficients ``c`` of its E-linear extension ``x -> sum c_i x_i``.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import caps
from .fields import (
    CycInt,
    ExtField,
    FqSpec,
    field_of_order,
    intersect,
    nullspace,
    psi,
    rank,
    rref,
    span_elements,
)
from .gl import (
    FunctionTable,
    SubalgebraSpec,
    cartan_tw,
    chevalley,
    all_matrices,
    fiber_histogram,
    poly_from_roots,
    relevant_toral_reps,
    subalgebra_integral,
)
from .roots import RootSystem, SimpleType, enumerate_weyl, fundamental_coweights, graded_trace, poly_eval, weyl_orbit
from .lattice import inverse

Perm = tuple[int, ...]


@dataclass
class VerificationReport:
    identity: str
    params: dict
    passed: bool
    witness: object = None
    residual: str = "0"
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "pass": self.passed,
            "witness": self.witness,
            "residual": self.residual,
        }


# The GL_2 example


def xi_gl2(F: FqSpec) -> FunctionTable:
    """xi on c(F_q) for n = 2 built from the eigenvalues, with denominator 2."""
    if F.p == 2:
        raise ValueError("the GL_2 example needs odd q")
    p = F.p
    vals = {}
    for l1 in range(F.q):
        for l2 in range(l1, F.q):
            d = F.sub(l1, l2)
            vals[poly_from_roots(F, [l1, l2])] = psi(F, d) + psi(F, F.neg(d))
    E = ExtField(F, 2)
    for lam in E.elements():
        if E.in_base(lam):
            continue
        a = chevalley(F, tuple(tuple(r) for r in E.mult_matrix(lam)))
        vals[a] = psi(F, lam[1]) + psi(F, E.frobenius(lam)[1])
    return FunctionTable("c", p, vals, 2)


# Permutations


def permutations(n: int) -> list[Perm]:
    return list(itertools.permutations(range(n)))


def perm_inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, j in enumerate(w):
        out[j] = i
    return tuple(out)


def cycle_type(w: Perm) -> tuple[int, ...]:
    seen, out = set(), []
    for i in range(len(w)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = w[j]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def perm_sign(w: Perm) -> int:
    return -1 if sum(d - 1 for d in cycle_type(w)) % 2 else 1


# Admissible collections


class Splitting:
    """E^n with E = F_{q^M}, M = lcm(1..n), as an F_q vector space of dimension nM."""

    def __init__(self, F: FqSpec, n: int):
        self.F, self.n = F, n
        self.M = math.lcm(*range(1, n + 1)) if n > 0 else 1
        self.E = ExtField(F, self.M)
        self._tw: dict[Perm, list[list[int]]] = {}

    def split(self, v: Sequence[int]) -> list[tuple[int, ...]]:
        M = self.M
        return [tuple(v[i * M : (i + 1) * M]) for i in range(self.n)]

    def join(self, xs: Sequence[Sequence[int]]) -> list[int]:
        return [a for x in xs for a in x]

    def twist(self, w: Perm, xs):
        """x -> w . Fr(x)."""
        E = self.E
        out = [None] * self.n
        for i, x in enumerate(xs):
            out[w[i]] = E.frobenius(x)
        return out

    def t_w(self, w: Perm) -> list[list[int]]:
        """F_q-basis of {x : x = w . Fr(x)}."""
        if w not in self._tw:
            N = self.n * self.M
            cols = []
            for b in range(N):
                e = [int(i == b) for i in range(N)]
                xs = self.split(e)
                img = self.join(self.twist(w, xs))
                cols.append([self.F.sub(a, c) for a, c in zip(e, img)])
            rows = [[cols[j][i] for j in range(N)] for i in range(N)]
            basis = rref(self.F, nullspace(self.F, rows, N))[0]
            if len(basis) != self.n:
                raise AssertionError("t_w must have dimension n")
            self._tw[w] = basis
        return self._tw[w]

    def pair(self, c: Sequence[Sequence[int]], xs) -> tuple[int, ...]:
        E = self.E
        acc = E.zero()
        for ci, xi in zip(c, xs):
            acc = E.add(acc, E.mul(tuple(ci), tuple(xi)))
        return acc

    def charpoly_point(self, xs) -> tuple[int, ...]:
        """Coefficients c_0..c_{n-1} of prod (T - x_i), which lie in F_q."""
        E = self.E
        c = [E.one()]
        for x in xs:
            nx = E.neg(tuple(x))
            out = [E.zero()] * (len(c) + 1)
            for i, a in enumerate(c):
                out[i] = E.add(out[i], E.mul(a, nx))
                out[i + 1] = E.add(out[i + 1], a)
            c = out
        pt = []
        for a in c[:-1]:
            if not E.in_base(a):
                raise AssertionError("characteristic polynomial of a t_w point is not F_q-rational")
            pt.append(a[0])
        return tuple(pt)


@dataclass
class AdmissibleCollection:
    splitting: Splitting
    coeffs: dict  # w -> tuple of n elements of E (E-linear extension of lambda_w)
    global_coeffs: tuple | None = None

    @property
    def n(self) -> int:
        return self.splitting.n

    @property
    def F(self) -> FqSpec:
        return self.splitting.F

    def value(self, w: Perm, v: Sequence[int]) -> int:
        """lambda_w at a flattened point of t_w."""
        s = self.splitting
        val = s.pair(self.coeffs[w], s.split(v))
        if not s.E.in_base(val):
            raise ValueError(f"lambda_{w} is not F_q-valued on t_w")
        return val[0]

    def equivariance_defects(self) -> list[Perm]:
        """w for which c_k = Fr(c_{w^{-1}(k)}) fails."""
        E = self.splitting.E
        bad = []
        for w, c in self.coeffs.items():
            winv = perm_inverse(w)
            if any(tuple(c[k]) != E.frobenius(tuple(c[winv[k]])) for k in range(self.n)):
                bad.append(w)
        return bad

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.F.q,
            "M": self.splitting.M,
            "modulus": list(self.splitting.E.modulus),
            "coefficients": {",".join(map(str, w)): [list(x) for x in c] for w, c in sorted(self.coeffs.items())},
        }


def restrict_global(s: Splitting, c: Sequence[Sequence[int]]) -> dict:
    """Coefficients of Tr_{E/F}(sum c_i x_i) restricted to each t_w."""
    E = s.E
    out = {}
    for w in permutations(s.n):
        winv = perm_inverse(w)
        cw = []
        for k in range(s.n):
            acc, idx = E.zero(), k
            for j in range(s.M):
                acc = E.add(acc, E.frobenius(tuple(c[idx]), j))
                idx = winv[idx]
            cw.append(acc)
        out[w] = tuple(cw)
    return out


def collection_from_global(F: FqSpec, n: int, c: Sequence[Sequence[int]]) -> AdmissibleCollection:
    s = Splitting(F, n)
    return AdmissibleCollection(s, restrict_global(s, c), tuple(tuple(x) for x in c))


def _is_zero(x) -> bool:
    return x == 0 if isinstance(x, int) else not any(x)


def coregular_check(coeffs: Sequence, field_ops) -> tuple[bool, tuple[int, ...] | None]:
    """Sum zero and no proper nonempty partial sum zero; returns a 1-based violating subset."""
    n = len(coeffs)
    zero = 0 if coeffs and isinstance(coeffs[0], int) else field_ops.zero()

    def total(idx):
        acc = zero
        for i in idx:
            acc = field_ops.add(acc, coeffs[i])
        return acc

    if not _is_zero(total(range(n))):
        return False, tuple(range(1, n + 1))
    for size in range(1, n):
        for J in itertools.combinations(range(n), size):
            if _is_zero(total(J)):
                return False, tuple(j + 1 for j in J)
    return True, None


def regular_check(coeffs: Sequence) -> bool:
    return len({tuple(c) if not isinstance(c, int) else c for c in coeffs}) == len(coeffs)


def admissible_check(coll: AdmissibleCollection) -> VerificationReport:
    s, F = coll.splitting, coll.F
    params = {"n": coll.n, "q": F.q}
    bad = coll.equivariance_defects()
    if bad:
        return VerificationReport("admissible", params, False, {"not_F_valued": list(bad[0])}, "n/a")
    ws = sorted(coll.coeffs)
    checked = []
    for w1, w2 in itertools.combinations(ws, 2):
        inter = intersect(F, s.t_w(w1), s.t_w(w2))
        checked.append({"w1": list(w1), "w2": list(w2), "dim": len(inter)})
        for y in inter:
            a, b = coll.value(w1, y), coll.value(w2, y)
            if a != b:
                return VerificationReport(
                    "admissible",
                    params,
                    False,
                    {"w1": list(w1), "w2": list(w2), "y": list(y)},
                    str(F.sub(a, b)),
                    {"checked": checked},
                )
    return VerificationReport("admissible", params, True, None, "0", {"checked": checked})


def is_coregular_collection(coll: AdmissibleCollection) -> bool:
    E = coll.splitting.E
    return all(coregular_check(list(c), E)[0] for c in coll.coeffs.values())


def is_regular_collection(coll: AdmissibleCollection) -> bool:
    return all(regular_check(list(c)) for c in coll.coeffs.values())


def search_admissible(
    n: int,
    q: int,
    require_coregular: bool = True,
    require_regular: bool = False,
    budget: int = 2000,
    seed: int = 0,
) -> AdmissibleCollection | None:
    """Random global coefficient tuples with sum zero, restricted to every t_w."""
    F = field_of_order(q)
    s = Splitting(F, n)
    E = s.E
    rng = random.Random(seed)
    for _ in range(max(budget, 1)):
        c = [tuple(rng.randrange(F.q) for _ in range(s.M)) for _ in range(n - 1)]
        last = E.zero()
        for x in c:
            last = E.sub(last, x)
        c.append(last)
        coll = AdmissibleCollection(s, restrict_global(s, c), tuple(c))
        if require_coregular and not is_coregular_collection(coll):
            continue
        if require_regular and not is_regular_collection(coll):
            continue
        return coll
    return None


def construct_xi(coll: AdmissibleCollection, cap: int | None = None) -> FunctionTable:
    """(1/n!) sum_w sum_{x in t_w} psi(lambda_w(x)) at chi(x)."""
    s, F = coll.splitting, coll.F
    caps.check(math.factorial(s.n) * F.q**s.n, caps.enumeration_cap(cap), "selection function construction")
    hist: dict[tuple, list[int]] = {}
    for w, c in coll.coeffs.items():
        basis = s.t_w(w)
        for v in span_elements(F, basis, s.n * s.M):
            xs = s.split(v)
            pt = s.charpoly_point(xs)
            val = s.pair(c, xs)
            if not s.E.in_base(val):
                raise ValueError(f"lambda_{w} is not F_q-valued on t_w")
            h = hist.setdefault(pt, [0] * F.p)
            h[F.trace(val[0])] += 1
    vals = {pt: CycInt.from_histogram(F.p, h) for pt, h in hist.items()}
    return FunctionTable("c", F.p, vals, math.factorial(s.n))


def verify_selection(
    xi: FunctionTable, n: int, q: int, extra: Sequence[SubalgebraSpec] = (), cap: int | None = None
) -> VerificationReport:
    """xi = 1 at central points and zero integral over every non-central relevant torus."""
    F = field_of_order(q)
    params = {"n": n, "q": q}
    for z in range(F.q):
        pt = poly_from_roots(F, [z] * n)
        if not xi.equals_integer(pt, 1):
            residual = xi.numerator(pt) - xi.denominator
            return VerificationReport("selection", params, False, {"central_point": list(pt)}, f"({residual})/{xi.denominator}")
    checked = []
    for h in [h for h in relevant_toral_reps(F, n) if not h.is_center] + list(extra):
        val = subalgebra_integral(F, h, xi, cap)
        checked.append(h.label)
        if not val.is_zero():
            return VerificationReport("selection", params, False, {"subalgebra": h.label}, str(val), {"checked": checked})
    return VerificationReport("selection", params, True, None, "0", {"checked": checked})


# The identity chi_! 1 = q^N (1/|W|) sum_w sgn(w) Tr(Fr* w, H*(B)) chi_{w!} 1_{t_w}


def _weyl_permutations(n: int):
    """Weyl group of A_{n-1} as (permutation, sign, graded trace) triples."""
    if n == 1:
        return [((0,), 1, [1])]
    rs = RootSystem.build([SimpleType("A", n - 1)])
    W = enumerate_weyl(rs)
    # v_1 = varpi_1^vee, v_{i+1} = v_i - alpha_i^vee: the weights of the standard representation
    v = [fundamental_coweights(rs)[0]]
    for i in range(n - 1):
        v.append(tuple(x - int(j == i) for j, x in enumerate(v[-1])))
    index = {vec: k for k, vec in enumerate(v)}
    out = []
    for k, w in enumerate(W.elements):
        perm = []
        for vec in v:
            img = tuple(sum(w[a][b] * vec[b] for b in range(rs.rank)) for a in range(rs.rank))
            perm.append(index[img])
        out.append((tuple(perm), W.sign(k), graded_trace(w, rs)))
    return out


def van_sum_check(n: int, q: int, cap: int | None = None) -> VerificationReport:
    F = field_of_order(q)
    params = {"n": n, "q": q}
    lhs = Counter(chevalley(F, A) for A in all_matrices(F, n, cap))
    N = n * (n - 1) // 2
    rhs_scaled: Counter = Counter()  # n! times the right side
    for perm, sgn, gt in _weyl_permutations(n):
        if perm_sign(perm) != sgn:
            raise AssertionError("Weyl sign disagrees with the permutation sign")
        weight = sgn * poly_eval(gt, q) * q**N
        for a, cnt in fiber_histogram(cartan_tw(F, n, cycle_type(perm))).items():
            rhs_scaled[a] += weight * cnt
    nf = math.factorial(n)
    for a in itertools.product(range(F.q), repeat=n):
        if lhs[a] * nf != rhs_scaled[a]:
            residual = Fraction(lhs[a]) - Fraction(rhs_scaled[a], nf)
            return VerificationReport("van-sum", params, False, list(a), str(residual))
    return VerificationReport("van-sum", params, True, None, "0", {"points": F.q**n, "total": sum(lhs.values())})


# Subspace arrangements


def _canon(F: FqSpec, basis: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in rref(F, basis)[0]) if basis else ()


def _contains(F: FqSpec, big, small) -> bool:
    if not small:
        return True
    return rank(F, list(big) + list(small)) == len(big)


def arrangement_check(F: FqSpec, family: Sequence[Sequence[Sequence[int]]], lam: Sequence[int], r: int | None = None) -> VerificationReport:
    """sum of psi(lambda) over the union equals the signed count of chains from {0}."""
    if r is None:
        r = len(lam)
    members = sorted({_canon(F, b) for b in family}, key=lambda b: (len(b), b))
    params = {"q": F.q, "r": r, "members": len(members)}
    if () not in members:
        raise ValueError("family must contain the zero subspace")
    mset = set(members)
    for U, V in itertools.combinations(members, 2):
        if _canon(F, intersect(F, U, V)) not in mset:
            raise ValueError("family is not closed under intersection")
    for V in members:
        if V and not any(_lam(F, lam, v) for v in V):
            raise ValueError("lambda vanishes on a nonzero member: not coregular")
    union = set()
    for V in members:
        union.update(span_elements(F, V, r))
    h = [0] * F.p
    for x in union:
        h[F.trace(_lam(F, lam, x))] += 1
    lhs = CycInt.from_histogram(F.p, h)
    # c(U) = signed count of chains starting at U
    c: dict = {}
    for U in reversed(members):
        c[U] = 1 - sum(c[V] for V in members if len(V) > len(U) and _contains(F, V, U))
    rhs = c[()]
    residual = lhs - rhs
    return VerificationReport("arrangement", params, residual.is_zero(), None if residual.is_zero() else "totals", str(residual), {"lhs": str(lhs), "rhs": rhs})


def _lam(F: FqSpec, lam, x) -> int:
    acc = 0
    for a, b in zip(lam, x):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def random_arrangement(F: FqSpec, r: int, rng: random.Random, generators: int = 3, max_dim: int = 3):
    """An intersection-closed family with {0} and a lambda nonzero on each nonzero member."""
    gens = []
    for _ in range(generators):
        d = rng.randint(1, max_dim)
        basis = rref(F, [[rng.randrange(F.q) for _ in range(r)] for _ in range(d)])[0]
        if basis:
            gens.append(_canon(F, basis))
    members = {()} | set(gens)
    changed = True
    while changed:
        changed = False
        for U, V in itertools.combinations(list(members), 2):
            W = _canon(F, intersect(F, U, V))
            if W not in members:
                members.add(W)
                changed = True
    members = sorted(members, key=lambda b: (len(b), b))
    for _ in range(10_000):
        lam = [rng.randrange(F.q) for _ in range(r)]
        if all(not V or any(_lam(F, lam, v) for v in V) for V in members):
            return [list(map(list, V)) for V in members], lam
    raise RuntimeError("no coregular functional found")


# Bounds for the existence of coregular collections


def _subgroup(gens: Sequence, ident, mul) -> set:
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def m_bound(rs: RootSystem, cap: int | None = None) -> tuple[dict[int, int], int]:
    """M(i) = sum_{#J = i} #(W/W_J) #(N_W(W_J)/W_J), and the least q >= 2 with sum M(i) q^-i < 1."""
    from .roots import mat_mul

    W = enumerate_weyl(rs, cap)
    order = W.order
    r = rs.rank
    ident = W.elements[0]
    refl = [rs.simple_reflection_matrix(i) for i in range(r)]
    inv = {w: tuple(tuple(int(x) for x in row) for row in inverse(w)) for w in W.elements}
    M: dict[int, int] = {}
    for i in range(1, r + 1):
        total = 0
        for J in itertools.combinations(range(r), i):
            WJ = _subgroup([refl[j] for j in J], ident, mat_mul)
            norm = sum(1 for w in W.elements if all(mat_mul(mat_mul(w, refl[j]), inv[w]) in WJ for j in J))
            total += (order // len(WJ)) * (norm // len(WJ))
        M[i] = total
    q = 2
    while sum((Fraction(m, q**i) for i, m in M.items()), Fraction(0)) >= 1:
        q += 1
    return M, q


def gl_mmin_closed_form(n: int) -> dict[int, int]:
    """Counts of minimal relevant pairs for GL_n by dimension, from the cyclic and two-block families."""
    out: Counter = Counter()
    if n >= 2:
        out[1] += 2 ** (n - 1)
    for d in range(2, n + 1):
        if n % d == 0:
            out[d - 1] += math.factorial(n) // (d * math.factorial(n // d) ** d)
    return dict(sorted(out.items()))


def coweight_orbit_bound(rs: RootSystem, cap: int | None = None) -> int:
    if rs.weyl_order > caps.weyl_cap(cap):
        raise caps.CapExceeded(f"order exceeds cap: |W| = {rs.weyl_order}")
    pts = set()
    for v in fundamental_coweights(rs):
        pts |= weyl_orbit(v, rs, cap)
    return len(pts)


# Randomized sweeps


def random_table(F: FqSpec, n: int, rng: random.Random, density: float = 0.3, spread: int = 2) -> FunctionTable:
    vals = {}
    for v in itertools.product(range(F.q), repeat=n * n):
        if rng.random() < density:
            val = CycInt(F.p, tuple(rng.randint(-spread, spread) for _ in range(F.p - 1)))
            if not val.is_zero():
                vals[v] = val
    return FunctionTable("g", F.p, vals, 1)


def fourier_check(n: int, q: int, trials: int = 20, seed: int = 0, cap: int | None = None) -> VerificationReport:
    """FT(FT f) = q^{n^2} f(-.) and sum_u FT f(u) FT g(-u) = q^{n^2} sum_v f(v) g(v)."""
    from .gl import finite_FT, negate_point

    F = field_of_order(q)
    rng = random.Random(seed)
    params = {"n": n, "q": q, "trials": trials, "seed": seed}
    scale = q ** (n * n)
    for t in range(trials):
        f, g = random_table(F, n, rng), random_table(F, n, rng)
        Ff, Fg = finite_FT(F, n, f, cap), finite_FT(F, n, g, cap)
        FFf = finite_FT(F, n, Ff, cap)
        for v in itertools.product(range(F.q), repeat=n * n):
            diff = FFf.numerator(v) - f.numerator(negate_point(F, v)) * scale
            if not diff.is_zero():
                return VerificationReport("fourier", params, False, {"trial": t, "law": "inversion", "point": list(v)}, str(diff))
        lhs = CycInt.zero(F.p)
        for u, val in Ff.values.items():
            lhs = lhs + val * Fg.numerator(negate_point(F, u))
        rhs = CycInt.zero(F.p)
        for v, val in f.values.items():
            rhs = rhs + val * g.numerator(v)
        diff = lhs - rhs * scale
        if not diff.is_zero():
            return VerificationReport("fourier", params, False, {"trial": t, "law": "plancherel"}, str(diff))
    return VerificationReport("fourier", params, True, None, "0")


def arrangement_trials(q: int, r: int = 4, trials: int = 20, seed: int = 0) -> VerificationReport:
    F = field_of_order(q)
    rng = random.Random(seed)
    params = {"q": q, "r": r, "trials": trials, "seed": seed}
    for t in range(trials):
        family, lam = random_arrangement(F, r, rng)
        rep = arrangement_check(F, family, lam, r)
        if not rep.passed:
            return VerificationReport("arrangement", params, False, {"trial": t, "family": family, "lambda": lam}, rep.residual)
    return VerificationReport("arrangement", params, True, None, "0")

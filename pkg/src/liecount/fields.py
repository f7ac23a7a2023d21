"""Finite fields, relative extensions, cyclotomic integers and linear algebra over F_q.

Elements of ``F_q`` (q = p^k) are ints in ``range(q)`` whose base-p digits
are the coefficients of the polynomial representative, constant term first.
Character values live in ``Z[zeta_p]`` as :class:`CycInt`.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import caps


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """(p, k) with q = p^k, or ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


# Polynomials over a field, coefficient lists low degree first.


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


class _PolyRing:
    def __init__(self, F):
        self.F = F

    def mul(self, a, b):
        if not a or not b:
            return []
        F = self.F
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return _trim(out)

    def sub(self, a, b):
        F = self.F
        n = max(len(a), len(b))
        a = list(a) + [0] * (n - len(a))
        b = list(b) + [0] * (n - len(b))
        return _trim([F.sub(x, y) for x, y in zip(a, b)])

    def divmod(self, a, b):
        F = self.F
        a = _trim(list(a))
        b = _trim(list(b))
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = F.inv(b[-1])
        quo = [0] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b):
            c = F.mul(a[-1], inv_lead)
            shift = len(a) - len(b)
            quo[shift] = c
            for j, y in enumerate(b):
                a[shift + j] = F.sub(a[shift + j], F.mul(c, y))
            _trim(a)
        return _trim(quo), a

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def gcd(self, a, b):
        a, b = _trim(list(a)), _trim(list(b))
        while b:
            a, b = b, self.mod(a, b)
        return a

    def powmod(self, a, e, m):
        result, base = [1], self.mod(a, m)
        while e:
            if e & 1:
                result = self.mod(self.mul(result, base), m)
            base = self.mod(self.mul(base, base), m)
            e >>= 1
        return result


def _is_irreducible(R: _PolyRing, f: list, size: int) -> bool:
    """Degree-d monic f over a field with ``size`` elements."""
    d = len(f) - 1
    if d <= 1:
        return d == 1
    x = [0, 1]
    xp = x
    for _ in range(1, d // 2 + 1):
        xp = R.powmod(xp, size, f)
        if len(R.gcd(f, R.sub(xp, x))) > 1:
            return False
    return True


def _lex_smallest_irreducible(R: _PolyRing, size: int, d: int) -> tuple[int, ...]:
    # candidates in increasing order of sum c_i size^i (constant term least significant)
    for code in range(size**d):
        f = []
        for _ in range(d):
            code, c = divmod(code, size)
            f.append(c)
        f.append(1)
        if _is_irreducible(R, f, size):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class _PrimeField:
    """Arithmetic mod p, used to search for the modulus."""

    def __init__(self, p):
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, self.p - 2, self.p)


class FqSpec:
    """The field F_{p^k} with a fixed modulus."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be at least 1")
        if p > caps.MAX_PRIME or k > caps.MAX_DEGREE:
            raise caps.CapExceeded(f"field F_{p}^{k} exceeds the default caps (p <= {caps.MAX_PRIME}, k <= {caps.MAX_DEGREE})")
        self.p, self.k, self.q = p, k, p**k
        self.modulus = _lex_smallest_irreducible(_PolyRing(_PrimeField(p)), p, k)

    def __repr__(self) -> str:
        return f"FqSpec(p={self.p}, k={self.k})"

    def __reduce__(self):
        return make_field, (self.p, self.k)

    # digit encoding
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def encode(self, digits: Sequence[int]) -> int:
        out = 0
        for d in reversed(list(digits)[: self.k]):
            out = out * self.p + d % self.p
        return out

    @cached_property
    def _tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            g = next(g for g in range(1, p) if all(pow(g, (p - 1) // r, p) != 1 for r in prime_factors(p - 1))) if p > 2 else 1
            exp = [pow(g, i, p) for i in range(q - 1)]
        else:
            R = _PolyRing(_PrimeField(p))
            mod = list(self.modulus)

            def pmul(a, b):
                return R.mod(R.mul(self.digits(a), self.digits(b)), mod)

            g = None
            for cand in range(p, q):
                # order test on the candidate by repeated squaring
                ok = True
                for r in prime_factors(q - 1):
                    if self.encode(R.powmod(self.digits(cand), (q - 1) // r, mod) or [0]) == 1:
                        ok = False
                        break
                if ok:
                    g = cand
                    break
            assert g is not None
            exp = [1]
            for _ in range(q - 2):
                exp.append(self.encode(pmul(exp[-1], g) or [0]))
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        return exp, log

    @cached_property
    def _add_table(self):
        q, p = self.q, self.p
        if self.k == 1:
            return None
        dig = [self.digits(a) for a in range(q)]
        return [[self.encode([(x + y) % p for x, y in zip(dig[a], dig[b])]) for b in range(q)] for a in range(q)]

    @cached_property
    def _neg_table(self):
        return [self.encode([(-x) % self.p for x in self.digits(a)]) for a in range(self.q)]

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._add_table[a][b]

    def neg(self, a: int) -> int:
        return (-a) % self.p if self.k == 1 else self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables
        return exp[(-log[a]) % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        exp, log = self._tables
        return exp[(log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    @cached_property
    def _trace_table(self) -> list[int]:
        out = []
        for a in range(self.q):
            t, x = 0, a
            for _ in range(self.k):
                t = self.add(t, x)
                x = self.frobenius(x)
            assert t < self.p
            out.append(t)
        return out

    def trace(self, a: int) -> int:
        """Tr_{F_q/F_p}(a) as an integer in range(p)."""
        return a % self.p if self.k == 1 else self._trace_table[a]

    def from_int(self, n: int) -> int:
        return n % self.p

    @property
    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def generator(self) -> int:
        return self._tables[0][1] if self.q > 2 else 1


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FqSpec:
    return FqSpec(p, k)


def field_of_order(q: int) -> FqSpec:
    p, k = prime_power(q)
    return make_field(p, k)


# Cyclotomic integers


@dataclass(frozen=True)
class CycInt:
    """sum_j a_j zeta_p^j in the basis zeta^0 .. zeta^(p-2)."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError("CycInt needs p-1 coefficients")

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, e: int = 1) -> "CycInt":
        h = [0] * p
        h[e % p] = 1
        return cls.from_histogram(p, h)

    @classmethod
    def from_histogram(cls, p: int, hist: Sequence[int]) -> "CycInt":
        """sum_j hist[j] zeta^j for j in range(p), folded into the canonical basis."""
        top = hist[p - 1]
        return cls(p, tuple(hist[j] - top for j in range(p - 1)))

    def histogram(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _check(self, other: "CycInt") -> None:
        if other.p != self.p:
            raise ValueError(f"cyclotomic mismatch: p={self.p} vs p={other.p}")

    def _lift(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, tuple(other * a for a in self.coeffs))
        self._check(other)
        p = self.p
        h = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        h[(i + j) % p] += a * b
        return CycInt.from_histogram(p, h)

    __rmul__ = __mul__

    def rotate(self, e: int) -> "CycInt":
        """Multiply by zeta^e."""
        p = self.p
        h = [0] * p
        for i, a in enumerate(self.coeffs):
            h[(i + e) % p] += a
        return CycInt.from_histogram(p, h)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def divide(self, d: int) -> "CycInt":
        if any(a % d for a in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {d}")
        return CycInt(self.p, tuple(a // d for a in self.coeffs))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(a * z**j for j, a in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for j, a in enumerate(self.coeffs):
            if a:
                terms.append(str(a) if j == 0 else f"{a}*z^{j}")
        return " + ".join(terms) if terms else "0"


def psi(F: FqSpec, x: int) -> CycInt:
    """The additive character zeta_p^Tr(x)."""
    return CycInt.zeta(F.p, F.trace(x))


def character_sum(F: FqSpec, values: Iterable[int]) -> CycInt:
    h = [0] * F.p
    for v in values:
        h[F.trace(v)] += 1
    return CycInt.from_histogram(F.p, h)


# Linear algebra over F_q


def rref(F: FqSpec, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(F: FqSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[0]) if rows else 0


def span_basis(F: FqSpec, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    return rref(F, rows)[0] if rows else []


def nullspace(F: FqSpec, A: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis of {x : A x = 0}."""
    if ncols is None:
        ncols = len(A[0])
    if not A:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(F, A)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[f])
        out.append(v)
    return out


def intersect(F: FqSpec, U: Sequence[Sequence[int]], V: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of span(U) ∩ span(V)."""
    if not U or not V:
        return []
    n = len(U[0])
    # a U = b V  <=>  (a, -b) in the left kernel of [U; V]
    M = [list(u) for u in U] + [[F.neg(x) for x in v] for v in V]
    cols = [[M[i][j] for i in range(len(M))] for j in range(n)]
    ker = nullspace(F, cols, len(M))
    vecs = []
    for k in ker:
        a = k[: len(U)]
        w = [0] * n
        for c, u in zip(a, U):
            if c:
                w = [F.add(x, F.mul(c, y)) for x, y in zip(w, u)]
        vecs.append(w)
    return span_basis(F, vecs)


def combine(F: FqSpec, coeffs: Sequence[int], basis: Sequence[Sequence[int]]) -> list[int]:
    n = len(basis[0])
    out = [0] * n
    for c, b in zip(coeffs, basis):
        if c:
            out = [F.add(x, F.mul(c, y)) for x, y in zip(out, b)]
    return out


def span_elements(F: FqSpec, basis: Sequence[Sequence[int]], n: int | None = None, cap: int | None = None):
    """Every vector in the span of the (independent) basis."""
    if n is None:
        n = len(basis[0]) if basis else 0
    caps.check(F.q ** len(basis), caps.enumeration_cap(cap), "subspace enumeration")
    if not basis:
        yield (0,) * n
        return
    for coeffs in itertools.product(range(F.q), repeat=len(basis)):
        yield tuple(combine(F, coeffs, basis))


# Relative extensions E = F[y]/(g)


class ExtField:
    """F_{q^d} as d-tuples over a base field F_q (power basis of a fixed root)."""

    def __init__(self, base: FqSpec, d: int):
        if d < 1:
            raise ValueError("extension degree must be at least 1")
        self.base, self.d = base, d
        if d == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = _lex_smallest_irreducible(_PolyRing(base), base.q, d)
        self._ring = _PolyRing(base)

    def __repr__(self) -> str:
        return f"ExtField(q={self.base.q}, d={self.d})"

    @property
    def size(self) -> int:
        return self.base.q**self.d

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.d

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.d - 1)

    def embed(self, a: int) -> tuple[int, ...]:
        return (a,) + (0,) * (self.d - 1)

    def add(self, x, y):
        F = self.base
        return tuple(F.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        F = self.base
        return tuple(F.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(self.base.neg(a) for a in x)

    def scale(self, c: int, x):
        return tuple(self.base.mul(c, a) for a in x)

    def mul(self, x, y):
        if self.d == 1:
            return (self.base.mul(x[0], y[0]),)
        r = self._ring.mod(self._ring.mul(list(x), list(y)), list(self.modulus))
        return tuple(r) + (0,) * (self.d - len(r))

    def power(self, x, e: int):
        out, base = self.one(), x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, x):
        if not any(x):
            raise ZeroDivisionError("inverse of zero")
        return self.power(x, self.size - 2)

    def elements(self):
        return itertools.product(range(self.base.q), repeat=self.d)

    @cached_property
    def frobenius_matrix(self) -> list[list[int]]:
        """Column j holds the coordinates of (y^j)^q."""
        cols = [self.power(tuple(int(i == j) for i in range(self.d)), self.base.q) for j in range(self.d)]
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]

    def apply(self, M, x):
        F = self.base
        out = []
        for row in M:
            acc = 0
            for a, b in zip(row, x):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def frobenius(self, x, times: int = 1):
        for _ in range(times % self.d if self.d else 0):
            x = self.apply(self.frobenius_matrix, x)
        return x

    def mult_matrix(self, x) -> list[list[int]]:
        """Matrix of y -> x*y on the power basis (columns are images)."""
        cols = [self.mul(x, tuple(int(i == j) for i in range(self.d))) for j in range(self.d)]
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]

    @cached_property
    def _basis_traces(self) -> tuple[int, ...]:
        F = self.base
        out = []
        for j in range(self.d):
            M = self.mult_matrix(tuple(int(i == j) for i in range(self.d)))
            t = 0
            for i in range(self.d):
                t = F.add(t, M[i][i])
            out.append(t)
        return tuple(out)

    def trace(self, x) -> int:
        """Tr_{E/F}(x), F_q-linear."""
        F = self.base
        t = 0
        for a, b in zip(x, self._basis_traces):
            if a and b:
                t = F.add(t, F.mul(a, b))
        return t

    def in_base(self, x) -> bool:
        return not any(x[1:])


def coset_character(E: ExtField, x) -> CycInt:
    """psi of the second coordinate in the basis {1, beta} of a quadratic extension."""
    if E.d != 2:
        raise ValueError("coset character needs a quadratic extension")
    return psi(E.base, x[1])

"""Exact polynomial machinery: Gram characteristic polynomials, Sylvester
resultants over Gaussian rationals, and sparse multivariate polynomials with
rational coefficients.

Everything symbolic here is exact -- coefficients are fractions.Fraction,
determinants are fraction-free Bareiss eliminations, and the resultant is an
exact rational determinant even when handed floating-point coefficients
(every float is a rational).  The symbolic Gram work is done in the real
coefficient ring only, which keeps all coefficients integral.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractError, ShapeError, SymbolicSizeError
from .linalg import svd_values
from .sampling import random_upper_toeplitz, rng_from
from .toeplitz import embed

__all__ = [
    "UniPoly",
    "char_gram_poly",
    "sylvester_matrix",
    "sylvester_resultant",
    "resultant_isometry_test",
    "SparsePoly",
    "sym_gram",
    "sym_char_coeffs",
    "pure_power_check",
    "PurePowerReport",
    "SYMBOLIC_CAP",
]

SYMBOLIC_CAP = 6


class UniPoly:
    """Univariate polynomial, coefficients in ascending degree, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def norm1(self):
        return float(sum(abs(complex(c)) for c in self.coeffs))

    @classmethod
    def from_roots(cls, roots):
        """Monic polynomial with the given roots, expanded by convolution."""
        coeffs = [1.0]
        for r in roots:
            nxt = [0.0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += -r * c
                nxt[i + 1] += c
            coeffs = nxt
        return cls(coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"


def char_gram_poly(A):
    """det(lambda I - A*A) as a monic UniPoly; roots are the squared singular values."""
    s = svd_values(A)
    return UniPoly.from_roots([float(v) ** 2 for v in s])


class _GaussRat:
    """Gaussian rational a + b i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def of(cls, z):
        if isinstance(z, _GaussRat):
            return z
        if isinstance(z, complex):
            return cls(Fraction(z.real), Fraction(z.imag))
        return cls(Fraction(z))

    def __add__(self, o):
        return _GaussRat(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return _GaussRat(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return _GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        d = o.re * o.re + o.im * o.im
        return _GaussRat(
            (self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d
        )

    def __neg__(self):
        return _GaussRat(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def to_complex(self):
        return complex(float(self.re), float(self.im))


def _det_exact(rows):
    # Exact Gaussian elimination over the Gaussian rationals.
    n = len(rows)
    M = [list(r) for r in rows]
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return _GaussRat(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            if M[i][k]:
                f = M[i][k] / M[k][k]
                for j in range(k, n):
                    M[i][j] = M[i][j] - f * M[k][j]
    det = _GaussRat(sign)
    for k in range(n):
        det = det * M[k][k]
    return det


def sylvester_matrix(f, g):
    """Sylvester matrix, the first deg(g) rows carrying the coefficients of f."""
    df, dg = f.degree, g.degree
    if df < 1 or dg < 1:
        raise ContractError("resultant needs both degrees at least 1")
    size = df + dg
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    rows = []
    for i in range(dg):
        row = [0] * size
        row[i : i + df + 1] = fd
        rows.append(row)
    for i in range(df):
        row = [0] * size
        row[i : i + dg + 1] = gd
        rows.append(row)
    return rows


def sylvester_resultant(f, g):
    """Resultant of f and g: the exact Sylvester determinant.

    Vanishes exactly when f and g share a factor of positive degree.  The
    arithmetic is exact over Gaussian rationals regardless of the input
    coefficient types; the return value is a Fraction when all inputs are
    rational (int/Fraction) with a real result, a complex otherwise.
    """
    rows = sylvester_matrix(f, g)
    exact_in = all(
        not isinstance(c, (float, complex)) for c in f.coeffs + g.coeffs
    )
    det = _det_exact([[_GaussRat.of(c) for c in row] for row in rows])
    if exact_in and det.im == 0:
        return det.re
    return det.to_complex()


def resultant_isometry_test(phi, samples, seed):
    """Max normalized |Res| between the Gram polynomials of A and phi(A).

    For an isometry the two polynomials coincide up to rounding and the
    resultant collapses.  The statistic is |Res| over the coefficient-norm
    bound ||f||_1^deg(g) * ||g||_1^deg(f), taken to the 1/(deg f + deg g)
    power: the resultant has total degree deg f + deg g in the joint
    coefficients, so the root makes the value dimensionless AND stable in the
    matrix size (a raw ratio decays combinatorially with the degree, which
    would defeat any fixed threshold).
    """
    if samples < 1:
        raise ContractError("need at least one sample")
    rng = rng_from(seed)
    worst = 0.0
    for _ in range(samples):
        A = random_upper_toeplitz(phi.n, rng)
        f = char_gram_poly(embed(A))
        g = char_gram_poly(phi.apply(A))
        r = abs(sylvester_resultant(f, g))
        scale = f.norm1() ** g.degree * g.norm1() ** f.degree
        worst = max(worst, (float(r) / scale) ** (1.0 / (f.degree + g.degree)))
    return worst


def _grlex_key(expts):
    return (sum(expts), expts)


class SparsePoly:
    """Multivariate polynomial over Q: exponent-vector -> Fraction, no zeros stored."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        if nvars < 1:
            raise ShapeError("need at least one variable")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != nvars or any(v < 0 for v in e):
                raise ShapeError(f"bad exponent vector {e} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars, i):
        if not 0 <= i < nvars:
            raise ShapeError("variable index out of range")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return SparsePoly(self.nvars, out)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SparsePoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(self.nvars, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        if k < 0:
            raise ContractError("negative powers are not polynomials")
        out = SparsePoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ShapeError("variable-count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.const(self.nvars, other)
        raise TypeError(f"cannot combine SparsePoly with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(self.nvars, other)
        return (
            isinstance(other, SparsePoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point):
        """Exact value at a rational point."""
        if len(point) != self.nvars:
            raise ShapeError("point length mismatch")
        pt = [Fraction(p) for p in point]
        acc = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            acc += v
        return acc

    def _lead(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def divexact(self, divisor):
        """Exact quotient self / divisor; raises if the division is not exact."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        out = {}
        de, dc = divisor._lead()
        while rem:
            e = max(rem, key=_grlex_key)
            qe = tuple(a - b for a, b in zip(e, de))
            if any(v < 0 for v in qe):
                raise ContractError("division is not exact")
            qc = rem[e] / dc
            out[qe] = qc
            for fe, fc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(qe, fe))
                nv = rem.get(t, Fraction(0)) - qc * fc
                if nv:
                    rem[t] = nv
                else:
                    rem.pop(t, None)
        return SparsePoly(self.nvars, out)

    def pure_powers(self):
        """The monomials x_i^j present (j >= 1): sorted list of (i, j), i 1-based."""
        out = []
        for e in self.terms:
            nz = [(i, v) for i, v in enumerate(e) if v > 0]
            if len(nz) == 1:
                out.append((nz[0][0] + 1, nz[0][1]))
        return sorted(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{i + 1}")
                elif k > 1:
                    factors.append(f"x{i + 1}^{k}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    _TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*)?)?((?:x\d+(?:\^\d+)?(?:\*x\d+(?:\^\d+)?)*))?$")

    @classmethod
    def parse(cls, text, nvars):
        """Parse the canonical text form produced by __str__."""
        s = text.strip()
        if s == "0":
            return cls.zero(nvars)
        s = s.replace("-", "+-").lstrip("+")
        terms = {}
        for chunk in s.split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            neg = chunk.startswith("-")
            if neg:
                chunk = chunk[1:].strip()
            m = cls._TERM_RE.match(chunk.replace(" ", ""))
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ContractError(f"cannot parse term {chunk!r}")
            coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            e = [0] * nvars
            if m.group(2):
                for factor in m.group(2).split("*"):
                    var, _, exp = factor.partition("^")
                    idx = int(var[1:]) - 1
                    if not 0 <= idx < nvars:
                        raise ContractError(f"variable {var} out of range")
                    e[idx] += int(exp) if exp else 1
            key = tuple(e)
            terms[key] = terms.get(key, Fraction(0)) + (-coeff if neg else coeff)
        return cls(nvars, terms)


def _det_bareiss(mat):
    # Fraction-free Bareiss elimination over the polynomial ring; every
    # division is exact by construction.
    n = len(mat)
    M = [list(r) for r in mat]
    nvars = M[0][0].nvars
    sign = 1
    prev = SparsePoly.const(nvars, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if piv is None:
                return SparsePoly.zero(nvars)
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num.divexact(prev)
            M[i][k] = SparsePoly.zero(nvars)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def _det_cofactor(mat):
    # Reference determinant by first-row expansion; used to cross-check Bareiss.
    n = len(mat)
    if n == 1:
        return mat[0][0]
    nvars = mat[0][0].nvars
    acc = SparsePoly.zero(nvars)
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [[mat[i][c] for c in range(n) if c != j] for i in range(1, n)]
        term = mat[0][j] * _det_cofactor(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def sym_gram(n):
    """The Gram matrix A*A for A = sum_k x_k S^{k-1} with real symbolic x.

    Entry (i, j) (0-based, i <= j) is sum_{s=0..i} x_{i-s} x_{j-s}; the matrix
    is symmetric with x1^2 in the corner and x1^2 + ... + xn^2 at the bottom.
    """
    if n < 1:
        raise ContractError("size must be positive")
    xs = [SparsePoly.variable(n, i) for i in range(n)]
    G = [[SparsePoly.zero(n) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = SparsePoly.zero(n)
            for s in range(i + 1):
                acc = acc + xs[i - s] * xs[j - s]
            G[i][j] = acc
            G[j][i] = acc
    return G


def sym_char_coeffs(n, cap=SYMBOLIC_CAP):
    """Exact coefficients r_0(x), ..., r_n(x) of det(lambda I - A*A).

    r_n = 1 and r_0 = (-1)^n x1^(2n); each r_k is (-1)^(n-k) times the sum of
    principal (n-k)-minors of the Gram matrix.  Computed by fraction-free
    Bareiss elimination with lambda adjoined as an extra variable.
    """
    if n > cap:
        raise SymbolicSizeError(f"symbolic size {n} exceeds the cap {cap}")
    G = sym_gram(n)
    nv = n + 1  # variable 0 is lambda, variables 1..n are x1..xn
    lam = SparsePoly.variable(nv, 0)

    def lift(p):
        return SparsePoly(nv, {(0,) + e: c for e, c in p.terms.items()})

    B = [[(lam if i == j else SparsePoly.zero(nv)) - lift(G[i][j]) for j in range(n)] for i in range(n)]
    det = _det_bareiss(B)
    coeffs = [dict() for _ in range(n + 1)]
    for e, c in det.terms.items():
        coeffs[e[0]][e[1:]] = c
    return [SparsePoly(n, t) for t in coeffs]


@dataclass(frozen=True)
class PurePowerRow:
    k: int
    expected: tuple
    found: tuple
    ok: bool


@dataclass(frozen=True)
class PurePowerReport:
    """Which pure powers x_i^j occur in each characteristic coefficient.

    For coefficient k the expected census is exactly x_1, ..., x_{k+1} to the
    power 2(n-k), and nothing else; the check is exact (no tolerance).
    """

    n: int
    rows: tuple

    @property
    def ok(self):
        return all(r.ok for r in self.rows)


def pure_power_check(n, cap=SYMBOLIC_CAP):
    """Exact census of pure-power monomials in the Gram characteristic coefficients."""
    coeffs = sym_char_coeffs(n, cap)
    rows = []
    for k, poly in enumerate(coeffs):
        j = 2 * (n - k)
        expected = tuple((i, j) for i in range(1, k + 2)) if j > 0 else ()
        found = tuple(poly.pure_powers())
        rows.append(PurePowerRow(k, expected, found, found == expected))
    return PurePowerReport(n, tuple(rows))

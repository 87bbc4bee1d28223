"""Exact arithmetic kernel: Gaussian rationals, integer lattice algebra,
rational inequality feasibility, and minimal polynomials of Q(i)-matrices.

Scalars are Fraction-backed so every comparison in the rest of the package
is an exact algebraic identity; nothing here ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

class GaussRational:
    """An element of Q(i), kept as a pair of Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def conjugate(self):
        return GaussRational(self.re, -self.im)

    def inverse(self):
        return ONE / self

    def norm(self):
        """re^2 + im^2 as a Fraction."""
        return self.re * self.re + self.im * self.im

    # comparisons -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussRational(other)
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gauss(self)


def _coerce(x):
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(x)
    raise TypeError(f"cannot coerce {x!r} to GaussRational")


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


def format_gauss(g):
    """Canonical literal: '3/2', 'i', '-2i', '1+1/2i', '1-i'."""
    if g.im == 0:
        return str(g.re)
    if g.im == 1:
        imtxt = "i"
    elif g.im == -1:
        imtxt = "-i"
    else:
        imtxt = f"{g.im}i"
    if g.re == 0:
        return imtxt
    if not imtxt.startswith("-"):
        imtxt = "+" + imtxt
    return f"{g.re}{imtxt}"


def parse_gauss(text):
    """Parse a Gaussian-rational literal; inverse of format_gauss.

    Accepts optional surrounding parentheses and whitespace.
    """
    from .errors import ParseError

    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ParseError(f"empty Gaussian-rational literal {text!r}")
    try:
        if "i" not in s:
            return GaussRational(Fraction(s))
        split = None
        for k in range(1, len(s)):
            if s[k] in "+-" and s[k - 1] not in "/+-":
                split = k
        if split is None:
            re_part, im_part = "0", s
        else:
            re_part, im_part = s[:split], s[split:]
        if not im_part.endswith("i"):
            raise ValueError("imaginary part must end in i")
        coef = im_part[:-1]
        if coef in ("", "+"):
            im = Fraction(1)
        elif coef == "-":
            im = Fraction(-1)
        else:
            im = Fraction(coef)
        return GaussRational(Fraction(re_part), im)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad Gaussian-rational literal {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# Integer matrices (lists of lists of python ints)
# ---------------------------------------------------------------------------

def int_identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def int_matmul(a, b):
    if not a:
        return []
    nb = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(nb)]
            for i in range(len(a))]


def int_transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols)] if ncols else []
    return [list(col) for col in zip(*a)]


def int_det(m):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _row_op(a, u, i, j, q):
    # a[i] -= q * a[j], mirrored on the transform u
    if q == 0:
        return
    a[i] = [x - q * y for x, y in zip(a[i], a[j])]
    u[i] = [x - q * y for x, y in zip(u[i], u[j])]


def hnf(m):
    """Row Hermite normal form.

    Returns (h, u) with u unimodular and h = u*m; pivots positive, entries
    above each pivot reduced into [0, pivot).
    """
    a = [list(row) for row in m]
    nr = len(a)
    u = int_identity(nr)
    r = 0
    ncols = len(a[0]) if nr else 0
    for c in range(ncols):
        if r >= nr:
            break
        while True:
            nz = [i for i in range(r, nr) if a[i][c] != 0]
            if not nz:
                pivot = None
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            for i in nz:
                if i != i0:
                    _row_op(a, u, i, i0, a[i][c] // a[i0][c])
            nz = [i for i in range(r, nr) if a[i][c] != 0]
            if len(nz) == 1:
                pivot = nz[0]
                break
        if pivot is None:
            continue
        if pivot != r:
            a[r], a[pivot] = a[pivot], a[r]
            u[r], u[pivot] = u[pivot], u[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            _row_op(a, u, i, r, a[i][c] // a[r][c])
        r += 1
    return a, u


def kernel_basis(rows, ncols):
    """Z-basis of {x in Z^ncols : x . rows^T = 0}; the basis is saturated."""
    t = int_transpose(rows, ncols=ncols) if rows else [[] for _ in range(ncols)]
    h, u = hnf(t)
    return [list(u[i]) for i, row in enumerate(h) if all(v == 0 for v in row)]


def lattice_solve(basis_rows, target):
    """Integer x with x . basis_rows = target, or None.

    basis_rows need not be in any normal form.
    """
    if not basis_rows:
        return [] if all(v == 0 for v in target) else None
    h, u = hnf(basis_rows)
    n = len(target)
    # forward-substitute target against the HNF rows
    y = [0] * len(h)
    residual = list(target)
    for i, row in enumerate(h):
        piv = next((j for j, v in enumerate(row) if v != 0), None)
        if piv is None:
            continue
        if residual[piv] % row[piv] != 0:
            return None
        q = residual[piv] // row[piv]
        y[i] = q
        residual = [residual[j] - q * row[j] for j in range(n)]
    if any(v != 0 for v in residual):
        return None
    # x . basis = y . h = (y . u) . basis
    return [sum(y[i] * u[i][k] for i in range(len(h))) for k in range(len(basis_rows))]


def int_inverse_unimodular(m):
    """Inverse of an integer matrix with det +-1, as an integer matrix."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        f = a[c][c]
        a[c] = [v / f for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                g = a[i][c]
                a[i] = [v - g * w for v, w in zip(a[i], a[c])]
    inv = [[a[i][n + j] for j in range(n)] for i in range(n)]
    out = [[int(v) for v in row] for row in inv]
    if any(Fraction(out[i][j]) != inv[i][j] for i in range(n) for j in range(n)):
        raise ValueError("matrix is not unimodular")
    return out


# ---------------------------------------------------------------------------
# Rational linear feasibility (Fourier-Motzkin)
# ---------------------------------------------------------------------------

def _normalize_constraint(coeffs, bound, strict):
    scale = None
    for v in coeffs:
        if v != 0:
            scale = abs(v)
            break
    if scale is None:
        scale = abs(bound) if bound != 0 else Fraction(1)
    return (tuple(v / scale for v in coeffs), bound / scale, strict)


def fm_eliminate(system, nvars, k):
    """Remove variable k from the system, returning the projected system."""
    lowers, uppers, rest = [], [], []
    for (c, b, s) in system:
        if c[k] > 0:
            lowers.append((c, b, s))
        elif c[k] < 0:
            uppers.append((c, b, s))
        else:
            rest.append((c, b, s))
    seen = set()
    out = []
    for item in rest:
        key = _normalize_constraint(*item)
        if key not in seen:
            seen.add(key)
            out.append(item)
    for (cl, bl, sl) in lowers:
        for (cu, bu, su) in uppers:
            lam, mu = -cu[k], cl[k]
            cc = tuple(lam * cl[j] + mu * cu[j] for j in range(nvars))
            bb = lam * bl + mu * bu
            item = (cc, bb, sl or su)
            key = _normalize_constraint(*item)
            if key not in seen:
                seen.add(key)
                out.append(item)
    return out, lowers, uppers


def linear_feasible(ineqs, nvars):
    """Exact witness for the system {coeffs . x >= bound (strict: >)}.

    Returns a list of Fractions or None when the system is infeasible.
    """
    system = [(tuple(Fraction(v) for v in c), Fraction(b), bool(s)) for (c, b, s) in ineqs]
    layers = []
    for k in range(nvars - 1, -1, -1):
        system, lowers, uppers = fm_eliminate(system, nvars, k)
        layers.append((k, lowers, uppers))
    for (c, b, s) in system:
        if b > 0 or (s and b == 0):
            return None
    x = [Fraction(0)] * nvars
    for (k, lowers, uppers) in reversed(layers):
        lo = hi = None
        lo_strict = hi_strict = False
        for (c, b, s) in lowers:
            val = (b - sum(c[j] * x[j] for j in range(nvars) if j != k)) / c[k]
            if lo is None or val > lo:
                lo, lo_strict = val, s
            elif val == lo:
                lo_strict = lo_strict or s
        for (c, b, s) in uppers:
            val = (b - sum(c[j] * x[j] for j in range(nvars) if j != k)) / c[k]
            if hi is None or val < hi:
                hi, hi_strict = val, s
            elif val == hi:
                hi_strict = hi_strict or s
        if lo is None and hi is None:
            v = Fraction(0)
        elif hi is None:
            v = lo + 1 if lo_strict else lo
        elif lo is None:
            v = hi - 1 if hi_strict else hi
        elif lo == hi:
            v = lo
        else:
            v = (lo + hi) / 2
        x[k] = v
    return x


def fm_interval(ineqs, nvars, var):
    """Exact projection of the solution set onto one coordinate.

    Returns (lo, hi) where either end is None when unbounded in that
    direction.  Assumes the system is feasible.
    """
    system = [(tuple(Fraction(v) for v in c), Fraction(b), bool(s)) for (c, b, s) in ineqs]
    for k in range(nvars):
        if k != var:
            system, _, _ = fm_eliminate(system, nvars, k)
    lo = hi = None
    for (c, b, s) in system:
        ck = c[var]
        if ck > 0:
            val = b / ck
            if lo is None or val > lo:
                lo = val
        elif ck < 0:
            val = b / ck
            if hi is None or val < hi:
                hi = val
    return lo, hi


# ---------------------------------------------------------------------------
# Matrices over Q(i)
# ---------------------------------------------------------------------------

def qim_from_rows(rows):
    return [[_coerce(v) for v in row] for row in rows]


def qim_identity(r):
    return [[ONE if i == j else ZERO for j in range(r)] for i in range(r)]


def qim_zero(r):
    return [[ZERO] * r for _ in range(r)]


def qim_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def qim_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def qim_scale(c, a):
    c = _coerce(c)
    return [[c * x for x in row] for row in a]


def qim_mul(a, b):
    r = len(a)
    n = len(b)
    m = len(b[0]) if n else 0
    out = []
    for i in range(r):
        row = []
        for j in range(m):
            acc = ZERO
            for k in range(n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def qim_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def qim_is_zero(a):
    return all(not x for row in a for x in row)


def qim_flatten(a):
    return [x for row in a for x in row]


def qim_rank(a):
    rows = [list(r) for r in a]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        f = rows[rank][c]
        rows[rank] = [v / f for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                g = rows[i][c]
                rows[i] = [v - g * w for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def qim_is_idempotent(a):
    return qim_eq(qim_mul(a, a), a)


def qi_solve(columns, target):
    """Coefficients x with sum x_j columns[j] = target over Q(i), or None."""
    if not columns:
        return [] if all(not v for v in target) else None
    dim = len(target)
    # echelon rows: (pivot, vector); combos[i] expresses echelon vector i
    # as a combination of the original columns
    echelon = []
    combos = []
    for j, col in enumerate(columns):
        vec = list(col)
        combo = {j: ONE}
        for idx in range(len(echelon)):
            piv, evec = echelon[idx]
            if vec[piv]:
                f = vec[piv] / evec[piv]
                vec = [v - f * w for v, w in zip(vec, evec)]
                for k, c in combos[idx].items():
                    combo[k] = combo.get(k, ZERO) - f * c
        piv = next((i for i in range(dim) if vec[i]), None)
        if piv is not None:
            echelon.append((piv, vec))
            combos.append(combo)
    # reduce target
    vec = list(target)
    combo = {}
    for idx in range(len(echelon)):
        piv, evec = echelon[idx]
        if vec[piv]:
            f = vec[piv] / evec[piv]
            vec = [v - f * w for v, w in zip(vec, evec)]
            for k, c in combos[idx].items():
                combo[k] = combo.get(k, ZERO) + f * c
    if any(v for v in vec):
        return None
    return [combo.get(j, ZERO) for j in range(len(columns))]


def qi_nullspace(columns, dim):
    """Basis of {x : sum x_j columns[j] = 0} over Q(i)."""
    ncols = len(columns)
    # row reduce the dim x ncols matrix
    rows = [[columns[j][i] for j in range(ncols)] for i in range(dim)]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, dim) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        f = rows[rank][c]
        rows[rank] = [v / f for v in rows[rank]]
        for i in range(dim):
            if i != rank and rows[i][c]:
                g = rows[i][c]
                rows[i] = [v - g * w for v, w in zip(rows[i], rows[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [ZERO] * ncols
        x[fcol] = ONE
        for i, pcol in enumerate(pivots):
            x[pcol] = -rows[i][fcol]
        basis.append(x)
    return basis


def solve_corner_inverse(e, a):
    """X with X a = a X = e and e X e = X, or None if no such X exists."""
    r = len(e)
    n = r * r
    rows = []
    rhs = []

    def unknown(i, j):
        return i * r + j

    # X a = e and a X = e
    for i in range(r):
        for j in range(r):
            row = [ZERO] * n
            for k in range(r):
                row[unknown(i, k)] = row[unknown(i, k)] + a[k][j]
            rows.append(row)
            rhs.append(e[i][j])
            row = [ZERO] * n
            for k in range(r):
                row[unknown(k, j)] = row[unknown(k, j)] + a[i][k]
            rows.append(row)
            rhs.append(e[i][j])
    # X = e X e
    for i in range(r):
        for j in range(r):
            row = [ZERO] * n
            row[unknown(i, j)] = ONE
            for k in range(r):
                for l in range(r):
                    row[unknown(k, l)] = row[unknown(k, l)] - e[i][k] * e[l][j]
            rows.append(row)
            rhs.append(ZERO)
    columns = [[rows[m][v] for m in range(len(rows))] for v in range(n)]
    sol = qi_solve(columns, rhs)
    if sol is None:
        return None
    return [[sol[unknown(i, j)] for j in range(r)] for i in range(r)]


# ---------------------------------------------------------------------------
# Polynomials over Q(i) and minimal polynomials
# ---------------------------------------------------------------------------

def minimal_polynomial(a):
    """Monic minimal polynomial of a square Q(i)-matrix.

    Coefficients are returned low degree first, with a trailing ONE.
    """
    r = len(a)
    dim = r * r
    echelon = []  # (pivot, flat vector, poly coeffs low->high)
    power = qim_identity(r)
    k = 0
    while True:
        vec = qim_flatten(power)
        poly = [ZERO] * k + [ONE]
        for (piv, evec, epoly) in echelon:
            if vec[piv]:
                f = vec[piv] / evec[piv]
                vec = [v - f * w for v, w in zip(vec, evec)]
                poly = [p - f * q for p, q in
                        zip(poly + [ZERO] * (len(epoly) - len(poly)),
                            epoly + [ZERO] * (len(poly) - len(epoly)))]
        piv = next((i for i in range(dim) if vec[i]), None)
        if piv is None:
            while poly and not poly[-1]:
                poly.pop()
            return poly
        echelon.append((piv, vec, poly))
        power = qim_mul(power, a)
        k += 1
        if k > dim + 1:  # unreachable; Cayley-Hamilton bounds the degree
            raise RuntimeError("minimal polynomial search failed to terminate")


def poly_eval_matrix(poly, a):
    r = len(a)
    acc = qim_zero(r)
    power = qim_identity(r)
    for c in poly:
        acc = qim_add(acc, qim_scale(c, power))
        power = qim_mul(power, a)
    return acc


def poly_eval(poly, x):
    acc = ZERO
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def poly_derivative(poly):
    return [GaussRational(k) * poly[k] for k in range(1, len(poly))]


def _poly_trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_divmod(num, den):
    num = _poly_trim(num)
    den = _poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [ZERO] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    while len(rem) >= len(den) and _poly_trim(rem):
        rem = _poly_trim(rem)
        if len(rem) < len(den):
            break
        shift = len(rem) - len(den)
        f = rem[-1] / den[-1]
        quot[shift] = f
        for i, c in enumerate(den):
            rem[shift + i] = rem[shift + i] - f * c
        rem = rem[:-1]
    return _poly_trim(quot), _poly_trim(rem)


def poly_gcd(p, q):
    p, q = _poly_trim(p), _poly_trim(q)
    while q:
        _, r = poly_divmod(p, q)
        p, q = q, r
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def poly_squarefree(p):
    """p / gcd(p, p'), monic."""
    p = _poly_trim(p)
    d = poly_derivative(p)
    g = poly_gcd(p, d)
    if len(g) <= 1:
        lead = p[-1]
        return [c / lead for c in p]
    q, r = poly_divmod(p, g)
    assert not r
    lead = q[-1]
    return [c / lead for c in q]


# --- Gaussian-integer divisor enumeration, for exact root finding ----------

def _gauss_int_divide(a, b):
    """(a / b) in Z[i] if exact, else None; inputs as (x, y) int pairs."""
    bx, by = b
    n = bx * bx + by * by
    ax, ay = a
    rx, ry = ax * bx + ay * by, ay * bx - ax * by
    if rx % n or ry % n:
        return None
    return (rx // n, ry // n)


def _gauss_prime_above(p):
    """A Gaussian prime over the rational prime p (p = 2 or p % 4 == 1)."""
    if p == 2:
        return (1, 1)
    for a in range(1, int(p ** 0.5) + 2):
        b2 = p - a * a
        if b2 < 0:
            break
        b = int(b2 ** 0.5)
        for bb in (b - 1, b, b + 1):
            if bb >= 0 and a * a + bb * bb == p:
                return (a, bb)
    raise ValueError(f"no two-square decomposition for {p}")


def gauss_int_divisors(z):
    """All divisors of z in Z[i], up to and including unit multiples."""
    x, y = z
    if x == 0 and y == 0:
        return []
    norm = x * x + y * y
    primes = []
    n = norm
    d = 2
    while d * d <= n:
        while n % d == 0:
            primes.append(d)
            n //= d
        d += 1
    if n > 1:
        primes.append(n)
    # factor z by trial Gaussian primes derived from the norm primes;
    # inert primes (p % 4 == 3) contribute p^2 to the norm per factor p
    cur = (x, y)
    gfactors = []
    seen_inert = {}
    for p in primes:
        if p % 4 == 3:
            seen_inert[p] = seen_inert.get(p, 0) + 1
            if seen_inert[p] == 2:
                q = _gauss_int_divide(cur, (p, 0))
                assert q is not None
                cur = q
                gfactors.append((p, 0))
                seen_inert[p] = 0
        else:
            pi = _gauss_prime_above(p)
            q = _gauss_int_divide(cur, pi)
            if q is None:
                pi = (pi[0], -pi[1])
                q = _gauss_int_divide(cur, pi)
            assert q is not None
            cur = q
            gfactors.append(pi)
    divisors = {(1, 0)}
    for f in gfactors:
        divisors |= {_gauss_mul(d, f) for d in divisors}
    units = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    return {_gauss_mul(d, u) for d in divisors for u in units}


def _gauss_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def qi_poly_roots(poly):
    """All Q(i) roots of the polynomial, plus the rootless cofactor.

    Returns (roots, remainder) where remainder is the monic factor with no
    Q(i) root (empty list when the polynomial splits completely).
    """
    p = _poly_trim(list(poly))
    if len(p) <= 1:
        return [], []
    roots = []
    while len(p) > 1:
        # strip roots at zero
        if not p[0]:
            roots.append(ZERO)
            p = p[1:]
            continue
        # clear denominators -> Z[i] coefficients
        denom = 1
        for c in p:
            denom = denom * (c.re.denominator * c.im.denominator) // gcd(
                denom, c.re.denominator * c.im.denominator)
        ints = [((c.re * denom), (c.im * denom)) for c in p]
        ints = [(int(a), int(b)) for a, b in ints]
        lead = ints[-1]
        const = ints[0]
        found = None
        for u in gauss_int_divisors(const):
            for w in gauss_int_divisors(lead):
                cand = GaussRational(Fraction(0), Fraction(0))
                wx, wy = w
                nw = wx * wx + wy * wy
                cand = GaussRational(
                    Fraction(u[0] * wx + u[1] * wy, nw),
                    Fraction(u[1] * wx - u[0] * wy, nw),
                )
                if not poly_eval(p, cand):
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        p, r = poly_divmod(p, [-found, ONE])
        assert not r
    if len(p) > 1:
        lead = p[-1]
        p = [c / lead for c in p]
        return roots, p
    return roots, []

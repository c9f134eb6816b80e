"""Exact arithmetic: Gaussian rationals, Laurent-in-t / jet-in-x polynomials, and
square matrices over them.

Everything here is immutable.  A :class:`JetLaurentPoly` with jet order ``N`` is an
element of ``Q(i)[t, 1/t][x] / (x^(N+1))``; terms past ``x^N`` are dropped on
construction, never carried.
"""

from fractions import Fraction
from functools import reduce
from types import MappingProxyType

from .errors import NotDivisibleError, NotInvertibleError, PrecisionError

__all__ = [
    "Scalar",
    "JetLaurentPoly",
    "JetLaurentMatrix",
    "as_scalar",
    "mat_det",
    "mat_invert",
]


def _frac(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Scalar:
    """An element ``re + im*i`` of Q(i) with arbitrary-precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            if im:
                raise TypeError("Scalar real part may not itself be a Scalar with an imaginary part")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def is_real(self):
        return self.im == 0

    def conjugate(self):
        return Scalar(self.re, -self.im)

    def norm(self):
        """``|z|^2`` as a Fraction."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.re / n, -self.im / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = as_scalar(other, strict=False)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __add__(self, other):
        other = as_scalar(other, strict=False)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other, strict=False)
        if other is None:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_scalar(other, strict=False)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return Scalar(a * c)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other, strict=False)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"


ZERO = Scalar(0)
ONE = Scalar(1)


def as_scalar(value, strict=True):
    """Coerce ints, Fractions, ``"p/q"`` strings and Scalars to a Scalar.

    With ``strict=False`` an unsupported type yields ``None`` (used by the
    arithmetic dunders to return ``NotImplemented``).
    """
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, str)) and not isinstance(value, bool):
        return Scalar(value)
    if isinstance(value, bool):
        return Scalar(int(value))
    if strict:
        raise TypeError(f"cannot interpret {value!r} as a Q(i) scalar")
    return None


class JetLaurentPoly:
    """Sparse polynomial in ``t, 1/t`` and ``x``, truncated modulo ``x^(N+1)``.

    ``terms`` maps ``(t_exponent, x_exponent)`` to a nonzero :class:`Scalar`.
    """

    __slots__ = ("_terms", "_jet_order", "_hash")

    def __init__(self, terms=None, jet_order=0):
        if jet_order < 0:
            raise ValueError("jet_order must be nonnegative")
        clean = {}
        for key, coeff in (terms or {}).items():
            te, xe = key
            if xe < 0:
                raise ValueError(f"negative x exponent in term {key}")
            if xe > jet_order:
                continue
            c = as_scalar(coeff)
            if c:
                clean[(int(te), int(xe))] = c
        self._terms = clean
        self._jet_order = jet_order
        self._hash = None

    @classmethod
    def _raw(cls, terms, jet_order):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p._terms = terms
        p._jet_order = jet_order
        p._hash = None
        return p

    @classmethod
    def zero(cls, jet_order=0):
        return cls._raw({}, jet_order)

    @classmethod
    def constant(cls, c, jet_order=0):
        return cls({(0, 0): c}, jet_order)

    @classmethod
    def one(cls, jet_order=0):
        return cls.constant(1, jet_order)

    @classmethod
    def monomial(cls, c=1, t=0, x=0, jet_order=0):
        return cls({(t, x): c}, jet_order)

    @classmethod
    def t_var(cls, jet_order=0):
        return cls.monomial(1, 1, 0, jet_order)

    @classmethod
    def x_var(cls, jet_order=1):
        return cls.monomial(1, 0, 1, jet_order)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    @property
    def jet_order(self):
        return self._jet_order

    def coefficient(self, t_exp, x_exp=0):
        return self._terms.get((t_exp, x_exp), ZERO)

    def sorted_terms(self):
        """Terms ordered by x exponent, then t exponent."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self):
        return len(self._terms) == 1

    def t_exponents(self):
        return {te for te, _ in self._terms}

    def t_range(self):
        """``(min, max)`` t exponent, or ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        exps = [te for te, _ in self._terms]
        return min(exps), max(exps)

    def x_degree(self):
        return max((xe for _, xe in self._terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, JetLaurentPoly):
            if other._jet_order != self._jet_order:
                raise ValueError(
                    f"jet order mismatch: {self._jet_order} vs {other._jet_order}"
                )
            return other
        c = as_scalar(other, strict=False)
        if c is None:
            return None
        return JetLaurentPoly.constant(c, self._jet_order)

    def __eq__(self, other):
        if isinstance(other, JetLaurentPoly):
            return self._jet_order == other._jet_order and self._terms == other._terms
        c = as_scalar(other, strict=False)
        if c is None:
            return NotImplemented
        if not c:
            return not self._terms
        return self._terms == {(0, 0): c}

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._jet_order, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self):
        return JetLaurentPoly._raw({k: -v for k, v in self._terms.items()}, self._jet_order)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return JetLaurentPoly._raw(out, self._jet_order)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = self._jet_order
        out = {}
        for (t1, x1), c1 in self._terms.items():
            for (t2, x2), c2 in other._terms.items():
                xe = x1 + x2
                if xe > n:
                    continue
                k = (t1 + t2, xe)
                s = out.get(k)
                out[k] = c1 * c2 if s is None else s + c1 * c2
        return JetLaurentPoly._raw({k: v for k, v in out.items() if v}, n)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = JetLaurentPoly.one(self._jet_order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return JetLaurentPoly.zero(self._jet_order)
        return JetLaurentPoly._raw({k: v * c for k, v in self._terms.items()}, self._jet_order)

    def shift_t(self, k):
        """Multiply by ``t^k`` (k may be negative)."""
        if k == 0:
            return self
        return JetLaurentPoly._raw(
            {(te + k, xe): c for (te, xe), c in self._terms.items()}, self._jet_order
        )

    def multiply_by_x(self):
        """Multiply by x, keeping the jet order (the top x-term falls off)."""
        n = self._jet_order
        return JetLaurentPoly._raw(
            {(te, xe + 1): c for (te, xe), c in self._terms.items() if xe + 1 <= n}, n
        )

    def divide_by_x(self):
        """Exact division by x; the result is known only modulo ``x^N``.

        Raises :class:`NotDivisibleError` if an ``x^0`` term is present, and
        :class:`PrecisionError` at jet order 0 where nothing of the quotient is known.
        """
        if any(xe == 0 for _, xe in self._terms):
            raise NotDivisibleError()
        if self._jet_order == 0:
            raise PrecisionError()
        return JetLaurentPoly._raw(
            {(te, xe - 1): c for (te, xe), c in self._terms.items()}, self._jet_order - 1
        )

    def at_x_zero(self):
        """Substitute ``x = 0``; the result has jet order 0."""
        return JetLaurentPoly._raw(
            {k: c for k, c in self._terms.items() if k[1] == 0}, 0
        )

    substitute_x_zero = at_x_zero

    def x_coefficient(self, j):
        """The Laurent polynomial multiplying ``x^j`` (jet order 0)."""
        return JetLaurentPoly._raw(
            {(te, 0): c for (te, xe), c in self._terms.items() if xe == j}, 0
        )

    def truncate(self, jet_order):
        """Reduce to a smaller jet order (drops terms past ``x^jet_order``)."""
        if jet_order > self._jet_order:
            raise PrecisionError(
                f"cannot raise jet order from {self._jet_order} to {jet_order}"
            )
        if jet_order == self._jet_order:
            return self
        return JetLaurentPoly._raw(
            {k: c for k, c in self._terms.items() if k[1] <= jet_order}, jet_order
        )

    def embed(self, jet_order):
        """Reinterpret at a larger jet order, treating the data as exact.

        Only meaningful for data that genuinely has no higher x-terms (input
        polynomials); never use it on truncated results.
        """
        if jet_order < self._jet_order:
            return self.truncate(jet_order)
        return JetLaurentPoly._raw(dict(self._terms), jet_order)

    def inverse(self):
        """Inverse modulo ``x^(N+1)``; requires the ``x^0`` part to be ``c*t^m``."""
        lead = self.at_x_zero()
        if not lead.is_monomial():
            raise NotInvertibleError("not a unit: x^0 part is not a single monomial")
        ((m, _), c), = lead._terms.items()
        n = self._jet_order
        inv_lead = JetLaurentPoly._raw({(-m, 0): c.inverse()}, n)
        u = (self - JetLaurentPoly._raw({(m, 0): c}, n)) * inv_lead
        # 1/(1+u) = sum (-u)^k, and u^(N+1) = 0
        total = JetLaurentPoly.one(n)
        power = JetLaurentPoly.one(n)
        for _ in range(n):
            power = power * (-u)
            if not power:
                break
            total = total + power
        return total * inv_lead

    def __repr__(self):
        return f"JetLaurentPoly({self}, N={self._jet_order})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (te, xe), c in self.sorted_terms():
            mono = []
            if xe:
                mono.append("x" if xe == 1 else f"x^{xe}")
            if te:
                mono.append("t" if te == 1 else f"t^{te}")
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append("*".join(mono))
            elif c == -1:
                pieces.append("-" + "*".join(mono))
            else:
                pieces.append(f"{c}*" + "*".join(mono))
        return " + ".join(pieces).replace("+ -", "- ")


class JetLaurentMatrix:
    """Square matrix of :class:`JetLaurentPoly` entries sharing one jet order."""

    __slots__ = ("_rows", "_jet_order", "_hash")

    def __init__(self, rows, jet_order=None):
        rows = [list(r) for r in rows]
        r = len(rows)
        if r == 0 or any(len(row) != r for row in rows):
            raise ValueError("JetLaurentMatrix must be square and nonempty")
        if jet_order is None:
            orders = {e.jet_order for row in rows for e in row if isinstance(e, JetLaurentPoly)}
            if len(orders) > 1:
                raise ValueError(f"entries have mixed jet orders {sorted(orders)}")
            jet_order = orders.pop() if orders else 0
        self._jet_order = jet_order
        self._rows = tuple(tuple(self._entry(e) for e in row) for row in rows)
        self._hash = None

    def _entry(self, e):
        if isinstance(e, JetLaurentPoly):
            if e.jet_order != self._jet_order:
                raise ValueError(
                    f"entry jet order {e.jet_order} differs from matrix jet order {self._jet_order}"
                )
            return e
        return JetLaurentPoly.constant(e, self._jet_order)

    @classmethod
    def _raw(cls, rows, jet_order):
        m = cls.__new__(cls)
        m._rows = rows
        m._jet_order = jet_order
        m._hash = None
        return m

    @classmethod
    def identity(cls, rank, jet_order=0):
        return cls.diagonal([1] * rank, jet_order)

    @classmethod
    def diagonal(cls, entries, jet_order=0):
        r = len(entries)
        z = JetLaurentPoly.zero(jet_order)
        rows = []
        for i, e in enumerate(entries):
            if not isinstance(e, JetLaurentPoly):
                e = JetLaurentPoly.constant(e, jet_order)
            rows.append(tuple(e if j == i else z for j in range(r)))
        return cls._raw(tuple(rows), jet_order)

    @classmethod
    def t_powers(cls, exponents, jet_order=0):
        """``diag(t^e_1, ..., t^e_r)``."""
        return cls.diagonal(
            [JetLaurentPoly.monomial(1, e, 0, jet_order) for e in exponents], jet_order
        )

    @classmethod
    def permutation(cls, perm, jet_order=0):
        """Matrix ``P`` with ``P[i][perm[i]] = 1``, so ``(P @ M)`` row i is row ``perm[i]`` of M."""
        r = len(perm)
        one = JetLaurentPoly.one(jet_order)
        z = JetLaurentPoly.zero(jet_order)
        return cls._raw(
            tuple(tuple(one if j == perm[i] else z for j in range(r)) for i in range(r)),
            jet_order,
        )

    @property
    def rank(self):
        return len(self._rows)

    @property
    def jet_order(self):
        return self._jet_order

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, JetLaurentMatrix):
            return NotImplemented
        return self._jet_order == other._jet_order and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._jet_order, self._rows))
        return self._hash

    def map(self, fn, jet_order=None):
        rows = tuple(tuple(fn(e) for e in row) for row in self._rows)
        if jet_order is None:
            jet_order = rows[0][0].jet_order
        return JetLaurentMatrix._raw(rows, jet_order)

    def _check(self, other):
        if not isinstance(other, JetLaurentMatrix):
            raise TypeError("expected a JetLaurentMatrix")
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        if other._jet_order != self._jet_order:
            raise ValueError(f"jet order mismatch: {self._jet_order} vs {other._jet_order}")

    def __add__(self, other):
        self._check(other)
        return JetLaurentMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self._rows, other._rows)),
            self._jet_order,
        )

    def __sub__(self, other):
        self._check(other)
        return JetLaurentMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self._rows, other._rows)),
            self._jet_order,
        )

    def __neg__(self):
        return self.map(lambda e: -e, self._jet_order)

    def __matmul__(self, other):
        self._check(other)
        r = self.rank
        cols = list(zip(*other._rows))
        z = JetLaurentPoly.zero(self._jet_order)
        out = []
        for row in self._rows:
            new_row = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(tuple(new_row))
        assert len(out) == r
        return JetLaurentMatrix._raw(tuple(out), self._jet_order)

    def __mul__(self, c):
        """Scalar or poly multiple of every entry."""
        if isinstance(c, JetLaurentMatrix):
            return NotImplemented
        return self.map(lambda e: e * c, self._jet_order)

    __rmul__ = __mul__

    def shift_t(self, k):
        return self.map(lambda e: e.shift_t(k), self._jet_order)

    def transpose(self):
        return JetLaurentMatrix._raw(tuple(zip(*self._rows)), self._jet_order)

    def at_x_zero(self):
        return self.map(lambda e: e.at_x_zero(), 0)

    def truncate(self, jet_order):
        return self.map(lambda e: e.truncate(jet_order), jet_order)

    def embed(self, jet_order):
        return self.map(lambda e: e.embed(jet_order), jet_order)

    def submatrix(self, row_idx, col_idx):
        """Rectangular block as a tuple of tuples (not a JetLaurentMatrix)."""
        return tuple(tuple(self._rows[i][j] for j in col_idx) for i in row_idx)

    def t_range(self):
        ranges = [e.t_range() for row in self._rows for e in row if e]
        if not ranges:
            return None
        return min(lo for lo, _ in ranges), max(hi for _, hi in ranges)

    def x_degree(self):
        return max(e.x_degree() for row in self._rows for e in row)

    def is_diagonal(self):
        return all(not e for i, row in enumerate(self._rows) for j, e in enumerate(row) if i != j)

    def det(self):
        return mat_det(self)

    def inverse(self):
        return mat_invert(self)

    def __repr__(self):
        body = "; ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self._rows)
        return f"JetLaurentMatrix([{body}], N={self._jet_order})"


def _minor_det(rows, row_idx, col_idx, zero, memo):
    # Laplace expansion along the first listed row; memoised on the remaining columns.
    key = (row_idx, col_idx)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(row_idx) == 1:
        val = rows[row_idx[0]][col_idx[0]]
    else:
        i, rest = row_idx[0], row_idx[1:]
        val = zero
        for pos, j in enumerate(col_idx):
            a = rows[i][j]
            if not a:
                continue
            sub = _minor_det(rows, rest, col_idx[:pos] + col_idx[pos + 1:], zero, memo)
            if not sub:
                continue
            term = a * sub
            val = val - term if pos % 2 else val + term
    memo[key] = val
    return val


def mat_det(m):
    """Division-free cofactor determinant modulo ``x^(N+1)``."""
    r = m.rank
    return _minor_det(m.rows, tuple(range(r)), tuple(range(r)), JetLaurentPoly.zero(m.jet_order), {})


def _adjugate(m):
    r = m.rank
    n = m.jet_order
    if r == 1:
        return JetLaurentMatrix._raw(((JetLaurentPoly.one(n),),), n)
    zero = JetLaurentPoly.zero(n)
    memo = {}
    idx = tuple(range(r))
    out = [[None] * r for _ in range(r)]
    for i in range(r):
        rows_i = idx[:i] + idx[i + 1:]
        for j in range(r):
            cols_j = idx[:j] + idx[j + 1:]
            c = _minor_det(m.rows, rows_i, cols_j, zero, memo)
            # adj[j][i] = (-1)^(i+j) * minor(i, j)
            out[j][i] = -c if (i + j) % 2 else c
    return JetLaurentMatrix._raw(tuple(tuple(row) for row in out), n)


def unit_determinant(m):
    """Return ``(c, e)`` with ``det(m)|_{x=0} = c*t^e``, else raise NotInvertibleError."""
    d0 = mat_det(m.at_x_zero())
    if not d0.is_monomial():
        raise NotInvertibleError()
    ((e, _), c), = d0.terms.items()
    return c, e


def mat_invert(m):
    """Inverse modulo ``x^(N+1)`` via the adjugate and a power-series inverse of det."""
    unit_determinant(m)
    d_inv = mat_det(m).inverse()
    return _adjugate(m) * d_inv


def product(mats):
    return reduce(lambda a, b: a @ b, mats)


def rational_str(q):
    """Canonical ``p/q`` (or ``p``) string of a Fraction in lowest terms."""
    return str(Fraction(q))


def scalar_pairs(s):
    """``(re, im)`` strings for serialisation."""
    return rational_str(s.re), rational_str(s.im)


def sparse_rank(rows):
    """Rank over Q(i) of a matrix given as ``{column: Scalar}`` dict rows."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = row[col].inverse()
                pivots[col] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
            factor = row[col]
            for c, v in piv.items():
                nv = row.get(c, ZERO) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return rank


def kernel_vector(matrix):
    """A nonzero kernel vector of a dense square Scalar matrix, or ``None``."""
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if n_rows else 0
    a = [[as_scalar(v) for v in row] for row in matrix]
    pivot_cols = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [v * inv for v in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(n_cols) if c not in pivot_cols]
    if not free:
        return None
    f = free[0]
    vec = [ZERO] * n_cols
    vec[f] = ONE
    for row_i, c in enumerate(pivot_cols):
        vec[c] = -a[row_i][f]
    return vec

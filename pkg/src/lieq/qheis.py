"""The q-deformed Heisenberg algebra: q-combinatorics, normal ordering to
the B^m A^n basis, and machine checks for the whole identity zoo.

The algebra has two generators A, B subject to AB - qBA = 1.  Elements are
formal sums of words; normal ordering rewrites AB -> qBA + 1 to a fixpoint,
which terminates because each step either removes an inversion or shortens
the word, and lands every element on the B^m A^n monomial basis.

Identities stated with denominators like (q-1)^n or q^binom(n,2) are
verified in denominator-cleared form: both sides are multiplied by the
denominator monomials first, which is lossless over the polynomial ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .exactnum import (
    GaussRat,
    LaurentPoly,
    LieqError,
    NonDivisible,
    ONE,
    ZERO,
    gauss,
)


class QZero(LieqError):
    """Reciprocal identity evaluated at q = 0."""


# -- q-combinatorics ----------------------------------------------------------


def q_integer(n: int) -> LaurentPoly:
    """{n}_q = 1 + q + ... + q^{n-1}; the empty sum {0}_q is 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return LaurentPoly("q", {l: 1 for l in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    """{n}_q! = {1}_q {2}_q ... {n}_q with {0}_q! = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return LaurentPoly.const(1, "q")
    return q_factorial(n - 1) * q_integer(n)


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial via the Pascal recursion
    {n,k}_q = {n-1,k-1}_q + q^k {n-1,k}_q."""
    if k < 0 or k > n:
        return LaurentPoly.zero("q")
    if k == n or k == 0:
        return LaurentPoly.const(1, "q")
    return q_binomial(n - 1, k - 1) + LaurentPoly.monomial(k) * q_binomial(n - 1, k)


def q_binomial_closed(n: int, k: int) -> LaurentPoly:
    """{n}_q! / ({k}_q! {n-k}_q!) by exact polynomial division; a division
    remainder would mean an implementation bug and raises NonDivisible."""
    if k < 0 or k > n:
        return LaurentPoly.zero("q")
    return q_factorial(n).divexact(q_factorial(k) * q_factorial(n - k))


def q_integer_at(n: int, q0: GaussRat) -> GaussRat:
    """{n}_q evaluated exactly at a scalar."""
    total = ZERO
    power = ONE
    for _ in range(n):
        total = total + power
        power = power * q0
    return total


@dataclass
class ReciprocalReport:
    """Outcome of the 1/q identities at a sample point.

    ``factorial_printed_matches`` evaluates the printed form of the
    factorial identity, whose right side is missing a factorial; it is
    reported, never asserted."""

    n: int
    k: int
    q0: GaussRat
    integer_ok: bool
    factorial_ok: bool
    factorial_printed_matches: bool
    binomial_ok: bool

    def __bool__(self):
        return self.integer_ok and self.factorial_ok and self.binomial_ok


def q_reciprocal_checks(n: int, k: int, q0) -> ReciprocalReport:
    """Check {n}_{1/q} = (q/q^n){n}_q, the corrected factorial version
    {n}_{1/q}! = q^{-binom(n,2)} {n}_q!, and
    {n,k}_{1/q} = q^{-k(n-k)} {n,k}_q, all exactly at q0 != 0."""
    q0 = gauss(q0)
    if not q0:
        raise QZero("reciprocal identities need q != 0")
    qinv = q0.inv()
    int_lhs = q_integer_at(n, qinv)
    int_rhs = (q0 / q0 ** n) * q_integer(n).eval(q0)
    fact_lhs = ONE
    for l in range(1, n + 1):
        fact_lhs = fact_lhs * q_integer_at(l, qinv)
    scale = (q0 ** math.comb(n, 2)).inv()
    fact_rhs = scale * q_factorial(n).eval(q0)
    fact_printed = scale * q_integer(n).eval(q0)
    binom_lhs = q_binomial(n, k).eval(qinv)
    binom_rhs = (q0 ** (k * (n - k))).inv() * q_binomial(n, k).eval(q0)
    return ReciprocalReport(
        n=n,
        k=k,
        q0=q0,
        integer_ok=int_lhs == int_rhs,
        factorial_ok=fact_lhs == fact_rhs,
        factorial_printed_matches=fact_lhs == fact_printed,
        binomial_ok=binom_lhs == binom_rhs,
    )


@dataclass
class SubsetSumReport:
    """Subset expansion of the Gaussian binomial.

    The exponent-shifted form sum_S q^{(sum S) - k(k+1)/2} over k-subsets of
    {1..n} reproduces {n,k}_q; the printed summand 2 q^{sum S} / (k(k+1)) is
    evaluated too and its (generic) mismatch is reported, never asserted."""

    n: int
    k: int
    corrected_matches: bool
    printed_matches: bool
    corrected: LaurentPoly
    printed: LaurentPoly

    def __bool__(self):
        return self.corrected_matches


def subset_sum_binomial_check(n: int, k: int) -> SubsetSumReport:
    import itertools

    corrected = LaurentPoly.zero("q")
    printed = LaurentPoly.zero("q")
    shift = k * (k + 1) // 2
    weight = GaussRat(2) / GaussRat(k * (k + 1)) if k else GaussRat(2)
    for subset in itertools.combinations(range(1, n + 1), k):
        total = sum(subset)
        corrected = corrected + LaurentPoly.monomial(total - shift)
        printed = printed + LaurentPoly.monomial(total, weight)
    target = q_binomial(n, k)
    return SubsetSumReport(
        n=n,
        k=k,
        corrected_matches=corrected == target,
        printed_matches=printed == target,
        corrected=corrected,
        printed=printed,
    )


# -- words, expressions, and normal forms ------------------------------------


class QExpr:
    """Formal linear combination of words with Laurent-polynomial
    coefficients.  Words over {A, B} live in the q-deformed Heisenberg
    algebra; three-letter words over {A, B, C} are used for the free-algebra
    identities and never enter the rewriter."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, object] | None = None):
        clean: dict[str, LaurentPoly] = {}
        for word, coeff in (terms or {}).items():
            poly = _as_poly(coeff)
            if poly.coeffs:
                clean[word] = poly
        self.terms = clean

    @classmethod
    def zero(cls) -> "QExpr":
        return cls({})

    @classmethod
    def unit(cls, coeff=1) -> "QExpr":
        return cls({"": coeff})

    @classmethod
    def word(cls, letters: str, coeff=1) -> "QExpr":
        return cls({letters: coeff})

    def __add__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = out.get(word)
            acc = coeff if acc is None else acc + coeff
            if acc.coeffs:
                out[word] = acc
            else:
                out.pop(word, None)
        return QExpr(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return QExpr({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QExpr):
            out: dict[str, LaurentPoly] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    word = w1 + w2
                    term = c1 * c2
                    acc = out.get(word)
                    acc = term if acc is None else acc + term
                    if acc.coeffs:
                        out[word] = acc
                    else:
                        out.pop(word, None)
            return QExpr(out)
        poly = _as_poly_or_none(other)
        if poly is None:
            return NotImplemented
        return QExpr({w: c * poly for w, c in self.terms.items()})

    def __rmul__(self, other):
        poly = _as_poly_or_none(other)
        if poly is None:
            return NotImplemented
        return QExpr({w: poly * c for w, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative word powers are not defined")
        out = QExpr.unit()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "QExpr(0)"
        bits = [f"({coeff})*{word or 'I'}" for word, coeff in sorted(self.terms.items())]
        return "QExpr(" + " + ".join(bits) + ")"


def _as_poly(value) -> LaurentPoly:
    poly = _as_poly_or_none(value)
    if poly is None:
        raise TypeError(f"bad coefficient {value!r}")
    return poly


def _as_poly_or_none(value) -> LaurentPoly | None:
    if isinstance(value, LaurentPoly):
        return value
    scalar = gauss(value)
    if scalar is None:
        return None
    return LaurentPoly.const(scalar, "q")


def _as_expr(value) -> QExpr | None:
    if isinstance(value, QExpr):
        return value
    poly = _as_poly_or_none(value)
    if poly is None:
        return None
    return QExpr({"": poly})


def A() -> QExpr:
    return QExpr.word("A")


def B() -> QExpr:
    return QExpr.word("B")


def unit() -> QExpr:
    return QExpr.unit()


class NormalForm:
    """Element of the q-deformed Heisenberg algebra written on the monomial
    basis: (m, n) -> coefficient of B^m A^n."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None):
        clean: dict[tuple[int, int], LaurentPoly] = {}
        for key, value in (coeffs or {}).items():
            poly = _as_poly(value)
            if poly.coeffs:
                clean[(int(key[0]), int(key[1]))] = poly
        self.coeffs = clean

    def get(self, m: int, n: int) -> LaurentPoly:
        return self.coeffs.get((m, n), LaurentPoly.zero("q"))

    def to_qexpr(self) -> QExpr:
        return QExpr({"B" * m + "A" * n: poly for (m, n), poly in self.coeffs.items()})

    def evaluate(self, q0) -> "NormalForm":
        q0 = gauss(q0)
        return NormalForm(
            {key: LaurentPoly.const(poly.eval(q0), poly.var) for key, poly in self.coeffs.items()}
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for m, n in sorted(self.coeffs):
            poly = self.coeffs[(m, n)]
            word = ("B^%d" % m if m > 1 else "B" * m) + ("A^%d" % n if n > 1 else "A" * n)
            bits.append(f"({poly})*{word or 'I'}")
        return " + ".join(bits)

    def __repr__(self):
        return f"NormalForm({self})"


class _Rewriter:
    """Memoized fixpoint rewriting AB -> q*BA + 1 on single words."""

    def __init__(self, q_poly: LaurentPoly):
        self.q_poly = q_poly
        self.cache: dict[str, dict[tuple[int, int], LaurentPoly]] = {}

    def word_nf(self, word: str) -> dict[tuple[int, int], LaurentPoly]:
        hit = self.cache.get(word)
        if hit is not None:
            return hit
        idx = word.find("AB")
        if idx < 0:
            # no inversion left: the word is exactly B^m A^n
            m = word.find("A")
            if m < 0:
                m = len(word)
            out = {(m, len(word) - m): LaurentPoly.const(1, "q")}
        else:
            swapped = word[:idx] + "BA" + word[idx + 2 :]
            dropped = word[:idx] + word[idx + 2 :]
            out = {}
            for key, coeff in self.word_nf(swapped).items():
                scaled = self.q_poly * coeff
                if scaled.coeffs:
                    out[key] = scaled
            for key, coeff in self.word_nf(dropped).items():
                acc = out.get(key)
                acc = coeff if acc is None else acc + coeff
                if acc.coeffs:
                    out[key] = acc
                else:
                    out.pop(key, None)
        self.cache[word] = out
        return out


_REWRITERS: dict[tuple, _Rewriter] = {}


def _rewriter_for(q_value) -> _Rewriter:
    if q_value is None:
        key = ("symbolic",)
        poly = LaurentPoly.gen("q")
    else:
        scalar = gauss(q_value)
        if scalar is None:
            raise TypeError(f"bad q value {q_value!r}")
        key = ("at", scalar)
        poly = LaurentPoly.const(scalar, "q")
    rewriter = _REWRITERS.get(key)
    if rewriter is None:
        rewriter = _Rewriter(poly)
        _REWRITERS[key] = rewriter
    return rewriter


def normal_order(expr: QExpr, q_value=None) -> NormalForm:
    """Collect an expression on the B^m A^n basis.

    With q_value None the coefficients stay symbolic Laurent polynomials;
    otherwise q is instantiated exactly at the given scalar before
    rewriting (an honest independent path, used to cross-check
    specialization coherence)."""
    rewriter = _rewriter_for(q_value)
    out: dict[tuple[int, int], LaurentPoly] = {}
    for word, coeff in expr.terms.items():
        if any(ch not in "AB" for ch in word):
            raise ValueError(f"word {word!r} uses letters outside the A, B alphabet")
        if q_value is not None and not coeff.is_constant():
            coeff = LaurentPoly.const(coeff.eval(q_value), "q")
        for key, base in rewriter.word_nf(word).items():
            term = coeff * base
            acc = out.get(key)
            acc = term if acc is None else acc + term
            if acc.coeffs:
                out[key] = acc
            else:
                out.pop(key, None)
    return NormalForm(out)


def verify_identity(lhs: QExpr, rhs: QExpr, q_value=None) -> bool:
    """Equality in the q-deformed Heisenberg algebra via normal forms."""
    return normal_order(lhs, q_value) == normal_order(rhs, q_value)


# -- the identity suite -------------------------------------------------------


def q_mutator(x: QExpr, y: QExpr, q_poly=None) -> QExpr:
    """[x, y]_q = xy - q yx; default symbolic q."""
    if q_poly is None:
        q_poly = LaurentPoly.gen("q")
    return x * y - q_poly * (y * x)


def commutator(x: QExpr, y: QExpr) -> QExpr:
    return x * y - y * x


def verify_powandprod(n: int) -> bool:
    """AB^n = q^n B^n A + {n}_q B^{n-1} and A^n B = q^n B A^n + {n}_q A^{n-1},
    symbolically."""
    if n < 1:
        raise ValueError("n must be positive")
    qn = LaurentPoly.monomial(n)
    first = verify_identity(
        A() * B() ** n,
        qn * (B() ** n * A()) + q_integer(n) * B() ** (n - 1),
    )
    second = verify_identity(
        A() ** n * B(),
        qn * (B() * A() ** n) + q_integer(n) * A() ** (n - 1),
    )
    return first and second


def verify_powandprod_reciprocal(n: int, q0) -> bool:
    """BA^n = q^{-n} A^n B - q^{-1} {n}_{1/q} A^{n-1} and its B^n A twin,
    instantiated exactly at q0 != 0."""
    q0 = gauss(q0)
    if not q0:
        raise QZero("reciprocal power identities need q != 0")
    qinv = q0.inv()
    rec_int = q_integer_at(n, qinv)
    first = verify_identity(
        B() * A() ** n,
        QExpr.unit(qinv ** n) * (A() ** n * B()) - QExpr.unit(qinv * rec_int) * A() ** (n - 1),
        q_value=q0,
    )
    second = verify_identity(
        B() ** n * A(),
        QExpr.unit(qinv ** n) * (A() * B() ** n) - QExpr.unit(qinv * rec_int) * B() ** (n - 1),
        q_value=q0,
    )
    return first and second


def verify_generalized_jacobi(which: str, n: int, m: int | None = None) -> bool:
    """The generalized Jacobi family, in denominator-cleared form.

    bnan:  q^binom(n,2) (q-1)^n B^n A^n = sum_k (-1)^{n-k} q^binom(n-k,2) {n,k}_q [A,B]^k
    anbn:  (q-1)^n A^n B^n = sum_k (-1)^{n-k} q^binom(k+1,2) {n,k}_q [A,B]^k
    bracketBmAn:  [B, B^m A^n] = (1-q^n) B^{m+1} A^n - {n}_q B^m A^{n-1}
    """
    q = LaurentPoly.gen("q")
    bracket_power = commutator(A(), B())
    if which == "bnan":
        lhs = (LaurentPoly.monomial(math.comb(n, 2)) * (q - 1) ** n) * (B() ** n * A() ** n)
        rhs = QExpr.zero()
        for k in range(n + 1):
            coeff = LaurentPoly.monomial(math.comb(n - k, 2), (-1) ** (n - k)) * q_binomial(n, k)
            rhs = rhs + coeff * bracket_power ** k
        return verify_identity(lhs, rhs)
    if which == "anbn":
        lhs = ((q - 1) ** n) * (A() ** n * B() ** n)
        rhs = QExpr.zero()
        for k in range(n + 1):
            coeff = LaurentPoly.monomial(math.comb(k + 1, 2), (-1) ** (n - k)) * q_binomial(n, k)
            rhs = rhs + coeff * bracket_power ** k
        return verify_identity(lhs, rhs)
    if which == "bracketBmAn":
        if m is None:
            raise ValueError("bracketBmAn needs both m and n")
        word = B() ** m * A() ** n
        lhs = B() * word - word * B()
        rhs = (1 - LaurentPoly.monomial(n)) * (B() ** (m + 1) * A() ** n)
        if n >= 1:
            rhs = rhs - q_integer(n) * (B() ** m * A() ** (n - 1))
        return verify_identity(lhs, rhs)
    raise ValueError(f"unknown identity family {which!r}")


def q_zero_products(n: int, m: int) -> NormalForm:
    """Normal order of A^n B^m at q = 0; collapses to a single monomial
    A^{n-m} (n >= m) or B^{m-n}."""
    return normal_order(A() ** n * B() ** m, q_value=0)


def q_zero_expected(n: int, m: int) -> NormalForm:
    if n >= m:
        return NormalForm({(0, n - m): 1})
    return NormalForm({(m - n, 0): 1})


_FREE_ITEMS = ("bilinear", "antisym1", "antisym2", "jacobi1", "jacobi2", "jacobi3")


def free_identity_check(which: str, q0=None) -> bool:
    """q-mutator identities that hold in the FREE associative algebra on
    A, B, C (no Heisenberg relation): expand both sides into words and
    compare coefficients.

    antisym1 involves 1/q and needs q0 != 0 (or symbolic q, the default)."""
    if which not in _FREE_ITEMS:
        raise ValueError(f"unknown free identity {which!r}")
    if q0 is None:
        q = LaurentPoly.gen("q")
        qinv = LaurentPoly.monomial(-1)
    else:
        q0 = gauss(q0)
        if which == "antisym1" and not q0:
            raise QZero("antisym1 requires q != 0")
        q = LaurentPoly.const(q0, "q")
        qinv = LaurentPoly.const(q0.inv(), "q") if q0 else None
    a, b, c = QExpr.word("A"), QExpr.word("B"), QExpr.word("C")
    if which == "bilinear":
        alpha, beta = GaussRat(2), GaussRat(3)
        checks = [
            q_mutator(a + c, b, q) == q_mutator(a, b, q) + q_mutator(c, b, q),
            q_mutator(a, b + c, q) == q_mutator(a, b, q) + q_mutator(a, c, q),
            q_mutator(alpha * a, beta * b, q) == (alpha * beta) * q_mutator(a, b, q),
        ]
        return all(checks)
    if which == "antisym1":
        return q_mutator(a, b, q) == -1 * (q * q_mutator(b, a, qinv))
    if which == "antisym2":
        return q_mutator(b, a, q) == q_mutator(a, b, q) - (1 + q) * commutator(a, b)
    if which == "jacobi1":
        return q_mutator(a * b, c, q) == commutator(a, b * c) + q_mutator(b, c * a, q)
    if which == "jacobi2":
        return q_mutator(a, b * c, q) == q_mutator(a * b, c, q) + q * commutator(c * a, b)
    # jacobi3, with the right side's X, Y, Z read as A, B, C
    lhs = (
        q_mutator(a, q_mutator(b, c, q), q)
        + q_mutator(b, q_mutator(c, a, q), q)
        + q_mutator(c, q_mutator(a, b, q), q)
    )
    cyc = QExpr.word("ABC") + QExpr.word("BCA") + QExpr.word("CAB")
    anti = QExpr.word("ACB") + QExpr.word("BAC") + QExpr.word("CBA")
    rhs = (1 - q) * (cyc - q * anti)
    return lhs == rhs


# -- tiny expression grammar for the command line -----------------------------


class _Tokens:
    def __init__(self, text: str):
        self.items: list[str] = []
        pos = 0
        while pos < len(text):
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch in "ABIq+-*^()":
                self.items.append(ch)
                pos += 1
                continue
            if ch.isdigit():
                start = pos
                while pos < len(text) and (text[pos].isdigit() or text[pos] == "/"):
                    pos += 1
                self.items.append(text[start:pos])
                continue
            raise ValueError(f"bad character {ch!r} in expression")
        self.pos = 0

    def peek(self) -> str | None:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.pos += 1
        return tok


def parse_qexpr(text: str) -> QExpr:
    """Parse the small normalize grammar: letters A, B, I; the parameter q;
    integers and fractions; operators * + - ^ and parentheses."""
    tokens = _Tokens(text)
    expr = _parse_sum(tokens)
    if tokens.peek() is not None:
        raise ValueError(f"trailing input near {tokens.peek()!r}")
    return expr


def _parse_sum(tokens: _Tokens) -> QExpr:
    out = _parse_term(tokens)
    while tokens.peek() in ("+", "-"):
        op = tokens.take()
        term = _parse_term(tokens)
        out = out + term if op == "+" else out - term
    return out


def _parse_term(tokens: _Tokens) -> QExpr:
    out = _parse_factor(tokens)
    while True:
        nxt = tokens.peek()
        if nxt == "*":
            tokens.take()
            out = out * _parse_factor(tokens)
        elif nxt is not None and (nxt in "ABIq(" or nxt[0].isdigit()):
            out = out * _parse_factor(tokens)
        else:
            return out


def _parse_exponent(tokens: _Tokens) -> int:
    sign = 1
    if tokens.peek() == "-":
        tokens.take()
        sign = -1
    tok = tokens.take()
    if not tok.isdigit():
        raise ValueError(f"bad exponent {tok!r}")
    return sign * int(tok)


def _parse_factor(tokens: _Tokens) -> QExpr:
    tok = tokens.take()
    if tok == "-":
        return -_parse_factor(tokens)
    if tok == "(":
        inner = _parse_sum(tokens)
        if tokens.take() != ")":
            raise ValueError("missing closing parenthesis")
        base = inner
    elif tok in ("A", "B"):
        base = QExpr.word(tok)
    elif tok == "I":
        base = QExpr.unit()
    elif tok == "q":
        exp = 1
        if tokens.peek() == "^":
            tokens.take()
            exp = _parse_exponent(tokens)
        return QExpr.unit(LaurentPoly.monomial(exp))
    elif tok[0].isdigit():
        base = QExpr.unit(GaussRat(tok))
    else:
        raise ValueError(f"unexpected token {tok!r}")
    if tokens.peek() == "^":
        tokens.take()
        exp = _parse_exponent(tokens)
        if exp < 0:
            raise ValueError("negative powers only apply to q")
        return base ** exp
    return base

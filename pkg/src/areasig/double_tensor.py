"""Combinations of word-pairs: shuffle on the left, concatenation on the right.

The grading of a pair (p, q) is the length of the right word q, and only the
right side is ever truncated.  Left factors grow without bound during
products, exactly as the product rules require.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import AlphabetMismatch, EmptyWordOperand
from .guard import check_term_budget
from .tensor import (
    EMPTY_WORD,
    TensorElem,
    as_scalar,
    format_word,
    half_shuffle_words,
    r_word,
    shuffle_words,
    words_of_length,
)


def _min_level(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class DoubleTensor:
    """Finite map (left word, right word) -> Fraction with a truncation level.

    level is the right-word length this element is trusted to; None means
    untruncated.  Stored right words never exceed the level.
    """

    __slots__ = ("dim", "level", "_terms")

    def __init__(self, dim: int, terms=None, level=None):
        if dim < 1:
            raise ValueError("alphabet size must be >= 1")
        clean = {}
        for (left, right), coeff in (terms or {}).items():
            coeff = as_scalar(coeff)
            if not coeff:
                continue
            left, right = tuple(left), tuple(right)
            if level is not None and len(right) > level:
                continue
            clean[(left, right)] = coeff
        check_term_budget(len(clean))
        self.dim = dim
        self.level = level
        self._terms = clean

    @classmethod
    def _raw(cls, dim, clean_terms, level):
        check_term_budget(len(clean_terms))
        self = object.__new__(cls)
        self.dim = dim
        self.level = level
        self._terms = clean_terms
        return self

    def coeff(self, left, right) -> Fraction:
        return self._terms.get((tuple(left), tuple(right)), Fraction(0))

    def terms(self):
        """(left, right, coefficient) in (right length, right, left) order."""
        def key(pair):
            left, right = pair
            return (len(right), right, left)

        for left, right in sorted(self._terms, key=key):
            yield left, right, self._terms[(left, right)]

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        _same(self, other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _bump(out, k, c)
        return DoubleTensor._raw(
            self.dim, out, _min_level(self.level, other.level)
        )

    def __sub__(self, other):
        return self + (other * -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        s = as_scalar(scalar)
        if not s:
            return DoubleTensor._raw(self.dim, {}, self.level)
        return DoubleTensor._raw(
            self.dim, {k: c * s for k, c in self._terms.items()}, self.level
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, DoubleTensor)
            and self.dim == other.dim
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def proj_right(self, n: int):
        """Terms whose right word has length exactly n."""
        return DoubleTensor._raw(
            self.dim,
            {k: c for k, c in self._terms.items() if len(k[1]) == n},
            self.level,
        )

    def truncate(self, level: int):
        terms = {k: c for k, c in self._terms.items() if len(k[1]) <= level}
        return DoubleTensor._raw(self.dim, terms, _min_level(self.level, level))

    def right_degree_zero(self):
        return DoubleTensor._raw(
            self.dim,
            {k: c for k, c in self._terms.items() if not k[1]},
            self.level,
        )

    def __repr__(self):
        inner = " + ".join(
            "%s*(%s)x(%s)"
            % (c, format_word(l, self.dim), format_word(r, self.dim))
            for l, r, c in self.terms()
        )
        return "<DoubleTensor d=%d level=%s %s>" % (self.dim, self.level, inner or "0")

    def to_json_obj(self):
        return [
            {
                "left": format_word(l, self.dim),
                "right": format_word(r, self.dim),
                "num": str(c.numerator),
                "den": str(c.denominator),
            }
            for l, r, c in self.terms()
        ]


def _same(a: DoubleTensor, b: DoubleTensor):
    if a.dim != b.dim:
        raise AlphabetMismatch("alphabet sizes differ: %d vs %d" % (a.dim, b.dim))


def _bump(acc, key, value):
    cur = acc.get(key)
    if cur is None:
        if value:
            acc[key] = value
    else:
        cur = cur + value
        if cur:
            acc[key] = cur
        else:
            del acc[key]


def zero_double(dim: int, level=None) -> DoubleTensor:
    return DoubleTensor._raw(dim, {}, level)


def unit_double(dim: int, level=None) -> DoubleTensor:
    return DoubleTensor(dim, {(EMPTY_WORD, EMPTY_WORD): 1}, level)


def tensor_pair(left: TensorElem, right: TensorElem, level=None) -> DoubleTensor:
    """Outer product of a left-side and a right-side element."""
    if left.dim != right.dim:
        raise AlphabetMismatch("alphabet sizes differ")
    terms = {}
    for l, cl in left.terms():
        for r, cr in right.terms():
            if level is not None and len(r) > level:
                continue
            terms[(l, r)] = cl * cr
    return DoubleTensor._raw(left.dim, terms, level)


# -- products ---------------------------------------------------------------


def _combine(a, b, left_op, right_op, level=None):
    _same(a, b)
    out_level = _min_level(level, _min_level(a.level, b.level))
    acc: dict = {}
    for (pa, qa), ca in a._terms.items():
        for (pb, qb), cb in b._terms.items():
            if out_level is not None and len(qa) + len(qb) > out_level:
                continue
            c = ca * cb
            rights = right_op(qa, qb)
            for left_word, lk in left_op(pa, pb).items():
                for right_word, rk in rights.items():
                    _bump(acc, (left_word, right_word), c * lk * rk)
    return DoubleTensor._raw(a.dim, acc, out_level)


def _concat_words(u, v):
    return {u + v: 1}


def _bracket_words(u, v):
    out: dict = {}
    _bump(out, u + v, 1)
    _bump(out, v + u, -1)
    return out


def box_mul(a: DoubleTensor, b: DoubleTensor, level=None) -> DoubleTensor:
    """Shuffle the left components, concatenate the right ones."""
    return _combine(a, b, shuffle_words, _concat_words, level)


def _check_left_nonempty(x: DoubleTensor, role):
    if any(not left for (left, _right) in x._terms):
        raise EmptyWordOperand("%s must have empty-word-free left factors" % role)


def dendriform(a: DoubleTensor, b: DoubleTensor, which: str, level=None) -> DoubleTensor:
    """Half-shuffle on the left, concatenation on the right.

    which='succ' shuffles into the last letter of b's left factor,
    which='prec' into the last letter of a's.  The two halves add up to
    box_mul.
    """
    if which == "succ":
        _check_left_nonempty(b, "succ right operand")
        return _combine(a, b, half_shuffle_words, _concat_words, level)
    if which == "prec":
        _check_left_nonempty(a, "prec left operand")
        return _combine(
            a, b, lambda u, v: half_shuffle_words(v, u), _concat_words, level
        )
    raise ValueError("which must be 'succ' or 'prec'")


def pre_lie(a: DoubleTensor, b: DoubleTensor, level=None) -> DoubleTensor:
    """Half-shuffle on the left, commutator on the right."""
    _check_left_nonempty(b, "pre-Lie right operand")
    return _combine(a, b, half_shuffle_words, _bracket_words, level)


def pre_lie_sym(a: DoubleTensor, b: DoubleTensor, level=None) -> DoubleTensor:
    """Symmetrized pre-Lie product: area on the left, commutator on the right."""
    return pre_lie(a, b, level) + pre_lie(b, a, level)


def box_bracket(a: DoubleTensor, b: DoubleTensor, level=None) -> DoubleTensor:
    """Commutator of box_mul: shuffle left, bracket right."""
    return _combine(a, b, shuffle_words, _bracket_words, level)


def nested_box_bracket(items) -> DoubleTensor:
    """Right-nested box bracket [x1,[x2,...[x_{n-1},xn]...]]."""
    items = list(items)
    if not items:
        raise ValueError("need at least one element")
    acc = items[-1]
    for x in reversed(items[:-1]):
        acc = box_bracket(x, acc)
    return acc


# -- right-side operators ----------------------------------------------------


def d_hat(a: DoubleTensor) -> DoubleTensor:
    return DoubleTensor._raw(
        a.dim,
        {k: c * len(k[1]) for k, c in a._terms.items() if k[1]},
        a.level,
    )


def d_hat_inv(a: DoubleTensor) -> DoubleTensor:
    if any(not right for (_left, right) in a._terms):
        raise EmptyWordOperand("right grading inverse needs right words of length >= 1")
    return DoubleTensor._raw(
        a.dim, {k: c / len(k[1]) for k, c in a._terms.items()}, a.level
    )


def r_hat(a: DoubleTensor) -> DoubleTensor:
    """Apply the right-bracketing operator to every right word."""
    acc: dict = {}
    for (left, right), c in a._terms.items():
        for t, k in r_word(right).items():
            _bump(acc, (left, t), c * k)
    return DoubleTensor._raw(a.dim, acc, a.level)


# -- evaluation ---------------------------------------------------------------


def eval_at(x: TensorElem, f: DoubleTensor) -> TensorElem:
    """Pair the left factors against x, leaving a right-side element."""
    if x.dim != f.dim:
        raise AlphabetMismatch("alphabet sizes differ")
    acc: dict = {}
    for (left, right), c in f._terms.items():
        cx = x.coeff(left)
        if cx:
            _bump(acc, right, c * cx)
    return TensorElem(f.dim, acc)


def coeval_at(y: TensorElem, f: DoubleTensor) -> TensorElem:
    """Pair the right factors against y, leaving a left-side element."""
    if y.dim != f.dim:
        raise AlphabetMismatch("alphabet sizes differ")
    acc: dict = {}
    for (left, right), c in f._terms.items():
        cy = y.coeff(right)
        if cy:
            _bump(acc, left, c * cy)
    return TensorElem(f.dim, acc)


# -- canonical elements --------------------------------------------------------


def s_element(d: int, level: int) -> DoubleTensor:
    """Sum of w (x) w over all words of length <= level."""
    terms = {}
    for n in range(level + 1):
        for w in words_of_length(d, n):
            terms[(w, w)] = Fraction(1)
    return DoubleTensor(d, terms, level)


def r_element(d: int, level: int, method: str = "direct") -> DoubleTensor:
    """Sum of w (x) r(w); equivalently the quadratic fixed-point solution."""
    if level < 1:
        raise ValueError("level must be >= 1")
    if method == "direct":
        acc: dict = {}
        for n in range(1, level + 1):
            for w in words_of_length(d, n):
                for t, k in r_word(w).items():
                    _bump(acc, (w, t), Fraction(k))
        return DoubleTensor._raw(d, acc, level)
    if method == "recursion":
        parts = [r_level_one(d)]
        for n in range(2, level + 1):
            total = zero_double(d, level)
            for split in range(1, n):
                total = total + pre_lie_sym(parts[split - 1], parts[n - split - 1])
            parts.append(total * Fraction(1, 2 * (n - 1)))
        acc = {}
        for part in parts:
            for k, c in part._terms.items():
                _bump(acc, k, c)
        return DoubleTensor._raw(d, acc, level)
    raise ValueError("unknown r_element method %r" % method)


def r_level_one(d: int) -> DoubleTensor:
    return DoubleTensor(
        d, {((i,), (i,)): 1 for i in range(1, d + 1)}, level=None
    )


def exp_box(x: DoubleTensor, level: int) -> DoubleTensor:
    """Exponential for box_mul, truncated by the right-word grading."""
    if not x.right_degree_zero().is_zero():
        raise EmptyWordOperand("exp needs vanishing right-degree-zero part")
    x = x.truncate(level)
    result = unit_double(x.dim, level)
    power = unit_double(x.dim, level)
    factorial = 1
    for n in range(1, level + 1):
        power = box_mul(power, x, level)
        if power.is_zero():
            break
        factorial *= n
        result = result + power * Fraction(1, factorial)
    return result


def log_box(g: DoubleTensor, level: int) -> DoubleTensor:
    """Logarithm for box_mul; needs right-degree-zero part exactly e (x) e."""
    lowest = g.right_degree_zero()
    if lowest != unit_double(g.dim, g.level):
        raise ValueError("log needs right-degree-zero part equal to e(x)e")
    y = (g - unit_double(g.dim, g.level)).truncate(level)
    result = zero_double(g.dim, level)
    power = unit_double(g.dim, level)
    for n in range(1, level + 1):
        power = box_mul(power, y, level)
        if power.is_zero():
            break
        result = result + power * Fraction((-1) ** (n - 1), n)
    return result


def _compositions(total, parts):
    """Ordered tuples of `parts` positive integers summing to `total`."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def lambda_element(d: int, level: int, method: str = "log_of_s") -> DoubleTensor:
    """Logarithm of the diagonal element, graded piece by graded piece."""
    if level < 1:
        raise ValueError("level must be >= 1")
    if method in ("log_of_s", "log_of_S"):
        return log_box(s_element(d, level), level)
    if method == "recursion":
        parts = [r_level_one(d)]
        r_full = r_element(d, level)
        for n in range(2, level + 1):
            total = r_full.proj_right(n) * Fraction(1, n)
            for i in range(2, n + 1):
                weight = Fraction(1)
                for j in range(2, i + 1):
                    weight /= j
                for comp in _compositions(n, i):
                    bracket = nested_box_bracket(
                        [parts[m - 1] for m in comp]
                    )
                    if bracket.is_zero():
                        continue
                    total = total - bracket * (
                        Fraction(comp[-1], n) * weight
                    )
            parts.append(total)
        acc: dict = {}
        for part in parts:
            for k, c in part._terms.items():
                _bump(acc, k, c)
        return DoubleTensor._raw(d, acc, level)
    raise ValueError("unknown lambda_element method %r" % method)

"""Words over the alphabet 1..d and exact-rational combinations of them.

TensorElem is the shared container for elements of the tensor algebra
(finite combinations of words) and of its level-truncated completion.
Coefficients are fractions.Fraction throughout; floats are rejected so that
every identity in this package can be checked with exact equality.

All values are immutable after construction and all operations are pure,
so elements can be shared freely across threads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations, product

from .errors import AlphabetMismatch, EmptyWordOperand
from .guard import check_term_budget

Word = tuple[int, ...]
EMPTY_WORD: Word = ()


def as_scalar(value) -> Fraction:
    """Coerce to an exact rational; floats are deliberately not accepted."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError("expected an exact rational, got %r" % (value,))


def parse_word(text) -> Word:
    """Read a word from its text form: digits, 'e', or a bracketed int list."""
    if isinstance(text, (tuple, list)):
        return tuple(int(i) for i in text)
    text = text.strip()
    if text in ("", "e"):
        return EMPTY_WORD
    if text.startswith("["):
        return tuple(int(i) for i in json.loads(text))
    return tuple(int(ch) for ch in text)


def format_word(w: Word, dim: int = 9) -> str:
    if not w:
        return "e"
    if dim <= 9:
        return "".join(str(i) for i in w)
    return "[" + ",".join(str(i) for i in w) + "]"


def word_sort_key(w: Word):
    """Canonical order: by length, then lexicographic."""
    return (len(w), w)


class TensorElem:
    """Finite map word -> Fraction over a fixed alphabet size.

    Invariants: no zero coefficients are stored; iteration through terms()
    follows the canonical (length, lexicographic) order.
    """

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms=None):
        if dim < 1:
            raise ValueError("alphabet size must be >= 1")
        clean = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            coeff = as_scalar(coeff)
            if any(not 1 <= letter <= dim for letter in word):
                raise ValueError(
                    "word %s uses letters outside 1..%d" % (format_word(word), dim)
                )
            if coeff:
                clean[word] = coeff
        check_term_budget(len(clean))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", clean)

    @classmethod
    def _raw(cls, dim, clean_terms):
        # Internal fast path: terms already canonical and zero-free.
        check_term_budget(len(clean_terms))
        self = object.__new__(cls)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", clean_terms)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("TensorElem is immutable")

    # -- inspection ------------------------------------------------------

    def coeff(self, word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def terms(self):
        """Yield (word, coefficient) pairs in canonical order."""
        for word in sorted(self._terms, key=word_sort_key):
            yield word, self._terms[word]

    def words(self):
        return sorted(self._terms, key=word_sort_key)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Maximal word length present; 0 for the zero element."""
        return max((len(w) for w in self._terms), default=0)

    def min_degree(self) -> int:
        return min((len(w) for w in self._terms), default=0)

    def empty_coeff(self) -> Fraction:
        return self._terms.get(EMPTY_WORD, Fraction(0))

    # -- linear structure ------------------------------------------------

    def __add__(self, other):
        _same_dim(self, other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            _bump(out, w, c)
        return TensorElem._raw(self.dim, out)

    def __sub__(self, other):
        _same_dim(self, other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            _bump(out, w, -c)
        return TensorElem._raw(self.dim, out)

    def __neg__(self):
        return TensorElem._raw(self.dim, {w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar):
        s = as_scalar(scalar)
        if not s:
            return TensorElem._raw(self.dim, {})
        return TensorElem._raw(self.dim, {w: c * s for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = as_scalar(scalar)
        return self * (Fraction(1) / s)

    def __eq__(self, other):
        return (
            isinstance(other, TensorElem)
            and self.dim == other.dim
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    # -- grading ---------------------------------------------------------

    def proj(self, n: int):
        """Terms of length exactly n."""
        return TensorElem._raw(
            self.dim, {w: c for w, c in self._terms.items() if len(w) == n}
        )

    def proj_at_least(self, n: int):
        return TensorElem._raw(
            self.dim, {w: c for w, c in self._terms.items() if len(w) >= n}
        )

    def truncate(self, level: int):
        """Drop terms with word length above `level`."""
        return TensorElem._raw(
            self.dim, {w: c for w, c in self._terms.items() if len(w) <= level}
        )

    # -- presentation ----------------------------------------------------

    def __repr__(self):
        return "<TensorElem d=%d %s>" % (self.dim, str(self))

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for w, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            word = format_word(w, self.dim)
            body = word if mag == 1 else "%s*%s" % (mag, word)
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += " %s %s" % (sign, body)
        return out

    def to_json_obj(self):
        return [
            {
                "word": format_word(w, self.dim),
                "num": str(c.numerator),
                "den": str(c.denominator),
            }
            for w, c in self.terms()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, data, dim):
        terms = {}
        for entry in data:
            word = parse_word(entry["word"])
            terms[word] = Fraction(int(entry["num"]), int(entry["den"]))
        return cls(dim, terms)


def _same_dim(x: TensorElem, y: TensorElem):
    if x.dim != y.dim:
        raise AlphabetMismatch(
            "alphabet sizes differ: %d vs %d" % (x.dim, y.dim)
        )


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


# -- constructors ---------------------------------------------------------


def zero(dim: int) -> TensorElem:
    return TensorElem(dim, {})


def unit(dim: int) -> TensorElem:
    """The empty word with coefficient one."""
    return TensorElem(dim, {EMPTY_WORD: 1})


def word_elem(word, dim: int) -> TensorElem:
    return TensorElem(dim, {parse_word(word): 1})


def letter_elem(letter: int, dim: int) -> TensorElem:
    return TensorElem(dim, {(letter,): 1})


def from_terms(dim: int, mapping) -> TensorElem:
    return TensorElem(dim, {parse_word(w): c for w, c in mapping.items()})


def words_of_length(dim: int, n: int):
    """All words of exactly length n, lexicographic order."""
    return (tuple(w) for w in product(range(1, dim + 1), repeat=n))


def all_words(dim: int, max_len: int):
    for n in range(max_len + 1):
        yield from words_of_length(dim, n)


# -- word-level kernels (integer coefficients, memoized) ------------------

_SHUFFLE_CACHE: dict = {}


def shuffle_words(u: Word, v: Word) -> dict:
    """All interleavings of u and v with multiplicity, as word -> int."""
    if word_sort_key(u) > word_sort_key(v):
        u, v = v, u
    key = (u, v)
    hit = _SHUFFLE_CACHE.get(key)
    if hit is not None:
        return hit
    if not u:
        out = {v: 1}
    elif not v:
        out = {u: 1}
    else:
        out = {}
        for w, c in shuffle_words(u[:-1], v).items():
            _bump(out, w + u[-1:], c)
        for w, c in shuffle_words(u, v[:-1]).items():
            _bump(out, w + v[-1:], c)
    _SHUFFLE_CACHE[key] = out
    return out


def half_shuffle_words(u: Word, v: Word) -> dict:
    """Interleavings of u and v that end with the last letter of v."""
    if not v:
        raise EmptyWordOperand("half-shuffle needs a nonempty right factor")
    return {w + v[-1:]: c for w, c in shuffle_words(u, v[:-1]).items()}


_R_CACHE: dict = {}


def r_word(w: Word) -> dict:
    """Right-nested bracketing [l1,[l2,...[l_{n-1},ln]]] of a word."""
    hit = _R_CACHE.get(w)
    if hit is not None:
        return hit
    n = len(w)
    if n == 0:
        out = {}
    elif n == 1:
        out = {w: 1}
    else:
        head = w[:1]
        out = {}
        for t, c in r_word(w[1:]).items():
            _bump(out, head + t, c)
            _bump(out, t + head, -c)
    _R_CACHE[w] = out
    return out


_RHO_REC_CACHE: dict = {}


def rho_word(w: Word) -> dict:
    """Adjoint of the right-bracketing operator, via its two-sided recursion."""
    hit = _RHO_REC_CACHE.get(w)
    if hit is not None:
        return hit
    n = len(w)
    if n == 0:
        out = {}
    elif n == 1:
        out = {w: 1}
    else:
        i, j, mid = w[:1], w[-1:], w[1:-1]
        out = {}
        for t, c in rho_word(mid + j).items():
            _bump(out, i + t, c)
        for t, c in rho_word(i + mid).items():
            _bump(out, j + t, -c)
    _RHO_REC_CACHE[w] = out
    return out


_RHO_VIA_D_CACHE: dict = {}


def rho_word_via_d(w: Word) -> dict:
    """Same map, computed from the grading identity instead.

    rho(w) = |w| w - sum over proper splits w = u v of rho(u) shuffled with v.
    """
    hit = _RHO_VIA_D_CACHE.get(w)
    if hit is not None:
        return hit
    n = len(w)
    if n == 0:
        out = {}
    elif n == 1:
        out = {w: 1}
    else:
        out = {w: n}
        for cut in range(1, n):
            u, v = w[:cut], w[cut:]
            for t, c in rho_word_via_d(u).items():
                for s, k in shuffle_words(t, v).items():
                    _bump(out, s, -c * k)
    _RHO_VIA_D_CACHE[w] = out
    return out


_PI1T_CACHE: dict = {}


def pi1_transpose_word(w: Word) -> dict:
    """Alternating sum of shuffles over concatenation factorizations of w."""
    hit = _PI1T_CACHE.get(w)
    if hit is not None:
        return hit
    n = len(w)
    out: dict = {}
    if n:
        for cut_mask in range(1 << (n - 1)):
            cuts = [i + 1 for i in range(n - 1) if cut_mask >> i & 1]
            bounds = [0] + cuts + [n]
            blocks = [w[a:b] for a, b in zip(bounds, bounds[1:])]
            k = len(blocks)
            weight = Fraction((-1) ** (k - 1), k)
            shuffled = {blocks[0]: 1}
            for block in blocks[1:]:
                nxt: dict = {}
                for t, c in shuffled.items():
                    for s, m in shuffle_words(t, block).items():
                        _bump(nxt, s, c * m)
                shuffled = nxt
            for t, c in shuffled.items():
                _bump(out, t, weight * c)
    _PI1T_CACHE[w] = out
    return out


_PI1_CACHE: dict = {}


def pi1_word(u: Word) -> dict:
    """Alternating-sum projection whose restriction to grouplikes is log.

    The n-th summand collects, with weight (-1)^(n+1)/n, every way of
    scattering the letters of u onto n nonempty subsequences, concatenated.
    """
    hit = _PI1_CACHE.get(u)
    if hit is not None:
        return hit
    n = len(u)
    out: dict = {}
    for k in range(1, n + 1):
        weight = Fraction((-1) ** (k - 1), k)
        for assignment in product(range(k), repeat=n):
            if len(set(assignment)) != k:
                continue
            parts = [[] for _ in range(k)]
            for pos, bin_idx in enumerate(assignment):
                parts[bin_idx].append(u[pos])
            word = tuple(letter for part in parts for letter in part)
            _bump(out, word, weight)
    _PI1_CACHE[u] = out
    return out


def unshuffle_word(w: Word) -> dict:
    """All splittings of w's positions into two complementary subsequences."""
    n = len(w)
    out: dict = {}
    positions = range(n)
    for k in range(n + 1):
        for chosen in combinations(positions, k):
            chosen_set = set(chosen)
            left = tuple(w[i] for i in chosen)
            right = tuple(w[i] for i in positions if i not in chosen_set)
            _bump(out, (left, right), 1)
    return out


# -- bilinear and linear lifts --------------------------------------------


def _bilinear(x: TensorElem, y: TensorElem, word_op) -> TensorElem:
    _same_dim(x, y)
    acc: dict = {}
    for u, cu in x._terms.items():
        for v, cv in y._terms.items():
            c = cu * cv
            for w, k in word_op(u, v).items():
                _bump(acc, w, c * k)
    return TensorElem._raw(x.dim, acc)


def _linear(x: TensorElem, word_op) -> TensorElem:
    acc: dict = {}
    for u, cu in x._terms.items():
        for w, k in word_op(u).items():
            _bump(acc, w, cu * k)
    return TensorElem._raw(x.dim, acc)


def _reject_empty(x: TensorElem, role: str):
    if x.empty_coeff():
        raise EmptyWordOperand("%s must have no empty-word component" % role)


# -- public operations -----------------------------------------------------


def concat(x: TensorElem, y: TensorElem, level=None) -> TensorElem:
    """Concatenation product; levels above `level` are dropped if given."""
    _same_dim(x, y)
    acc: dict = {}
    for u, cu in x._terms.items():
        for v, cv in y._terms.items():
            if level is not None and len(u) + len(v) > level:
                continue
            _bump(acc, u + v, cu * cv)
    return TensorElem._raw(x.dim, acc)


def shuffle(x: TensorElem, y: TensorElem) -> TensorElem:
    return _bilinear(x, y, shuffle_words)


def half_shuffle(x: TensorElem, y: TensorElem) -> TensorElem:
    """x > y: shuffles of x and y ending with the final letter of y."""
    _reject_empty(y, "right half-shuffle factor")
    return _bilinear(x, y, half_shuffle_words)


def area(x: TensorElem, y: TensorElem) -> TensorElem:
    """Antisymmetrized half-shuffle, the signed-area operation."""
    _reject_empty(x, "area operand")
    _reject_empty(y, "area operand")
    return half_shuffle(x, y) - half_shuffle(y, x)


def lie_bracket(x: TensorElem, y: TensorElem) -> TensorElem:
    return concat(x, y) - concat(y, x)


def pairing(x: TensorElem, y: TensorElem) -> Fraction:
    """Dual pairing with words as an orthonormal pair of bases."""
    _same_dim(x, y)
    small, big = (x._terms, y._terms) if len(x) <= len(y) else (y._terms, x._terms)
    total = Fraction(0)
    for w, c in small.items():
        other = big.get(w)
        if other is not None:
            total += c * other
    return total


def dynkin_r(x: TensorElem) -> TensorElem:
    """Right bracketing w -> [l1,[l2,...[l_{n-1},ln]]], linearly extended."""
    return _linear(x, r_word)


def rho(x: TensorElem, method: str = "recursive") -> TensorElem:
    """Adjoint of dynkin_r under the word pairing."""
    if method == "recursive":
        return _linear(x, rho_word)
    if method in ("via_d_identity", "via_d"):
        return _linear(x, rho_word_via_d)
    raise ValueError("unknown rho method %r" % method)


def grading_d(x: TensorElem) -> TensorElem:
    return TensorElem._raw(
        x.dim, {w: c * len(w) for w, c in x._terms.items() if w}
    )


def grading_d_inv(x: TensorElem) -> TensorElem:
    if x.empty_coeff():
        raise EmptyWordOperand("grading inverse is undefined on the empty word")
    return TensorElem._raw(
        x.dim, {w: c / len(w) for w, c in x._terms.items()}
    )


def antipode(x: TensorElem) -> TensorElem:
    """w -> (-1)^|w| times w reversed; an involution."""
    return TensorElem._raw(
        x.dim,
        {w[::-1]: c * (-1) ** len(w) for w, c in x._terms.items()},
    )


def proj(x: TensorElem, n: int) -> TensorElem:
    return x.proj(n)


def proj_at_least(x: TensorElem, n: int) -> TensorElem:
    return x.proj_at_least(n)


def pi1(x: TensorElem) -> TensorElem:
    return _linear(x, pi1_word)


def pi1_transpose(x: TensorElem) -> TensorElem:
    return _linear(x, pi1_transpose_word)


class CoproductTerms:
    """Finite map (word, word) -> Fraction produced by unshuffling."""

    __slots__ = ("dim", "_pairs")

    def __init__(self, dim, pairs):
        clean = {}
        for (u, v), c in pairs.items():
            c = as_scalar(c)
            if c:
                clean[(tuple(u), tuple(v))] = c
        check_term_budget(len(clean))
        self.dim = dim
        self._pairs = clean

    def coeff(self, u, v) -> Fraction:
        return self._pairs.get((tuple(u), tuple(v)), Fraction(0))

    def pairs(self):
        def key(pair):
            u, v = pair
            return (word_sort_key(u), word_sort_key(v))

        for u, v in sorted(self._pairs, key=key):
            yield (u, v), self._pairs[(u, v)]

    def __len__(self):
        return len(self._pairs)

    def __eq__(self, other):
        return (
            isinstance(other, CoproductTerms)
            and self.dim == other.dim
            and self._pairs == other._pairs
        )

    def pair_with(self, a: TensorElem, b: TensorElem) -> Fraction:
        """<a (x) b, self>, the scalar dual to shuffling a with b."""
        total = Fraction(0)
        for (u, v), c in self._pairs.items():
            ca = a._terms.get(u)
            if ca is None:
                continue
            cb = b._terms.get(v)
            if cb is None:
                continue
            total += c * ca * cb
        return total


def unshuffle(x: TensorElem) -> CoproductTerms:
    """Coproduct dual to the shuffle product."""
    acc: dict = {}
    for w, c in x._terms.items():
        for pair, k in unshuffle_word(w).items():
            _bump(acc, pair, c * k)
    return CoproductTerms(x.dim, acc)


def is_grouplike(g: TensorElem, level: int) -> bool:
    """Check the grouplike law for the unshuffle coproduct up to `level`."""
    g = g.truncate(level)
    if g.empty_coeff() != 1:
        return False
    split = unshuffle(g)
    for u in all_words(g.dim, level):
        for v in all_words(g.dim, level - len(u)):
            if split.coeff(u, v) != g.coeff(u) * g.coeff(v):
                return False
    return True


def exp_conc(x: TensorElem, level: int = 5) -> TensorElem:
    """Concatenation exponential, truncated at `level`."""
    if x.empty_coeff():
        raise EmptyWordOperand("exp needs a vanishing empty-word coefficient")
    x = x.truncate(level)
    result = unit(x.dim)
    power = unit(x.dim)
    factorial = 1
    for n in range(1, level + 1):
        power = concat(power, x, level)
        if power.is_zero():
            break
        factorial *= n
        result = result + power * Fraction(1, factorial)
    return result


def log_conc(g: TensorElem, level: int = 5) -> TensorElem:
    """Concatenation logarithm, truncated at `level`."""
    if g.empty_coeff() != 1:
        raise ValueError("log needs empty-word coefficient exactly 1")
    y = (g - unit(g.dim)).truncate(level)
    result = zero(g.dim)
    power = unit(g.dim)
    for n in range(1, level + 1):
        power = concat(power, y, level)
        if power.is_zero():
            break
        result = result + power * Fraction((-1) ** (n - 1), n)
    return result


def is_lie_element(x: TensorElem, level=None) -> bool:
    """Dynkin criterion: no empty word and r(x) = D(x) (up to `level`)."""
    if x.empty_coeff():
        return False
    if level is not None:
        x = x.truncate(level)
    return dynkin_r(x) == grading_d(x)


def invert_r(x: TensorElem, level: int = 5) -> TensorElem:
    """Grouplike g with dynkin_r(g) = x up to `level`.

    Built from the fixed point g = e + D^{-1}(x g), iterated until the
    grading exhausts the truncation.  The input must pass the Lie test.
    """
    x = x.truncate(level)
    if not is_lie_element(x):
        raise ValueError("invert_r needs a Lie element input")
    g = unit(x.dim)
    z = unit(x.dim)
    while True:
        xz = concat(x, z, level)
        if xz.is_zero():
            break
        z = grading_d_inv(xz)
        g = g + z
    return g

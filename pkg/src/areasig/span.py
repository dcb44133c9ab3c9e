"""The linear span generated by iterated areas, and its rank tooling.

The span has the closed-form basis "letters plus w(ij-ji) with i < j", which
drives the membership test here.  The rank checkers pair candidate
generating sets against the free-Lie-algebra levels; full pairing rank at
every level is exactly the condition for shuffle generation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
import json

from . import linalg
from .errors import EmptyWordOperand
from .hall import HallBasis, hall_set
from .tensor import (
    TensorElem,
    area,
    half_shuffle,
    letter_elem,
    pairing,
    rho,
    word_elem,
    words_of_length,
)
from .trees import AREA, area_eval


# -- the area span -----------------------------------------------------------


def area_span_basis(d: int, n: int):
    """Canonical degree-n basis: letters at n=1, else w(ij-ji) with i < j."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return [letter_elem(i, d) for i in range(1, d + 1)]
    out = []
    for w in words_of_length(d, n - 2):
        for i in range(1, d + 1):
            for j in range(i + 1, d + 1):
                out.append(
                    TensorElem(d, {w + (i, j): 1, w + (j, i): -1})
                )
    return out


def area_span_dim(d: int, n: int) -> int:
    if n == 1:
        return d
    return d ** (n - 2) * d * (d - 1) // 2


def area_span_membership(x: TensorElem):
    """Decompose x over the span basis, or return None if it is not inside.

    The decomposition is {'letters': {i: coeff}, 'pairs': {(w, i, j): coeff}}
    with i < j; basis elements are recognized by their final two letters.
    """
    if x.empty_coeff():
        return None
    letters = {}
    pairs = {}
    seen = set()
    for word, coeff in x.terms():
        if len(word) == 1:
            letters[word[0]] = coeff
            continue
        prefix, a, b = word[:-2], word[-2], word[-1]
        if a == b:
            return None
        i, j = (a, b) if a < b else (b, a)
        key = (prefix, i, j)
        if key in seen:
            continue
        seen.add(key)
        plus = x.coeff(prefix + (i, j))
        minus = x.coeff(prefix + (j, i))
        if plus != -minus:
            return None
        pairs[key] = plus
    return {"letters": letters, "pairs": pairs}


def membership_to_elem(d: int, decomposition) -> TensorElem:
    total = TensorElem(d, {})
    for i, c in decomposition["letters"].items():
        total = total + letter_elem(i, d) * c
    for (w, i, j), c in decomposition["pairs"].items():
        total = total + TensorElem(d, {w + (i, j): c, w + (j, i): -c})
    return total


# -- left bracketing ----------------------------------------------------------

_AREALB_CACHE: dict = {}


def arealb_word(w, dim: int) -> TensorElem:
    key = (tuple(w), dim)
    hit = _AREALB_CACHE.get(key)
    if hit is None:
        w = tuple(w)
        if not w:
            hit = TensorElem(dim, {})
        elif len(w) == 1:
            hit = letter_elem(w[0], dim)
        else:
            hit = area(arealb_word(w[:-1], dim), letter_elem(w[-1], dim))
        _AREALB_CACHE[key] = hit
    return hit


def arealb(x: TensorElem) -> TensorElem:
    """Strict left-bracketing of the area operation along each word."""
    total = TensorElem(x.dim, {})
    for w, c in x.terms():
        total = total + arealb_word(w, x.dim) * c
    return total


# -- permutation expansions -----------------------------------------------------

_SIGNED_PERMS: dict = {}


def signed_permutations(n: int):
    """All of S_n with the sign f_n; f_n multiplies g_i over positions.

    g_i(sigma) is +1 when every smaller value j < i occurs before i in the
    one-line word, else -1.
    """
    hit = _SIGNED_PERMS.get(n)
    if hit is None:
        hit = []
        for sigma in permutations(range(1, n + 1)):
            position = {value: idx for idx, value in enumerate(sigma)}
            sign = 1
            for i in range(2, n + 1):
                pos_i = position[i]
                if any(position[j] > pos_i for j in range(1, i)):
                    sign = -sign
            hit.append((sigma, sign))
        _SIGNED_PERMS[n] = hit
    return hit


def theta_expansion(w, dim: int) -> TensorElem:
    """Left-bracketed area of a word as a signed sum over all permutations."""
    w = tuple(w)
    n = len(w)
    if n < 1:
        raise EmptyWordOperand("need a nonempty word")
    terms: dict = {}
    for sigma, sign in signed_permutations(n):
        permuted = tuple(w[s - 1] for s in sigma)
        terms[permuted] = terms.get(permuted, 0) + sign
    return TensorElem(dim, terms)


_INTERVAL_PERMS: dict = {}


def interval_permutations(n: int):
    """Permutations whose every suffix value set is an interval of integers."""
    hit = _INTERVAL_PERMS.get(n)
    if hit is None:
        hit = []
        for sigma, sign in signed_permutations(n):
            ok = True
            for i in range(n - 1):
                suffix = sigma[i:]
                if max(suffix) - min(suffix) + 1 != len(suffix):
                    ok = False
                    break
            if ok:
                hit.append((sigma, sign))
        _INTERVAL_PERMS[n] = hit
    return hit


def rho_permutation(w, dim: int) -> TensorElem:
    """rho of a word as a signed sum over interval permutations."""
    w = tuple(w)
    n = len(w)
    if n < 1:
        raise EmptyWordOperand("need a nonempty word")
    terms: dict = {}
    for sigma, sign in interval_permutations(n):
        permuted = tuple(w[s - 1] for s in sigma)
        terms[permuted] = terms.get(permuted, 0) + sign
    return TensorElem(dim, terms)


# -- volumes and the degree-4 identity -------------------------------------------


def vol(a: TensorElem, b: TensorElem, c: TensorElem) -> TensorElem:
    """Cyclic sum of left-nested areas; pairs to six times a signed volume."""
    return area(area(a, b), c) + area(area(b, c), a) + area(area(c, a), b)


def vol_n(args) -> TensorElem:
    """Signed sum over orderings of left-nested half-shuffles of the arguments."""
    args = list(args)
    n = len(args)
    if n < 2:
        raise ValueError("need at least two arguments")
    dim = args[0].dim
    total = TensorElem(dim, {})
    for sigma in permutations(range(n)):
        sign = _perm_sign(sigma)
        cur = args[sigma[0]]
        for idx in sigma[1:]:
            cur = half_shuffle(cur, args[idx])
        total = total + cur * sign
    return total


def _perm_sign(sigma) -> int:
    sign = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign


def volume_invariant(d: int, n: int) -> TensorElem:
    """Alternating sum of the permutations of the word 12..n."""
    if n < 2:
        raise ValueError("need n >= 2")
    terms = {}
    for sigma in permutations(range(1, n + 1)):
        terms[tuple(sigma)] = _perm_sign(tuple(i - 1 for i in sigma))
    return TensorElem(max(d, n), terms)


def tortkara_check(a, b, c, d_elem=None) -> bool:
    """The degree-4 identity of the area operation, in its stated forms.

    With three arguments checks
        area(area(a,b), area(c,b)) = area(vol(a,b,c), b);
    a fourth argument switches to the two four-variable forms.
    """
    if d_elem is None:
        return area(area(a, b), area(c, b)) == area(vol(a, b, c), b)
    lhs = area(area(a, b), area(c, d_elem)) + area(area(a, d_elem), area(c, b))
    rhs = area(vol(a, b, c), d_elem) + area(vol(a, d_elem, c), b)
    if lhs != rhs:
        return False
    lhs2 = area(area(a, b), area(c, d_elem)) * 2
    rhs2 = (
        area(vol(a, b, c), d_elem)
        + area(vol(a, d_elem, c), b)
        + area(vol(b, a, d_elem), c)
        + area(vol(b, c, d_elem), a)
    )
    return lhs2 == rhs2


# -- rank reports -----------------------------------------------------------------


@dataclass
class SpanReport:
    d: int
    n: int
    generators: int
    rank: int
    target: int
    full_rank: bool

    def to_json_obj(self):
        return {
            "d": self.d,
            "n": self.n,
            "generators": self.generators,
            "rank": self.rank,
            "target": self.target,
            "full_rank": self.full_rank,
        }

    def to_json(self):
        return json.dumps(self.to_json_obj())


def generation_rank(xs, n: int, basis: HallBasis | None = None) -> SpanReport:
    """Rank of the pairing of degree-n elements against the Lie level.

    Full rank at every level is the criterion for the family to shuffle
    generate; inhomogeneous inputs are rejected.
    """
    xs = list(xs)
    if not xs:
        raise ValueError("need at least one element")
    d = xs[0].dim
    for x in xs:
        if not x.is_zero() and (x.degree() != n or x.min_degree() != n):
            raise ValueError("elements must be homogeneous of degree %d" % n)
    if basis is None:
        basis = hall_set(d, n)
    hall_level = basis.level(n)
    vectors = []
    for x in xs:
        row = {}
        for idx, h in enumerate(hall_level):
            value = pairing(x, basis.bracketing(h))
            if value:
                row[idx] = value
        vectors.append(row)
    rank = linalg.rank_of_vectors(vectors, columns=list(range(len(hall_level))))
    target = len(hall_level)
    return SpanReport(d, n, len(xs), rank, target, rank == target)


def areas_generate_check(d: int, n: int, basis: HallBasis | None = None) -> SpanReport:
    """Pairing rank of the degree-n part of the area span against the Lie level."""
    return generation_rank(area_span_basis(d, n), n, basis)


def leftbracket_span_check(d: int, n: int) -> SpanReport:
    """Rank of the strict left-bracketings with i1 < i2 inside the span.

    For d = 2 full rank is asserted by callers; for larger alphabets this
    only reports the numbers, since the spanning statement is open there.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    vectors = []
    count = 0
    for w in words_of_length(d, n):
        if w[0] < w[1]:
            count += 1
            elem = arealb_word(w, d)
            vectors.append(dict(elem.terms()))
    rank = linalg.rank_of_vectors(vectors)
    target = area_span_dim(d, n)
    return SpanReport(d, n, count, rank, target, rank == target)


def words_as_rho_shuffles(w):
    """Factorizations writing the word as shuffles of rho images.

    Returns [(blocks, coefficient)] with blocks a tuple of nonempty words
    multiplying the factorization w = w1 ... wn, so that the word equals the
    sum of coefficient * rho(w1) sh ... sh rho(wn).
    """
    w = tuple(w)
    n = len(w)
    if n < 1:
        raise EmptyWordOperand("need a nonempty word")
    expansion = []
    for cut_mask in range(1 << (n - 1)):
        cuts = [i + 1 for i in range(n - 1) if cut_mask >> i & 1]
        bounds = [0] + cuts + [n]
        blocks = tuple(w[a:b] for a, b in zip(bounds, bounds[1:]))
        k = 1
        suffix = 0
        for block in reversed(blocks):
            suffix += len(block)
            k *= suffix
        expansion.append((blocks, Fraction(1, k)))
    return expansion


def eval_rho_shuffle_expansion(w, dim: int) -> TensorElem:
    from .tensor import shuffle

    total = TensorElem(dim, {})
    for blocks, coefficient in words_as_rho_shuffles(w):
        cur = rho(word_elem(blocks[0], dim))
        for block in blocks[1:]:
            cur = shuffle(cur, rho(word_elem(block, dim)))
        total = total + cur * coefficient
    return total


def rho_image_in_area_span(w, dim: int) -> bool:
    """Membership of rho(word) in the area span (holds for every word)."""
    image = rho(word_elem(w, dim))
    return image.is_zero() or area_span_membership(image) is not None


# -- reduction of general bracketings to left ones ---------------------------------


def special_tree(n: int):
    """Left-bracket tree on n-2 leaves grafted onto a final cherry.

    Leaves carry placeholder letter 1; special_tree_reduction relabels them.
    """
    if n < 4:
        raise ValueError("need n >= 4")

    def left_tree(k):
        t = 1
        for _ in range(k - 1):
            t = (AREA, t, 1)
        return t

    return (AREA, left_tree(n - 2), (AREA, 1, 1))


def _relabel(tree, letters_iter):
    if isinstance(tree, int):
        return next(letters_iter)
    kind, left, right = tree
    return (kind, _relabel(left, letters_iter), _relabel(right, letters_iter))


def special_tree_reduction(n: int, d: int) -> SpanReport:
    """Solvability of every labeled special tree over the left-bracket span.

    generators counts the left-bracket generators, rank the number of
    solvable labelings, target the number of labelings tested.
    """
    shape = special_tree(n)
    basis_vectors = [
        dict(arealb_word(w, d).terms()) for w in words_of_length(d, n)
    ]
    solvable = 0
    total = 0
    for letters in product(range(1, d + 1), repeat=n):
        tree = _relabel(shape, iter(letters))
        value = area_eval(tree, d)
        total += 1
        if value.is_zero():
            solvable += 1
            continue
        if linalg.express_in_span(basis_vectors, dict(value.terms())) is not None:
            solvable += 1
    return SpanReport(d, n, len(basis_vectors), solvable, total, solvable == total)

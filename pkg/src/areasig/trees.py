"""Leaf-labeled binary planar trees and their tree-indexed expansions.

A tree is a letter (int) at a leaf or a node ('a', left, right) bracketing
with the area operation; mixed trees additionally use ('s', left, right)
nodes that multiply with the shuffle.  Shuffle nodes may only appear where
every ancestor is a shuffle node, so they form a crown containing the root.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .double_tensor import DoubleTensor, tensor_pair, zero_double
from .errors import ExpressionSyntaxError
from .guard import check_term_budget
from .hall import HallBasis, HallWord
from .tensor import (
    TensorElem,
    area,
    letter_elem,
    lie_bracket,
    pairing,
    shuffle,
)

AREA = "a"
SHUFFLE = "s"


def is_leaf(tree) -> bool:
    return isinstance(tree, int)


def leaf_count(tree) -> int:
    if is_leaf(tree):
        return 1
    return leaf_count(tree[1]) + leaf_count(tree[2])


def foliage(tree) -> tuple:
    if is_leaf(tree):
        return (tree,)
    return foliage(tree[1]) + foliage(tree[2])


def is_valid_mixed(tree, under_area=False) -> bool:
    if is_leaf(tree):
        return True
    kind, left, right = tree
    if kind == SHUFFLE and under_area:
        return False
    below = under_area or kind == AREA
    return is_valid_mixed(left, below) and is_valid_mixed(right, below)


# -- enumeration -------------------------------------------------------------

_PLAIN_SHAPES: dict = {}
_MIXED_SHAPES: dict = {}

_HOLE = 0  # leaf placeholder in shapes


def _plain_shapes(n):
    hit = _PLAIN_SHAPES.get(n)
    if hit is None:
        if n == 1:
            hit = [_HOLE]
        else:
            hit = [
                (AREA, left, right)
                for k in range(1, n)
                for left in _plain_shapes(k)
                for right in _plain_shapes(n - k)
            ]
        _PLAIN_SHAPES[n] = hit
    return hit


def _mixed_shapes(n):
    # An area-rooted mixed tree cannot contain shuffle nodes at all, so the
    # shapes split into the plain ones and shuffle-rooted combinations.
    hit = _MIXED_SHAPES.get(n)
    if hit is None:
        hit = list(_plain_shapes(n))
        for k in range(1, n):
            for left in _mixed_shapes(k):
                for right in _mixed_shapes(n - k):
                    hit.append((SHUFFLE, left, right))
        _MIXED_SHAPES[n] = hit
    return hit


def _label(shape, letters, it):
    if shape == _HOLE:
        return next(it)
    kind, left, right = shape
    return (kind, _label(left, letters, it), _label(right, letters, it))


def _labeled(shapes, d, n):
    check_term_budget(len(shapes) * d**n)
    out = []
    for shape in shapes:
        for letters in product(range(1, d + 1), repeat=n):
            it = iter(letters)
            out.append(_label(shape, letters, it))
    return out


def enumerate_trees(d: int, n: int):
    """All area trees with n leaves labeled from 1..d, canonical order."""
    if n < 1:
        raise ValueError("need n >= 1")
    return _labeled(_plain_shapes(n), d, n)


def enumerate_mixed(d: int, n: int):
    if n < 1:
        raise ValueError("need n >= 1")
    return _labeled(_mixed_shapes(n), d, n)


# -- evaluation ---------------------------------------------------------------

_EVAL_CACHE: dict = {}

_OPS = {
    "area": {AREA: area, SHUFFLE: area},
    "lie": {AREA: lie_bracket, SHUFFLE: lie_bracket},
    "mixed": {AREA: area, SHUFFLE: shuffle},
}


def _eval(tree, dim, mode) -> TensorElem:
    key = (tree, dim, mode)
    hit = _EVAL_CACHE.get(key)
    if hit is None:
        if is_leaf(tree):
            hit = letter_elem(tree, dim)
        else:
            kind, left, right = tree
            op = _OPS[mode][kind]
            hit = op(_eval(left, dim, mode), _eval(right, dim, mode))
        _EVAL_CACHE[key] = hit
    return hit


def area_eval(tree, dim: int) -> TensorElem:
    """Bracket out with the area operation at every node."""
    return _eval(tree, dim, "area")


def lie_eval(tree, dim: int) -> TensorElem:
    """Bracket out with the Lie bracket at every node (both node kinds)."""
    return _eval(tree, dim, "lie")


def mixed_eval(tree, dim: int) -> TensorElem:
    """Area at round nodes, shuffle at square nodes."""
    return _eval(tree, dim, "mixed")


# -- coefficients --------------------------------------------------------------

_C_CACHE: dict = {}
_B_CACHE: dict = {}
_E_CACHE: dict = {}


def coeff_c(tree) -> int:
    """Symmetric label-independent weight: doubled product over inner nodes."""
    hit = _C_CACHE.get(tree)
    if hit is None:
        if is_leaf(tree):
            hit = 1
        else:
            _, left, right = tree
            hit = (
                2
                * coeff_c(left)
                * coeff_c(right)
                * (leaf_count(left) + leaf_count(right) - 1)
            )
        _C_CACHE[tree] = hit
    return hit


def coeff_b(tree) -> int:
    """Like coeff_c but without the factor 2 per node."""
    hit = _B_CACHE.get(tree)
    if hit is None:
        if is_leaf(tree):
            hit = 1
        else:
            _, left, right = tree
            hit = (
                coeff_b(left)
                * coeff_b(right)
                * (leaf_count(left) + leaf_count(right) - 1)
            )
        _B_CACHE[tree] = hit
    return hit


def _shuffle_spine(tree):
    """Peel the right spine of shuffle nodes: tree = t1 -s-> (t2 -s-> ...)."""
    parts = []
    cur = tree
    while not is_leaf(cur) and cur[0] == SHUFFLE:
        parts.append(cur[1])
        cur = cur[2]
    parts.append(cur)
    return parts


def _regraft(parts):
    cur = parts[-1]
    for part in reversed(parts[:-1]):
        cur = (SHUFFLE, part, cur)
    return cur


def coeff_e(tree) -> Fraction:
    """Rational weight of a mixed tree in the logarithm expansion.

    Area-rooted trees weigh 1/(n c); shuffle-rooted trees recurse through
    the factorization along their right spine of shuffle nodes.
    """
    hit = _E_CACHE.get(tree)
    if hit is not None:
        return hit
    if is_leaf(tree):
        result = Fraction(1)
    elif tree[0] == AREA:
        result = Fraction(1, leaf_count(tree) * coeff_c(tree))
    else:
        parts = _shuffle_spine(tree)
        ell = len(parts)
        n = leaf_count(tree)
        total = Fraction(0)
        fact = 1
        prefix = Fraction(1)
        for j in range(2, ell + 1):
            fact *= j
            prefix *= coeff_e(parts[j - 2])
            tail = parts[ell - 1] if j == ell else _regraft(parts[j - 1 :])
            total += Fraction(leaf_count(tail), fact * n) * coeff_e(tail) * prefix
        result = -total
    _E_CACHE[tree] = result
    return result


# -- text form -----------------------------------------------------------------


def format_tree(tree) -> str:
    if is_leaf(tree):
        return str(tree)
    kind, left, right = tree
    return "%s(%s,%s)" % (kind, format_tree(left), format_tree(right))


def parse_tree(text: str):
    """Parse the a(x,y)/s(x,y) syntax; round-trips with format_tree."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_node():
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ExpressionSyntaxError("unexpected end of tree", pos)
        ch = text[pos]
        if ch in (AREA, SHUFFLE) and pos + 1 < len(text) and text[pos + 1] == "(":
            kind = ch
            pos += 2
            left = parse_node()
            skip_ws()
            if pos >= len(text) or text[pos] != ",":
                raise ExpressionSyntaxError("expected ','", pos)
            pos += 1
            right = parse_node()
            skip_ws()
            if pos >= len(text) or text[pos] != ")":
                raise ExpressionSyntaxError("expected ')'", pos)
            pos += 1
            return (kind, left, right)
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            letter = int(text[start:pos])
            if letter < 1:
                raise ExpressionSyntaxError("letters start at 1", start)
            return letter
        raise ExpressionSyntaxError("expected a tree", pos)

    node = parse_node()
    skip_ws()
    if pos != len(text):
        raise ExpressionSyntaxError("trailing input", pos)
    if not is_valid_mixed(node):
        raise ExpressionSyntaxError("shuffle nodes must be connected to the root", 0)
    return node


# -- tree-indexed expansions -----------------------------------------------------


def r_via_trees(d: int, n: int) -> DoubleTensor:
    """Level-n part of the right-bracketing element as a sum over area trees."""
    total = zero_double(d, n)
    for tree in enumerate_trees(d, n):
        weight = Fraction(1, coeff_c(tree))
        total = total + tensor_pair(area_eval(tree, d), lie_eval(tree, d)) * weight
    return total


def lambda_via_trees(d: int, n: int) -> DoubleTensor:
    """Level-n part of the logarithm element as a sum over mixed trees."""
    total = zero_double(d, n)
    for tree in enumerate_mixed(d, n):
        weight = coeff_e(tree)
        if weight:
            total = total + tensor_pair(mixed_eval(tree, d), lie_eval(tree, d)) * weight
    return total


def zeta_via_trees(basis: HallBasis, h: HallWord) -> TensorElem:
    """First-kind coordinate as shuffles of iterated areas, anagram-restricted."""
    d = basis.dim
    n = len(h)
    target = tuple(sorted(h.word))
    s_h = basis.dual_pbw(h)
    total = TensorElem(d, {})
    for tree in enumerate_mixed(d, n):
        if tuple(sorted(foliage(tree))) != target:
            continue
        weight = coeff_e(tree)
        if not weight:
            continue
        factor = pairing(s_h, lie_eval(tree, d))
        if factor:
            total = total + mixed_eval(tree, d) * (weight * factor)
    return total


def _basis_scratch(basis: HallBasis, name: str) -> dict:
    box = basis.__dict__.setdefault("_tree_caches", {})
    return box.setdefault(name, {})


def rho_hall(basis: HallBasis, h: HallWord, method: str = "recursion") -> TensorElem:
    """The image of the dual element s(h) under rho, three computable ways."""
    if method == "recursion":
        return _rho_hall_recursive(basis, h)
    if method == "q_trees":
        total = TensorElem(basis.dim, {})
        for tree in enumerate_trees(basis.dim, len(h)):
            q = _q_coefficient(basis, tree, h)
            if q:
                total = total + area_eval(tree, basis.dim) * Fraction(q, coeff_b(tree))
        return total
    if method == "p_trees":
        s_h = basis.dual_pbw(h)
        total = TensorElem(basis.dim, {})
        for tree in enumerate_trees(basis.dim, len(h)):
            p = pairing(s_h, lie_eval(tree, basis.dim))
            if p:
                total = total + area_eval(tree, basis.dim) * (p / coeff_c(tree))
        return total
    raise ValueError("unknown rho_hall method %r" % method)


def _rho_hall_recursive(basis: HallBasis, h: HallWord) -> TensorElem:
    cache = _basis_scratch(basis, "rho_recursion")
    hit = cache.get(h.word)
    if hit is not None:
        return hit
    n = len(h)
    if n == 1:
        result = letter_elem(h.word[0], basis.dim)
    else:
        s_h = basis.dual_pbw(h)
        result = TensorElem(basis.dim, {})
        for n1 in range(1, n):
            for h1 in basis.level(n1):
                for h2 in basis.level(n - n1):
                    if not basis.less(h1, h2):
                        continue
                    factor = pairing(
                        s_h, lie_bracket(basis.bracketing(h1), basis.bracketing(h2))
                    )
                    if factor:
                        result = result + area(
                            _rho_hall_recursive(basis, h1),
                            _rho_hall_recursive(basis, h2),
                        ) * (factor / (n - 1))
    cache[h.word] = result
    return result


def _q_coefficient(basis: HallBasis, tree, h: HallWord) -> Fraction:
    cache = _basis_scratch(basis, "q_coeff")
    key = (tree, h.word)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if is_leaf(tree):
        result = Fraction(int(h.word == (tree,)))
    elif len(h) == 1:
        result = Fraction(0)
    else:
        _, left, right = tree
        n_left, n_right = leaf_count(left), leaf_count(right)
        s_h = basis.dual_pbw(h)
        result = Fraction(0)
        if n_left + n_right == len(h):
            for h1 in basis.level(n_left):
                q1 = _q_coefficient(basis, left, h1)
                if not q1:
                    continue
                for h2 in basis.level(n_right):
                    if not basis.less(h1, h2):
                        continue
                    q2 = _q_coefficient(basis, right, h2)
                    if not q2:
                        continue
                    factor = pairing(
                        s_h,
                        lie_bracket(basis.bracketing(h1), basis.bracketing(h2)),
                    )
                    if factor:
                        result += q1 * q2 * factor
    cache[key] = result
    return result


def hall_tree_of(h: HallWord):
    """The plain area tree mirroring the standard factorization of h."""
    if h.is_letter:
        return h.word[0]
    return (AREA, hall_tree_of(h.left), hall_tree_of(h.right))

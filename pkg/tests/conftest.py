"""Shared oracles and generators for the test suite.

The oracles here are deliberately independent of the library code paths
they check: shuffles by brute-force position enumeration, brackets by a
tiny standalone expansion on dicts, ranks by plain Fraction elimination.
"""

from fractions import Fraction
from itertools import combinations

import random

from areasig import TensorElem


def shuffle_oracle(u, v):
    """All ways to interleave u and v, counted with multiplicity."""
    u, v = tuple(u), tuple(v)
    n = len(u) + len(v)
    out = {}
    for positions in combinations(range(n), len(u)):
        chosen = set(positions)
        ui, vi = iter(u), iter(v)
        word = tuple(next(ui) if i in chosen else next(vi) for i in range(n))
        out[word] = out.get(word, 0) + 1
    return out


def bracket_oracle(x: dict, y: dict) -> dict:
    """Concatenation commutator on raw word->coefficient dicts."""
    out = {}
    for u, cu in x.items():
        for v, cv in y.items():
            out[u + v] = out.get(u + v, 0) + cu * cv
            out[v + u] = out.get(v + u, 0) - cu * cv
    return {w: c for w, c in out.items() if c}


def right_bracketing_oracle(word) -> dict:
    """[l1,[l2,...[l_{n-1},ln]]] expanded with bracket_oracle."""
    word = tuple(word)
    if not word:
        return {}
    out = {word[-1:]: 1}
    for letter in reversed(word[:-1]):
        out = bracket_oracle({(letter,): 1}, out)
    return out


def rank_oracle(vectors):
    """Rank by plain Fraction Gaussian elimination (no fraction-free tricks)."""
    columns = sorted({c for vec in vectors for c in vec})
    rows = [[Fraction(vec.get(c, 0)) for c in columns] for vec in vectors]
    rank = 0
    for col in range(len(columns)):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        head = rows[rank][col]
        rows[rank] = [v / head for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def random_elem(rng: random.Random, d, max_deg, min_deg=0, terms=4):
    data = {}
    for _ in range(rng.randint(1, terms)):
        n = rng.randint(min_deg, max_deg)
        word = tuple(rng.randint(1, d) for _ in range(n))
        data[word] = Fraction(rng.randint(-4, 4), rng.randint(1, 5))
    return TensorElem(d, data)


def random_lie_elem(rng: random.Random, basis, max_level):
    """Random combination of Hall bracketings up to max_level."""
    total = TensorElem(basis.dim, {})
    for h in basis.all_hall_words(max_level):
        if rng.random() < 0.5:
            total = total + basis.bracketing(h) * Fraction(
                rng.randint(-3, 3), rng.randint(1, 3)
            )
    return total

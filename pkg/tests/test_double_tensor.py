import math
import random
from fractions import Fraction

import pytest

from areasig import (
    EmptyWordOperand,
    area,
    box_bracket,
    box_mul,
    coeval_at,
    concat,
    dendriform,
    eval_at,
    exp_box,
    hall_set,
    lambda_element,
    letter_elem,
    lie_bracket,
    log_box,
    nested_box_bracket,
    pre_lie,
    pre_lie_sym,
    r_element,
    rho,
    s_element,
    shuffle,
    signature_pwl,
    tensor_pair,
    word_elem,
    zero,
)
from areasig.double_tensor import d_hat, d_hat_inv, r_hat, unit_double, zero_double
from areasig.discrete import TimeSeries
from areasig.tensor import words_of_length

from conftest import random_elem

F = Fraction


def pair_of_letters(i, j, d=2):
    return tensor_pair(letter_elem(i, d), letter_elem(j, d))


def test_box_mul_examples():
    a = pair_of_letters(1, 1)
    b = pair_of_letters(2, 2)
    product = box_mul(a, b)
    assert product == tensor_pair(
        word_elem("12", 2) + word_elem("21", 2), word_elem("12", 2)
    )
    assert box_mul(unit_double(2), product) == product
    assert box_mul(a, a) == tensor_pair(word_elem("11", 2) * 2, word_elem("11", 2))


def test_dendriform_halves():
    a = pair_of_letters(1, 1)
    b = pair_of_letters(2, 2)
    succ = dendriform(a, b, "succ")
    prec = dendriform(a, b, "prec")
    assert succ == tensor_pair(word_elem("12", 2), word_elem("12", 2))
    assert prec == tensor_pair(word_elem("21", 2), word_elem("12", 2))
    assert succ + prec == box_mul(a, b)


def test_dendriform_rejects_empty_left_factor():
    a = pair_of_letters(1, 1)
    e = unit_double(2)
    with pytest.raises(EmptyWordOperand):
        dendriform(a, e, "succ")
    with pytest.raises(EmptyWordOperand):
        dendriform(e, a, "prec")


def test_pre_lie_examples():
    a = pair_of_letters(1, 1)
    b = pair_of_letters(2, 2)
    x = word_elem("12", 2) - word_elem("21", 2)
    assert pre_lie(a, b) == tensor_pair(word_elem("12", 2), x)
    assert pre_lie_sym(a, b) == tensor_pair(x, x)
    assert pre_lie_sym(a, b) == pre_lie_sym(b, a)
    assert pre_lie_sym(a, a) == pre_lie(a, a) * 2


def test_box_bracket():
    a = pair_of_letters(1, 1)
    b = pair_of_letters(2, 2)
    x = word_elem("12", 2) - word_elem("21", 2)
    got = box_bracket(a, b)
    assert got == tensor_pair(word_elem("12", 2) + word_elem("21", 2), x)
    assert got == box_mul(a, b) - box_mul(b, a)
    assert got == pre_lie(a, b) - pre_lie(b, a)
    assert box_bracket(a, a).is_zero()
    assert (box_bracket(a, b) + box_bracket(b, a)).is_zero()


def test_s_element():
    s = s_element(2, 1)
    assert s == unit_double(2) + pair_of_letters(1, 1) + pair_of_letters(2, 2)
    s3 = s_element(2, 3)
    assert len(s3.proj_right(3)) == 8
    x = word_elem("12", 2) - word_elem("21", 2)
    assert eval_at(x, s_element(2, 2)) == x


def test_r_element_values():
    r1 = r_element(2, 1)
    assert r1 == pair_of_letters(1, 1) + pair_of_letters(2, 2)
    r = r_element(2, 3)
    x = word_elem("12", 2) - word_elem("21", 2)
    assert r.proj_right(2) == tensor_pair(x, x)
    # doubled level three part equals the symmetrized product of lower parts
    assert r.proj_right(3) * 2 == pre_lie_sym(r.proj_right(1), r.proj_right(2))


def test_r_element_methods_agree():
    for d, level in ((2, 5), (3, 3)):
        assert r_element(d, level) == r_element(d, level, "recursion")


def test_coeval_recovers_rho():
    r = r_element(2, 4)
    for n in range(1, 5):
        for w in words_of_length(2, n):
            assert coeval_at(word_elem(w, 2), r) == rho(word_elem(w, 2))


def test_eval_at_pre_lie_example():
    got = eval_at(word_elem("12", 2), pre_lie(pair_of_letters(1, 1), pair_of_letters(2, 2)))
    assert got == word_elem("12", 2) - word_elem("21", 2)


def test_eval_homomorphism_on_grouplike():
    g = signature_pwl(TimeSeries([(0, 0), (1, 2), (3, 1)]), 3)
    a = r_element(2, 3)
    b = s_element(2, 3)
    assert eval_at(g, box_mul(a, b)) == concat(eval_at(g, a), eval_at(g, b), 3)


def test_fixed_point_identities():
    for d, level in ((2, 5), (3, 4)):
        r = r_element(d, level)
        lhs = d_hat(r) - r
        assert lhs == pre_lie(r, r, level)
        assert lhs == pre_lie_sym(r, r, level) * F(1, 2)


def test_s_as_iterated_application():
    r = r_element(2, 5)
    acc = unit_double(2, 5)
    z = unit_double(2, 5)
    while True:
        z = box_mul(r, z, 5)
        if z.is_zero():
            break
        z = d_hat_inv(z)
        acc = acc + z
    assert acc == s_element(2, 5)


def test_r_hat_of_s_is_r():
    assert r_hat(s_element(2, 4)) == r_element(2, 4)


def test_exp_box_example():
    x = pair_of_letters(1, 1)
    got = exp_box(x, 2)
    expected = (
        unit_double(2)
        + x
        + tensor_pair(word_elem("11", 2), word_elem("11", 2))
    )
    assert got == expected


def test_log_box_of_s():
    lam = log_box(s_element(2, 2), 2)
    x = word_elem("12", 2) - word_elem("21", 2)
    expected = (
        pair_of_letters(1, 1)
        + pair_of_letters(2, 2)
        + tensor_pair(x, x) * F(1, 2)
    )
    assert lam == expected


def test_exp_log_round_trip():
    x = (
        pair_of_letters(1, 1)
        + tensor_pair(word_elem("12", 2), word_elem("21", 2)) * F(1, 3)
        + tensor_pair(word_elem("2", 2), word_elem("12", 2)) * F(-2, 5)
    )
    assert log_box(exp_box(x, 4), 4) == x.truncate(4)
    with pytest.raises(EmptyWordOperand):
        exp_box(unit_double(2), 3)
    with pytest.raises(ValueError):
        log_box(pair_of_letters(1, 1), 3)


def test_lambda_methods_agree():
    for d, level in ((2, 5), (3, 3)):
        assert lambda_element(d, level) == lambda_element(d, level, "recursion")


def test_lambda_example_values():
    lam = lambda_element(2, 4)
    one, two = letter_elem(1, 2), letter_elem(2, 2)
    ar, br = area(one, two), lie_bracket(one, two)
    assert lam.proj_right(1) == r_element(2, 1)
    assert lam.proj_right(2) == tensor_pair(ar, br) * F(1, 2)
    level3 = (
        tensor_pair(area(one, ar), lie_bracket(one, br)) * F(1, 6)
        + tensor_pair(area(two, ar), lie_bracket(two, br)) * F(1, 6)
        - tensor_pair(shuffle(one, ar), lie_bracket(one, br)) * F(1, 12)
        - tensor_pair(shuffle(two, ar), lie_bracket(two, br)) * F(1, 12)
    )
    assert lam.proj_right(3) == level3


def test_lambda_hall_decomposition():
    basis = hall_set(2, 4)
    lam = lambda_element(2, 4)
    combined = zero_double(2, 4)
    for h in basis.all_hall_words():
        combined = combined + tensor_pair(basis.zeta(h), basis.bracketing(h), 4)
        # projecting the right factors onto the basis recovers each zeta
        assert coeval_at(basis.dual_pbw(h), lam) == basis.zeta(h)
    assert lam == combined
    assert exp_box(combined, 4) == s_element(2, 4)


def test_r_from_lambda_series():
    lam = lambda_element(2, 5)
    r = r_element(2, 5)
    term = d_hat(lam)
    total = zero_double(2, 5)
    for n in range(1, 6):
        total = total + term * F(1, math.factorial(n))
        term = box_bracket(lam, term, 5)
    assert total == r


def test_nested_box_bracket():
    a = pair_of_letters(1, 1)
    b = pair_of_letters(2, 2)
    c = tensor_pair(word_elem("12", 2), word_elem("12", 2))
    assert nested_box_bracket([a]) == a
    assert nested_box_bracket([a, b]) == box_bracket(a, b)
    assert nested_box_bracket([a, b, c]) == box_bracket(a, box_bracket(b, c))


def test_baker_identity():
    # bracketing against a primitive element commutes with right-bracketing
    rng = random.Random(12)
    basis = hall_set(2, 4)
    for _ in range(6):
        # primitive: left factor anything, right factor a Lie element
        lie_part = zero(2)
        for h in basis.all_hall_words():
            if rng.random() < 0.4:
                lie_part = lie_part + basis.bracketing(h) * F(
                    rng.randint(-2, 2), rng.randint(1, 3)
                )
        left = random_elem(rng, 2, 2)
        if lie_part.is_zero() or left.is_zero():
            continue
        primitive = tensor_pair(left, lie_part, 4)
        q = tensor_pair(
            random_elem(rng, 2, 2), random_elem(rng, 2, 3, min_deg=1), 4
        )
        assert r_hat(box_mul(primitive, q, 4)) == box_bracket(
            primitive, r_hat(q), 4
        )


def test_json_ordering():
    x = tensor_pair(word_elem("12", 2), word_elem("2", 2)) + unit_double(2)
    data = x.to_json_obj()
    assert data[0]["right"] == "e"
    assert data[1] == {"left": "12", "right": "2", "num": "1", "den": "1"}

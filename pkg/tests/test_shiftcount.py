import itertools

import numpy as np
import pytest

from charsum.shiftcount import (closed_form_max3, max_shift_count,
                                shift_count, verify_duality)
from conftest import get_field, get_partition


def test_single_element_subsets():
    f4, p4 = get_field(2, 2), get_partition(2, 2, 3)
    assert shift_count(f4, p4, [1]) == 3
    assert max_shift_count(f4, p4, 1) == (3, (1,))
    f7, p7 = get_field(7), get_partition(7, 1, 2)
    assert shift_count(f7, p7, [1]) == 6


def test_query_validation():
    f7, p7 = get_field(7), get_partition(7, 1, 2)
    with pytest.raises(ValueError):
        shift_count(f7, p7, [1, 1])            # duplicate
    with pytest.raises(ValueError):
        shift_count(f7, p7, [0, 1])            # zero element
    with pytest.raises(ValueError):
        shift_count(f7, p7, [1, 3])            # mixed labels
    with pytest.raises(ValueError):
        max_shift_count(f7, p7, 4)             # coset has only 3 elements
    with pytest.raises(ValueError):
        max_shift_count(f7, p7, 0)


def test_known_maxima():
    f9, p9 = get_field(3, 2), get_partition(3, 2, 2)
    assert max_shift_count(f9, p9, 3)[0] == 1
    f16, p16 = get_field(2, 4), get_partition(2, 4, 3)
    assert max_shift_count(f16, p16, 3)[0] == 1
    f64, p64 = get_field(2, 6), get_partition(2, 6, 3)
    assert max_shift_count(f64, p64, 3)[0] == 8
    f7, p7 = get_field(7), get_partition(7, 1, 2)
    assert max_shift_count(f7, p7, 3)[0] == 1


def test_closed_form_values():
    assert closed_form_max3(get_field(2, 4), 3) == 2
    assert closed_form_max3(get_field(2, 6), 3) == 9
    assert closed_form_max3(get_field(2, 8), 3) == 30
    assert closed_form_max3(get_field(7, 2), 2) == 12      # q = 49, p = 3 mod 4, m even
    assert closed_form_max3(get_field(13), 2) == 3         # p = 1 mod 4
    assert closed_form_max3(get_field(7), 2) == 2          # p = 3 mod 4, m odd
    with pytest.raises(ValueError):
        closed_form_max3(get_field(7), 3)                  # cubic form needs p = 2


@pytest.mark.parametrize("p,m,n,t", [(13, 1, 2, 3), (3, 2, 2, 3), (2, 4, 3, 3),
                                     (7, 1, 2, 3), (13, 1, 2, 2), (13, 1, 2, 4),
                                     (2, 4, 3, 2), (2, 4, 3, 4), (17, 1, 2, 4)])
def test_max_matches_direct_enumeration(p, m, n, t):
    # reference: enumerate every t-subset of coset 0 with the plain counter
    f = get_field(p, m)
    part = get_partition(p, m, n)
    coset0 = [int(x) for x in part.cosets[0]]
    best, best_wit = -1, None
    for combo in itertools.combinations(coset0, t):
        count = shift_count(f, part, combo)
        if count > best:
            best, best_wit = count, combo
    got, wit = max_shift_count(f, part, t)
    assert got == best
    assert wit == best_wit          # lexicographically least maximizer


def test_witness_reproduces_max():
    f, part = get_field(2, 6), get_partition(2, 6, 3)
    n, wit = max_shift_count(f, part, 3)
    assert shift_count(f, part, wit) == n
    assert len(wit) == 3 and len(set(wit)) == 3
    assert all(part.label(e) == 0 for e in wit)


@pytest.mark.parametrize("p,m,n", [(13, 1, 2), (3, 2, 2), (2, 4, 3), (13, 1, 3)])
def test_shift_count_independent_of_coset(p, m, n):
    f = get_field(p, m)
    part = get_partition(p, m, n)
    rng = np.random.default_rng(30)
    for j in range(1, n):
        coset = part.cosets[j]
        if len(coset) < 3:
            continue
        for _ in range(5):
            subset = rng.choice(coset, size=3, replace=False)
            back = [f.mul(int(e), f.pow_(f.alpha, -j)) for e in subset]
            assert all(part.label(e) == 0 for e in back)
            assert (shift_count(f, part, subset)
                    == shift_count(f, part, back))


@pytest.mark.parametrize("p,m,n", [(13, 1, 2), (17, 1, 2), (2, 4, 3)])
def test_monotone_in_subset_size(p, m, n):
    f = get_field(p, m)
    part = get_partition(p, m, n)
    rng = np.random.default_rng(31)
    coset0 = part.cosets[0]
    for _ in range(10):
        subset = list(rng.choice(coset0, size=4, replace=False))
        n4 = shift_count(f, part, subset)
        n3 = shift_count(f, part, subset[:3])
        n2 = shift_count(f, part, subset[:2])
        assert n4 <= n3 <= n2


def test_beta_zero_is_counted():
    # all elements of a one-element subset of coset 0 stay in coset 0 at beta=0
    f13, p13 = get_field(13), get_partition(13, 1, 2)
    subset = [int(x) for x in p13.cosets[0][:3]]
    lab_rows = [p13.label(e) for e in subset]
    assert all(c == 0 for c in lab_rows)        # beta = 0 keeps the label


def test_duality_reports():
    rep = verify_duality(get_field(2, 4), 3)
    assert (rep.max_rep, rep.max_shift3, rep.holds) == (2, 1, True)
    assert rep.closed_form == 2
    rep = verify_duality(get_field(7), 2)
    assert (rep.max_rep, rep.max_shift3, rep.holds) == (2, 1, True)
    rep = verify_duality(get_field(3, 2), 2)
    assert (rep.max_rep, rep.max_shift3, rep.holds) == (2, 1, True)
    assert rep.closed_form == 2


def test_duality_odd_cubic_has_no_prediction_but_holds():
    rep = verify_duality(get_field(13), 3)
    assert rep.closed_form is None
    assert rep.holds


def test_duality_requires_triples():
    with pytest.raises(ValueError):
        verify_duality(get_field(5), 2)          # coset size 2
    with pytest.raises(ValueError):
        verify_duality(get_field(2, 2), 3)       # coset size 1


def test_duality_json_shape():
    body = verify_duality(get_field(2, 4), 3).to_json()
    assert body["max_R"] == 2 and body["max_N3"] == 1 and body["holds"]
    assert body["field"] == {"p": 2, "m": 4, "q": 16}
    assert set(body["max_R_witness"]) == {"beta_label", "beta", "i", "j"}

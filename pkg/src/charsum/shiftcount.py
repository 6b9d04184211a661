"""Shift counts: how many beta move t fixed same-coset elements into one coset.

For a set S = {e_1, ..., e_t} of distinct nonzero elements sharing a
coset label, N(S) counts the beta for which all shifted values beta + e_i
are nonzero and share a single coset label.  A shifted value of 0 belongs
to no coset, so beta = -e_i is excluded automatically; beta = 0 itself is
admissible (it trivially keeps the common label) and is counted.

Maxima are searched over t-subsets of coset 0 only: rescaling a subset of
coset j by alpha^(-j) is a bijection beta -> beta * alpha^(-j) on the
solutions, so every coset attains the same maximum.

The search keeps, per candidate prefix, the per-beta "required label" row
(or a dead marker), which makes the last level a single vectorized
comparison; subtrees that cannot beat the current best are pruned, and
the first maximum in lexicographic element order is kept, so the reported
witness is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import registry
from .characters import CosetPartition, partition
from .cyclotomic import jacobi_cubic
from .errors import UnsupportedCharacterError
from .field import FieldTable
from .repcount import closed_rep_class_table

DEAD = -2  # rows carry labels 0..n-1, -1 at zero elements, DEAD when ruled out


def shift_count(field: FieldTable, part: CosetPartition, elements) -> int:
    """N for an explicit subset; validates the subset invariants."""
    registry.mark("shift_count")
    els = [int(e) for e in elements]
    if len(set(els)) != len(els):
        raise ValueError("elements must be distinct")
    if any(e == 0 for e in els):
        raise ValueError("elements must be nonzero")
    labs = {part.label(e) for e in els}
    if len(labs) != 1:
        raise ValueError("elements must share one coset label")
    lab = part.labels
    count = 0
    for beta in range(field.q):
        first = -1
        ok = True
        for e in els:
            c = lab[field.add(beta, e)]
            if c < 0 or (first >= 0 and c != first):
                ok = False
                break
            first = int(c)
        if ok:
            count += 1
    return count


def _label_rows(field: FieldTable, part: CosetPartition,
                elements: np.ndarray) -> np.ndarray:
    """Row per element e: label of (beta + e) for every beta (-1 at zero)."""
    return part.labels[field.add_outer(elements, field._arange)]


def _scan_max(rows: np.ndarray, t: int) -> tuple[int, tuple[int, ...]]:
    """Max subset count over t-subsets of the row owners, lex-first witness."""
    k = rows.shape[0]
    best = -1
    best_wit: tuple[int, ...] = ()

    def extend(req: np.ndarray, live: int, chosen: list[int], lo: int) -> None:
        nonlocal best, best_wit
        depth = len(chosen)
        if depth == t:
            if live > best:
                best, best_wit = live, tuple(chosen)
            return
        last = k - (t - depth) + 1
        if depth == t - 1:
            cand = rows[lo:last]
            if len(cand) == 0:
                return
            counts = (cand == req).sum(axis=1)
            pos = int(np.argmax(counts))
            if counts[pos] > best:
                best, best_wit = int(counts[pos]), tuple(chosen) + (lo + pos,)
            return
        for e in range(lo, last):
            nreq = np.where(rows[e] == req, req, DEAD)
            nlive = int((nreq != DEAD).sum())
            if nlive > best:
                extend(nreq, nlive, chosen + [e], e + 1)

    for e0 in range(k - t + 1):
        req = np.where(rows[e0] >= 0, rows[e0], DEAD)
        live = int((req != DEAD).sum())
        if live > best or t == 1:
            if t == 1:
                if live > best:
                    best, best_wit = live, (e0,)
            else:
                extend(req, live, [e0], e0 + 1)
    return best, best_wit


def max_shift_count(field: FieldTable, part: CosetPartition,
                    t: int) -> tuple[int, tuple[int, ...]]:
    """Exhaustive maximum of N over t-subsets of coset 0, with witness.

    The witness is the lexicographically least maximizing subset in
    element-index order, independent of search parallelization.
    """
    registry.mark("max_shift_count")
    if t < 1:
        raise ValueError("t must be positive")
    coset0 = part.cosets[0]
    if len(coset0) < t:
        raise ValueError(
            f"coset size {len(coset0)} is too small for t = {t}")
    rows = _label_rows(field, part, coset0)
    best, wit = _scan_max(rows, t)
    return best, tuple(int(coset0[w]) for w in wit)


def closed_form_max3(field: FieldTable, n: int) -> int:
    """Predicted value of 1 + max N(3) from the case closed forms.

    Quadratic: (q-1)/4 for p = 1 mod 4; (q+1)/4 for p = 3 mod 4, m odd;
    (q-1)/4 for p = 3 mod 4, m even.  Cubic (characteristic 2 only):
    (q + 2^(m/2) - 2)/9 for m/2 even, (q + 2^(m/2+1) + 1)/9 for m/2 odd.
    """
    registry.mark("closed_form_max3")
    q, p, m = field.q, field.p, field.m
    if n == 2:
        if p == 2:
            raise UnsupportedCharacterError("quadratic case needs odd p")
        if p % 4 == 1 or m % 2 == 0:
            num = q - 1
        else:
            num = q + 1
        if num % 4:
            raise ArithmeticError("closed form is not an integer")
        return num // 4
    if n == 3:
        if p != 2:
            raise ValueError(
                "the cubic closed form is stated for characteristic 2 only")
        if m % 2:
            raise UnsupportedCharacterError("cubic case needs even m")
        h = m // 2
        num = q + 2 ** h - 2 if h % 2 == 0 else q + 2 ** (h + 1) + 1
        if num % 9:
            raise ArithmeticError("closed form is not an integer")
        return num // 9
    raise ValueError("n must be 2 or 3")


@dataclass
class DualityReport:
    """Both sides of the max-representation / shift-count identity."""

    p: int
    m: int
    q: int
    n: int
    max_rep: int
    max_rep_witness: dict
    max_shift3: int
    max_shift3_witness: tuple[int, ...]
    closed_form: int | None
    holds: bool

    def to_json(self) -> dict:
        return {
            "field": {"p": self.p, "m": self.m, "q": self.q},
            "n": self.n,
            "max_R": self.max_rep,
            "max_R_witness": self.max_rep_witness,
            "max_N3": self.max_shift3,
            "max_N3_witness": [int(e) for e in self.max_shift3_witness],
            "closed_form_prediction": self.closed_form,
            "holds": self.holds,
        }


def verify_duality(field: FieldTable, n: int,
                   part: CosetPartition | None = None) -> DualityReport:
    """Compute max R over (beta != 0, i, j) and 1 + max N(3) independently.

    The left side sweeps the closed-form class table; the right side is the
    exhaustive subset search.  The closed-form prediction is attached where
    its case analysis applies (always for n = 2, characteristic 2 for n = 3).
    """
    registry.mark("verify_duality")
    if part is None:
        part = partition(field, n)
    if len(part.cosets[0]) < 3:
        raise ValueError("cosets too small: no 3-element subsets exist")
    jac = jacobi_cubic(field, part) if n == 3 else None
    table = closed_rep_class_table(field, part, jac)
    flat = int(np.argmax(table))
    c, i, j = np.unravel_index(flat, table.shape)
    max_rep = int(table[c, i, j])
    witness = {"beta_label": int(c), "beta": int(part.cosets[c][0]),
               "i": int(i), "j": int(j)}
    max_n3, wit3 = max_shift_count(field, part, 3)
    try:
        closed = closed_form_max3(field, n)
    except ValueError:
        closed = None
    return DualityReport(field.p, field.m, field.q, n, max_rep, witness,
                         max_n3, wit3, closed, max_rep == 1 + max_n3)

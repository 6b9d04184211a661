"""Finite field construction and arithmetic for F_{p^m} at desk scale.

Elements are identified with their integer index: the element with
coordinates (g0, g1, ..., g_{m-1}) in the polynomial basis
{1, eta, ..., eta^{m-1}} has index g0 + g1*p + ... + g_{m-1}*p^{m-1}.
Index 0 is the zero element, index 1 the multiplicative identity.  All
derived tables (discrete logs, coset labels, group-ring coefficient
vectors) are dense arrays addressed by this index.

Two canonical choices make every output reproducible across runs:

* the default modulus is the lexicographically smallest monic
  irreducible polynomial of degree m, comparing coefficient tuples from
  the leading coefficient down to the constant term (a user-supplied
  modulus is accepted and verified for cross-checks against other
  systems);
* the primitive element ``alpha`` is the generator with the smallest
  index (indices 2, 3, ... are tried in order).

Everything here is exhaustive-by-design, so field sizes are capped
(default 2**16, override via the ``size_cap`` argument or the CLI's
CHARSUM_SIZE_CAP environment variable).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import registry

DEFAULT_SIZE_CAP = 1 << 16

# Full q x q addition tables are cached on the field only below this size;
# larger fields fall back to row-at-a-time digit arithmetic.
ADD_TABLE_CAP = 2048


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test; fields here are desk-scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_powers(limit: int, minimum: int = 2) -> list[tuple[int, int, int]]:
    """All (p, m, q = p**m) with minimum <= q <= limit, sorted by q."""
    out = []
    for p in range(2, limit + 1):
        if not is_prime(p):
            continue
        q, m = p, 1
        while q <= limit:
            if q >= minimum:
                out.append((p, m, q))
            q *= p
            m += 1
    out.sort(key=lambda t: t[2])
    return out


# ---------------------------------------------------------------------------
# Polynomial arithmetic over Z_p.  Coefficient lists, constant term first,
# trailing zeros trimmed.  Only used during field construction.

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - df
            for i, fi in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fi) % p
        a.pop()
    return _ptrim(a)


def _pmulmod(a, b, f, p):
    return _pmod(_pmul(a, b, p), f, p)


def _xpowmod(e: int, f: list[int], p: int) -> list[int]:
    """x**e mod f by square and multiply."""
    result = [1]
    base = _pmod([0, 1], f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        inv = pow(b[-1], -1, p)
        bm = [(c * inv) % p for c in b]
        a, b = b, _pmod(a, bm, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over Z_p.

    Certified by x**(p**m) == x (mod f) together with
    gcd(x**(p**(m/l)) - x, f) == 1 for every prime l dividing m.
    """
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        raise ValueError("monic polynomial of positive degree expected")
    if m == 1:
        return True

    def xpow_minus_x(k: int) -> list[int]:
        diff = _xpowmod(p ** k, f, p)
        diff += [0] * (2 - len(diff))
        diff[1] = (diff[1] - 1) % p
        return _ptrim(diff)

    if xpow_minus_x(m):
        return False
    for ell in prime_factors(m):
        if len(_pgcd(f, xpow_minus_x(m // ell), p)) != 1:
            return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over Z_p.

    Candidate tuples are compared leading-coefficient side first, constant
    term last.  For m == 1 the convention is the identity modulus x.
    """
    registry.mark("find_irreducible")
    return _find_irreducible_cached(p, m)


@functools.lru_cache(maxsize=None)
def _find_irreducible_cached(p: int, m: int) -> tuple[int, ...]:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return (0, 1)
    for k in range(p ** m):
        low = [(k // p ** i) % p for i in range(m)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible of degree {m} over Z_{p}")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """Validated description of F_{p^m}: characteristic, degree, modulus.

    The modulus is a length-(m+1) coefficient tuple, constant term first,
    leading coefficient 1, irreducible over Z_p.
    """

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.m < 1:
            raise ValueError("m must be positive")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.m}")
        if any(not 0 <= c < self.p for c in mod):
            raise ValueError("modulus coefficients out of range")
        if self.m > 1 and not is_irreducible(list(mod), self.p):
            raise ValueError(f"modulus {mod} is reducible over Z_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.m

    def label(self) -> str:
        return str(self.p) if self.m == 1 else f"{self.p}^{self.m}"


def parse_field_spec(text: str) -> tuple[int, int, tuple[int, ...] | None]:
    """Parse 'p', 'p^m' or 'p^m:c0,c1,...,cm' into (p, m, modulus-or-None)."""
    text = text.strip()
    modulus = None
    if ":" in text:
        base, coeffs = text.split(":", 1)
        modulus = tuple(int(c) for c in coeffs.split(","))
    else:
        base = text
    if "^" in base:
        ps, ms = base.split("^", 1)
        p, m = int(ps), int(ms)
    else:
        p, m = int(base), 1
    return p, m, modulus


class FieldTable:
    """Complete arithmetic model of F_{p^m}, dense tables indexed 0..q-1."""

    __slots__ = ("spec", "p", "m", "q", "alpha", "exp", "dlog_table",
                 "_digits", "_pplace", "_neg", "_arange", "_add_table",
                 "_trace")

    def __init__(self, spec: FieldSpec, size_cap: int | None = None):
        cap = DEFAULT_SIZE_CAP if size_cap is None else int(size_cap)
        if spec.q > cap:
            raise ValueError(f"q = {spec.q} exceeds the size cap {cap}")
        self.spec = spec
        self.p, self.m, self.q = spec.p, spec.m, spec.q
        self._pplace = self.p ** np.arange(self.m, dtype=np.int64)
        self._digits = ((np.arange(self.q, dtype=np.int64)[:, None]
                         // self._pplace) % self.p).astype(np.int32)
        self._neg = ((self.p - self._digits) % self.p) @ self._pplace
        self._arange = np.arange(self.q, dtype=np.int64)
        self._add_table = None
        self._trace = None
        self.alpha = self._find_alpha()
        self.exp = self._build_exp()
        self.dlog_table = np.full(self.q, -1, dtype=np.int64)
        self.dlog_table[self.exp] = np.arange(self.q - 1, dtype=np.int64)

    # -- construction helpers (polynomial arithmetic, no tables yet) --

    def _idx_to_poly(self, x: int) -> list[int]:
        return _ptrim([(x // self.p ** i) % self.p for i in range(self.m)])

    def _poly_to_idx(self, poly: list[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(poly))

    def _raw_mul(self, x: int, y: int) -> int:
        f = list(self.spec.modulus)
        return self._poly_to_idx(
            _pmulmod(self._idx_to_poly(x), self._idx_to_poly(y), f, self.p))

    def _raw_pow(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, x)
            x = self._raw_mul(x, x)
            e >>= 1
        return r

    def _find_alpha(self) -> int:
        if self.q == 2:
            return 1
        cofactors = [(self.q - 1) // ell for ell in prime_factors(self.q - 1)]
        for g in range(2, self.q):
            if all(self._raw_pow(g, e) != 1 for e in cofactors):
                return g
        raise RuntimeError("no primitive element found")

    def _build_exp(self) -> np.ndarray:
        q, p, m = self.q, self.p, self.m
        e = np.empty(max(q - 1, 1), dtype=np.int64)
        if m == 1:
            cur = 1
            for h in range(q - 1):
                e[h] = cur
                cur = cur * self.alpha % p
            if cur != 1:
                raise RuntimeError("alpha does not have order q-1")
            return e
        # multiplication by alpha is linear; iterate its matrix on the
        # coordinate vector to enumerate alpha**h for h = 0..q-2
        f = list(self.spec.modulus)
        apoly = self._idx_to_poly(self.alpha)
        mat = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            col = _pmulmod(apoly, [0] * i + [1], f, p)
            for r, c in enumerate(col):
                mat[r, i] = c
        cur = np.zeros(m, dtype=np.int64)
        cur[0] = 1
        for h in range(q - 1):
            e[h] = cur @ self._pplace
            cur = (mat @ cur) % p
        if e[0] != 1 or cur @ self._pplace != 1:
            raise RuntimeError("alpha does not have order q-1")
        return e

    # -- scalar element operations --

    def add(self, x: int, y: int) -> int:
        if self.m == 1:
            return (x + y) % self.p
        return int(((self._digits[x] + self._digits[y]) % self.p)
                   @ self._pplace)

    def neg(self, x: int) -> int:
        return int(self._neg[x])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(self.dlog_table[x] + self.dlog_table[y])
                            % (self.q - 1)])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[(-self.dlog_table[x]) % (self.q - 1)])

    def pow_(self, x: int, e: int) -> int:
        if x == 0:
            if e <= 0:
                raise ZeroDivisionError("0 cannot be raised to a non-positive power")
            return 0
        return int(self.exp[(int(self.dlog_table[x]) * e) % (self.q - 1)])

    def dlog(self, x: int) -> int:
        """Exponent h with alpha**h == x; x == 0 is a domain error."""
        registry.mark("dlog")
        if x == 0:
            raise ValueError("discrete log of zero is undefined")
        return int(self.dlog_table[x])

    def frobenius(self, x: int) -> int:
        return self.pow_(x, self.p)

    def trace(self, x: int) -> int:
        """Absolute trace to Z_p, returned as an integer in [0, p)."""
        return int(self.trace_vec()[x])

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digits[x])

    def index(self, coeffs) -> int:
        cs = list(coeffs)
        if len(cs) != self.m or any(not 0 <= c < self.p for c in cs):
            raise ValueError("bad coordinate vector")
        return sum(c * self.p ** i for i, c in enumerate(cs))

    # -- vectorized helpers (hot paths) --

    def add_vec(self, x: int, ys: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (ys + x) % self.p
        return ((self._digits[ys] + self._digits[x]) % self.p) @ self._pplace

    def add_outer(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Matrix of sums xs[i] + ys[j]; row-chunked to bound the digit temporaries."""
        xs = np.asarray(xs, dtype=np.int64)
        if self.m == 1:
            return (xs[:, None] + ys) % self.p
        out = np.empty((len(xs), len(ys)), dtype=np.int64)
        step = max(1, (1 << 24) // (max(len(ys), 1) * self.m))
        dy = self._digits[ys][None, :, :]
        for lo in range(0, len(xs), step):
            hi = min(lo + step, len(xs))
            d = (self._digits[xs[lo:hi]][:, None, :] + dy) % self.p
            out[lo:hi] = d @ self._pplace
        return out

    def neg_vec(self, ys: np.ndarray) -> np.ndarray:
        return self._neg[ys]

    def mul_vec(self, x: int, ys: np.ndarray) -> np.ndarray:
        out = np.zeros(len(ys), dtype=np.int64)
        if x == 0:
            return out
        mask = ys != 0
        out[mask] = self.exp[(self.dlog_table[x] + self.dlog_table[ys[mask]])
                             % (self.q - 1)]
        return out

    def add_table(self) -> np.ndarray | None:
        """Cached q x q table of sums, or None above ADD_TABLE_CAP."""
        if self.q > ADD_TABLE_CAP:
            return None
        if self._add_table is None:
            self._add_table = self.add_outer(self._arange, self._arange) \
                                  .astype(np.int32)
        return self._add_table

    def add_row(self, x: int) -> np.ndarray:
        """The permutation y -> x + y as an index vector."""
        t = self.add_table()
        if t is not None:
            return t[x]
        return self.add_vec(x, self._arange)

    def trace_vec(self) -> np.ndarray:
        """Absolute traces of all elements as integers in [0, p)."""
        if self._trace is None:
            acc = self._digits.astype(np.int64)
            cur = self._arange.copy()
            for _ in range(1, self.m):
                nxt = np.zeros(self.q, dtype=np.int64)
                nz = cur != 0
                nxt[nz] = self.exp[(self.dlog_table[cur[nz]] * self.p)
                                   % (self.q - 1)]
                cur = nxt
                acc += self._digits[cur]
            acc %= self.p
            if self.m > 1 and acc[:, 1:].any():
                raise RuntimeError("trace left the prime subfield")
            self._trace = acc[:, 0].copy()
        return self._trace

    def poly_str(self, x: int) -> str:
        """Readable form of an element in the eta basis."""
        cs = self.coeffs(x)
        terms = []
        for i in range(self.m - 1, -1, -1):
            c = cs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "eta" if i == 1 else f"eta^{i}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"FieldTable(F_{self.spec.label()}, alpha={self.alpha})"


def build_field(p: int, m: int = 1, modulus=None,
                size_cap: int | None = None) -> FieldTable:
    """Construct F_{p^m} with the canonical (or a supplied) modulus."""
    registry.mark("build_field")
    if modulus is None:
        modulus = find_irreducible(p, m)
    return FieldTable(FieldSpec(p, m, tuple(modulus)), size_cap=size_cap)

"""Exact arithmetic in small finite fields GF(p^e).

An element is a plain int in [0, p^e): its base-p digits are the coordinates
in the polynomial basis 1, X, ..., X^(e-1) modulo a monic irreducible
polynomial.  The residue class of X is required to be a multiplicative
generator, written ``epsilon``; the canonical enumeration order of elements
is 0, eps^0, eps^1, ..., eps^(order-2), and the canonical text form of an
element is ``"0"`` or ``"e^j"``.

All operations are lookup-table based, so they accept numpy integer arrays
as well as scalars and broadcast elementwise.  For fields of square order
q^2 the conjugation x -> x^q, the norm x -> x^(q+1) and the fixed subfield
GF(q) are available; these underpin the Hermitian machinery in the rest of
the package.

Polynomials over a field are plain tuples of elements, lowest coefficient
first, with no trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

import functools
import itertools
import re

import numpy as np

__all__ = [
    "Field",
    "square_field",
    "poly_trim",
    "poly_degree",
    "poly_is_monic",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_pow",
    "poly_divmod",
    "poly_gcd",
    "poly_eval",
    "is_irreducible",
    "smallest_irreducible",
    "format_poly",
    "parse_poly",
]

# Dense pairwise tables keep every operation a single gather; that is only
# sensible for desk-scale fields (every target run has order <= 64).
_MAX_ORDER = 4096


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# digit-vector polynomial arithmetic over Z_p, used only while bootstrapping
# a Field (before its tables exist)
# ---------------------------------------------------------------------------


def _dv_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _dv_mod(num: list[int], den: list[int], p: int) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    lead_inv = pow(den[-1], -1, p)
    while len(_dv_trim(num)) - 1 >= dd:
        shift = len(num) - 1 - dd
        factor = num[-1] * lead_inv % p
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
        _dv_trim(num)
    return num


def _dv_is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for m in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=m):
            g = list(tail) + [1]
            if not _dv_trim(_dv_mod(f, g, p)):
                return False
    return True


def _reduction_rows(modulus_low: tuple[int, ...], p: int, e: int) -> list[list[int]]:
    """Digit vectors of X^e, ..., X^(2e-2) reduced modulo the monic modulus."""
    rows = [[(-c) % p for c in modulus_low]]
    for _ in range(e - 2):
        cur = rows[-1]
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            nxt = [(n + top * r) % p for n, r in zip(nxt, rows[0])]
        rows.append(nxt)
    return rows


def _digits_mulmod(a, b, red, p, e):
    conv = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] = (conv[i + j] + ai * bj) % p
    out = conv[:e]
    for i in range(e, 2 * e - 1):
        c = conv[i]
        if c:
            ri = red[i - e]
            out = [(o + c * r) % p for o, r in zip(out, ri)]
    return out


class Field:
    """GF(p^e) presented by a monic irreducible modulus with primitive X.

    ``modulus`` lists the e coefficients of the modulus below X^e, constant
    term first, as residues mod p; the full modulus is X^e + sum(c_i X^i).
    Construction fails if p is not prime, the modulus is reducible, or the
    residue class of X does not generate the multiplicative group.

    Instances are immutable after construction and safe to share across
    threads and processes; every operation is a pure function of its inputs.
    """

    def __init__(self, p: int, e: int, modulus):
        p, e = int(p), int(e)
        modulus = tuple(int(c) for c in modulus)
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if len(modulus) != e:
            raise ValueError(
                f"modulus must list the {e} coefficients below X^{e} (got {len(modulus)})"
            )
        if any(not 0 <= c < p for c in modulus):
            raise ValueError("modulus coefficients must be residues in [0, p)")
        order = p**e
        if order > _MAX_ORDER:
            raise ValueError(f"field order {order} exceeds the supported maximum {_MAX_ORDER}")
        full = list(modulus) + [1]
        if not _dv_is_irreducible(full, p):
            raise ValueError("modulus is reducible over the prime field")

        self.p = p
        self.e = e
        self.modulus = modulus
        self.order = order
        self.q = p ** (e // 2) if e % 2 == 0 else None

        # powers of epsilon (the residue class of X)
        if e == 1:
            eps = [(-modulus[0]) % p]
            red = None
        else:
            eps = [0, 1] + [0] * (e - 2)
            red = _reduction_rows(modulus, p, e)
        weights = [p**i for i in range(e)]
        vals = []
        x = [1] + [0] * (e - 1)
        for _ in range(order - 1):
            vals.append(sum(d * w for d, w in zip(x, weights)))
            if e == 1:
                x = [x[0] * eps[0] % p]
            else:
                x = _digits_mulmod(x, eps, red, p, e)
        if sum(d * w for d, w in zip(x, weights)) != 1 or len(set(vals)) != order - 1:
            raise ValueError("the residue class of X is not a primitive element")

        self._build_tables(vals)
        self.elements = (0,) + tuple(vals)

    def _build_tables(self, vals: list[int]) -> None:
        p, e, order = self.p, self.e, self.order
        nunits = order - 1
        expv = np.array(vals, dtype=np.int16)
        self._expvals = expv
        log = np.full(order, -1, dtype=np.int32)
        log[expv] = np.arange(nunits)
        self._log = log

        tmp = np.arange(order, dtype=np.int32)
        digs = np.empty((order, e), dtype=np.int32)
        for i in range(e):
            digs[:, i] = tmp % p
            tmp //= p
        pw = (p ** np.arange(e)).astype(np.int32)
        self._neg = (((p - digs) % p) @ pw).astype(np.int16)

        add = np.empty((order, order), dtype=np.int16)
        step = max(1, (1 << 22) // (order * e))
        for s in range(0, order, step):
            t = min(order, s + step)
            add[s:t] = (((digs[s:t, None, :] + digs[None, :, :]) % p) @ pw).astype(np.int16)
        self._add = add
        self._sub = add[:, self._neg]

        mul = np.zeros((order, order), dtype=np.int16)
        expd = np.concatenate([expv, expv])
        js = np.arange(nunits, dtype=np.int32)
        for s in range(0, nunits, max(1, step)):
            t = min(nunits, s + max(1, step))
            mul[np.ix_(vals[s:t], vals)] = expd[js[s:t, None] + js[None, :]]
        self._mul = mul

        inv = np.zeros(order, dtype=np.int16)
        inv[expv] = expv[(nunits - np.arange(nunits)) % nunits]
        self._inv = inv

        ordidx = np.zeros(order, dtype=np.int32)
        ordidx[expv] = 1 + np.arange(nunits)
        self._ordidx = ordidx

        if self.q is not None:
            q = self.q
            conj = np.zeros(order, dtype=np.int16)
            conj[expv] = expv[(np.arange(nunits) * q) % nunits]
            self._conj = conj
            norm = np.zeros(order, dtype=np.int16)
            norm[expv] = expv[(np.arange(nunits) * (q + 1)) % nunits]
            self._norm = norm

    # -- basic arithmetic (scalars or numpy arrays) --------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def epsilon(self) -> int:
        return int(self._expvals[1]) if self.order > 2 else int(self._expvals[0])

    def add(self, a, b):
        return self._add[a, b]

    def sub(self, a, b):
        return self._sub[a, b]

    def mul(self, a, b):
        return self._mul[a, b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def div(self, a, b):
        if np.any(np.asarray(b) == 0):
            raise ZeroDivisionError("division by zero")
        return self._mul[a, self._inv[b]]

    def pow(self, a, n) -> int:
        a, n = int(a), int(n)
        if a == 0:
            if n == 0:
                return 1
            if n > 0:
                return 0
            raise ZeroDivisionError("negative power of zero")
        return int(self._expvals[(int(self._log[a]) * n) % (self.order - 1)])

    def conj(self, a):
        """Conjugation x -> x^q; defined for fields of square order only."""
        if self.q is None:
            raise ValueError("conjugation requires an even extension degree")
        return self._conj[a]

    def norm(self, a):
        """Norm x -> x^(q+1) onto the fixed subfield GF(q)."""
        if self.q is None:
            raise ValueError("norm requires an even extension degree")
        return self._norm[a]

    # -- enumeration and serialization ---------------------------------------

    def exp(self, j: int) -> int:
        """epsilon^j (j taken modulo order-1)."""
        return int(self._expvals[int(j) % (self.order - 1)])

    def log(self, a) -> int:
        a = int(a)
        if a == 0:
            raise ValueError("log of zero")
        return int(self._log[a])

    def order_index(self, a) -> int:
        """Position of an element in the canonical order 0, e^0, e^1, ..."""
        return int(self._ordidx[a])

    def nonzero_elements(self) -> tuple[int, ...]:
        return self.elements[1:]

    def subfield_units(self) -> tuple[int, ...]:
        """The nonzero elements of the subfield GF(q) fixed by conj."""
        if self.q is None:
            raise ValueError("subfield units require an even extension degree")
        return tuple(self.exp((self.q + 1) * j) for j in range(self.q - 1))

    def coeffs(self, a) -> tuple[int, ...]:
        a = int(a)
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) != self.e or any(not 0 <= c < self.p for c in cs):
            raise ValueError(f"need {self.e} residues in [0, {self.p})")
        return sum(c * self.p**i for i, c in enumerate(cs))

    def format_element(self, a) -> str:
        a = int(a)
        return "0" if a == 0 else f"e^{self.log(a)}"

    def parse_element(self, text: str) -> int:
        m = re.fullmatch(r"0|e\^(\d+)", text.strip())
        if not m:
            raise ValueError(f"bad element text {text!r}; expected '0' or 'e^j'")
        if m.group(1) is None:
            return 0
        j = int(m.group(1))
        if j > self.order - 2:
            raise ValueError(f"exponent {j} out of range 0..{self.order - 2}")
        return self.exp(j)

    def spec_text(self) -> str:
        return f"p={self.p} e={self.e} mod={','.join(str(c) for c in self.modulus)}"

    @classmethod
    def from_spec_text(cls, text: str) -> "Field":
        m = re.fullmatch(r"p=(\d+) e=(\d+) mod=([0-9]+(?:,[0-9]+)*)", text.strip())
        if not m:
            raise ValueError(f"bad field text {text!r}")
        return cls(int(m.group(1)), int(m.group(2)), [int(c) for c in m.group(3).split(",")])

    # -- plumbing -------------------------------------------------------------

    def __reduce__(self):
        return (Field, (self.p, self.e, self.modulus))

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"Field(GF({self.order}): {self.spec_text()})"


# Presentations matching the witness registry: each fixes epsilon by the
# stated relation, e.g. e^2 = e + 1 over GF(9).
_PRESENTATIONS: dict[int, tuple[int, int, tuple[int, ...]]] = {
    3: (3, 2, (2, 2)),  # X^2 - X - 1
    4: (2, 4, (1, 1, 0, 0)),  # X^4 - X - 1
    5: (5, 2, (2, 4)),  # X^2 - X - 3
    7: (7, 2, (3, 6)),  # X^2 - X - 4
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if _is_prime(p) and q % p == 0:
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            if n != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, m
    raise ValueError(f"{q} is not a prime power")


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, e: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, e, modulus)


def square_field(q: int) -> Field:
    """The default presentation of GF(q^2) for a prime power q.

    The registered presentations are used where available; otherwise the
    lexicographically first monic irreducible modulus with primitive X is
    selected (coefficients scanned high degree first, constant term last).
    """
    q = int(q)
    if q in _PRESENTATIONS:
        return _cached_field(*_PRESENTATIONS[q])
    p, m = _factor_prime_power(q)
    e = 2 * m
    for tail in itertools.product(range(p), repeat=e):
        cand = tuple(reversed(tail))
        try:
            return _cached_field(p, e, cand)
        except ValueError:
            continue
    raise ValueError(f"no primitive presentation found for GF({q * q})")


# ---------------------------------------------------------------------------
# polynomials over a Field: tuples of elements, lowest coefficient first
# ---------------------------------------------------------------------------


def poly_trim(f) -> tuple[int, ...]:
    f = tuple(int(c) for c in f)
    n = len(f)
    while n and f[n - 1] == 0:
        n -= 1
    return f[:n]


def poly_degree(f) -> int:
    """Degree of a trimmed polynomial; the zero polynomial has degree -1."""
    return len(poly_trim(f)) - 1


def poly_is_monic(f) -> bool:
    f = poly_trim(f)
    return bool(f) and f[-1] == 1


def poly_add(field: Field, f, g) -> tuple[int, ...]:
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return poly_trim(int(field.add(a, b)) for a, b in zip(f, g))


def poly_sub(field: Field, f, g) -> tuple[int, ...]:
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return poly_trim(int(field.sub(a, b)) for a, b in zip(f, g))


def poly_mul(field: Field, f, g) -> tuple[int, ...]:
    f, g = poly_trim(f), poly_trim(g)
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = int(field.add(out[i + j], field.mul(a, b)))
    return poly_trim(out)


def poly_pow(field: Field, f, n: int) -> tuple[int, ...]:
    if n < 0:
        raise ValueError("negative polynomial power")
    out = (1,)
    for _ in range(n):
        out = poly_mul(field, out, f)
    return out


def poly_divmod(field: Field, f, g) -> tuple[tuple[int, ...], tuple[int, ...]]:
    f, g = poly_trim(f), poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), f
    rem = list(f)
    quot = [0] * (len(f) - len(g) + 1)
    ginv = int(field.inv(g[-1]))
    for shift in range(len(f) - len(g), -1, -1):
        c = rem[shift + len(g) - 1]
        if c:
            factor = int(field.mul(c, ginv))
            quot[shift] = factor
            for i, gc in enumerate(g):
                rem[shift + i] = int(field.sub(rem[shift + i], field.mul(factor, gc)))
    return poly_trim(quot), poly_trim(rem)


def poly_gcd(field: Field, f, g) -> tuple[int, ...]:
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_divmod(field, f, g)[1]
    if f and f[-1] != 1:
        lead_inv = int(field.inv(f[-1]))
        f = tuple(int(field.mul(c, lead_inv)) for c in f)
    return f


def poly_eval(field: Field, f, a) -> int:
    acc = 0
    for c in reversed(poly_trim(f)):
        acc = int(field.add(field.mul(acc, a), c))
    return acc


def _poly_mulmod(field, a, b, m):
    return poly_divmod(field, poly_mul(field, a, b), m)[1]


def _poly_powmod(field, base, n, m):
    out = (1,)
    base = poly_divmod(field, base, m)[1]
    while n:
        if n & 1:
            out = _poly_mulmod(field, out, base, m)
        base = _poly_mulmod(field, base, base, m)
        n >>= 1
    return out


def is_irreducible(field: Field, f) -> bool:
    """Irreducibility over the field, by the standard Frobenius-power test."""
    f = poly_trim(f)
    d = poly_degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    if f[-1] != 1:
        lead_inv = int(field.inv(f[-1]))
        f = tuple(int(field.mul(c, lead_inv)) for c in f)
    x = (0, 1)
    big_q = field.order
    for r in _prime_divisors(d):
        t = _poly_powmod(field, x, big_q ** (d // r), f)
        if poly_degree(poly_gcd(field, poly_sub(field, t, x), f)) != 0:
            return False
    t = _poly_powmod(field, x, big_q**d, f)
    return poly_sub(field, t, x) == ()


def smallest_irreducible(field: Field, d: int) -> tuple[int, ...]:
    """The first monic irreducible of degree d in the canonical order.

    Candidates X^d + c_(d-1) X^(d-1) + ... + c_0 are scanned
    lexicographically by the element order of (c_(d-1), ..., c_0), constant
    term last.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    for tail in itertools.product(field.elements, repeat=d):
        f = tuple(reversed(tail)) + (1,)
        if is_irreducible(field, f):
            return f
    raise RuntimeError("unreachable: irreducibles exist in every degree")


def format_poly(field: Field, f) -> str:
    f = poly_trim(f)
    if not f:
        return "0"
    return ",".join(field.format_element(c) for c in f)


def parse_poly(field: Field, text: str) -> tuple[int, ...]:
    text = text.strip()
    if text == "0":
        return ()
    return poly_trim(field.parse_element(part) for part in text.split(","))

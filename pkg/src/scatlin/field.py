"""Arithmetic in F_{2^{6e}}, the degree-six extension of F_q with q = 2^e.

Field elements are plain Python ints: bit i is the coefficient of X^i in
the residue class modulo the defining polynomial, so 0 and 1 are the field
zero and one.  A :class:`FieldCtx` carries the modulus and all precomputed
tables; it is immutable after construction and safe to share.

The subfield lattice F_2 < F_q < F_{q^2} < F_{q^3} < F_{q^6} is realised
inside the single extension as fixed sets of the Frobenius maps
x -> x^(q^j), which are precomputed as GF(2)-linear maps.
"""

from __future__ import annotations

import numpy as np

from .errors import ModulusError, ParameterError

N_EXT = 6  # extension degree over F_q is fixed throughout the package


# ---------------------------------------------------------------------------
# GF(2)[X] helpers on int-encoded polynomials (bit i = coefficient of X^i)
# ---------------------------------------------------------------------------

def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pmod(a: int, m: int) -> int:
    dm = _pdeg(m)
    while _pdeg(a) >= dm and a:
        a ^= m << (_pdeg(a) - dm)
    return a


def _pmulmod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a = _pmod(a << 1, m)
    return r


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
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


def is_irreducible(poly: int) -> bool:
    """Rabin test for a GF(2) polynomial given as a bit vector."""
    d = _pdeg(poly)
    if d < 1:
        return False
    # x^(2^d) == x mod poly
    t = 2
    for _ in range(d):
        t = _pmulmod(t, t, poly)
    if t != 2:
        return False
    for p in _prime_factors(d):
        t = 2
        for _ in range(d // p):
            t = _pmulmod(t, t, poly)
        if _pgcd(t ^ 2, poly) != 1:
            return False
    return True


def default_modulus(degree: int) -> int:
    """Lexicographically smallest irreducible GF(2) polynomial of the degree.

    Coefficient vectors (c_0, c_1, ..., c_{d-1}) are compared reading from
    the constant term upward, which makes the choice reproducible across
    machines and releases.  The constant term of an irreducible polynomial
    is 1, so only (c_1, ..., c_{d-1}) is searched; candidates with an even
    number of terms (root at 1) are skipped before the Rabin test.
    """
    for k in range(1 << (degree - 1)):
        cand = (1 << degree) | 1
        for i in range(1, degree):
            if (k >> (degree - 1 - i)) & 1:
                cand |= 1 << i
        if cand.bit_count() % 2 == 0:
            continue
        if is_irreducible(cand):
            return cand
    raise ModulusError(f"no irreducible polynomial of degree {degree}")  # pragma: no cover


class FieldCtx:
    """The field F_{q^6} with q = 2^e, plus its Frobenius/table machinery."""

    def __init__(self, e: int, modulus: int | None = None):
        if not isinstance(e, int) or e < 1:
            raise ParameterError(f"e must be a positive integer, got {e!r}")
        self.e = e
        self.n = N_EXT
        self.dim = N_EXT * e            # degree over GF(2)
        self.q = 1 << e
        self.order = 1 << self.dim      # q^6
        self.mult_order = self.order - 1
        self.hex_width = -(-self.dim // 4)

        if modulus is None:
            modulus = default_modulus(self.dim)
        else:
            if _pdeg(modulus) != self.dim:
                raise ModulusError(
                    f"modulus degree {_pdeg(modulus)} != {self.dim}")
            if not is_irreducible(modulus):
                raise ModulusError("modulus is reducible over GF(2)")
        self.modulus = modulus

        self._sq_cols = self._squaring_columns()
        # frobenius_tables[j]: columns of the GF(2)-linear map x -> x^(q^j)
        self.frobenius_tables = tuple(
            self._frobenius_columns(j) for j in range(N_EXT))
        self.generator = self._find_generator()

        # numpy tables, built lazily on first vectorised use
        self._np_exp = None
        self._np_log = None
        self._frob_luts: dict = {}

    # -- construction helpers ------------------------------------------------

    def _squaring_columns(self) -> tuple:
        cols = []
        for i in range(self.dim):
            cols.append(_pmod(1 << (2 * i), self.modulus))
        return tuple(cols)

    def _apply_cols(self, cols, x: int) -> int:
        r = 0
        while x:
            low = x & -x
            r ^= cols[low.bit_length() - 1]
            x ^= low
        return r

    def _frobenius_columns(self, j: int) -> tuple:
        # x^(q^j) = x^(2^(e*j)): apply the squaring map e*j times to each basis vector
        reps = (self.e * j) % self.dim
        cols = [1 << i for i in range(self.dim)]
        for _ in range(reps):
            cols = [self._apply_cols(self._sq_cols, c) for c in cols]
        return tuple(cols)

    def _find_generator(self) -> int:
        primes = _prime_factors(self.mult_order)
        for g in range(2, self.order):
            if all(self.pow(g, self.mult_order // p) != 1 for p in primes):
                return g
        raise ModulusError("no multiplicative generator found")  # pragma: no cover

    # -- scalar arithmetic ----------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        r = 0
        top = 1 << self.dim
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return r

    def sqr(self, a: int) -> int:
        return self._apply_cols(self._sq_cols, a)

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("0 has no negative powers")
            return 0
        k %= self.mult_order
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.sqr(a)
            k >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return self.pow(a, self.mult_order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, x: int, j: int) -> int:
        """x^(q^j); j is taken mod 6."""
        return self._apply_cols(self.frobenius_tables[j % N_EXT], x)

    def pow2k(self, x: int, k: int) -> int:
        """x^(2^k): the k-th power of the generating automorphism of
        Aut(F_{q^6}), which has order 6e."""
        for _ in range(k % self.dim):
            x = self.sqr(x)
        return x

    def norm(self, x: int, ell: int) -> int:
        """N_{q^6/q^ell}(x) = x^((q^6-1)/(q^ell-1)); lands in F_{q^ell}."""
        self._check_ell(ell)
        return self.pow(x, self.mult_order // ((1 << (self.e * ell)) - 1))

    def trace(self, x: int, ell: int) -> int:
        """Tr_{q^6/q^ell}(x), the sum of the 6/ell conjugates over F_{q^ell}."""
        self._check_ell(ell)
        r = 0
        for i in range(N_EXT // ell):
            r ^= self.frobenius(x, ell * i)
        return r

    def in_subfield(self, x: int, ell: int) -> bool:
        """True iff x lies in F_{q^ell}, i.e. x^(q^ell) = x."""
        self._check_ell(ell)
        return self.frobenius(x, ell) == x

    @staticmethod
    def _check_ell(ell: int) -> None:
        if ell not in (1, 2, 3, 6):
            raise ParameterError(f"ell must divide 6, got {ell}")

    # -- element text format ---------------------------------------------------

    def to_hex(self, x: int) -> str:
        return format(x, f"0{self.hex_width}x")

    def from_hex(self, s: str) -> int:
        x = int(s, 16)
        if not 0 <= x < self.order:
            raise ParameterError(f"element {s!r} out of range for q^6 = {self.order}")
        return x

    def elements(self) -> range:
        return range(self.order)

    # -- numpy machinery --------------------------------------------------------

    def _ensure_tables(self) -> None:
        if self._np_exp is not None:
            return
        m = self.mult_order
        exp = np.empty(m, dtype=np.uint32)
        block = 1 << 12
        if m <= 2 * block:
            v = 1
            for k in range(m):
                exp[k] = v
                v = self.mul(v, self.generator)
        else:
            v = 1
            for k in range(block):
                exp[k] = v
                v = self.mul(v, self.generator)
            # advance a whole block at a time with the linear map y -> g^block * y
            h = self.pow(self.generator, block)
            luts = self._linear_map_luts(lambda y: self.mul(h, y))
            nblocks = -(-m // block)
            for bi in range(1, nblocks):
                prev = exp[(bi - 1) * block: bi * block]
                nxt = self._apply_luts(luts, prev)
                take = min(block, m - bi * block)
                exp[bi * block: bi * block + take] = nxt[:take]
        log = np.zeros(self.order, dtype=np.uint32)
        log[exp] = np.arange(m, dtype=np.uint32)
        # doubled exp table: index by la + lb without reducing mod (q^6 - 1)
        self._np_exp = np.concatenate([exp, exp[: m - 1]])
        self._np_log = log

    def _linear_map_luts(self, fn) -> list:
        nchunks = -(-self.dim // 8)
        luts = []
        for c in range(nchunks):
            tab = np.empty(256, dtype=np.uint32)
            for v in range(256):
                tab[v] = fn((v << (8 * c)) & (self.order - 1))
            luts.append(tab)
        return luts

    @staticmethod
    def _apply_luts(luts, arr):
        acc = luts[0][arr & 0xFF]
        for c in range(1, len(luts)):
            acc = acc ^ luts[c][(arr >> (8 * c)) & 0xFF]
        return acc

    @property
    def np_log(self):
        self._ensure_tables()
        return self._np_log

    @property
    def np_exp(self):
        self._ensure_tables()
        return self._np_exp

    def all_nonzero(self):
        return np.arange(1, self.order, dtype=np.uint32)

    def vfrob(self, arr, j: int):
        """Vectorised x -> x^(q^j) on a uint32 array."""
        j %= N_EXT
        if j not in self._frob_luts:
            self._frob_luts[j] = self._linear_map_luts(
                lambda y: self.frobenius(y, j))
        return self._apply_luts(self._frob_luts[j], arr)

    def vmul(self, a, b):
        """Vectorised field product of two uint32 arrays (broadcastable)."""
        self._ensure_tables()
        la = self._np_log[a]
        lb = self._np_log[b]
        r = self._np_exp[la.astype(np.uint32) + lb]
        return np.where((a == 0) | (b == 0), np.uint32(0), r)

    def vmul_scalar(self, c: int, arr):
        if c == 0:
            return np.zeros_like(arr)
        self._ensure_tables()
        lc = int(self._np_log[c])
        r = self._np_exp[self._np_log[arr] + np.uint32(lc)]
        return np.where(arr == 0, np.uint32(0), r)

    def vinv(self, arr):
        """Vectorised inverse; the array must not contain 0."""
        self._ensure_tables()
        return self._np_exp[self.mult_order - self._np_log[arr]]

    def vdiv(self, a, b):
        """Vectorised a/b; entries of b must be nonzero."""
        self._ensure_tables()
        m = np.uint32(self.mult_order)
        idx = (self._np_log[a] + (m - self._np_log[b])) % m
        return np.where(a == 0, np.uint32(0), self._np_exp[idx])

    def vpow_index(self, exponent: int, log_arr):
        """exp[(exponent * log) mod (q^6-1)] for an array of discrete logs."""
        self._ensure_tables()
        idx = (log_arr.astype(np.uint64) * np.uint64(exponent % self.mult_order)) % np.uint64(self.mult_order)
        return self._np_exp[idx.astype(np.uint32)]

    def __repr__(self):
        return f"FieldCtx(e={self.e}, modulus={format(self.modulus, 'x')})"


_CTX_CACHE: dict = {}


def make_field(e: int, modulus_override: int | str | None = None) -> FieldCtx:
    """Build (or fetch the cached) F_{2^{6e}} context.

    The default modulus is the lexicographically smallest irreducible
    polynomial of degree 6e, so runs are reproducible; pass
    ``modulus_override`` (int bit vector or hex string) to cross-check
    representation independence.
    """
    if not isinstance(e, int) or isinstance(e, bool) or e < 1:
        raise ParameterError(f"e must be a positive integer, got {e!r}")
    if isinstance(modulus_override, str):
        modulus_override = int(modulus_override, 16)
    key = (e, modulus_override)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = FieldCtx(e, modulus_override)
    return _CTX_CACHE[key]

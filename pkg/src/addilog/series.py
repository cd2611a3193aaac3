"""Truncated Laurent series with pessimistic precision tracking."""

from __future__ import annotations

from .errors import DivisionByZero, TruncationError

_EXACT = 1 << 30  # precision of exact constants


class TruncatedSeries:
    """sum_{i=v0}^{N-1} c_i T^i + O(T^N) over ``field``.

    ``coeffs[k]`` is the coefficient of ``T^(v0 + k)``.  Every stored
    coefficient is exact; anything at or beyond ``N`` is unknown.
    """

    __slots__ = ("field", "v0", "coeffs", "N")

    def __init__(self, field, v0, coeffs, N):
        coeffs = list(coeffs)[: max(N - v0, 0)]
        # strip known leading zeros
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            v0 += 1
        self.field = field
        self.v0 = v0
        self.coeffs = tuple(coeffs)
        self.N = N

    @classmethod
    def from_polynomial(cls, poly, N):
        return cls(poly.field, 0, list(poly.coeffs) + [poly.field.zero] * max(N - len(poly.coeffs), 0), N)

    def __getitem__(self, i):
        return self.coefficient(i)

    def coefficient(self, i):
        if i >= self.N:
            raise TruncationError(f"coefficient of order {i} requested from a series known only below {self.N}")
        k = i - self.v0
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def valuation(self):
        """Order of the first nonzero coefficient."""
        if not self.coeffs:
            raise TruncationError(f"series vanishes to the known order {self.N}")
        return self.v0

    def is_known_zero(self):
        return not self.coeffs

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({self.field.format(c)})*T^{self.v0 + k}")
        return " + ".join(terms + [f"O(T^{self.N})"])

    def _dense(self, lo, hi):
        return [self.coefficient(i) if i < self.N else self.field.zero for i in range(lo, hi)]

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries(self.field, 0, [self.field(other)], _EXACT)
        N = min(self.N, other.N)
        lo = min(self.v0, other.v0, N)
        return TruncatedSeries(self.field, lo, [a + b for a, b in zip(self._dense(lo, N), other._dense(lo, N))], N)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, self.v0, [-c for c in self.coeffs], self.N)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -self.field(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = self.field(other)
            return TruncatedSeries(self.field, self.v0, [x * c for x in self.coeffs], self.N)
        if not self.coeffs or not other.coeffs:
            lo_a = self.v0 if self.coeffs else self.N
            lo_b = other.v0 if other.coeffs else other.N
            return TruncatedSeries(self.field, 0, [], min(self.N + lo_b, other.N + lo_a))
        v = self.v0 + other.v0
        N = min(self.N + other.v0, other.N + self.v0)
        out = [self.field.zero] * max(N - v, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] = out[k] + a * b
        return TruncatedSeries(self.field, v, out, N)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise DivisionByZero("series inverse of a series with unknown leading term")
        v = self.v0
        rel = self.N - v
        d = self.coeffs
        inv0 = self.field.one / d[0]
        q = []
        for k in range(rel):
            acc = self.field.one if k == 0 else self.field.zero
            for j in range(1, min(k, len(d) - 1) + 1):
                acc = acc - d[j] * q[k - j]
            q.append(acc * inv0)
        return TruncatedSeries(self.field, -v, q, -v + rel)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self * (self.field.one / self.field(other))
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries(self.field, 0, [self.field.one], _EXACT)
        for _ in range(n):
            result = result * self
        return result

    def derivative(self):
        """Termwise d/dT."""
        out = [c * (self.v0 + k) for k, c in enumerate(self.coeffs)]
        return TruncatedSeries(self.field, self.v0 - 1, out, self.N - 1)

    def truncate(self, N):
        return TruncatedSeries(self.field, self.v0, self.coeffs, min(N, self.N))

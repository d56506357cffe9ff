"""Vectorized field arithmetic on numpy arrays of element indices."""

import numpy as np

from .field import FieldSpec


class VecField:
    def __init__(self, F: FieldSpec):
        self.F = F
        self.p, self.e, self.q = F.p, F.e, F.q
        q = self.q
        self.digits = np.array([[F.coords(a)[t] for t in range(self.e)] for a in range(q)],
                               dtype=np.int64) if self.e > 1 else None
        self.weights = self.p ** np.arange(self.e, dtype=np.int64)
        if self.e > 1:
            exp, log = F._logexp()
            self.exp = np.array(exp, dtype=np.int64)
            self.log = np.array(log, dtype=np.int64)

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = self.digits[a], self.digits[b]
        return ((da + db) % self.p) @ self.weights

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return ((-self.digits[a]) % self.p) @ self.weights

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow(self, a, n):
        if n == 0:
            return np.ones_like(a)
        if self.e == 1:
            res = np.ones_like(a)
            base = a.copy()
            while n:
                if n & 1:
                    res = (res * base) % self.p
                base = (base * base) % self.p
                n >>= 1
            return res
        out = self.exp[(self.log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0, out)

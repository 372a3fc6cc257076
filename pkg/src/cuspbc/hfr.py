"""Parser and evaluator for single-orbital Slater-type-orbital expansions
R(r) = sum_i c_i N_i r^{n_i - 1} e^{-zeta_i r} as tabulated in the
Hartree-Fock-Roothaan literature.

File format: plain text, '#' comments, one `n zeta c` triple per line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError


@dataclass(frozen=True)
class HFROrbital:
    terms: tuple  # of (n, zeta, c)

    def __post_init__(self):
        terms = tuple((int(n), float(z), float(c)) for n, z, c in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise DomainError("orbital needs at least one term")
        for n, z, _ in terms:
            if n < 1:
                raise DomainError("principal number n must be >= 1")
            if not (z > 0.0):
                raise DomainError("zeta must be positive")

    def radial(self, r):
        rs = np.asarray(r, dtype=float)
        out = np.zeros_like(rs)
        for n, z, c in self.terms:
            norm = math.sqrt((2.0 * z) ** (2 * n + 1) / math.factorial(2 * n))
            out = out + c * norm * rs ** (n - 1) * np.exp(-z * rs)
        return out

    def _moment(self, k: int) -> float:
        val, _ = quad(lambda r: self.radial(r) ** 2 * r ** k, 0.0, np.inf,
                      limit=200)
        return val

    @property
    def norm_sq(self) -> float:
        return self._moment(2)

    @property
    def mean_inv_r(self) -> float:
        """<1/r> by radial quadrature, normalization included."""
        return self._moment(1) / self.norm_sq

    @classmethod
    def from_text(cls, text: str) -> "HFROrbital":
        terms = []
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise DomainError(
                    f"orbital file line {ln}: expected 'n zeta c', got {raw!r}"
                )
            try:
                terms.append((int(parts[0]), float(parts[1]), float(parts[2])))
            except ValueError as exc:
                raise DomainError(f"orbital file line {ln}: {exc}") from exc
        return cls(tuple(terms))

    @classmethod
    def from_file(cls, path) -> "HFROrbital":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

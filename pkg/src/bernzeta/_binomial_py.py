"""Pure-Python incremental binomial transform (reference backend).

Given coefficients d_0, d_1, ... stored as fixed-point integers with a
per-index binary scale, ``push`` appends the next coefficient and returns

    A_m = sum_{k<=m} C(m, k) d_k

scaled like d_0.  The state is the last anti-diagonal of the Pascal triangle
T_j = d^{(j)}_{m-j}, so each push costs O(m) additions and shifts and needs
no multiplications.
"""

from __future__ import annotations

__all__ = ["BinomialTransform"]


class BinomialTransform:
    backend = "python"

    def __init__(self, width_bits: int):
        self.width_bits = int(width_bits)
        self._diag: list[int] = []
        self._shifts: list[int] = []
        # same representable range as the compiled backend's limb layout
        self._lim = 1 << (64 * ((self.width_bits + 63) // 64) - 1)

    def __len__(self) -> int:
        return len(self._diag)

    def push(self, coeff: int, shift: int = 0) -> int:
        """Append d_m (scaled by 2^(s_m)); ``shift`` is s_m - s_{m-1}."""
        diag = self._diag
        m = len(diag)
        if m:
            self._shifts.append(shift)
        shifts = self._shifts
        lim = self._lim
        if not -lim <= coeff < lim:
            raise OverflowError("coefficient does not fit the transform width")
        prev = coeff
        for j in range(1, m + 1):
            d = shifts[m - j]
            old = diag[j - 1]
            diag[j - 1] = prev
            prev = old + (prev >> d if d >= 0 else prev << -d)
            if not -lim <= prev < lim:
                raise OverflowError("binomial transform exceeded its fixed width")
        diag.append(prev)
        return prev

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled incremental binomial transform.

Same contract and bit-for-bit the same results as ``_binomial_py``: values
are fixed-width two's-complement integers held in 64-bit limbs, right shifts
are arithmetic (floor), left shifts fill with zeros.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

cdef inline uint64_t _limb(const uint64_t* a, Py_ssize_t i, Py_ssize_t n, uint64_t ext) noexcept nogil:
    if i < 0:
        return 0
    if i >= n:
        return ext
    return a[i]


cdef void _add_shifted(uint64_t* out, const uint64_t* a, const uint64_t* b,
                       long d, Py_ssize_t n) noexcept nogil:
    # out = a + (b >> d)   (d < 0 means b << -d)
    cdef uint64_t ext = <uint64_t>0 - (b[n - 1] >> 63)
    cdef Py_ssize_t i, q
    cdef int r
    cdef uint64_t lo, hi, s, t, carry = 0
    if 0 < d < 64:
        # common case: sub-limb arithmetic right shift
        r = <int>d
        for i in range(n - 1):
            s = (b[i] >> r) | (b[i + 1] << (64 - r))
            t = a[i] + s
            lo = t < s
            t += carry
            carry = lo | (t < carry)
            out[i] = t
        s = (b[n - 1] >> r) | (ext << (64 - r))
        out[n - 1] = a[n - 1] + s + carry
    elif d >= 0:
        q = d >> 6
        r = d & 63
        for i in range(n):
            lo = _limb(b, i + q, n, ext)
            if r:
                hi = _limb(b, i + q + 1, n, ext)
                s = (lo >> r) | (hi << (64 - r))
            else:
                s = lo
            t = a[i] + s
            lo = t < s
            t += carry
            carry = lo | (t < carry)
            out[i] = t
    else:
        q = (-d) >> 6
        r = (-d) & 63
        for i in range(n):
            lo = _limb(b, i - q, n, ext)
            if r:
                hi = _limb(b, i - q - 1, n, ext)
                s = (lo << r) | (hi >> (64 - r))
            else:
                s = lo
            t = a[i] + s
            lo = t < s
            t += carry
            carry = lo | (t < carry)
            out[i] = t


cdef inline bint _fits(const uint64_t* a, Py_ssize_t n) noexcept nogil:
    # top limb must be pure sign extension of the limb below
    cdef uint64_t ext = <uint64_t>0 - (a[n - 2] >> 63)
    return a[n - 1] == ext


cdef class BinomialTransform:
    cdef uint64_t* _data
    cdef uint64_t* _tmp
    cdef long* _shifts
    cdef Py_ssize_t _n
    cdef Py_ssize_t _len
    cdef Py_ssize_t _cap
    cdef readonly int width_bits
    backend = "cython"

    def __cinit__(self, int width_bits):
        self.width_bits = width_bits
        self._n = (width_bits + 63) // 64 + 1
        self._len = 0
        self._cap = 0
        self._data = NULL
        self._shifts = NULL
        self._tmp = <uint64_t*>malloc(3 * self._n * sizeof(uint64_t))
        if self._tmp == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self._data)
        free(self._shifts)
        free(self._tmp)

    def __len__(self):
        return self._len

    cdef void _grow(self) except *:
        cdef Py_ssize_t cap = 64 if self._cap == 0 else 2 * self._cap
        cdef uint64_t* data = <uint64_t*>realloc(self._data, cap * self._n * sizeof(uint64_t))
        if data == NULL:
            raise MemoryError()
        self._data = data
        cdef long* sh = <long*>realloc(self._shifts, cap * sizeof(long))
        if sh == NULL:
            raise MemoryError()
        self._shifts = sh
        self._cap = cap

    cdef void _load(self, uint64_t* dst, object value) except *:
        cdef bytes raw = int(value).to_bytes(self._n * 8, "little", signed=True)
        memcpy(dst, <const char*>raw, self._n * 8)

    cdef object _store(self, const uint64_t* src):
        return int.from_bytes((<const char*>src)[: self._n * 8], "little", signed=True)

    def push(self, coeff, long shift=0):
        """Append d_m (scaled by 2^(s_m)); ``shift`` is s_m - s_{m-1}."""
        cdef Py_ssize_t n = self._n
        cdef Py_ssize_t m = self._len
        cdef Py_ssize_t j
        cdef uint64_t* old = self._tmp
        cdef uint64_t* saved = self._tmp + n
        cdef uint64_t* swap
        cdef uint64_t* data
        cdef bint ok = True
        coeff = int(coeff)
        lim = (<object>1) << (64 * (n - 1) - 1)
        if not -lim <= coeff < lim:
            raise OverflowError("coefficient does not fit the transform width")
        if m + 1 > self._cap:
            self._grow()
        data = self._data
        if m:
            self._shifts[m - 1] = shift
        memcpy(old, data, n * 8)
        self._load(data, coeff)
        with nogil:
            for j in range(1, m + 1):
                if j < m:
                    memcpy(saved, data + j * n, n * 8)
                _add_shifted(data + j * n, old, data + (j - 1) * n, self._shifts[m - j], n)
                if not _fits(data + j * n, n):
                    ok = False
                    break
                swap = old
                old = saved
                saved = swap
        if not ok:
            raise OverflowError("binomial transform exceeded its fixed width")
        self._len = m + 1
        return self._store(data + m * n)

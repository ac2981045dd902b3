# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled alignment-error kernels.

Same contracts as kernels.fallback: byte-map buffers are uint8 cells of
0 or 255, packed buffers are uint64 words with one bit per pixel,
LSB-first, zero-padded rows.
"""

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    static inline unsigned long long mtb_popcount64(unsigned long long x)
    {
        return (unsigned long long)__builtin_popcountll(x);
    }
    #else
    static inline unsigned long long mtb_popcount64(unsigned long long x)
    {
        x = x - ((x >> 1) & 0x5555555555555555ULL);
        x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL);
        x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0FULL;
        return (x * 0x0101010101010101ULL) >> 56;
    }
    #endif
    """
    unsigned long long mtb_popcount64(unsigned long long x) nogil

ctypedef unsigned char u8
ctypedef unsigned long long u64


def count_ones_bytemap(const u8[:, ::1] cells):
    cdef Py_ssize_t y, x
    cdef long long total = 0
    for y in range(cells.shape[0]):
        for x in range(cells.shape[1]):
            total += cells[y, x] != 0
    return total


def count_ones_packed(const u64[:, ::1] words):
    cdef Py_ssize_t y, j
    cdef long long total = 0
    for y in range(words.shape[0]):
        for j in range(words.shape[1]):
            total += mtb_popcount64(words[y, j])
    return total


cdef inline u64 _word_shifted_pos(const u64* row, Py_ssize_t nwords,
                                  Py_ssize_t j, Py_ssize_t q, int r) nogil:
    # Word j of the row after moving content toward higher bit indices by
    # q whole words plus r bits (0 <= r < 64).
    cdef u64 w = 0
    if j - q >= 0:
        w = row[j - q] << r
        if r != 0 and j - q - 1 >= 0:
            w |= row[j - q - 1] >> (64 - r)
    return w


cdef inline u64 _word_shifted_neg(const u64* row, Py_ssize_t nwords,
                                  Py_ssize_t j, Py_ssize_t q, int r) nogil:
    # Word j after moving content toward lower bit indices.
    cdef u64 w = 0
    if j + q < nwords:
        w = row[j + q] >> r
        if r != 0 and j + q + 1 < nwords:
            w |= row[j + q + 1] << (64 - r)
    return w


def shifted_error_packed(const u64[:, ::1] a, const u64[:, ::1] ea,
                         const u64[:, ::1] b, const u64[:, ::1] eb,
                         Py_ssize_t dx, Py_ssize_t dy):
    cdef Py_ssize_t h = a.shape[0]
    cdef Py_ssize_t nwords = a.shape[1]
    cdef Py_ssize_t y0 = dy if dy > 0 else 0
    cdef Py_ssize_t y1 = h + (dy if dy < 0 else 0)
    cdef Py_ssize_t y, sy, j, q
    cdef int r
    cdef u64 bw, ew
    cdef long long total = 0
    cdef const u64* brow
    cdef const u64* ebrow

    if y1 <= y0:
        return 0
    if dx >= 0:
        q = dx >> 6
        r = <int>(dx & 63)
        for y in range(y0, y1):
            sy = y - dy
            brow = &b[sy, 0]
            ebrow = &eb[sy, 0]
            for j in range(nwords):
                bw = _word_shifted_pos(brow, nwords, j, q, r)
                ew = _word_shifted_pos(ebrow, nwords, j, q, r)
                total += mtb_popcount64((a[y, j] ^ bw) & ea[y, j] & ew)
    else:
        q = (-dx) >> 6
        r = <int>((-dx) & 63)
        for y in range(y0, y1):
            sy = y - dy
            brow = &b[sy, 0]
            ebrow = &eb[sy, 0]
            for j in range(nwords):
                bw = _word_shifted_neg(brow, nwords, j, q, r)
                ew = _word_shifted_neg(ebrow, nwords, j, q, r)
                total += mtb_popcount64((a[y, j] ^ bw) & ea[y, j] & ew)
    return total


def shifted_error_bytemap(const u8[:, ::1] a, const u8[:, ::1] ea,
                          const u8[:, ::1] b, const u8[:, ::1] eb,
                          Py_ssize_t dx, Py_ssize_t dy):
    cdef Py_ssize_t h = a.shape[0]
    cdef Py_ssize_t w = a.shape[1]
    cdef Py_ssize_t x0 = dx if dx > 0 else 0
    cdef Py_ssize_t x1 = w + (dx if dx < 0 else 0)
    cdef Py_ssize_t y0 = dy if dy > 0 else 0
    cdef Py_ssize_t y1 = h + (dy if dy < 0 else 0)
    cdef Py_ssize_t y, sy, x
    cdef long long total = 0

    if x1 <= x0 or y1 <= y0:
        return 0
    for y in range(y0, y1):
        sy = y - dy
        for x in range(x0, x1):
            total += ((a[y, x] ^ b[sy, x - dx]) & ea[y, x] & eb[sy, x - dx]) != 0
    return total

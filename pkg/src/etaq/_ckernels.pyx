# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython convolution kernels; same API and algorithms as _kernels_py.

Coefficients are arbitrary-precision Python ints, so the arithmetic
itself stays in CPython's big-int routines; what the extension removes
is interpreter dispatch in the schoolbook loops and in Kronecker
packing/unpacking.
"""

DEF SCHOOLBOOK_WORK_LIMIT = 6000

BACKEND_NAME = "cython"


def conv_trunc(xs: list, ys: list, nout):
    """First ``nout`` coefficients of the product of two coefficient lists."""
    cdef Py_ssize_t n_out = nout
    cdef Py_ssize_t lx, ly, nnz_x = 0, nnz_y = 0, i, n
    if n_out <= 0:
        return []
    xs = xs[:n_out]
    ys = ys[:n_out]
    lx = len(xs)
    ly = len(ys)
    if lx == 0 or ly == 0:
        return []
    for i in range(lx):
        if xs[i]:
            nnz_x += 1
    for i in range(ly):
        if ys[i]:
            nnz_y += 1
    n = lx + ly - 1
    if n_out < n:
        n = n_out
    if nnz_x == 0 or nnz_y == 0:
        return [0] * n
    if min(nnz_x * ly, nnz_y * lx) <= SCHOOLBOOK_WORK_LIMIT:
        if nnz_y * lx < nnz_x * ly:
            xs, ys = ys, xs
        return _schoolbook(xs, ys, n)
    return _kronecker(xs, ys, n)


cdef list _schoolbook(list xs, list ys, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i, j, jmax, ly = len(ys)
    cdef object xi, yj
    for i in range(len(xs)):
        xi = xs[i]
        if xi:
            jmax = ly
            if n - i < jmax:
                jmax = n - i
            for j in range(jmax):
                yj = ys[j]
                if yj:
                    out[i + j] = out[i + j] + xi * yj
    return out


cdef Py_ssize_t _digit_width(list xs, list ys):
    cdef Py_ssize_t mx = 0, my = 0, b, nmin, bits
    cdef object v
    for v in xs:
        b = (-v if v < 0 else v).bit_length()
        if b > mx:
            mx = b
    for v in ys:
        b = (-v if v < 0 else v).bit_length()
        if b > my:
            my = b
    nmin = min(len(xs), len(ys))
    bits = mx + my + (<object> nmin).bit_length() + 2
    return (bits + 7) // 8


cdef object _pack(list xs, Py_ssize_t width, bint positive):
    cdef list parts = []
    cdef object v
    for v in xs:
        if positive:
            parts.append((v if v > 0 else 0).to_bytes(width, "little"))
        else:
            parts.append((-v if v < 0 else 0).to_bytes(width, "little"))
    return int.from_bytes(b"".join(parts), "little")


cdef list _kronecker(list xs, list ys, Py_ssize_t n):
    cdef Py_ssize_t width = _digit_width(xs, ys)
    cdef Py_ssize_t buf_len, pb, nb, k, lo
    cdef list out = []
    xp = _pack(xs, width, True)
    xm = _pack(xs, width, False)
    yp = _pack(ys, width, True)
    ym = _pack(ys, width, False)
    pos = xp * yp + xm * ym
    neg = xp * ym + xm * yp
    buf_len = width * n
    pb = (pos.bit_length() + 7) // 8
    nb = (neg.bit_length() + 7) // 8
    pos_b = pos.to_bytes(buf_len if buf_len > pb else pb, "little")
    neg_b = neg.to_bytes(buf_len if buf_len > nb else nb, "little")
    for k in range(n):
        lo = k * width
        out.append(
            int.from_bytes(pos_b[lo : lo + width], "little")
            - int.from_bytes(neg_b[lo : lo + width], "little")
        )
    return out


def pow_trunc(xs: list, e, nout):
    """First ``nout`` coefficients of ``xs**e`` for e >= 0 (binary powering)."""
    cdef long long ee = e
    if ee < 0:
        raise ValueError("pow_trunc requires e >= 0")
    if nout <= 0:
        return []
    out = [1]
    base = xs[:nout]
    while ee:
        if ee & 1:
            out = conv_trunc(out, base, nout)
        ee >>= 1
        if ee:
            base = conv_trunc(base, base, nout)
    return out

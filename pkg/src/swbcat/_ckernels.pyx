# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the inner loops in :mod:`swbcat._pykernels`.

Same functions, same signatures, same results.
"""
from libc.stdlib cimport malloc, free
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING, PyBytes_GET_SIZE


def component_labels(int n, pairs):
    """Label vertices ``0..n-1`` by the smallest vertex of their component."""
    cdef int* parent = <int*>malloc(max(n, 1) * sizeof(int))
    cdef int a, b, ra, rb, x
    try:
        for x in range(n):
            parent[x] = x
        for a, b in pairs:
            ra = _find(parent, a)
            rb = _find(parent, b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
        return [_find(parent, x) for x in range(n)]
    finally:
        free(parent)


cdef inline int _find(int* parent, int x) noexcept nogil:
    cdef int root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def gf2_rank(rows):
    """Rank over GF(2) of a matrix given as a list of row bitmasks."""
    pivots = []
    for r in rows:
        for p in pivots:
            if r ^ p < r:
                r ^= p
        if r:
            pivots.append(r)
            pivots.sort(reverse=True)
    return len(pivots)


cdef bint _reduce(int nv, const int* level_of, int n2, const int* iota,
                  int* partner, char* alive) noexcept nogil:
    """Pull turn-backs through, least vertex first.  True if anything moved."""
    cdef int k, prev, iu, iv, u2, v2
    cdef bint hit, any_hit = False
    while True:
        prev = -1
        hit = False
        for k in range(nv):
            if not alive[k]:
                continue
            if (prev >= 0 and 0 < level_of[k] <= n2 and partner[prev] == k
                    and level_of[prev] == level_of[k]):
                iu = iota[prev]
                iv = iota[k]
                if partner[iu] != iv:
                    u2 = partner[iu]
                    v2 = partner[iv]
                    partner[u2] = v2
                    partner[v2] = u2
                    alive[prev] = 0
                    alive[k] = 0
                    alive[iu] = 0
                    alive[iv] = 0
                    hit = True
                    any_hit = True
                    break
            prev = k
        if not hit:
            return any_hit


def reduce_turnbacks(level_of, internal, iota, partner):
    """Pull every turn-back through its band, least vertex first."""
    cdef int nv = len(partner), k, n2 = 0
    cdef int* lv = <int*>malloc(max(nv, 1) * sizeof(int))
    cdef int* io = <int*>malloc(max(nv, 1) * sizeof(int))
    cdef int* pa = <int*>malloc(max(nv, 1) * sizeof(int))
    cdef char* al = <char*>malloc(max(nv, 1))
    try:
        # internal levels are exactly 1..n2, so encode non-internal vertices as level 0
        for k in range(nv):
            lv[k] = level_of[k] + 1 if internal[k] else 0
            if lv[k] > n2:
                n2 = lv[k]
            io[k] = iota[k]
            pa[k] = partner[k]
            al[k] = 1
        _reduce(nv, lv, n2, io, pa, al)
        return [bool(al[k]) for k in range(nv)], [pa[k] for k in range(nv)]
    finally:
        free(lv)
        free(io)
        free(pa)
        free(al)


cdef void _iota(int n2, const int* sp, const int* st, const int* sizes, const int* off,
                int* out) noexcept nogil:
    cdef int a, b, f, oa, ob, x, y
    for a in range(1, n2 + 1):
        b = sp[a]
        if b < a:
            continue
        f = sizes[a]
        oa = off[a]
        ob = off[b]
        for x in range(f):
            y = x if st[a] else f - 1 - x
            out[oa + x] = ob + y
            out[ob + y] = oa + x


cdef int _slide(const unsigned short* s, int slen, int i, int e, unsigned short* dst) noexcept nogil:
    """Write the slid and reduced state to ``dst``; return its length or -1 if inert."""
    cdef int n2 = s[0]
    cdef int P = 3 + 3 * n2
    cdef int nv = slen - P
    cdef int q = i + e
    if q < 1 or q > n2 or s[i] == q:
        return -1
    cdef int far = s[q]
    cdef int stq = s[n2 + q]
    cdef int side = e if stq == 0 else -e
    cdef int fp = s[1 + 2 * n2 + i]
    cdef int w = 2 * fp
    cdef int nnv = nv + w
    cdef int ip = s[i]
    cdef int k, r, lv, x, ok, pk, ik, oik, a, b, c, u_lo, si, sf, ln
    # one scratch block for every small array
    cdef int* buf = <int*>malloc((8 * (n2 + 3) + 4 * nv + 4 * nnv + 8) * sizeof(int))
    cdef int* sp = buf
    cdef int* st = sp + (n2 + 3)
    cdef int* sizes = st + (n2 + 3)
    cdef int* sigma = sizes + (n2 + 3)
    cdef int* nsp = sigma + (n2 + 3)
    cdef int* nst = nsp + (n2 + 3)
    cdef int* nsizes = nst + (n2 + 3)
    cdef int* off = nsizes + (n2 + 3)
    cdef int* noff = off + (n2 + 3)
    cdef int* iota = noff + (n2 + 3)
    cdef int* niota = iota + nv
    cdef int* npart = niota + nnv
    cdef int* level_of = npart + nnv
    cdef int* new = level_of + nnv
    cdef char* alive = <char*>malloc(nnv + 1)

    for k in range(1, n2 + 1):
        sp[k] = s[k]
        st[k] = s[n2 + k]
    for lv in range(n2 + 2):
        sizes[lv] = s[1 + 2 * n2 + lv]
    # sigma: remove site i and put it next to ``far``
    r = 0
    for k in range(1, n2 + 1):
        if k == i:
            continue
        if k == far:
            if side == 1:
                r += 1
                sigma[far] = r
                r += 1
                sigma[i] = r
            else:
                r += 1
                sigma[i] = r
                r += 1
                sigma[far] = r
        else:
            r += 1
            sigma[k] = r
    nsizes[0] = sizes[0]
    nsizes[n2 + 1] = sizes[n2 + 1]
    for k in range(1, n2 + 1):
        nsp[sigma[k]] = sigma[sp[k]]
        nst[sigma[k]] = st[k] ^ (stq if (k == i or k == ip) else 0)
        nsizes[sigma[k]] = sizes[k] + (fp if (k == q or k == far) else 0)
    off[0] = 0
    noff[0] = 0
    for lv in range(n2 + 2):
        off[lv + 1] = off[lv] + sizes[lv]
        noff[lv + 1] = noff[lv] + nsizes[lv]
    si = sigma[i]
    sf = sigma[far]
    u_lo = noff[si] if sf == si + 1 else noff[si] - fp
    _iota(n2, sp, st, sizes, off, iota)
    _iota(n2, nsp, nst, nsizes, noff, niota)
    for k in range(nnv):
        npart[k] = -1
    for k in range(nv):
        ok = k if k < u_lo else k + w
        pk = s[P + k]
        npart[ok] = pk if pk < u_lo else pk + w
    for k in range(off[i], off[i + 1]):
        ok = k if k < u_lo else k + w
        ik = iota[k]
        oik = ik if ik < u_lo else ik + w
        a = niota[ok]
        b = niota[oik]
        npart[a] = b
        npart[b] = a
    x = 0
    for lv in range(n2 + 2):
        for k in range(nsizes[lv]):
            level_of[x] = lv
            x += 1
    for k in range(nnv):
        alive[k] = 1
    if _reduce(nnv, level_of, n2, niota, npart, alive):
        for lv in range(n2 + 2):
            nsizes[lv] = 0
        c = 0
        for k in range(nnv):
            if alive[k]:
                nsizes[level_of[k]] += 1
                new[k] = c
                c += 1
    else:
        c = nnv
        for k in range(nnv):
            new[k] = k
    dst[0] = n2
    for k in range(1, n2 + 1):
        dst[k] = nsp[k]
        dst[n2 + k] = nst[k]
    for lv in range(n2 + 2):
        dst[1 + 2 * n2 + lv] = nsizes[lv]
    ln = P
    for k in range(nnv):
        if alive[k]:
            dst[ln] = new[npart[k]]
            ln += 1
    free(buf)
    free(alive)
    return ln


def slide_state(s, int i, int e):
    """Handle slide ``(i, e)`` then isotopy reduction; ``None`` if inert."""
    cdef int slen = len(s), k, ln
    cdef int fp = s[1 + 2 * s[0] + i] if 1 <= i <= s[0] else 0
    cdef unsigned short* src = <unsigned short*>malloc(slen * sizeof(unsigned short))
    cdef unsigned short* dst = <unsigned short*>malloc((slen + 2 * fp) * sizeof(unsigned short))
    try:
        for k in range(slen):
            src[k] = s[k]
        ln = _slide(src, slen, i, e, dst)
        if ln < 0:
            return None
        return [dst[k] for k in range(ln)]
    finally:
        free(src)
        free(dst)


def neighbour_keys(bytes key):
    """Every ``(i, e, key')`` one handle slide away from a packed ``array('H')`` key."""
    cdef const unsigned short* s = <const unsigned short*>PyBytes_AS_STRING(key)
    cdef int slen = PyBytes_GET_SIZE(key) // 2
    cdef int n2 = s[0], i, e, ln, fmax = 0, lv
    for lv in range(1, n2 + 1):
        if s[1 + 2 * n2 + lv] > fmax:
            fmax = s[1 + 2 * n2 + lv]
    cdef unsigned short* dst = <unsigned short*>malloc((slen + 2 * fmax + 1) * sizeof(unsigned short))
    out = []
    try:
        for i in range(1, n2 + 1):
            for e in (1, -1):
                ln = _slide(s, slen, i, e, dst)
                if ln >= 0:
                    out.append((i, e, PyBytes_FromStringAndSize(<char*>dst, 2 * ln)))
        return out
    finally:
        free(dst)

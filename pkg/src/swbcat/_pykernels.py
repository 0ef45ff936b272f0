"""Pure-Python versions of the inner loops.

The compiled module ``_ckernels`` implements the same functions with the
same signatures; :mod:`swbcat.kernels` picks one at import time.
"""


def component_labels(n, pairs):
    """Label vertices ``0..n-1`` by the smallest vertex of their component."""
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    return [find(x) for x in range(n)]


def gf2_rank(rows):
    """Rank over GF(2) of a matrix given as a list of row bitmasks."""
    pivots = []  # reduced rows, each with a distinct leading bit
    for r in rows:
        for p in pivots:
            if r ^ p < r:
                r ^= p
        if r:
            pivots.append(r)
            pivots.sort(reverse=True)
    return len(pivots)


def reduce_turnbacks(level_of, internal, iota, partner):
    """Pull every turn-back through its band, least vertex first.

    ``iota`` is the band pairing of the original frame; removing matched
    slots from both ends of a band keeps it valid, so it never needs to be
    recomputed.  Returns the surviving-vertex mask and the updated partner
    list (entries of removed vertices are stale).
    """
    n = len(partner)
    partner = list(partner)
    alive = [True] * n
    start = 0
    while True:
        prev = -1
        hit = False
        for k in range(start, n):
            if not alive[k]:
                continue
            if (prev >= 0 and internal[k] and partner[prev] == k
                    and level_of[prev] == level_of[k]):
                iu, iv = iota[prev], iota[k]
                if partner[iu] != iv:
                    u2, v2 = partner[iu], partner[iv]
                    partner[u2] = v2
                    partner[v2] = u2
                    alive[prev] = alive[k] = alive[iu] = alive[iv] = False
                    hit = True
                    break
            prev = k
        if not hit:
            return alive, partner


# Packed search states.  A state is a flat integer sequence
#   [2N, site partner (2N), site twist (2N), level sizes (2N+2), vertex partner (|V|)]
# with sites numbered from 1.  ``slide_state`` performs one handle slide
# followed by isotopy reduction on such a sequence.

def _unpack(s):
    n2 = s[0]
    sp = [0] + list(s[1:1 + n2])
    st = [0] + list(s[1 + n2:1 + 2 * n2])
    sizes = list(s[1 + 2 * n2:3 + 3 * n2])
    partner = list(s[3 + 3 * n2:])
    return n2, sp, st, sizes, partner


def _offsets(sizes):
    off = [0]
    for x in sizes:
        off.append(off[-1] + x)
    return off


def _iota(n2, sp, st, sizes, off):
    out = [-1] * off[-1]
    for a in range(1, n2 + 1):
        b = sp[a]
        if b < a:
            continue
        f = sizes[a]
        oa, ob = off[a], off[b]
        for x in range(f):
            y = x if st[a] else f - 1 - x
            out[oa + x] = ob + y
            out[ob + y] = oa + x
    return out


def slide_state(s, i, e):
    """Handle slide ``(i, e)`` then isotopy reduction; ``None`` if inert."""
    n2, sp, st, sizes, partner = _unpack(s)
    q = i + e
    if q < 1 or q > n2 or sp[i] == q:
        return None
    far = sp[q]
    side = e if st[q] == 0 else -e
    seq = [k for k in range(1, n2 + 1) if k != i]
    pos = seq.index(far)
    seq.insert(pos + 1 if side == 1 else pos, i)
    sigma = [0] * (n2 + 1)
    for r, k in enumerate(seq, start=1):
        sigma[k] = r
    ip = sp[i]
    nsp = [0] * (n2 + 1)
    nst = [0] * (n2 + 1)
    nsizes = [0] * (n2 + 2)
    nsizes[0], nsizes[n2 + 1] = sizes[0], sizes[n2 + 1]
    fp = sizes[i]
    for k in range(1, n2 + 1):
        nsp[sigma[k]] = sigma[sp[k]]
        nst[sigma[k]] = st[k] ^ (st[q] if (k == i or k == ip) else 0)
        nsizes[sigma[k]] = sizes[k] + (fp if (k == q or k == far) else 0)
    off = _offsets(sizes)
    noff = _offsets(nsizes)
    si, sf = sigma[i], sigma[far]
    u_lo = noff[si] if sf == si + 1 else noff[si] - fp
    w = 2 * fp
    iota = _iota(n2, sp, st, sizes, off)
    niota = _iota(n2, nsp, nst, nsizes, noff)
    nv = noff[-1]
    np_ = [-1] * nv
    for k in range(off[-1]):
        ok = k if k < u_lo else k + w
        pk = partner[k]
        np_[ok] = pk if pk < u_lo else pk + w
    for k in range(off[i], off[i + 1]):
        ok = k if k < u_lo else k + w
        ik = iota[k]
        oik = ik if ik < u_lo else ik + w
        a, b = niota[ok], niota[oik]
        np_[a] = b
        np_[b] = a
    level_of = []
    for lv in range(n2 + 2):
        level_of += [lv] * nsizes[lv]
    internal = [0 < lv <= n2 for lv in level_of]
    alive, np_ = reduce_turnbacks(level_of, internal, niota, np_)
    if not all(alive):
        counts = [0] * (n2 + 2)
        new = [-1] * nv
        c = 0
        for k in range(nv):
            if alive[k]:
                counts[level_of[k]] += 1
                new[k] = c
                c += 1
        np_ = [new[np_[k]] for k in range(nv) if alive[k]]
        nsizes = counts
    return [n2] + nsp[1:] + nst[1:] + nsizes + np_


def neighbour_keys(key):
    """Every ``(i, e, key')`` one handle slide away from a packed ``array('H')`` key."""
    from array import array
    s = array("H")
    s.frombytes(key)
    s = s.tolist()
    out = []
    for i in range(1, s[0] + 1):
        for e in (1, -1):
            t = slide_state(s, i, e)
            if t is not None:
                out.append((i, e, array("H", t).tobytes()))
    return out

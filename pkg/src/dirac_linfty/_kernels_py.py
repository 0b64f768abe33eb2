"""Pure-Python sign kernels (fallback for the compiled ``_kernels`` extension).

Exterior words are bitmasks over generator indices.  ``odd`` is the bitmask of
generators with odd degree; only odd-odd transpositions contribute a sign.
"""


def merge_sign(a, b, odd):
    """Sign of reordering the concatenated word ``a . b`` into increasing order.

    ``a`` and ``b`` must be disjoint masks.
    """
    ao = a & odd
    bo = b & odd
    n = 0
    while bo:
        low = bo & -bo
        n += (ao >> low.bit_length()).bit_count()
        bo ^= low
    return -1 if n & 1 else 1


def contract_sign(i, mask, odd):
    """Sign picked up by an odd derivation moving past the generators below ``i``."""
    return -1 if (mask & odd & ((1 << i) - 1)).bit_count() & 1 else 1


def wedge_dicts(a, b, odd):
    """Sparse product of two exterior elements {mask: coeff}; zero terms dropped."""
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            if ma & mb:
                continue
            m = ma | mb
            c = ca * cb
            if merge_sign(ma, mb, odd) < 0:
                c = -c
            prev = out.get(m)
            out[m] = c if prev is None else prev + c
    return {m: c for m, c in out.items() if c}


def sort_sign(seq, parity):
    """Sort ``seq`` (ints) and return ``(sorted_tuple, koszul_sign)``.

    ``parity[x]`` is 1 for odd elements.  A repeated odd element gives sign 0.
    """
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        x = items[i]
        px = parity[x]
        j = i - 1
        while j >= 0 and items[j] > x:
            if px and parity[items[j]]:
                sign = -sign
            items[j + 1] = items[j]
            j -= 1
        items[j + 1] = x
    if len(items) > 1:
        for i in range(1, len(items)):
            if items[i] == items[i - 1] and parity[items[i]]:
                return tuple(items), 0
    return tuple(items), sign


def perm_sign(parities, perm):
    """Koszul sign of ``v_perm[0], ..., v_perm[n-1]`` relative to ``v_0, ..., v_{n-1}``."""
    n = len(perm)
    s = 0
    for i in range(n):
        pi = perm[i]
        if not parities[pi]:
            continue
        for j in range(i + 1, n):
            pj = perm[j]
            if pj < pi and parities[pj]:
                s += 1
    return -1 if s & 1 else 1

"""Pure-Python kernels. Reference implementation and import-time fallback.

Every function takes the quandle table flattened row-major (``flat[i*n + j]``
is the index of ``x_i * x_j``) so both backends share one calling convention.
"""


def q3_violation(flat, n):
    for i in range(n):
        for j in range(n):
            ij = flat[i * n + j]
            for k in range(n):
                if flat[ij * n + k] != flat[flat[i * n + k] * n + flat[j * n + k]]:
                    return (i, j, k)
    return None


def dense_mul(flat, n, u, v):
    out = [0] * n
    for i in range(n):
        a = u[i]
        if a:
            row = i * n
            for j in range(n):
                b = v[j]
                if b:
                    out[flat[row + j]] += a * b
    return out


def _is_idempotent(flat, n, z, m):
    sq = [0] * n
    for i in range(n):
        a = z[i]
        if a:
            row = i * n
            for j in range(n):
                b = z[j]
                if b:
                    sq[flat[row + j]] += a * b
    if m:
        return all((sq[k] - z[k]) % m == 0 for k in range(n))
    return sq == z


def _odometer(lo, hi, length):
    cur = [lo] * length
    while True:
        yield cur
        k = length - 1
        while k >= 0 and cur[k] == hi:
            cur[k] = lo
            k -= 1
        if k < 0:
            return
        cur[k] += 1


def box_idempotents(flat, n, bound, prune):
    """All integer z with |z_i| <= bound and z*z == z, sorted lexicographically.

    With ``prune`` the last coordinate is fixed by augmentation in {0, 1},
    valid over integral domains only.
    """
    found = []
    if n == 0:
        return found
    if prune:
        for head in _odometer(-bound, bound, n - 1):
            s = sum(head)
            for aug in (0, 1):
                last = aug - s
                if -bound <= last <= bound:
                    z = head + [last]
                    if _is_idempotent(flat, n, z, 0):
                        found.append(tuple(z))
    else:
        for z in _odometer(-bound, bound, n):
            if _is_idempotent(flat, n, z, 0):
                found.append(tuple(z))
    found.sort()
    return found


def mod_idempotents(flat, n, m, prune):
    found = []
    if n == 0:
        return found
    if prune:
        for head in _odometer(0, m - 1, n - 1):
            s = sum(head)
            for aug in (0, 1):
                z = head + [(aug - s) % m]
                if _is_idempotent(flat, n, z, m):
                    found.append(tuple(z))
    else:
        for z in _odometer(0, m - 1, n):
            if _is_idempotent(flat, n, z, m):
                found.append(tuple(z))
    found = sorted(set(found))
    return found

"""Integer polynomial resultants, used to cross-check circulant determinants.

Polynomials are coefficient lists, lowest degree first.
"""


def exponent_polynomial(w, n):
    """f(x) = sum_j (exponent sum of x_j in w) x^j, as a coefficient list of length n."""
    coeffs = [0] * n
    for j, s in w.letters:
        coeffs[j] += s
    return coeffs


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def sylvester(f, g):
    f, g = _trim(f), _trim(g)
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for d, c in enumerate(reversed(f)):
            row[i + d] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for d, c in enumerate(reversed(g)):
            row[i + d] = c
        rows.append(row)
    return rows


def bareiss_det(rows):
    """Exact determinant by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f, g):
    f, g = _trim(f), _trim(g)
    if not f or not g:
        return 0
    if len(f) == 1 and len(g) == 1:
        return 1
    return bareiss_det(sylvester(f, g))


def circulant_resultant(f, n):
    """Res(f, x^n - 1), whose absolute value is |prod over n-th roots of unity of f|."""
    return resultant(f, [-1] + [0] * (n - 1) + [1])

"""Scalar root bracketing and bisection shared by the eigensolvers and the
zero-location reports."""


def sign_change_brackets(values, xs):
    """Indices i where values[i] and values[i+1] have strictly opposite signs.

    Exact zeros are treated as belonging to the left bracket.
    """
    out = []
    for i in range(len(values) - 1):
        a, b = values[i], values[i + 1]
        if a == 0.0:
            out.append(i)
        elif a * b < 0.0:
            out.append(i)
    return out


def bisect(f, a, b, rel_tol, max_iter=400):
    """Bisection on [a, b] assuming f(a) f(b) <= 0; stops when the bracket
    width is below rel_tol relative to its midpoint magnitude."""
    fa = f(a)
    if fa == 0.0:
        return a
    fb = f(b)
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError(f"root not bracketed on [{a}, {b}]")
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        if abs(b - a) <= rel_tol * max(abs(mid), 1e-300):
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)

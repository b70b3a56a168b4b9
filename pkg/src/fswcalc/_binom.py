from math import comb


def gbinom(a: int, b: int) -> int:
    """Generalised binomial ``a(a-1)...(a-b+1)/b!`` for any integer ``a``; 0 when ``b < 0``."""
    if b < 0:
        return 0
    if a >= 0:
        return comb(a, b)
    # upper negation: C(a, b) = (-1)^b C(b - a - 1, b)
    return (-1) ** b * comb(b - a - 1, b)

"""Brute-force reference implementations, deliberately independent of ghseq."""


def brute_period(a, b, m):
    start = (a % m, b % m)
    pair = start
    n = 0
    while True:
        pair = (pair[1], (pair[0] + pair[1]) % m)
        n += 1
        if pair == start:
            return n


def naive_ccf_sums(a, b):
    n = len(a)
    out = []
    for k in range(n):
        total = 0
        for j in range(n):
            total += a[j] * b[(j + k) % n]
        out.append(total)
    return out


def brute_order(mask, degree):
    """Smallest e >= 1 with x**e == 1 mod the polynomial, by repeated multiplication by x."""
    top = 1 << degree
    r = 1
    for e in range(1, top):
        r <<= 1
        if r & top:
            r ^= mask
        if r == 1:
            return e
    return None


def simple_primes(lo, hi):
    return [n for n in range(max(lo, 2), hi + 1) if all(n % d for d in range(2, int(n**0.5) + 1))]

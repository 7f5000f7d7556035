#!/usr/bin/env python3
"""Independent recomputation of the Euler-product constants frozen in tests.

Pure-Python integer arithmetic, no shared code with the C++ library. The
product over p <= P of (1 + 1/|Z(p^e)|) is accumulated as an unreduced
num/den pair; decimals are printed by scaled integer division.
"""

from math import gcd


def sieve(limit):
    bits = bytearray([1]) * (limit + 1)
    bits[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if bits[p]:
            bits[p * p :: p] = bytearray(len(bits[p * p :: p]))
    return [p for p in range(limit + 1) if bits[p]]


def zsize_brute(p, e, k):
    pe = p**e
    return len({pow(z, k, pe) for z in range(1, pe) if z % p})


def zsize(p, e, k):
    if p == 2:
        if e <= 2:
            return zsize_brute(p, e, k)
        half = 2 ** (e - 2)
        return (2 // gcd(k, 2)) * (half // gcd(k, half))
    phi = p ** (e - 1) * (p - 1)
    return phi // gcd(k, phi)


def all_kth_brute(p, e, k):
    pe = p**e
    return len({pow(t, k, pe) for t in range(pe)})


def decimals(num, den, digits=30):
    q = num * 10**digits // den
    s = str(q)
    return s[:-digits] + "." + s[-digits:]


def euler(k, P, doubled):
    e = 2 * k if doubled else k
    num = den = 1
    for p in sieve(P):
        z = zsize(p, e, k)
        num *= z + 1
        den *= z
    # tail: sum_{p>P} 1/|Z(p^e)| <= k * int_{P-1}^inf x^-e dx
    tnum, tden = k, (e - 1) * (P - 1) ** (e - 1)
    return num, den, tnum, tden


def report(label, k, P, doubled):
    num, den, tn, td = euler(k, P, doubled)
    lo = decimals(num, den)
    # upper = partial / (1 - tail), valid for tail < 1
    unum, uden = num * td, den * (td - tn)
    hi = decimals(unum, uden)
    print(f"{label}  k={k} P={P} doubled={doubled}")
    print(f"  lower = {lo}")
    print(f"  upper = {hi}")
    print(f"  tail  = {tn}/{td} ~ {tn/td:.3e}")


def ratio_zw(k, w, doubled):
    e = 2 * k if doubled else k
    num = den = 1
    for p in sieve(w):
        num *= all_kth_brute(p, e, k)
        den *= zsize_brute(p, e, k)
    g = gcd(num, den)
    return num // g, den // g


if __name__ == "__main__":
    for p in (2, 3, 5, 7, 11, 13):
        for k in (2, 3, 4, 5, 6):
            for e in (k, 2 * k):
                if p**e <= 10**6:
                    assert zsize(p, e, k) == zsize_brute(p, e, k), (p, e, k)
    print("closed form == brute force on the small sweep")
    print()
    report("T_2", 2, 100000, True)
    report("T_3", 3, 10000, True)
    report("T_4", 4, 10000, True)
    report("T_2@P=2e5", 2, 200000, True)
    report("Z_2", 2, 100000, False)
    report("Z_3", 3, 100000, False)
    report("Z_4", 4, 100000, False)
    report("Z_2@P=10", 2, 10, False)
    print()
    for k in (2, 3):
        for w in (3, 5):
            rd = ratio_zw(k, w, True)
            ru = ratio_zw(k, w, False)
            # truncated doubled sum over primes <= w
            tn = td = 1
            for p in sieve(w):
                z = zsize(p, 2 * k, k)
                tn *= z + 1
                td *= z
            g = gcd(tn, td)
            print(f"k={k} w={w}: ratio2={rd[0]}/{rd[1]} ~{rd[0]/rd[1]:.6f}  "
                  f"ratio1={ru[0]}/{ru[1]} ~{ru[0]/ru[1]:.6f}  "
                  f"truncT={tn//g}/{td//g} ~{tn/td:.6f}")

"""Built-in zip data: the truncated Witt-vector GL2 family and a small
deterministic corpus used for verification runs.

The Witt family models GL2 over length-n Witt vectors of F_p at finite
truncation: E is the group of invertible 2x2 matrices over Z/p^n whose
lower-left entry is divisible by p, G is GL2(Z/p^(n-1)), tau is reduction,
and sigma is conjugation by diag(p, 1) carried out at the lower level (the
lower-left entry gets divided by p, the upper-right multiplied by p).  The
Frobenius of F_p lifts to the identity, so it does not appear.  Targeting G
one level below E is what makes the divided conjugation a genuine
homomorphism of finite groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .groups import (
    CayleyTableGroup,
    Homomorphism,
    InputError,
    MatrixGroup,
    PermutationGroup,
    closure,
    conjugation_hom,
    identity_hom,
    inclusion_hom,
    trivial_hom,
)
from .zipdata import ZipDatum


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class WittZipConfig:
    """Parameters of the truncated Witt model: a prime p and a level n >= 2."""

    p: int
    n: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InputError(f"p must be prime, got {self.p}")
        if self.n < 2:
            raise InputError(f"truncation level must be at least 2, got {self.n}")


def _matrices_with_divisible_lower_left(modulus: int, divisor: int) -> list:
    out = []
    for a, b, c, d in itertools.product(range(modulus), repeat=4):
        if c % divisor == 0 and gcd((a * d - b * c) % modulus, modulus) == 1:
            out.append((a, b, c, d))
    return out


def build_witt_zip(config: WittZipConfig) -> tuple:
    """The Witt-model zip datum and its distinguished twist element.

    Returns (datum, antidiagonal(1, 1) in G).  Construction validates that
    the divided conjugation is a well-defined homomorphism.
    """
    p, n = config.p, config.n
    pn = p**n
    m = p ** (n - 1)
    E = MatrixGroup(2, pn, _matrices_with_divisible_lower_left(pn, p))
    G = MatrixGroup.general_linear(2, m)
    tau = Homomorphism(E, G, {e: tuple(v % m for v in e) for e in E})
    sigma_table = {}
    for e in E:
        a, b, c, d = e
        # c is divisible by p and read in [0, p^n), so c // p is the
        # well-defined value of c/p modulo p^(n-1)
        sigma_table[e] = (a % m, (p * b) % m, (c // p) % m, d % m)
    sigma = Homomorphism(E, G, sigma_table)
    return ZipDatum(E, G, tau, sigma), (0, 1, 1, 0)


def _xor_table(bits: int) -> list:
    size = 1 << bits
    return [[i ^ j for j in range(size)] for i in range(size)]


def build_small_zoo() -> dict:
    """Named small zip data covering all three backends.

    Deterministic: same names, same data, same element order on every run.
    """
    zoo: dict[str, ZipDatum] = {}

    s3 = PermutationGroup.symmetric(3)
    e_trivial = closure(s3, []).as_group()
    zoo["trivial-e"] = ZipDatum(e_trivial, s3, trivial_hom(e_trivial, s3), trivial_hom(e_trivial, s3))

    zoo["tau-surjective"] = ZipDatum(s3, s3, identity_hom(s3), conjugation_hom(s3, (1, 0, 2)))

    c2 = closure(s3, [(1, 0, 2)]).as_group()
    zoo["s3-reflection-pair"] = ZipDatum(c2, s3, inclusion_hom(c2, s3), inclusion_hom(c2, s3))

    zoo["s3-mixed"] = ZipDatum(c2, s3, inclusion_hom(c2, s3), trivial_hom(c2, s3))

    s4 = PermutationGroup.symmetric(4)
    c4 = closure(s4, [(1, 2, 3, 0)]).as_group()
    zoo["s4-cycle-pair"] = ZipDatum(c4, s4, inclusion_hom(c4, s4), inclusion_hom(c4, s4))

    c2cube = CayleyTableGroup(_xor_table(3))
    project = Homomorphism(c2cube, c2cube, {v: v & 0b011 for v in c2cube})
    zoo["c2cube-projection"] = ZipDatum(c2cube, c2cube, identity_hom(c2cube), project)

    gl2 = MatrixGroup.general_linear(2, 2)
    borel = closure(gl2, [(1, 1, 0, 1)]).as_group()
    zoo["gl2f2-borel"] = ZipDatum(borel, gl2, inclusion_hom(borel, gl2), inclusion_hom(borel, gl2))

    return zoo


def zoo_entry(name: str) -> ZipDatum:
    zoo = build_small_zoo()
    try:
        return zoo[name]
    except KeyError:
        raise InputError(f"unknown zoo entry {name!r}; known: {', '.join(sorted(zoo))}") from None

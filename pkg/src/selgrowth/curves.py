"""Local arithmetic of elliptic curves over Q, restricted to the semistable case.

Covers the standard Weierstrass formulary, global minimal models by the
Laska-Kraus-Connell method, per-prime reduction types with the split versus
non-split classification, and the closed-form Tamagawa numbers available for
multiplicative reduction. Ranks, torsion orders and Tate-Shafarevich data are
never computed here; they are ingested alongside the model and carried as
assumptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from sympy import factorint


class SingularModelError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassModel:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if discriminant(self) == 0:
            raise SingularModelError(f"singular model {self.ainvs()}")

    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @staticmethod
    def from_ainvs(ainvs) -> "WeierstrassModel":
        a1, a2, a3, a4, a6 = (int(x) for x in ainvs)
        return WeierstrassModel(a1, a2, a3, a4, a6)


class Invariants(NamedTuple):
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    delta: int


def compute_invariants(m: WeierstrassModel) -> Invariants:
    """Standard b, c and discriminant invariants of an integral model."""
    b2 = m.a1 * m.a1 + 4 * m.a2
    b4 = 2 * m.a4 + m.a1 * m.a3
    b6 = m.a3 * m.a3 + 4 * m.a6
    b8 = (
        m.a1 * m.a1 * m.a6
        + 4 * m.a2 * m.a6
        - m.a1 * m.a3 * m.a4
        + m.a2 * m.a3 * m.a3
        - m.a4 * m.a4
    )
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    delta = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    assert 4 * b8 == b2 * b6 - b4 * b4
    assert 1728 * delta == c4 ** 3 - c6 ** 2
    return Invariants(b2, b4, b6, b8, c4, c6, delta)


def discriminant(m) -> int:
    a1, a2, a3, a4, a6 = m.a1, m.a2, m.a3, m.a4, m.a6
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _ord(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _kraus_ok_at_2(c4: int, c6: int) -> bool:
    # existence of an integral model with these invariants, 2-adic condition
    return c6 % 4 == 3 or (c4 % 16 == 0 and c6 % 32 in (0, 8))


def _kraus_ok_at_3(c6: int) -> bool:
    return c6 % 27 not in (9, 18)


def model_from_c_invariants(c4: int, c6: int) -> WeierstrassModel:
    """The normalized integral model with given c4, c6 (Kraus conditions assumed)."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    if b2 % 4 not in (0, 1):
        raise SingularModelError(f"no integral model with c4={c4}, c6={c6}")
    if (b2 * b2 - c4) % 24 != 0:
        raise SingularModelError(f"no integral model with c4={c4}, c6={c6}")
    b4 = (b2 * b2 - c4) // 24
    num = -(b2 ** 3) + 36 * b2 * b4 - c6
    if num % 216 != 0:
        raise SingularModelError(f"no integral model with c4={c4}, c6={c6}")
    b6 = num // 216
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    a3 = b6 % 2
    assert (b4 - a1 * a3) % 2 == 0 and (b6 - a3) % 4 == 0
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    return WeierstrassModel(a1, a2, a3, a4, a6)


def minimal_model(m: WeierstrassModel) -> WeierstrassModel:
    """Global minimal model over Q via Laska-Kraus-Connell.

    The output discriminant divides the input discriminant, the quotient is
    a perfect 12th power, and the model is in the standard normalized form
    (a1, a3 in {0,1} and a2 in {-1,0,1}).
    """
    inv = compute_invariants(m)
    c4, c6 = inv.c4, inv.c6
    if c4 == 0:
        base = abs(c6)
    elif c6 == 0:
        base = abs(c4)
    else:
        base = math.gcd(abs(c4), abs(c6))
    exps = {}
    for p in factorint(base):
        # the scaled discriminant delta / u^12 must stay integral
        bounds = [_ord(inv.delta, p) // 12 if inv.delta % p == 0 else 0]
        if c4 != 0:
            bounds.append(_ord(c4, p) // 4)
        if c6 != 0:
            bounds.append(_ord(c6, p) // 6)
        d = min(bounds)
        if d > 0:
            exps[p] = d

    def scaled():
        cc4, cc6 = c4, c6
        for p, d in exps.items():
            cc4 //= p ** (4 * d)
            cc6 //= p ** (6 * d)
        return cc4, cc6

    # Kraus adjustments; the unscaled invariants come from an integral model,
    # so decrementing terminates with non-negative exponents.
    while not _kraus_ok_at_3(scaled()[1]):
        exps[3] = exps.get(3, 0) - 1
        assert exps[3] >= 0
    while not _kraus_ok_at_2(*scaled()):
        exps[2] = exps.get(2, 0) - 1
        assert exps[2] >= 0

    mm = model_from_c_invariants(*scaled())
    u12 = 1
    for p, d in exps.items():
        u12 *= p ** (12 * d)
    assert compute_invariants(mm).delta * u12 == inv.delta
    return mm


# -- reduction types ----------------------------------------------------------

GOOD = "good"
SPLIT_MULT = "split_mult"
NONSPLIT_MULT = "nonsplit_mult"
ADDITIVE = "additive"


@dataclass(frozen=True)
class ReductionData:
    v: int
    kind: str
    m: int  # ord_v of the minimal discriminant
    tamagawa: int | None  # None for additive reduction (would need Tate's algorithm)

    def is_multiplicative(self) -> bool:
        return self.kind in (SPLIT_MULT, NONSPLIT_MULT)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _minus_c6_is_local_square(c6: int, v: int) -> bool:
    # split multiplicative reduction criterion; v never divides c6 here
    if v == 2:
        return (-c6) % 8 == 1
    return legendre(-c6, v) == 1


def reduction_at(c4: int, c6: int, delta_min: int, v: int) -> ReductionData:
    if delta_min % v != 0:
        return ReductionData(v, GOOD, 0, 1)
    m = _ord(delta_min, v)
    if c4 % v == 0:
        return ReductionData(v, ADDITIVE, m, None)
    if _minus_c6_is_local_square(c6, v):
        return ReductionData(v, SPLIT_MULT, m, m)
    return ReductionData(v, NONSPLIT_MULT, m, 2 if m % 2 == 0 else 1)


@dataclass(frozen=True)
class CurveProfile:
    """Minimal model plus local data plus the ingested global assumptions."""

    model: WeierstrassModel
    c4: int
    c6: int
    delta_min: int
    bad_places: tuple  # ReductionData at each prime dividing delta_min, sorted
    rank: int
    torsion_order: int
    sha_p_trivial_assumed: frozenset
    label: str | None = None

    def is_semistable(self) -> bool:
        return all(rd.kind != ADDITIVE for rd in self.bad_places)

    def reduction(self, v: int) -> ReductionData:
        for rd in self.bad_places:
            if rd.v == v:
                return rd
        return ReductionData(v, GOOD, 0, 1)


def make_profile(
    model: WeierstrassModel,
    rank: int,
    torsion_order: int = 1,
    sha_p_trivial=(),
    label: str | None = None,
) -> CurveProfile:
    """Minimalize the model and assemble reduction data at every bad prime."""
    if rank < 0 or torsion_order < 1:
        raise ValueError("rank must be >= 0 and torsion order >= 1")
    mm = minimal_model(model)
    inv = compute_invariants(mm)
    bad = tuple(
        reduction_at(inv.c4, inv.c6, inv.delta, v)
        for v in sorted(factorint(abs(inv.delta)))
    )
    return CurveProfile(
        model=mm,
        c4=inv.c4,
        c6=inv.c6,
        delta_min=inv.delta,
        bad_places=bad,
        rank=int(rank),
        torsion_order=int(torsion_order),
        sha_p_trivial_assumed=frozenset(int(p) for p in sha_p_trivial),
        label=label,
    )


def reduction_type(profile: CurveProfile, v: int) -> ReductionData:
    return profile.reduction(v)


def ap_oracle(model: WeierstrassModel, v: int) -> str:
    """Classify multiplicative reduction at an odd prime by point counting.

    Counts affine points of the reduced curve over F_v, removes the unique
    node, adds the point at infinity; v - 1 smooth points means split and
    v + 1 means non-split. Independent of the -c6 square criterion.
    """
    if v == 2 or v > 10 ** 4:
        raise ValueError(f"point-count oracle needs an odd prime <= 10^4, got {v}")
    inv = compute_invariants(model)
    rd = reduction_at(inv.c4, inv.c6, inv.delta, v)
    if not rd.is_multiplicative():
        raise ValueError(f"reduction at {v} is {rd.kind}, not multiplicative")
    b2, b4, b6 = inv.b2 % v, inv.b4 % v, inv.b6 % v
    # complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    affine = 0
    nodes = []
    for x in range(v):
        g = (4 * x * x * x + b2 * x * x + 2 * b4 * x + b6) % v
        if g == 0:
            affine += 1
            dg = (12 * x * x + 2 * b2 * x + 2 * b4) % v
            if dg == 0:
                nodes.append(x)
        else:
            affine += 1 + legendre(g, v)
    assert len(nodes) == 1, f"expected a unique node mod {v}"
    smooth = affine - 1 + 1  # drop the node, add the point at infinity
    if smooth == v - 1:
        return "split"
    assert smooth == v + 1, f"unexpected smooth point count {smooth} mod {v}"
    return "nonsplit"


def hypothesis_counts(profile: CurveProfile) -> tuple:
    """(is_semistable, #non-split places, #non-split places with even ord)."""
    semistable = profile.is_semistable()
    nonsplit = [rd for rd in profile.bad_places if rd.kind == NONSPLIT_MULT]
    n_even = sum(1 for rd in nonsplit if rd.m % 2 == 0)
    return semistable, len(nonsplit), n_even

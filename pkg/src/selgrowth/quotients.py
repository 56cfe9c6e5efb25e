"""Per-place Tamagawa quotients, tabulated fast path, and growth certificates.

The source of truth is the double-coset oracle: for a subgroup class H with
coefficient n_H, the primes of the fixed field F^H above v correspond to the
double cosets H\\G/D, each with a ramification index e and residue degree f
read off from the inertia/decomposition pair. Semistable local behaviour is
then mechanical: split multiplicative reduction stays split and the minimal
discriminant valuation becomes e*m; non-split reduction becomes split
exactly when f is even and otherwise keeps the parity-of-e*m Tamagawa
number 1 or 2.

The hardcoded quotient tables for the four group families are a fast path
and a test target; the oracle must reproduce every cell exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .brauer import BrauerRelation, canonical_relation, norm_constant
from .curves import (
    ADDITIVE,
    GOOD,
    NONSPLIT_MULT,
    SPLIT_MULT,
    CurveProfile,
    ReductionData,
    hypothesis_counts,
)
from .factored import FactoredRational
from .groups import GroupError, double_cosets, family_prime
from .splitting import (
    FieldSpec,
    LocalClass,
    RamifiedPrimeError,
    factor_degree_pattern,
    frobenius_class,
    multiquadratic_local_class,
)


class NonSemistableError(ValueError):
    """The quotient tables require semistable reduction."""


class MissingLocalClassError(ValueError):
    """No computed or supplied (decomposition, inertia) pair for a bad prime."""


class ImpossibleCellError(LookupError):
    """A dash cell: no (D, I) pair realizes this splitting/reduction combination."""


# row descriptors: how v sits in F/K
ROW_SPLITS = "splits"  # more than one prime of F above v (D != G)
ROW_INERT_RAMIFIED = "inert_ramified"  # one prime, not totally ramified (D = G, I < G)
ROW_TOTALLY_RAMIFIED = "totally_ramified"  # D = I = G

# column descriptors: reduction of E at v and over the top field
COL_SPLIT = "split_mult"
COL_NONSPLIT_STAYS = "nonsplit_over_F"
COL_NONSPLIT_SPLITS = "nonsplit_becomes_split"

PARITY_EVEN = "even"
PARITY_ODD = "odd"


def classify_row(lc: LocalClass) -> str:
    G = lc.group
    if len(lc.decomposition) < G.order:
        return ROW_SPLITS
    if len(lc.inertia) == G.order:
        return ROW_TOTALLY_RAMIFIED
    return ROW_INERT_RAMIFIED


def classify_column(kind: str, lc: LocalClass) -> str:
    if kind == SPLIT_MULT:
        return COL_SPLIT
    if kind == NONSPLIT_MULT:
        # the places of F above v have residue degree f = [D:I]
        return COL_NONSPLIT_SPLITS if lc.f % 2 == 0 else COL_NONSPLIT_STAYS
    raise ValueError(f"only multiplicative reduction is tabulated, got {kind}")


def _cells_for_family(kind: str) -> dict:
    """Cell values as p-exponents; callables take the parity of ord_v(delta)."""
    if kind == "c2xc2":
        return {
            (ROW_SPLITS, COL_SPLIT): 0,
            (ROW_SPLITS, COL_NONSPLIT_STAYS): 0,
            (ROW_SPLITS, COL_NONSPLIT_SPLITS): 0,
            (ROW_INERT_RAMIFIED, COL_SPLIT): -1,
            (ROW_INERT_RAMIFIED, COL_NONSPLIT_SPLITS): lambda par: 1 if par == PARITY_EVEN else -1,
            (ROW_TOTALLY_RAMIFIED, COL_SPLIT): -1,
            (ROW_TOTALLY_RAMIFIED, COL_NONSPLIT_STAYS): lambda par: 0 if par == PARITY_EVEN else -2,
        }
    if kind.startswith("d:"):
        return {
            (ROW_SPLITS, COL_SPLIT): 0,
            (ROW_SPLITS, COL_NONSPLIT_STAYS): 0,
            (ROW_SPLITS, COL_NONSPLIT_SPLITS): 0,
            (ROW_INERT_RAMIFIED, COL_SPLIT): -1,
            (ROW_INERT_RAMIFIED, COL_NONSPLIT_SPLITS): 1,
            (ROW_TOTALLY_RAMIFIED, COL_SPLIT): -1,
            (ROW_TOTALLY_RAMIFIED, COL_NONSPLIT_STAYS): 0,
        }
    if kind.startswith("cpxcp:"):
        p = int(kind.split(":")[1])
        return {
            (ROW_SPLITS, COL_SPLIT): 0,
            (ROW_INERT_RAMIFIED, COL_SPLIT): 1 - p,
            (ROW_TOTALLY_RAMIFIED, COL_SPLIT): 1 - p,
        }
    if kind.startswith("sd:"):
        q = int(kind.split(":")[2])
        return {
            (ROW_SPLITS, COL_SPLIT): 0,
            (ROW_INERT_RAMIFIED, COL_SPLIT): 1 - q,
            (ROW_TOTALLY_RAMIFIED, COL_SPLIT): 1 - q,
        }
    raise GroupError(f"no quotient table for group kind {kind!r}")


def table_lookup(kind: str, row: str, col: str, m_parity: str | None = None) -> FactoredRational:
    """The tabulated value of the local quotient, as a power of the family prime.

    Raises ImpossibleCellError on dash cells and on combinations the odd-order
    tables do not carry (their non-split columns never touch the p-part).
    """
    cells = _cells_for_family(kind)
    if (row, col) not in cells:
        raise ImpossibleCellError(f"no table cell for {kind}: ({row}, {col})")
    value = cells[(row, col)]
    if callable(value):
        if m_parity not in (PARITY_EVEN, PARITY_ODD):
            raise ValueError(f"cell ({row}, {col}) needs the parity of ord_v(delta)")
        value = value(m_parity)
    p = family_prime(kind)
    return FactoredRational({p: value})


@dataclass(frozen=True)
class PlaceQuotientReport:
    v: int
    reduction_kind: str
    m: int
    local_class: LocalClass
    contributions: tuple  # ((class_id, FactoredRational), ...) per subgroup class
    quotient: FactoredRational
    table_cell: str | None  # "row|col|parity" when the group is a table family

    def as_json(self) -> dict:
        g = self.local_class.group
        names = g.class_names
        d_name, i_name = self.local_class.names()
        return {
            "v": self.v,
            "reduction": self.reduction_kind,
            "m": self.m,
            "D": d_name,
            "I": i_name,
            "contributions": {
                names[cid]: fr.as_json() for cid, fr in self.contributions
            },
            "quotient": self.quotient.as_json(),
            "table_cell": self.table_cell,
        }


def _local_tamagawa(kind: str, e: int, f: int, m: int) -> int:
    """Tamagawa number of a place with ramification e and residue degree f above v."""
    if kind == GOOD:
        return 1
    if kind == SPLIT_MULT:
        return e * m
    if kind == NONSPLIT_MULT:
        if f % 2 == 0:
            return e * m  # the node tangents become rational upstairs
        return 2 if (e * m) % 2 == 0 else 1
    raise NonSemistableError("additive reduction has no semistable Tamagawa formula")


def local_theta_quotient(
    theta: BrauerRelation, lc: LocalClass, rd: ReductionData
) -> PlaceQuotientReport:
    """The quotient prod_H (prod of Tamagawa numbers over places of F^H above v)^{n_H}."""
    if rd.kind == ADDITIVE:
        raise NonSemistableError(
            f"additive reduction at {rd.v}; the quotient engine requires semistability"
        )
    G = theta.group
    if lc.group.table != G.table:
        raise GroupError("local class and relation live in different groups")
    contributions = []
    quotient = FactoredRational.one()
    for cid, n in theta.coeffs:
        H = G.subgroup_classes[cid].representative
        contrib = FactoredRational.one()
        for dc in double_cosets(G, H, lc.decomposition, lc.inertia):
            c = _local_tamagawa(rd.kind, dc.e_index, dc.f_index, rd.m)
            contrib = contrib * FactoredRational.from_int(c)
        contributions.append((cid, contrib))
        quotient = quotient * contrib ** n
    cell = None
    if G.kind is not None and rd.kind in (SPLIT_MULT, NONSPLIT_MULT):
        try:
            row = classify_row(lc)
            col = classify_column(rd.kind, lc)
            parity = PARITY_EVEN if rd.m % 2 == 0 else PARITY_ODD
            cell = f"{row}|{col}|{parity}"
        except GroupError:
            cell = None
    return PlaceQuotientReport(
        v=rd.v,
        reduction_kind=rd.kind,
        m=rd.m,
        local_class=lc,
        contributions=tuple(contributions),
        quotient=quotient,
        table_cell=cell,
    )


def regulator_quotient(theta: BrauerRelation, rank: int) -> FactoredRational:
    """prod_H Reg(E/F^H)^{n_H} = norm_constant(theta)^(-rank), exactly."""
    if rank < 0:
        raise ValueError("rank must be non-negative")
    return norm_constant(theta) ** (-rank)


# -- theorem hypotheses --------------------------------------------------------


@dataclass(frozen=True)
class HypothesisReport:
    semistable: bool
    rank: int
    n_nonsplit: int
    n_nonsplit_even: int
    positive_rank: bool
    case_a: bool  # p = 2, C2 x C2: rank > #nonsplit places with even ord
    case_b: bool  # p odd, D_2p:   rank > #nonsplit places
    case_c: bool  # p odd, CpxCp or Cp:Cq: positive rank suffices
    applicable_case: str | None
    hypotheses_pass: bool
    failing: str | None

    def as_json(self) -> dict:
        return {
            "semistable": self.semistable,
            "rank": self.rank,
            "n_nonsplit": self.n_nonsplit,
            "n_nonsplit_even_ord": self.n_nonsplit_even,
            "case_a": self.case_a,
            "case_b": self.case_b,
            "case_c": self.case_c,
            "applicable_case": self.applicable_case,
            "pass": self.hypotheses_pass,
            "failing": self.failing,
        }


def _case_of_kind(kind: str | None) -> str | None:
    if kind is None:
        return None
    if kind == "c2xc2":
        return "a"
    if kind.startswith("d:"):
        return "b"
    if kind.startswith("cpxcp:") or kind.startswith("sd:"):
        return "c"
    return None


def hypothesis_check(profile: CurveProfile, p: int, kind: str | None) -> HypothesisReport:
    """Evaluate the rank inequalities of the three theorem cases on a profile."""
    semistable, n_nonsplit, n_even = hypothesis_counts(profile)
    rank = profile.rank
    positive = rank >= 1
    case_a = semistable and positive and rank > n_even
    case_b = semistable and positive and rank > n_nonsplit
    case_c = semistable and positive
    case = _case_of_kind(kind)
    passed = {None: False, "a": case_a, "b": case_b, "c": case_c}[case]
    failing = None
    if case is not None and not passed:
        if not semistable:
            failing = "curve is not semistable"
        elif not positive:
            failing = "rank must be positive"
        elif case == "a":
            failing = (
                f"rank {rank} is not greater than the {n_even} non-split places "
                "with even discriminant valuation"
            )
        elif case == "b":
            failing = f"rank {rank} is not greater than the {n_nonsplit} non-split places"
    return HypothesisReport(
        semistable=semistable,
        rank=rank,
        n_nonsplit=n_nonsplit,
        n_nonsplit_even=n_even,
        positive_rank=positive,
        case_a=case_a,
        case_b=case_b,
        case_c=case_c,
        applicable_case=case,
        hypotheses_pass=passed,
        failing=failing,
    )


# -- certificates ---------------------------------------------------------------

TIER_SHA_CHANGE = "sha_change"
TIER_SHA_NONZERO = "sha_nonzero"
TIER_SELMER_GROWTH = "selmer_growth"
TIER_NONE = "none"


@dataclass(frozen=True)
class GrowthCertificate:
    profile: CurveProfile
    field: FieldSpec
    p: int
    theta: BrauerRelation
    hypothesis: HypothesisReport
    places: tuple  # PlaceQuotientReport per bad prime
    ord_p_tamagawa: int
    ord_p_rhs: int
    ord_p_sha_quotient: int
    conditional_sha_prediction: int | None
    conclusion_tier: str
    notes: tuple

    def as_json(self) -> dict:
        prof = self.profile
        pred = None
        if self.conditional_sha_prediction is not None:
            pred = {
                "ord_p_sha_top": self.conditional_sha_prediction,
                "sha_p_primary_order": self.p ** self.conditional_sha_prediction
                if self.conditional_sha_prediction >= 0
                else None,
            }
        return {
            "schema": 1,
            "curve": {
                "label": prof.label,
                "model": list(prof.model.ainvs()),
                "delta_min": prof.delta_min,
            },
            "field": self.field.describe(),
            "group": self.field.group.kind,
            "p": self.p,
            "relation": {
                "coeffs": self.theta.named_coeffs(),
                "norm": norm_constant(self.theta).as_json(),
            },
            "assumptions": {
                "rank": prof.rank,
                "torsion_order": prof.torsion_order,
                "sha_p_trivial": sorted(prof.sha_p_trivial_assumed),
                "mordell_weil_stable": True,
                "sha_trivial_in_proper_subfields": self.p in prof.sha_p_trivial_assumed,
            },
            "hypotheses": self.hypothesis.as_json(),
            "places": [pr.as_json() for pr in self.places],
            "regulator_quotient": regulator_quotient(self.theta, prof.rank).as_json(),
            "ord_p": {
                "tamagawa_quotient": self.ord_p_tamagawa,
                "rhs": self.ord_p_rhs,
                "sha_quotient": self.ord_p_sha_quotient,
            },
            "conditional_prediction": pred,
            "conclusion_tier": self.conclusion_tier,
            "notes": list(self.notes),
        }


def resolve_local_class(field: FieldSpec, v: int, overrides: dict | None) -> LocalClass:
    overrides = overrides or {}
    if v in overrides:
        d_name, i_name = overrides[v]
        G = field.group
        D = G.class_by_name(d_name).representative
        I = G.class_by_name(i_name).representative
        if not I.element_set <= D.element_set:
            # look for a conjugate of I inside D
            for x in range(G.order):
                cand = G.conjugate_subgroup(I, x)
                if cand.element_set <= D.element_set:
                    I = cand
                    break
            else:
                raise GroupError(f"inertia class {i_name} has no conjugate inside {d_name}")
        return LocalClass(G, D, I)
    if field.kind == "multiquadratic":
        return multiquadratic_local_class(field.d1, field.d2, v, group=field.group)
    if field.kind == "polynomial":
        try:
            pattern = factor_degree_pattern(field.poly, v)
        except RamifiedPrimeError as exc:
            raise MissingLocalClassError(
                f"prime {v} ramifies in the defining polynomial; {exc}"
            ) from exc
        return frobenius_class(field.group, pattern)
    raise MissingLocalClassError(
        f"no local class for prime {v}: abstract fields need --local-class overrides"
    )


def _conclusion_tier(hyp: HypothesisReport, profile: CurveProfile, p: int) -> str:
    if not hyp.hypotheses_pass:
        return TIER_NONE
    if p in profile.sha_p_trivial_assumed:
        if profile.torsion_order % p != 0:
            return TIER_SELMER_GROWTH
        return TIER_SHA_NONZERO
    return TIER_SHA_CHANGE


def certify(
    profile: CurveProfile,
    field: FieldSpec,
    p: int,
    overrides: dict | None = None,
) -> GrowthCertificate:
    """Assemble the p-part of the Tamagawa/Sha quotient identity into a certificate.

    overrides maps a prime to a (decomposition, inertia) pair of subgroup class
    names, taking precedence over anything computed from the field description.
    """
    kind = field.group.kind
    expected_p = family_prime(kind)
    if p != expected_p:
        raise ValueError(f"group {kind} pairs with p = {expected_p}, not p = {p}")
    if not profile.is_semistable():
        bad = [rd.v for rd in profile.bad_places if rd.kind == ADDITIVE]
        raise NonSemistableError(f"additive reduction at {bad}; certificate refused")
    theta = canonical_relation(field.group)
    places = []
    for rd in profile.bad_places:
        lc = resolve_local_class(field, rd.v, overrides)
        places.append(local_theta_quotient(theta, lc, rd))
    ord_tam = sum(pr.quotient.ord(p) for pr in places)
    ord_rhs = profile.rank * norm_constant(theta).ord(p)
    ord_sha = ord_rhs - ord_tam
    hyp = hypothesis_check(profile, p, kind)
    prediction = None
    if p in profile.sha_p_trivial_assumed:
        prediction = ord_sha
    notes = (
        "torsion terms cancel: the coefficients sum to zero and the torsion "
        "order is constant across intermediate fields under the stable "
        "Mordell-Weil assumption",
        "good places and places outside the bad set contribute 1 to every quotient",
        "prediction is conditional on trivial p-primary Sha in all proper "
        "intermediate fields and on E(K) tensor Z_p = E(F) tensor Z_p",
    )
    return GrowthCertificate(
        profile=profile,
        field=field,
        p=p,
        theta=theta,
        hypothesis=hyp,
        places=tuple(places),
        ord_p_tamagawa=ord_tam,
        ord_p_rhs=ord_rhs,
        ord_p_sha_quotient=ord_sha,
        conditional_sha_prediction=prediction,
        conclusion_tier=_conclusion_tier(hyp, profile, p),
        notes=notes,
    )

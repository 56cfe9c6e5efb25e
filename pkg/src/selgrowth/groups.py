"""Small finite groups given by explicit Cayley tables.

Elements are the integers 0..order-1. Everything downstream (subgroup
lattices, conjugacy classes, double cosets, permutation-character values)
is computed by direct enumeration, which is exact and fast at the scale
this package supports (group order at most 200).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

MAX_ORDER = 200


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup stored as its sorted tuple of element indices."""

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Subgroup{self.elements}"


@dataclass(frozen=True, eq=False)
class SubgroupClass:
    """A conjugacy class of subgroups, keyed by its canonical representative.

    The representative is the conjugate whose sorted element tuple is
    lexicographically smallest, so class data is reproducible byte for byte.
    """

    representative: Subgroup
    class_size: int
    class_id: int

    @property
    def order(self) -> int:
        return len(self.representative)

    def __repr__(self):
        return f"SubgroupClass(id={self.class_id}, rep={self.representative.elements}, size={self.class_size})"


class FiniteGroup:
    """Finite group on 0..order-1 with an explicit multiplication table.

    Instances are immutable after construction; derived structure (inverse
    table, conjugacy classes, subgroup lattice) is computed on first use and
    cached. ``kind`` optionally records the CLI spec string the group was
    built from (``c2xc2``, ``d:5``, ``cpxcp:3``, ``sd:7:3``, ``c:6``).
    """

    def __init__(self, table, identity=0, kind=None, validate=False, generators=None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        if self.order == 0:
            raise GroupError("empty multiplication table")
        if self.order > MAX_ORDER:
            raise GroupError(f"group order {self.order} exceeds the cap {MAX_ORDER}")
        for row in self.table:
            if len(row) != self.order or any(not 0 <= x < self.order for x in row):
                raise GroupError("multiplication table is not square over 0..n-1")
        self.identity = int(identity)
        self.kind = kind
        self._inv = self._inverse_table()
        if validate:
            self.validate(generators)

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def elements(self):
        return range(self.order)

    def _inverse_table(self):
        e = self.identity
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == e and self.table[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise GroupError(f"element {a} has no two-sided inverse")
        return tuple(inv)

    def validate(self, generators=None):
        """Group-axiom check: exhaustive O(n^3), or Light's test when a
        generating set is supplied (associativity on generator triples
        propagates to all triples)."""
        e = self.identity
        for a in range(self.order):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise GroupError("identity is not two-sided")
        if generators is not None:
            if len(self.subgroup_closure(generators)) != self.order:
                raise GroupError("claimed generators do not generate the group")
            firsts = generators
        else:
            firsts = range(self.order)
        for a in firsts:
            row_a = self.table[a]
            for b in range(self.order):
                ab = row_a[b]
                row_b = self.table[b]
                row_ab = self.table[ab]
                for c in range(self.order):
                    if row_ab[c] != row_a[row_b[c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")
        return self

    @cached_property
    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def conjugate(self, g: int, x: int) -> int:
        """x^-1 g x"""
        return self.mul(self.mul(self.inv(x), g), x)

    # -- conjugacy classes of elements --------------------------------------

    @cached_property
    def element_classes(self):
        """Conjugacy classes of elements as sorted tuples, sorted by min element."""
        if self.is_abelian:
            return [(g,) for g in range(self.order)]
        seen = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            orbit = {self.conjugate(g, x) for x in range(self.order)}
            seen |= orbit
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda c: c[0])
        return classes

    # -- subgroups -----------------------------------------------------------

    def subgroup_closure(self, gens) -> tuple:
        """Elements of the subgroup generated by ``gens`` (BFS on the Cayley graph)."""
        e = self.identity
        seen = {e}
        queue = [e]
        gens = tuple(gens)
        while queue:
            x = queue.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def subgroup(self, elements) -> Subgroup:
        """Wrap an element collection as a Subgroup after checking closure."""
        s = Subgroup(tuple(elements))
        es = s.element_set
        if self.identity not in es:
            raise GroupError("subgroup must contain the identity")
        for a in s:
            if self.inv(a) not in es:
                raise GroupError("subgroup not closed under inversion")
            for b in s:
                if self.table[a][b] not in es:
                    raise GroupError("subgroup not closed under multiplication")
        if self.order % len(s) != 0:
            raise GroupError("subgroup size does not divide group order")
        return s

    @cached_property
    def trivial_subgroup(self) -> Subgroup:
        return Subgroup((self.identity,))

    @cached_property
    def full_subgroup(self) -> Subgroup:
        return Subgroup(tuple(range(self.order)))

    @cached_property
    def all_subgroups(self):
        """Every subgroup, built from cyclic subgroups closed under joins."""
        gens_of = {}
        triv = frozenset((self.identity,))
        gens_of[triv] = ()
        cyclics = []
        for g in range(self.order):
            c = frozenset(self.subgroup_closure((g,)))
            if c not in gens_of:
                gens_of[c] = (g,)
                cyclics.append(c)
        work = list(gens_of)
        while work:
            fresh = []
            for s in work:
                for c in cyclics:
                    if c <= s:
                        continue
                    gens = gens_of[s] + gens_of[c]
                    j = frozenset(self.subgroup_closure(gens))
                    if j not in gens_of:
                        gens_of[j] = gens
                        fresh.append(j)
            work = fresh
        subs = [Subgroup(tuple(sorted(s))) for s in gens_of]
        subs.sort(key=lambda s: (len(s), s.elements))
        return subs

    def conjugate_subgroup(self, H: Subgroup, x: int) -> Subgroup:
        return Subgroup(tuple(self.conjugate(h, x) for h in H))

    def normalizer_size(self, H: Subgroup) -> int:
        return sum(
            1 for x in range(self.order) if self.conjugate_subgroup(H, x) == H
        )

    @cached_property
    def subgroup_classes(self):
        """Conjugacy classes of subgroups, sorted by (order, representative)."""
        remaining = {s.elements: s for s in self.all_subgroups}
        raw = []
        while remaining:
            _, H = next(iter(remaining.items()))
            orbit = {self.conjugate_subgroup(H, x).elements for x in range(self.order)}
            rep = min(orbit)
            for o in orbit:
                remaining.pop(o, None)
            raw.append((rep, len(orbit)))
        raw.sort(key=lambda t: (len(t[0]), t[0]))
        return [
            SubgroupClass(representative=Subgroup(rep), class_size=size, class_id=i)
            for i, (rep, size) in enumerate(raw)
        ]

    def class_of_subgroup(self, H) -> SubgroupClass:
        """The conjugacy class containing H (H given as Subgroup or iterable)."""
        if not isinstance(H, Subgroup):
            H = self.subgroup(H)
        rep = min(
            self.conjugate_subgroup(H, x).elements for x in range(self.order)
        )
        for cls in self.subgroup_classes:
            if cls.representative.elements == rep:
                return cls
        raise GroupError(f"not a subgroup of this group: {H}")

    def is_cyclic_subgroup(self, H: Subgroup) -> bool:
        return any(len(self.subgroup_closure((g,))) == len(H) for g in H)

    @cached_property
    def class_names(self):
        """Stable display names for subgroup classes: 1, C2, C2a.., U4, G."""
        bases = []
        for cls in self.subgroup_classes:
            k = cls.order
            if k == 1:
                bases.append("1")
            elif k == self.order:
                bases.append("G")
            elif self.is_cyclic_subgroup(cls.representative):
                bases.append(f"C{k}")
            else:
                bases.append(f"U{k}")
        counts = {}
        for b in bases:
            counts[b] = counts.get(b, 0) + 1
        seen = {}
        names = []
        for b in bases:
            if counts[b] == 1:
                names.append(b)
            else:
                i = seen.get(b, 0)
                seen[b] = i + 1
                names.append(b + "abcdefghijklmnopqrstuvwxyz"[i])
        return names

    def class_by_name(self, name: str) -> SubgroupClass:
        try:
            idx = self.class_names.index(name)
        except ValueError:
            raise GroupError(
                f"unknown subgroup class {name!r}; choices: {', '.join(self.class_names)}"
            ) from None
        return self.subgroup_classes[idx]

    def __repr__(self):
        tag = self.kind or f"order {self.order}"
        return f"FiniteGroup({tag})"


# -- module-level operations -------------------------------------------------


def subgroup_classes(G: FiniteGroup):
    return G.subgroup_classes


def fixed_points(G: FiniteGroup, H: Subgroup, g: int) -> int:
    """Number of cosets xH fixed by g, i.e. #{x : x^-1 g x in H} / |H|."""
    s = H.element_set
    hits = sum(1 for x in range(G.order) if G.conjugate(g, x) in s)
    assert hits % len(H) == 0
    return hits // len(H)


@dataclass(frozen=True)
class DoubleCoset:
    representative: int
    size: int
    degree: int  # |D| / |D meet x^-1 H x|, the local degree of this place
    e_index: int | None = None
    f_index: int | None = None


def double_cosets(G: FiniteGroup, H: Subgroup, D: Subgroup, I: Subgroup | None = None):
    """Partition of G into double cosets HxD, with local degree bookkeeping.

    When the inertia subgroup I is supplied it must be normal in D with D/I
    cyclic; each record then carries e = |I|/|I meet x^-1Hx| and f = degree/e.
    """
    if I is not None:
        _check_inertia_pair(G, D, I)
    hset = H.element_set
    seen = [False] * G.order
    records = []
    for x in range(G.order):
        if seen[x]:
            continue
        coset = set()
        for h in H:
            hx = G.mul(h, x)
            for d in D:
                coset.add(G.mul(hx, d))
        for y in coset:
            seen[y] = True
        xinvHx = {G.conjugate(h, x) for h in hset}
        meet_d = sum(1 for d in D if d in xinvHx)
        degree = len(D) // meet_d
        if I is not None:
            meet_i = sum(1 for a in I if a in xinvHx)
            e = len(I) // meet_i
            f = degree // e
            assert e * f == degree
            records.append(DoubleCoset(x, len(coset), degree, e, f))
        else:
            records.append(DoubleCoset(x, len(coset), degree))
    total_degree = sum(r.degree for r in records)
    assert total_degree == G.order // len(H), "local degrees must sum to [G:H]"
    return records


def _check_inertia_pair(G: FiniteGroup, D: Subgroup, I: Subgroup):
    if not I.element_set <= D.element_set:
        raise GroupError("inertia subgroup is not contained in the decomposition group")
    for d in D:
        if G.conjugate_subgroup(I, d) != I:
            raise GroupError("inertia subgroup is not normal in the decomposition group")
    q = len(D) // len(I)
    iset = I.element_set
    for d in D:
        k, x = 1, d
        while x not in iset:
            x = G.mul(x, d)
            k += 1
        if k == q:
            return
    raise GroupError("quotient D/I is not cyclic")


# -- constructors ------------------------------------------------------------


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1 or n > MAX_ORDER:
        raise GroupError(f"cyclic order out of range: {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    gens = [1] if n > 1 else []
    return FiniteGroup(table, kind=f"c:{n}", validate=True, generators=gens)


def make_elem_abelian(p: int, rank: int = 2) -> FiniteGroup:
    """(C_p)^rank with elements encoded base p; rank 2 is the supported case."""
    if rank != 2:
        raise GroupError("only rank 2 elementary abelian groups are supported")
    if not _is_prime(p):
        raise GroupError(f"{p} is not prime")
    n = p * p
    if n > MAX_ORDER:
        raise GroupError(f"order {n} exceeds the cap {MAX_ORDER}")

    def add(a, b):
        return ((a // p + b // p) % p) * p + (a % p + b % p) % p

    table = [[add(a, b) for b in range(n)] for a in range(n)]
    kind = "c2xc2" if p == 2 else f"cpxcp:{p}"
    return FiniteGroup(table, kind=kind, validate=True, generators=[1, p])


def make_dihedral(p: int) -> FiniteGroup:
    """Dihedral group of order 2p, p an odd prime. Rotations 0..p-1, reflections p..2p-1."""
    if not _is_prime(p) or p == 2:
        raise GroupError(f"dihedral parameter must be an odd prime, got {p}")
    n = 2 * p
    if n > MAX_ORDER:
        raise GroupError(f"order {n} exceeds the cap {MAX_ORDER}")

    def mul(a, b):
        ra, sa = a % p, a // p
        rb, sb = b % p, b // p
        # s^sa r^ra * s^sb r^rb; reflections act by inversion on rotations
        if sb == 0:
            return sa * p + (ra + rb) % p
        return (1 - sa) * p + (rb - ra) % p

    table = [[mul(a, b) for b in range(n)] for a in range(n)]
    # generators: the rotation r (index 1) and a reflection s (index p)
    return FiniteGroup(table, kind=f"d:{p}", validate=True, generators=[1, p])


def make_semidirect(p: int, q: int) -> FiniteGroup:
    """C_p : C_q with C_q acting faithfully, via the least unit of order q mod p."""
    if not _is_prime(p) or not _is_prime(q) or q % 2 == 0:
        raise GroupError(f"need primes p and odd q, got p={p} q={q}")
    if (p - 1) % q != 0:
        raise GroupError(f"no faithful action: {q} does not divide {p}-1")
    n = p * q
    if n > MAX_ORDER:
        raise GroupError(f"order {n} exceeds the cap {MAX_ORDER}")
    u = _least_unit_of_order(p, q)

    def mul(x, y):
        a, b = divmod(x, q)
        c, d = divmod(y, q)
        return ((a + c * pow(u, b, p)) % p) * q + (b + d) % q

    table = [[mul(x, y) for y in range(n)] for x in range(n)]
    # generators: (1, 0) at index q and (0, 1) at index 1
    return FiniteGroup(table, kind=f"sd:{p}:{q}", validate=True, generators=[q, 1])


def _least_unit_of_order(p: int, q: int) -> int:
    for u in range(2, p):
        if pow(u, q, p) == 1 and u != 1:
            # order divides q prime, and u != 1, so the order is exactly q
            return u
    raise GroupError(f"no unit of order {q} mod {p}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def make_group(kind: str, *params: int) -> FiniteGroup:
    """Programmatic constructor mirroring the CLI spec strings."""
    if kind == "cyclic":
        return make_cyclic(*params)
    if kind == "elem_abelian":
        return make_elem_abelian(*params)
    if kind == "dihedral":
        # parameter is the order 2p
        (n,) = params
        if n % 2 != 0:
            raise GroupError(f"dihedral order must be even, got {n}")
        return make_dihedral(n // 2)
    if kind == "semidirect":
        return make_semidirect(*params)
    raise GroupError(f"unknown group kind {kind!r}")


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse a CLI group spec: c2xc2, d:<p>, cpxcp:<p>, sd:<p>:<q>."""
    spec = spec.strip().lower()
    if spec == "c2xc2":
        return make_elem_abelian(2)
    parts = spec.split(":")
    try:
        if parts[0] == "d" and len(parts) == 2:
            return make_dihedral(int(parts[1]))
        if parts[0] == "cpxcp" and len(parts) == 2:
            return make_elem_abelian(int(parts[1]))
        if parts[0] == "sd" and len(parts) == 3:
            return make_semidirect(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise GroupError(f"bad group spec {spec!r}: {exc}") from None
    raise GroupError(
        f"unknown group spec {spec!r}; expected c2xc2, d:<p>, cpxcp:<p> or sd:<p>:<q>"
    )


def family_prime(kind: str | None) -> int:
    """The prime attached to a theorem family: 2 for c2xc2, else the p parameter."""
    if kind is None:
        raise GroupError("group has no family kind")
    if kind == "c2xc2":
        return 2
    parts = kind.split(":")
    if parts[0] in ("d", "cpxcp", "sd"):
        return int(parts[1])
    raise GroupError(f"group kind {kind!r} is not one of the theorem families")


# -- generic constructions used for transport of relations -------------------


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Direct product with element (a, b) encoded as a*|H| + b."""
    n = G.order * H.order
    if n > MAX_ORDER:
        raise GroupError(f"order {n} exceeds the cap {MAX_ORDER}")
    m = H.order
    table = [
        [
            G.table[x // m][y // m] * m + H.table[x % m][y % m]
            for y in range(n)
        ]
        for x in range(n)
    ]
    return FiniteGroup(table, identity=G.identity * m + H.identity)


def relabeled(G: FiniteGroup, perm) -> FiniteGroup:
    """The isomorphic group with elements renamed by the permutation ``perm``."""
    perm = list(perm)
    if sorted(perm) != list(range(G.order)):
        raise GroupError("relabeling must be a permutation of the elements")
    inv = [0] * G.order
    for i, v in enumerate(perm):
        inv[v] = i
    table = [
        [perm[G.table[inv[a]][inv[b]]] for b in range(G.order)]
        for a in range(G.order)
    ]
    return FiniteGroup(table, identity=perm[G.identity])

"""Partial actions of finite groups on finite rings, their classification,
equivalence/extension checks, and partial skew group rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _config
from ._tables import MixedRadix, as_table
from .errors import (
    CarrierTooLarge,
    DomainError,
    NotUnitalAction,
    RingAxiomError,
    TableIncomplete,
    TheoremCheckFailed,
)
from .report import Report
from .rings import (
    FiniteRing,
    RingMorphism,
    ideal_product,
    is_central_idempotent,
    unit_of_ideal,
    verify_ideal,
    verify_morphism,
)


class FiniteGroup:
    """Finite group on 0..n-1 given by its operation table."""

    def __init__(self, op, label: str = "G", names: Sequence[str] | None = None):
        op = np.asarray(op, dtype=np.int32)
        n = op.shape[0]
        self.order = n
        self.op_table = as_table(op, (n, n), f"{label}.op", n)
        self.label = label
        self.names = list(names) if names is not None else None
        self.e = self._find_identity()
        self.inv_table = self._derive_inv()
        self._verify()

    def _find_identity(self) -> int:
        idx = np.arange(self.order, dtype=np.int32)
        for e in range(self.order):
            if np.array_equal(self.op_table[e], idx) and np.array_equal(self.op_table[:, e], idx):
                return e
        raise TableIncomplete(f"{self.label}: no identity element")

    def _derive_inv(self) -> np.ndarray:
        inv = np.full(self.order, -1, dtype=np.int32)
        rows, cols = np.nonzero(self.op_table == self.e)
        inv[rows] = cols
        if (inv < 0).any():
            raise TableIncomplete(f"{self.label}: some element has no inverse")
        inv.setflags(write=False)
        return inv

    def _verify(self) -> None:
        op = self.op_table
        for a in range(self.order):
            lhs = op[op[a, :], :]
            rhs = op[a, op]
            if not np.array_equal(lhs, rhs):
                b, c = map(int, np.argwhere(lhs != rhs)[0])
                raise TableIncomplete(f"{self.label}: op not associative at {(a, b, c)}")
        if not np.array_equal(op[self.inv_table, np.arange(self.order)], np.full(self.order, self.e)):
            raise TableIncomplete(f"{self.label}: inverses fail")

    def mul(self, a: int, b: int) -> int:
        return int(self.op_table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inv_table[a])

    def elements(self) -> range:
        return range(self.order)

    def name_of(self, g: int) -> str:
        return self.names[g] if self.names else str(g)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, label=f"C{n}", names=[f"g{i}" if i else "e" for i in range(n)])

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], label="C1", names=["e"])

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"


class PartialGroupAction:
    """Family (D_g, alpha_g) with alpha_g defined exactly on D_{g^-1}.

    Maps are dictionaries on the exact domain; evaluation outside raises.
    """

    def __init__(
        self,
        group: FiniteGroup,
        ring: FiniteRing,
        domains: Sequence[Iterable[int]],
        maps: Sequence[Mapping[int, int]],
        label: str = "alpha",
    ):
        if len(domains) != group.order or len(maps) != group.order:
            raise TableIncomplete("need one domain and one map per group element")
        self.group = group
        self.ring = ring
        self.domains = tuple(frozenset(int(x) for x in d) for d in domains)
        self.maps = tuple(dict((int(k), int(v)) for k, v in m.items()) for m in maps)
        self.label = label
        for g in group.elements():
            expected = self.domains[group.inv(g)]
            if set(self.maps[g].keys()) != expected:
                raise TableIncomplete(
                    f"{label}: map {g} must be total exactly on the inverse domain"
                )

    def apply(self, g: int, a: int) -> int:
        try:
            return self.maps[g][a]
        except KeyError:
            raise DomainError(f"{self.label}: alpha_{g} undefined at {a}") from None

    def domain(self, g: int) -> frozenset[int]:
        """D_g, the image of alpha_g."""
        return self.domains[g]

    def map_array(self, g: int) -> np.ndarray:
        """alpha_g as a full-size array with -1 outside its domain."""
        arr = np.full(self.ring.size, -1, dtype=np.int32)
        for k, v in self.maps[g].items():
            arr[k] = v
        return arr

    def __repr__(self) -> str:
        return f"PartialGroupAction({self.label}, {self.group.label} on {self.ring.label})"


def identity_map(elements: Iterable[int]) -> dict[int, int]:
    return {int(x): int(x) for x in elements}


def global_action(group: FiniteGroup, ring: FiniteRing, autos: Sequence[Mapping[int, int] | Sequence[int]], label: str = "beta") -> PartialGroupAction:
    """Global action with D_g = ring for every g; autos[g] totals the carrier."""
    carrier = range(ring.size)
    maps = []
    for g in group.elements():
        m = autos[g]
        if isinstance(m, Mapping):
            maps.append(dict(m))
        else:
            maps.append({i: int(v) for i, v in enumerate(m)})
    return PartialGroupAction(group, ring, [carrier] * group.order, maps, label=label)


def trivial_action(ring: FiniteRing) -> PartialGroupAction:
    g = FiniteGroup.trivial()
    return PartialGroupAction(g, ring, [range(ring.size)], [identity_map(range(ring.size))], label="id")


def verify_partial_action(act: PartialGroupAction) -> Report:
    """Axioms of a partial group action, with ring-isomorphism checks per map
    and the derived inverse-compatibility identity."""
    report = Report(subject=act.label)
    ring, group = act.ring, act.group

    for g in group.elements():
        dom_report = verify_ideal(ring, act.domains[g])
        for v in dom_report.violations:
            report.add("domain-not-ideal", (g,) + v.witness, v.check)

    for g in group.elements():
        src = act.domains[group.inv(g)]
        dst = act.domains[g]
        mapping = act.maps[g]
        if set(mapping.values()) != dst or len(set(mapping.values())) != len(mapping):
            report.add("map-not-bijective", (g,), "image is not exactly the target domain")
            continue
        arr = act.map_array(g)
        s = np.array(sorted(src), dtype=np.int32)
        fs = arr[s]
        lhs = arr[ring.add_table[np.ix_(s, s)]]
        rhs = ring.add_table[np.ix_(fs, fs)]
        if not np.array_equal(lhs, rhs):
            i, j = np.argwhere(lhs != rhs)[0]
            report.add("map-not-additive", (g, int(s[i]), int(s[j])))
            continue
        lhs = arr[ring.mul_table[np.ix_(s, s)]]
        rhs = ring.mul_table[np.ix_(fs, fs)]
        if not np.array_equal(lhs, rhs):
            i, j = np.argwhere(lhs != rhs)[0]
            report.add("map-not-multiplicative", (g, int(s[i]), int(s[j])))

    if act.domains[group.e] != frozenset(range(ring.size)):
        report.add("identity-domain", (group.e,), "D_e must be the whole ring")
    elif any(act.maps[group.e][a] != a for a in range(ring.size)):
        a = next(a for a in range(ring.size) if act.maps[group.e][a] != a)
        report.add("identity-map", (a,), "alpha_e must be the identity")

    if not report.ok():
        return report

    for g in group.elements():
        for h in group.elements():
            ginv = group.inv(g)
            hinv = group.inv(h)
            ghinv = group.inv(group.mul(g, h))
            meet = act.domains[h] & act.domains[ginv]
            image = {act.maps[hinv][x] for x in meet}
            if not image <= act.domains[ghinv]:
                x = next(iter(image - act.domains[ghinv]))
                report.add("domain-condition", (g, h, x), "alpha_{h^-1}(D_h & D_{g^-1}) escapes D_{(gh)^-1}")
                continue
            pre = {a for a in act.domains[hinv] if act.maps[h][a] in meet}
            gh = group.mul(g, h)
            for a in pre:
                if a not in act.domains[group.inv(gh)]:
                    report.add("composition-domain", (g, h, a))
                    break
                if act.maps[g][act.maps[h][a]] != act.maps[gh][a]:
                    report.add("composition", (g, h, a), "alpha_g(alpha_h(a)) != alpha_{gh}(a)")
                    break

    if report.ok():
        for g in group.elements():
            inv_map = {v: k for k, v in act.maps[g].items()}
            if inv_map != act.maps[group.inv(g)]:
                report.add("inverse-map", (g,), "alpha_{g^-1} is not the table inverse of alpha_g")
                break
    return report


@dataclass
class Classification:
    """Flags and witnesses from classifying a verified partial action."""

    is_global: bool
    unit_idempotents: tuple[int, ...] | None  # 1_g per g when unital
    is_regular: bool
    is_product: bool

    @property
    def is_unital(self) -> bool:
        return self.unit_idempotents is not None


def classify(act: PartialGroupAction) -> Classification:
    """Global / unital / regular / product flags.

    Regularity runs an exact reachability search over (set of factors used,
    product ideal) states, which covers every finite sequence of domains.
    A unital action failing the regularity check would contradict a known
    implication and raises a bug signal.
    """
    ring, group = act.ring, act.group
    carrier = frozenset(range(ring.size))
    is_global = all(act.domains[g] == carrier for g in group.elements())

    units: list[int] = []
    for g in group.elements():
        u = unit_of_ideal(ring, act.domains[g])
        if u is None:
            units = []
            break
        if not is_central_idempotent(ring, u):
            units = []
            break
        units.append(u)
    unit_idempotents = tuple(units) if units else None

    distinct = sorted({act.domains[g] for g in group.elements()}, key=sorted)
    prod_cache: dict[tuple[frozenset, frozenset], frozenset] = {}

    def prod(a: frozenset, b: frozenset) -> frozenset:
        key = (a, b)
        if key not in prod_cache:
            prod_cache[key] = ideal_product(ring, a, b)
        return prod_cache[key]

    is_regular = True
    seen: set[tuple[frozenset, frozenset]] = set()
    frontier: list[tuple[frozenset, frozenset]] = []
    for d in distinct:
        state = (frozenset([d]), d)
        seen.add(state)
        frontier.append(state)
    while frontier and is_regular:
        nxt = []
        for used, product in frontier:
            target = carrier
            for d in used:
                target &= d
            if product != target:
                is_regular = False
                break
            for d in distinct:
                state = (used | {d}, prod(product, d))
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt

    is_product = True
    doms = act.domains
    for g in group.elements():
        if prod(doms[g], doms[g]) != doms[g]:
            is_product = False
    for g in group.elements():
        for h in group.elements():
            if prod(doms[g], doms[h]) != prod(doms[h], doms[g]):
                is_product = False
    if is_product:
        for g in group.elements():
            ginv = group.inv(g)
            for h in group.elements():
                lhs = {act.maps[ginv][x] for x in prod(doms[g], doms[h])}
                rhs = prod(doms[ginv], doms[group.mul(ginv, h)])
                if lhs != rhs:
                    is_product = False
                    break
                a_set = prod(doms[group.inv(h)], doms[group.inv(group.mul(g, h))])
                gh = group.mul(g, h)
                for a in a_set:
                    if act.maps[g][act.maps[h][a]] != act.maps[gh][a]:
                        is_product = False
                        break

    if unit_idempotents is not None and not is_regular:
        raise TheoremCheckFailed("unital action classified non-regular")
    return Classification(is_global, unit_idempotents, is_regular, is_product)


class SkewGroupRing:
    """Formal sums over the group with entries in the domains; twisted product."""

    def __init__(self, action: PartialGroupAction, ring: FiniteRing, dom_lists: list[list[int]], codec: MixedRadix):
        self.action = action
        self.ring = ring
        self.dom_lists = dom_lists
        self.pos = [
            {a: i for i, a in enumerate(dom)} for dom in dom_lists
        ]
        self.codec = codec

    def encode(self, coeffs: Mapping[int, int]) -> int:
        """Element id of sum a_g delta_g given by {g: a_g}; omitted g means 0."""
        digits = []
        for g, dom in enumerate(self.dom_lists):
            a = coeffs.get(g, self.action.ring.zero)
            if a not in self.pos[g]:
                raise DomainError(f"coefficient {a} not in D_{g}")
            digits.append(self.pos[g][a])
        return self.codec.encode(digits)

    def decode(self, idx: int) -> dict[int, int]:
        digits = self.codec.decode(idx)
        return {g: self.dom_lists[g][d] for g, d in enumerate(digits)}

    def delta(self, g: int, a: int) -> int:
        return self.encode({g: a})


def skew_group_ring(act: PartialGroupAction, unsafe: bool = False) -> SkewGroupRing:
    """The partial skew group ring of a unital action.

    The ring axioms are re-verified on the assembled carrier; `unsafe` skips
    that audit and is the only way to build over a non-unital action.
    """
    group, ring = act.group, act.ring
    cls = classify(act)
    if not cls.is_unital and not unsafe:
        raise NotUnitalAction(f"{act.label}: skew group ring needs a unital action")

    dom_lists = [sorted(act.domains[g]) for g in group.elements()]
    codec = MixedRadix([len(d) for d in dom_lists])
    if codec.size > _config.element_cap():
        raise CarrierTooLarge(f"skew ring carrier {codec.size} exceeds cap")

    pos_lookup = []
    for dom in dom_lists:
        lk = np.full(ring.size, -1, dtype=np.int32)
        lk[np.array(dom, dtype=np.int32)] = np.arange(len(dom), dtype=np.int32)
        pos_lookup.append(lk)

    # component product tables: (a delta_g)(b delta_h) = alpha_g(alpha_{g^-1}(a) b) delta_{gh}
    comp: dict[tuple[int, int], np.ndarray] = {}
    for g in group.elements():
        ginv = group.inv(g)
        alpha_g = act.map_array(g)
        alpha_ginv = act.map_array(ginv)
        for h in group.elements():
            gh = group.mul(g, h)
            da = np.array(dom_lists[g], dtype=np.int32)
            db = np.array(dom_lists[h], dtype=np.int32)
            moved = alpha_ginv[da]
            prod = ring.mul_table[np.ix_(moved, db)]
            value = alpha_g[prod]
            if (value < 0).any():
                a_i, b_i = np.argwhere(value < 0)[0]
                raise DomainError(
                    f"product escaped: ({da[a_i]} d_{g})({db[b_i]} d_{h})"
                )
            table = pos_lookup[gh][value]
            if (table < 0).any():
                a_i, b_i = np.argwhere(table < 0)[0]
                raise DomainError(
                    f"product not in D_({gh}): ({da[a_i]} d_{g})({db[b_i]} d_{h})"
                )
            comp[(g, h)] = table

    digits = codec.decode_all()
    size = codec.size
    acc_dtype = np.int16 if size <= 32767 else np.int32
    dom_adds = []
    for g, dom in enumerate(dom_lists):
        da = np.array(dom, dtype=np.int32)
        dom_adds.append(pos_lookup[g][ring.add_table[np.ix_(da, da)]])
    add = np.zeros((size, size), dtype=acc_dtype)
    for g, stride in zip(group.elements(), codec.strides):
        add += dom_adds[g][np.ix_(digits[g], digits[g])].astype(acc_dtype) * acc_dtype(stride)
    mul = np.zeros((size, size), dtype=acc_dtype)
    for f in group.elements():
        acc = None
        for g in group.elements():
            for h in group.elements():
                if group.mul(g, h) != f:
                    continue
                term = comp[(g, h)][np.ix_(digits[g], digits[h])]
                acc = term if acc is None else dom_adds[f][acc, term]
        mul += acc.astype(acc_dtype) * acc_dtype(codec.strides[f])

    one_digits = [int(pos_lookup[g][ring.zero]) for g in group.elements()]
    one_digits[group.e] = int(pos_lookup[group.e][ring.one])
    one = codec.encode(one_digits)
    names = None
    if size <= 1024:
        names = []
        for idx in range(size):
            coeffs = {}
            digs = codec.decode(idx)
            parts = [
                f"{ring.name_of(dom_lists[g][d])}d{group.name_of(g)}"
                for g, d in enumerate(digs)
                if dom_lists[g][d] != ring.zero
            ]
            names.append("+".join(parts) if parts else "0")
    skew = FiniteRing(add, mul, one, label=f"{act.ring.label}*{group.label}", names=names, check=not unsafe)
    return SkewGroupRing(act, skew, dom_lists, codec)


def check_equivalent(alpha: PartialGroupAction, theta: PartialGroupAction, phi: RingMorphism) -> bool:
    """phi carries alpha to theta: phi(A_g) = B_g and phi(alpha_g(x)) = theta_g(phi(x))."""
    if alpha.group is not theta.group and alpha.group.order != theta.group.order:
        return False
    rep = verify_morphism(phi, require_bijective=True)
    if not rep.ok():
        raise RingAxiomError(rep)
    group = alpha.group
    for g in group.elements():
        if {phi(x) for x in alpha.domains[g]} != theta.domains[g]:
            return False
        for x in alpha.domains[group.inv(g)]:
            if phi(alpha.maps[g][x]) != theta.maps[g][phi(x)]:
                return False
    return True


def check_extension(alpha: PartialGroupAction, theta: PartialGroupAction, iota: RingMorphism) -> bool:
    """theta extends alpha along the monomorphism iota."""
    rep = verify_morphism(iota, require_unital=False)
    if not rep.ok():
        raise RingAxiomError(rep)
    if len(set(iota.mapping)) != len(iota.mapping):
        raise TableIncomplete("extension map must be injective")
    group = alpha.group
    for g in group.elements():
        if not {iota(x) for x in alpha.domains[g]} <= theta.domains[g]:
            return False
        for x in alpha.domains[group.inv(g)]:
            if theta.maps[g][iota(x)] != iota(alpha.maps[g][x]):
                return False
    return True


def skew_morphism(
    src: SkewGroupRing,
    dst: SkewGroupRing,
    base_map: Sequence[int],
    group_map: Sequence[int] | None = None,
) -> RingMorphism:
    """The induced map sum a_g delta_g -> sum phi(a_g) delta_{iso(g)}."""
    group_map = list(group_map) if group_map is not None else list(range(src.action.group.order))
    mapping = []
    for idx in range(src.ring.size):
        coeffs = src.decode(idx)
        mapping.append(dst.encode({group_map[g]: base_map[a] for g, a in coeffs.items()}))
    return RingMorphism(src.ring, dst.ring, tuple(mapping))

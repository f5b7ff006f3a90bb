"""Finite groups as Cayley tables.

Elements are integer indices ``0 .. order-1``.  Products follow
``cayley[a][b] = a*b``; permutation groups compose left to right, so
``a*b`` means "apply ``a`` first, then ``b``" (matching right actions).
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InvalidInput

EXHAUSTIVE_ASSOC_LIMIT = 256


# ---------------------------------------------------------------------------
# exact arithmetic in Q(sqrt 2) and quaternions over it


class QuadRational:
    """``a + b*sqrt(2)`` with rational ``a``, ``b``.

    Stored as integers ``(an + bn*sqrt2) / den`` in lowest terms so that
    equality and hashing are exact and cheap.
    """

    __slots__ = ("_an", "_bn", "_den")

    def __init__(self, a=0, b=0):
        a, b = Fraction(a), Fraction(b)
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den)

    @classmethod
    def _raw(cls, an: int, bn: int, den: int) -> "QuadRational":
        q = cls.__new__(cls)
        q._set(an, bn, den)
        return q

    def _set(self, an, bn, den):
        g = math.gcd(math.gcd(an, bn), den)
        if g > 1:
            an, bn, den = an // g, bn // g, den // g
        object.__setattr__(self, "_an", an)
        object.__setattr__(self, "_bn", bn)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QuadRational is immutable")

    @property
    def a(self) -> Fraction:
        return Fraction(self._an, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._bn, self._den)

    def __add__(self, other):
        o = _quad(other)
        d1, d2 = self._den, o._den
        return QuadRational._raw(self._an * d2 + o._an * d1, self._bn * d2 + o._bn * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return QuadRational._raw(-self._an, -self._bn, self._den)

    def __sub__(self, other):
        return self + (-_quad(other))

    def __rsub__(self, other):
        return _quad(other) - self

    def __mul__(self, other):
        o = _quad(other)
        return QuadRational._raw(self._an * o._an + 2 * self._bn * o._bn,
                                 self._an * o._bn + self._bn * o._an,
                                 self._den * o._den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _quad(other)
        if not isinstance(other, QuadRational):
            return NotImplemented
        return (self._an, self._bn, self._den) == (other._an, other._bn, other._den)

    def __hash__(self):
        return hash((self._an, self._bn, self._den))

    def __bool__(self):
        return bool(self._an) or bool(self._bn)

    def __float__(self):
        return (self._an + self._bn * math.sqrt(2)) / self._den

    def __repr__(self):
        return f"QuadRational({self.a}, {self.b})"


SQRT2 = QuadRational(0, 1)


def _quad(x) -> QuadRational:
    if isinstance(x, QuadRational):
        return x
    if isinstance(x, int):
        return QuadRational._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return QuadRational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QuadRational")


@dataclass(frozen=True)
class Quaternion:
    w: QuadRational
    x: QuadRational
    y: QuadRational
    z: QuadRational

    @classmethod
    def of(cls, w=0, x=0, y=0, z=0) -> "Quaternion":
        return cls(_quad(w), _quad(x), _quad(y), _quad(z))

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def scale(self, c) -> "Quaternion":
        c = _quad(c)
        return Quaternion(self.w * c, self.x * c, self.y * c, self.z * c)

    def coords(self) -> tuple[QuadRational, ...]:
        return (self.w, self.x, self.y, self.z)

    def norm2(self) -> QuadRational:
        return sum((c * c for c in self.coords()), QuadRational())

    def label(self) -> str:
        """Compact label such as ``-k``, ``(-1-i-j-k)/2`` or ``(1+i)/sqrt2``."""
        coords = self.coords()
        if any(c.b for c in coords):
            if any(c.a for c in coords):
                return repr(self)
            ints, denom = [c.b * 2 for c in coords], "/sqrt2"
        elif any(c.a.denominator != 1 for c in coords):
            ints, denom = [c.a * 2 for c in coords], "/2"
        else:
            ints, denom = [c.a for c in coords], ""
        terms = []
        for coef, unit in zip(ints, ("1", "i", "j", "k")):
            if not coef:
                continue
            if coef.denominator != 1:
                return repr(self)
            mag = abs(int(coef))
            body = unit if mag == 1 else (str(mag) if unit == "1" else f"{mag}{unit}")
            terms.append(("-" if coef < 0 else "+") + body)
        if not terms:
            return "0"
        text = "".join(terms)
        if text.startswith("+"):
            text = text[1:]
        if denom:
            return f"({text}){denom}"
        return text


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=True)
class FiniteGroup:
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    labels: tuple[str, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.cayley)
        if n < 1:
            raise InvalidInput("group must have at least one element")
        if any(len(row) != n for row in self.cayley):
            raise InvalidInput("Cayley table must be square")
        if len(self.inverses) != n or len(self.labels) != n:
            raise InvalidInput("inverse/label arrays must have one entry per element")
        if len(set(self.labels)) != n:
            raise InvalidInput("element labels must be unique")
        t = self.table
        if t.min() < 0 or t.max() >= n:
            raise InvalidInput("Cayley table entries out of range")
        e = self.identity
        if not (0 <= e < n):
            raise InvalidInput("identity index out of range")
        idx = np.arange(n)
        if not (np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)):
            bad = int(np.flatnonzero((t[e] != idx) | (t[:, e] != idx))[0])
            raise InvalidInput("identity law fails", witness=bad)
        inv = np.asarray(self.inverses)
        if inv.min() < 0 or inv.max() >= n or np.any(t[idx, inv] != e):
            raise InvalidInput("inverse law fails")
        bad = _associativity_witness(t)
        if bad is not None:
            raise InvalidInput("associativity fails", witness=bad)

    @classmethod
    def from_table(cls, table, labels: Sequence[str] | None = None, name: str = "") -> "FiniteGroup":
        """Build from a Cayley table, deriving identity and inverses."""
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.ndim != 2 or t.shape[1] != n:
            raise InvalidInput("Cayley table must be square")
        idx = np.arange(n)
        ids = [e for e in range(n) if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)]
        if not ids:
            raise InvalidInput("no identity element in Cayley table")
        e = ids[0]
        inverses = []
        for g in range(n):
            hits = np.flatnonzero(t[g] == e)
            if len(hits) == 0:
                raise InvalidInput("element has no inverse", witness=g)
            inverses.append(int(hits[0]))
        if labels is None:
            labels = [str(g) for g in range(n)]
        return cls(tuple(tuple(int(x) for x in row) for row in t), e, tuple(inverses),
                   tuple(str(s) for s in labels), name)

    @cached_property
    def table(self) -> np.ndarray:
        t = np.array(self.cayley, dtype=np.int64)
        t.setflags(write=False)
        return t

    @property
    def order(self) -> int:
        return len(self.cayley)

    def __len__(self):
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def prod(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.cayley[acc][x]
        return acc

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc = self.identity
        for _ in range(k):
            acc = self.cayley[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.cayley[x][a]
            k += 1
        return k

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.labels)}

    def element(self, ref: int | str) -> int:
        """Resolve an element by index or label."""
        if isinstance(ref, bool):
            raise InvalidInput(f"bad element reference {ref!r}")
        if isinstance(ref, (int, np.integer)):
            if 0 <= ref < self.order:
                return int(ref)
            raise InvalidInput(f"element index {ref} out of range for order {self.order}")
        if isinstance(ref, str):
            if ref in self._label_index:
                return self._label_index[ref]
            raise InvalidInput(f"unknown element label {ref!r} in group {self.name or '<unnamed>'}")
        raise InvalidInput(f"bad element reference {ref!r}")

    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"


def _associativity_witness(t: np.ndarray, samples: int = 200_000):
    n = t.shape[0]
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        left = t[t]                             # left[a,b,c] = (ab)c
        right = t[np.arange(n)[:, None, None], t[None, :, :]]   # a(bc)
        bad = np.argwhere(left != right)
        return tuple(int(x) for x in bad[0]) if len(bad) else None
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, samples))
    bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
    return (int(a[bad[0]]), int(b[bad[0]]), int(c[bad[0]])) if len(bad) else None


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", els)
        g = self.parent
        if any(not 0 <= x < g.order for x in els):
            raise InvalidInput("subgroup element out of range")
        s = set(els)
        if g.identity not in s:
            raise InvalidInput("subgroup must contain the identity")
        for x in els:
            if g.inv(x) not in s:
                raise InvalidInput("subgroup not closed under inverses", witness=x)
            for y in els:
                if g.mul(x, y) not in s:
                    raise InvalidInput("subgroup not closed under multiplication", witness=(x, y))
        if g.order % len(els):
            raise InvalidInput(f"subgroup order {len(els)} does not divide {g.order}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def _memo(self) -> dict:
        # coset partitions and the standalone group depend only on the subgroup
        return {}

    def is_normal(self) -> bool:
        g = self.parent
        return all(g.prod(x, n, g.inv(x)) in self._set for x in g.elements() for n in self.elements)

    def as_group(self, name: str = "") -> FiniteGroup:
        """The subgroup as a standalone group; element ``i`` is ``self.elements[i]``."""
        if not name:
            if "group" not in self._memo:
                self._memo["group"] = self._build_group("")
            return self._memo["group"]
        return self._build_group(name)

    def _build_group(self, name: str) -> FiniteGroup:
        pos = {x: i for i, x in enumerate(self.elements)}
        g = self.parent
        table = [[pos[g.mul(x, y)] for y in self.elements] for x in self.elements]
        return FiniteGroup(
            tuple(tuple(r) for r in table),
            pos[g.identity],
            tuple(pos[g.inv(x)] for x in self.elements),
            tuple(g.labels[x] for x in self.elements),
            name,
        )

    def labels(self) -> list[str]:
        return [self.parent.labels[x] for x in self.elements]


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [g.element(x) for x in gens]
    seen = {g.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = g.mul(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(g, tuple(seen))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (g.identity,))


def whole_group(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(g.elements()))


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by closing cyclic subgroups under joins. Fine for small groups."""
    found: dict[frozenset, Subgroup] = {}
    cyclic = []
    for x in g.elements():
        h = generated_subgroup(g, [x])
        if h._set not in found:
            found[h._set] = h
            cyclic.append(h)
    frontier = list(found.values())
    while frontier:
        new = []
        for h in frontier:
            for c in cyclic:
                if c._set <= h._set:
                    continue
                j = generated_subgroup(g, h.elements + c.elements)
                if j._set not in found:
                    found[j._set] = j
                    new.append(j)
        frontier = new
    return sorted(found.values(), key=lambda s: (s.order, s.elements))


@dataclass(frozen=True)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.domain.order:
            raise InvalidInput("homomorphism map needs one image per domain element")
        if any(not 0 <= y < self.codomain.order for y in m):
            raise InvalidInput("homomorphism image out of range")
        if m[self.domain.identity] != self.codomain.identity:
            raise InvalidInput("homomorphism must send identity to identity")
        d, c = self.domain, self.codomain
        for x in d.elements():
            for y in d.elements():
                if m[d.mul(x, y)] != c.mul(m[x], m[y]):
                    raise InvalidInput("map is not multiplicative", witness=(x, y))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, tuple(set(self.map)))

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(g.elements()))


def power_endomorphism(g: FiniteGroup, m: int) -> GroupHom:
    """``x -> x^m``; a homomorphism only when ``g`` is abelian (checked)."""
    return GroupHom(g, g, tuple(g.power(x, m) for x in g.elements()))


# ---------------------------------------------------------------------------
# standard groups


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("cyclic(n) needs n >= 1")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(table, 0, tuple((-a) % n for a in range(n)),
                       tuple(str(a) for a in range(n)), f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """``D_n = <a, b | a^2 = b^n = 1, aba = b^-1>``, order ``2n``; element ``b^k a^f`` is ``k + n*f``."""
    if n < 1:
        raise InvalidInput("dihedral(n) needs n >= 1")

    def mul(x, y):
        k, f = x % n, x // n
        m, h = y % n, y // n
        return ((k + (-m if f else m)) % n) + n * ((f + h) % 2)

    def label(x):
        k, f = x % n, x // n
        rot = "" if k == 0 else ("b" if k == 1 else f"b^{k}")
        if f:
            return f"{rot}*a" if rot else "a"
        return rot or "e"

    size = 2 * n
    table = [[mul(x, y) for y in range(size)] for x in range(size)]
    return FiniteGroup.from_table(table, [label(x) for x in range(size)], f"D{n}")


def _perm_label(p: Sequence[int]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise InvalidInput("symmetric(n) is restricted to 1 <= n <= 6")
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    # a*b: apply a, then b
    table = [[pos[tuple(b[a[i]] for i in range(n))] for b in perms] for a in perms]
    return FiniteGroup.from_table(table, [_perm_label(p) for p in perms], f"S{n}")


def _quaternion_group(elements: list[Quaternion], name: str) -> FiniteGroup:
    pos = {q: i for i, q in enumerate(elements)}
    if len(pos) != len(elements):
        raise InvalidInput("duplicate quaternions")
    table = []
    for a in elements:
        row = []
        for b in elements:
            c = a * b
            if c not in pos:
                raise InvalidInput(f"quaternion set not closed: {a.label()} * {b.label()}")
            row.append(pos[c])
        table.append(row)
    return FiniteGroup.from_table(table, [q.label() for q in elements], name)


def _units() -> list[Quaternion]:
    out = []
    for axis in range(4):
        for sign in (1, -1):
            c = [0, 0, 0, 0]
            c[axis] = sign
            out.append(Quaternion.of(*c))
    return out


@lru_cache(maxsize=None)
def quaternion8() -> FiniteGroup:
    return _quaternion_group(_units(), "Q8")


def binary_octahedral_elements() -> list[Quaternion]:
    """The 48 unit quaternions of 2O with exact coordinates in Q(sqrt 2)."""
    out = _units()
    half = Fraction(1, 2)
    for signs in itertools.product((1, -1), repeat=4):
        out.append(Quaternion.of(*(s * half for s in signs)))
    inv_sqrt2 = QuadRational(0, half)          # 1/sqrt2 = sqrt2/2
    for p, q in itertools.combinations(range(4), 2):
        for sp, sq in itertools.product((1, -1), repeat=2):
            c = [QuadRational()] * 4
            c[p] = inv_sqrt2 * sp
            c[q] = inv_sqrt2 * sq
            out.append(Quaternion(*c))
    for q in out:
        if q.norm2() != QuadRational(1):
            raise AssertionError(f"non-unit quaternion {q.label()}")
    return out


@lru_cache(maxsize=None)
def binary_octahedral() -> FiniteGroup:
    return _quaternion_group(binary_octahedral_elements(), "2O")


STANDARD_KINDS = ("cyclic", "dihedral", "symmetric", "quaternion8", "binary_octahedral")


def standard_group(kind: str, n: int | None = None) -> FiniteGroup:
    if kind == "cyclic":
        return cyclic(_need(n, kind))
    if kind == "dihedral":
        return dihedral(_need(n, kind))
    if kind == "symmetric":
        return symmetric(_need(n, kind))
    if kind == "quaternion8":
        return quaternion8()
    if kind == "binary_octahedral":
        return binary_octahedral()
    raise InvalidInput(f"unknown group kind {kind!r}")


def _need(n, kind):
    if n is None:
        raise InvalidInput(f"{kind} needs a parameter n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidInput(f"{kind}: n must be an integer")
    return n


# ---------------------------------------------------------------------------
# products and homomorphisms


def is_automorphism(g: FiniteGroup, m: Sequence[int]) -> bool:
    if sorted(m) != list(g.elements()):
        return False
    return all(m[g.mul(x, y)] == g.mul(m[x], m[y]) for x in g.elements() for y in g.elements())


def make_semidirect(n: FiniteGroup, h: FiniteGroup,
                    act: Sequence[Sequence[int]] | None = None,
                    name: str = "") -> tuple[FiniteGroup, Subgroup, Subgroup]:
    """``N x| H`` on pairs ``(n, h)`` (index ``n + |N| h``) with
    ``(n,h)(n',h') = (n * act[h](n'), h h')``.

    ``act[h]`` is an automorphism of ``N`` and ``act[hh'] = act[h] o act[h']``.
    Returns the group with its embedded copies of ``N`` (normal) and ``H``.
    """
    if act is None:
        act = [tuple(n.elements())] * h.order
    act = [tuple(int(x) for x in a) for a in act]
    if len(act) != h.order:
        raise InvalidInput("need one automorphism per element of H")
    for k, a in enumerate(act):
        if len(a) != n.order or not is_automorphism(n, a):
            raise InvalidInput("act[h] is not an automorphism of N", witness=k)
    for x in h.elements():
        for y in h.elements():
            xy = act[h.mul(x, y)]
            if any(xy[m] != act[x][act[y][m]] for m in n.elements()):
                raise InvalidInput("act is not a homomorphism H -> Aut(N)", witness=(x, y))
    nn = n.order
    size = nn * h.order
    table = []
    for g1 in range(size):
        a, x = g1 % nn, g1 // nn
        row = []
        for g2 in range(size):
            b, y = g2 % nn, g2 // nn
            row.append(n.mul(a, act[x][b]) + nn * h.mul(x, y))
        table.append(row)
    labels = [f"({n.labels[g % nn]},{h.labels[g // nn]})" for g in range(size)]
    grp = FiniteGroup.from_table(table, labels, name or f"({n.name}x|{h.name})")
    n_sub = Subgroup(grp, tuple(a + nn * h.identity for a in n.elements()))
    h_sub = Subgroup(grp, tuple(n.identity + nn * x for x in h.elements()))
    return grp, n_sub, h_sub


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    return make_semidirect(a, b, None, name=f"{a.name}x{b.name}")[0]


def inversion_action(n: FiniteGroup, h: FiniteGroup) -> list[tuple[int, ...]]:
    """``H = Z_2`` acting on abelian ``N`` by inversion (the dihedral action)."""
    if h.order != 2:
        raise InvalidInput("inversion action needs H of order 2")
    return [tuple(n.elements()) if x == h.identity else tuple(n.inverses) for x in h.elements()]


def kernel(hom: GroupHom) -> Subgroup:
    e = hom.codomain.identity
    return Subgroup(hom.domain, tuple(x for x in hom.domain.elements() if hom.map[x] == e))


def equalizer_subgroup(alpha: GroupHom, beta: GroupHom) -> Subgroup:
    if alpha.domain != beta.domain or alpha.codomain != beta.codomain:
        raise InvalidInput("equalizer needs homomorphisms with the same domain and codomain")
    # Subgroup() re-checks identity, closure and inverses
    return Subgroup(alpha.domain, tuple(x for x in alpha.domain.elements() if alpha(x) == beta(x)))


@dataclass(frozen=True)
class CosetPartition:
    side: str
    cosets: tuple[tuple[int, ...], ...]
    index: tuple[int, ...]          # element -> coset number
    is_normal: bool

    def __len__(self):
        return len(self.cosets)


def _check_subgroup_of(g: FiniteGroup, s: Subgroup):
    if s.parent != g:
        raise InvalidInput("subgroup does not belong to this group")


def coset_partition(g: FiniteGroup, n: Subgroup, side: str = "right") -> CosetPartition:
    """Right cosets ``Ng`` (``side='right'``) or left cosets ``gN``, ordered by minimal element."""
    _check_subgroup_of(g, n)
    if side not in ("right", "left"):
        raise InvalidInput("side must be 'right' or 'left'")
    if ("cosets", side) not in n._memo:
        n._memo["cosets", side] = _coset_partition(g, n, side)
    return n._memo["cosets", side]


def _coset_partition(g: FiniteGroup, n: Subgroup, side: str) -> CosetPartition:
    def coset(x):
        if side == "right":
            return frozenset(g.mul(m, x) for m in n.elements)
        return frozenset(g.mul(x, m) for m in n.elements)

    cosets = _partition(g.order, coset)
    index = [0] * g.order
    for i, c in enumerate(cosets):
        for x in c:
            index[x] = i
    normal = all(coset(x) == frozenset(g.mul(m, x) for m in n.elements) if side == "left"
                 else coset(x) == frozenset(g.mul(x, m) for m in n.elements)
                 for x in g.elements())
    return CosetPartition(side, cosets, tuple(index), normal)


def double_cosets(n: Subgroup, g: FiniteGroup, h: Subgroup) -> CosetPartition:
    """Classes ``NgH``; ``is_normal`` is unused (False)."""
    _check_subgroup_of(g, n)
    _check_subgroup_of(g, h)

    def cls(x):
        return frozenset(g.prod(a, x, b) for a in n.elements for b in h.elements)

    classes = _partition(g.order, cls)
    index = [0] * g.order
    for i, c in enumerate(classes):
        for x in c:
            index[x] = i
    return CosetPartition("double", classes, tuple(index), False)


def _partition(size: int, block: Callable[[int], frozenset]) -> tuple[tuple[int, ...], ...]:
    assigned = [False] * size
    out = []
    for x in range(size):           # ascending scan => ordered by minimal element
        if assigned[x]:
            continue
        b = block(x)
        for y in b:
            assigned[y] = True
        out.append(tuple(sorted(b)))
    return tuple(out)


# ---------------------------------------------------------------------------
# isomorphism of groups


def small_generating_set(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    current = trivial_subgroup(g)
    for x in sorted(g.elements(), key=lambda x: (-g.element_order(x), x)):
        if x not in current:
            gens.append(x)
            current = generated_subgroup(g, gens)
            if current.order == g.order:
                break
    return gens


def find_group_isomorphism(a: FiniteGroup, b: FiniteGroup) -> tuple[int, ...] | None:
    """An isomorphism ``a -> b`` as an element map, via images of a generating set."""
    if a.order != b.order:
        return None
    if sorted(a.element_order(x) for x in a.elements()) != sorted(b.element_order(x) for x in b.elements()):
        return None
    gens = small_generating_set(a)
    by_order: dict[int, list[int]] = {}
    for y in b.elements():
        by_order.setdefault(b.element_order(y), []).append(y)
    choices = [by_order.get(a.element_order(x), []) for x in gens]
    for images in itertools.product(*choices):
        m = _extend_hom(a, b, gens, images)
        if m is not None and len(set(m)) == a.order:
            return tuple(m)
    return None


def _extend_hom(a, b, gens, images):
    m = {a.identity: b.identity}
    queue = deque([a.identity])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y = a.mul(x, s)
            img = b.mul(m[x], t)
            if y in m:
                if m[y] != img:
                    return None
            else:
                m[y] = img
                queue.append(y)
    out = [m[x] for x in a.elements()]
    for x in a.elements():
        for y in a.elements():
            if out[a.mul(x, y)] != b.mul(out[x], out[y]):
                return None
    return out


def right_multiplication(g: FiniteGroup, k: int) -> tuple[int, ...]:
    """The element map ``x -> x*k`` (not a homomorphism in general)."""
    return tuple(g.mul(x, k) for x in g.elements())


def left_multiplication(g: FiniteGroup, k: int) -> tuple[int, ...]:
    return tuple(g.mul(k, x) for x in g.elements())


def constant_map(g: FiniteGroup, k: int) -> tuple[int, ...]:
    return (k,) * g.order

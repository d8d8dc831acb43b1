"""Three finitely presented countable posets with a decidable order.

``n2``
    a least element, two parallel chains of nodes indexed by level, and a
    single point ``omega`` above both chains.
``t``
    a least and a greatest element with node levels in between, where every
    node sits below every node of any strictly higher level (consecutive
    levels form complete bipartite steps).
``nsum``
    two chains of nodes capped by ``omega0`` and ``omega1``, joined only at a
    shared least element.

Elements are small code tuples with a string syntax used by the CLI: ``bot``,
``top``, ``omega``, ``omega0``, ``omega1``, and ``n:J:LEVEL`` for the node on
branch J at the given level. Alongside the orders, this module ships the
standard quasi-deflation families on ``n2`` and ``t``, witness indices showing
the families separate points, finite truncations (with embedding/projection
pairs where such a projection exists), and the branch-swapping maps on
truncations of ``t`` together with their rigidity predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

from .posets import MonotoneMap, Poset, PosetError

Code = Tuple
BOT: Code = ("bot",)
TOP: Code = ("top",)
OMEGA: Code = ("omega",)

KINDS = ("n2", "t", "nsum")


def node(j: int, level: int) -> Code:
    return ("n", j, level)


def omega_side(j: int) -> Code:
    return ("omegaside", j)


def format_code(code: Code) -> str:
    tag = code[0]
    if tag == "n":
        return f"n:{code[1]}:{code[2]}"
    if tag == "omegaside":
        return f"omega{code[1]}"
    return tag


def parse_code(text: str) -> Code:
    """Parse the CLI element syntax into a code tuple."""
    text = text.strip()
    if text in ("bot", "top", "omega"):
        return (text,)
    if text in ("omega0", "omega1"):
        return ("omegaside", int(text[-1]))
    if text.startswith("n:"):
        parts = text.split(":")
        if len(parts) == 3:
            try:
                j, level = int(parts[1]), int(parts[2])
            except ValueError:
                raise PosetError(f"malformed element {text!r}") from None
            if j in (0, 1) and level >= 0:
                return ("n", j, level)
    raise PosetError(
        f"malformed element {text!r}: expected bot, top, omega, omega0, "
        "omega1, or n:J:LEVEL"
    )


class LazyPoset:
    """One of the three countable posets, addressed by its kind tag."""

    __slots__ = ("kind",)

    _TAGS = {
        "n2": ("bot", "n", "omega"),
        "t": ("bot", "n", "top"),
        "nsum": ("bot", "n", "omegaside"),
    }

    def __init__(self, kind: str):
        if kind not in KINDS:
            raise PosetError(f"unknown kind {kind!r}, expected one of {KINDS}")
        self.kind = kind

    def __repr__(self) -> str:
        return f"LazyPoset({self.kind!r})"

    def validate(self, code: Code) -> Code:
        ok = (
            isinstance(code, tuple)
            and code
            and code[0] in self._TAGS[self.kind]
            and (
                (code[0] in ("bot", "top", "omega") and len(code) == 1)
                or (code[0] == "omegaside" and len(code) == 2 and code[1] in (0, 1))
                or (
                    code[0] == "n"
                    and len(code) == 3
                    and code[1] in (0, 1)
                    and isinstance(code[2], int)
                    and code[2] >= 0
                )
            )
        )
        if not ok:
            raise PosetError(f"invalid element {code!r} for kind {self.kind!r}")
        return code

    def leq(self, x: Code, y: Code) -> bool:
        self.validate(x)
        self.validate(y)
        if x == y:
            return True
        if x[0] == "bot":
            return True
        if y[0] == "bot":
            return False
        if self.kind == "n2":
            if y[0] == "omega":
                return True
            if x[0] == "omega":
                return False
            return x[1] == y[1] and x[2] <= y[2]
        if self.kind == "t":
            if y[0] == "top":
                return True
            if x[0] == "top":
                return False
            return x[2] < y[2]
        if x[0] == "omegaside":
            return False
        if y[0] == "omegaside":
            return x[1] == y[1]
        return x[1] == y[1] and x[2] <= y[2]

    def in_up(self, members, y: Code) -> bool:
        """Is y in the upper set spanned by the given elements?"""
        return any(self.leq(m, y) for m in members)

    def smyth_leq(self, E, F) -> bool:
        """Upper-set containment: the span of E contains the span of F."""
        return all(self.in_up(E, f) for f in F)


N2 = LazyPoset("n2")
T = LazyPoset("t")
NSUM = LazyPoset("nsum")


def _level(code: Code) -> int:
    return code[2] if code[0] == "n" else 0


@dataclass(frozen=True)
class LazyFamily:
    """One member of a quasi-deflation family, applied to codes.

    Calling it returns the antichain of minimal elements of the image
    filter, as a tuple of codes.
    """

    poset: LazyPoset
    index: Tuple[int, ...]

    def __call__(self, x: Code) -> Tuple[Code, ...]:
        self.poset.validate(x)
        if x[0] == "bot":
            return (BOT,)
        if self.poset.kind == "n2":
            i, j = self.index
            if x[0] == "omega":
                return (node(0, i), node(1, j))
            if x[1] == 0:
                return (node(0, min(x[2], i)), node(1, j))
            return (node(0, i), node(1, min(x[2], j)))
        (i,) = self.index
        if x[0] == "n" and x[2] < i:
            return (x,)
        return (node(0, i), node(1, i))


def n2_family(i: int, j: int) -> LazyFamily:
    """The map collapsing branch 0 above level i and branch 1 above level j."""
    if i < 0 or j < 0:
        raise PosetError("family indices must be naturals")
    return LazyFamily(N2, (i, j))


def t_family(i: int) -> LazyFamily:
    """The map fixing nodes below level i and collapsing the rest to level i."""
    if i < 0:
        raise PosetError("family index must be a natural")
    return LazyFamily(T, (i,))


def family_witness(
    L: LazyPoset, x: Code, y: Code
) -> Union[int, Tuple[int, int]]:
    """An index whose family member separates x from y.

    Requires that x is not below y; the returned index ι then satisfies
    y ∉ ↑φ_ι(x), so the intersection of the image filters over the whole
    family is exactly the filter of x. The choice is deterministic: one more
    than the largest node level occurring in x or y (non-node codes count
    as level 0). Returns an (i, j) pair for ``n2`` and a single integer for
    ``t``; the two-chain poset has no attached family.
    """
    if L.kind == "nsum":
        raise PosetError("no quasi-deflation family is defined for kind 'nsum'")
    if L.leq(x, y):
        raise PosetError(
            f"no witness exists: {format_code(x)} <= {format_code(y)}"
        )
    c = max(_level(x), _level(y)) + 1
    if L.kind == "n2":
        index: Union[int, Tuple[int, int]] = (c, c)
        phi = n2_family(c, c)
    else:
        index = c
        phi = t_family(c)
    assert not L.in_up(phi(x), y)
    return index


@dataclass(frozen=True)
class Truncation:
    """A finite slice of a lazy poset.

    ``poset`` uses the string element syntax. ``embed`` maps element names
    back to codes; ``project`` (when not None) maps arbitrary codes of the
    ambient poset onto element names, satisfying project(embed(e)) = e and
    embed(project(x)) <= x.
    """

    poset: Poset
    embed: Callable[[str], Code]
    project: Optional[Callable[[Code], str]]


def truncate(L: LazyPoset, k: int) -> Truncation:
    """Cut the poset at node level k (``t``: levels 0..k-1), keeping the caps.

    ``n2`` and ``nsum`` truncations come with the level-clamping projection;
    ``t`` has no monotone projection fixing top (that is the point of the
    poset), so its truncation carries project=None and serves as a fixture
    for the branch-swap maps.
    """
    if k < 1:
        raise PosetError("truncation depth must be at least 1")
    levels = range(k) if L.kind == "t" else range(k + 1)
    codes: List[Code] = [BOT]
    for m in levels:
        codes.append(node(0, m))
        codes.append(node(1, m))
    if L.kind == "n2":
        codes.append(OMEGA)
    elif L.kind == "t":
        codes.append(TOP)
    else:
        codes.append(omega_side(0))
        codes.append(omega_side(1))
    names = tuple(format_code(c) for c in codes)
    ups = []
    for c in codes:
        mask = 0
        for jdx, d in enumerate(codes):
            if L.leq(c, d):
                mask |= 1 << jdx
        ups.append(mask)
    P = Poset._from_up_masks(names, tuple(ups))

    def embed(name: str) -> Code:
        P.index(name)
        return parse_code(name)

    if L.kind == "t":
        return Truncation(P, embed, None)

    def project(code: Code) -> str:
        L.validate(code)
        if code[0] == "n":
            return format_code(node(code[1], min(code[2], k)))
        return format_code(code)

    return Truncation(P, embed, project)


def hat_f(bits) -> MonotoneMap:
    """The involution of T_k swapping branches at each level where bits is 1.

    ``bits`` is a 0/1 sequence whose length fixes the truncation depth;
    bottom and top stay put and node (j, n) goes to (j XOR bits[n], n).
    """
    bits = tuple(bits)
    if not bits or any(b not in (0, 1) for b in bits):
        raise PosetError("bits must be a nonempty 0/1 sequence")
    Tk = truncate(T, len(bits)).poset

    def swap(name: str):
        code = parse_code(name)
        if code[0] != "n":
            return name
        return format_code(node(code[1] ^ bits[code[2]], code[2]))

    return MonotoneMap(Tk, Tk, swap)


def hat_f_rigidity_check(g: MonotoneMap, bits) -> bool:
    """Does g being below the swap map and nonzero at level 0 force equality?

    Evaluates the implication (g <= f̂ pointwise, g(0,0) != bot, g(1,0) != bot)
    ⇒ g = f̂ for one concrete g; the suite quantifies it over all monotone g.
    """
    fhat = hat_f(bits)
    Tk = fhat.source
    if g.source != Tk or g.target != Tk:
        raise PosetError("g must be an endo-map of the matching truncation of T")
    premise = (
        all(Tk.leq(g(e), fhat(e)) for e in Tk.elements)
        and g("n:0:0") != "bot"
        and g("n:1:0") != "bot"
    )
    return (not premise) or g.values == fhat.values

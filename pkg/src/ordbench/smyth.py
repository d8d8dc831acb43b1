"""Upper powerspace machinery on finite posets.

An antichain E stands for the upward closure of E; the collection of all such
closures, ordered by reverse inclusion of closures, is the demonic
nondeterminism order. This module provides the unit (point to singleton), the
extension of an antichain-valued map to antichains, the induced action on
antichains of an ordinary monotone map, the multiplication, law checking for
all of these, quasi-retraction law checking with canonical sections, and the
stage-chain extraction used when a point survives a descending sequence of
antichain stages.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional

from .posets import MonotoneMap, Poset, PosetError, _bits

FIN_CAP = 100_000


class FinMap:
    """A monotone map from a poset into the antichains of a target poset.

    Values are normalized to canonical antichains at construction.
    Monotonicity means: x <= y implies the upward closure of the value at x
    contains the closure of the value at y.
    """

    __slots__ = ("source", "target", "values")

    def __init__(self, source: Poset, target: Poset, table, *, check: bool = True):
        self.source = source
        self.target = target
        get = table.__getitem__ if isinstance(table, dict) else table
        vals = []
        for e in source.elements:
            try:
                raw = get(e)
            except KeyError:
                raise PosetError(f"antichain map is missing a value for {e!r}") from None
            vals.append(target.antichain_normalize(raw))
        self.values = tuple(vals)
        if check:
            for x, y in source.covers():
                if not target.smyth_leq(self(x), self(y)):
                    raise PosetError(
                        f"not monotone into the antichain order: {x!r} <= {y!r} "
                        f"but {self(x)!r} does not refine to {self(y)!r}"
                    )

    def __call__(self, x) -> tuple:
        return self.values[self.source.index(x)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinMap)
            and self.source == other.source
            and self.target == other.target
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.values))

    def __repr__(self) -> str:
        body = ", ".join(
            f"{e!r}->{{{', '.join(map(repr, v))}}}"
            for e, v in zip(self.source.elements, self.values)
        )
        return f"FinMap({body})"

    def as_dict(self) -> dict:
        return dict(zip(self.source.elements, self.values))


def eta(P: Poset, x) -> tuple:
    """The unit: a point becomes the singleton antichain at that point."""
    P.index(x)
    return (x,)


def eta_map(P: Poset) -> FinMap:
    return FinMap(P, P, lambda x: (x,), check=False)


def dagger(h: FinMap) -> Callable[[Iterable], tuple]:
    """Extend an antichain-valued map from points to antichains.

    The extension applied to E is the normalized union of the values over
    the members of E. Monotonicity of ``h`` makes restricting to the members
    (rather than the whole upward closure) sound.
    """
    tgt = h.target

    def extended(E: Iterable) -> tuple:
        members: set = set()
        for x in E:
            members.update(h(x))
        return tgt.antichain_normalize(members)

    return extended


def smyth_map(r: MonotoneMap) -> Callable[[Iterable], tuple]:
    """The antichain action of a monotone map: image, then normalize."""
    tgt = r.target

    def action(E: Iterable) -> tuple:
        return tgt.antichain_normalize({r(x) for x in E})

    return action


def mu(P: Poset, Q2: Iterable[Iterable]) -> tuple:
    """Flatten an antichain of antichains to a single antichain.

    ``Q2`` must be an antichain in the refinement order itself (pairwise
    incomparable members); the result is the normalized union.
    """
    members = [P.antichain_normalize(E) for E in Q2]
    for i, A in enumerate(members):
        for B in members[i + 1:]:
            if A != B and (P.smyth_leq(A, B) or P.smyth_leq(B, A)):
                raise PosetError(
                    f"mu expects pairwise incomparable antichains; "
                    f"{A!r} and {B!r} are comparable"
                )
    flat: set = set()
    for E in members:
        flat.update(E)
    return P.antichain_normalize(flat)


def fin_antichains(P: Poset, *, cap: int = FIN_CAP) -> List[tuple]:
    """All nonempty canonical antichains of P, in lexicographic index order.

    Raises PosetError when more than ``cap`` antichains would be produced;
    the count grows exponentially on wide posets.
    """
    n = len(P.elements)
    up, down = P._up, P._down
    out: List[tuple] = []

    def rec(start: int, chosen: List[int], allowed: int) -> None:
        for i in range(start, n):
            if not (allowed >> i) & 1:
                continue
            chosen.append(i)
            out.append(tuple(P.elements[j] for j in chosen))
            if len(out) > cap:
                raise PosetError(
                    f"antichain enumeration exceeded the cap of {cap}"
                )
            rec(i + 1, chosen, allowed & ~(up[i] | down[i]))
            chosen.pop()

    rec(0, [], (1 << n) - 1)
    return out


def fin_poset(P: Poset, *, cap: int = FIN_CAP) -> Poset:
    """The antichains of P as a poset under the refinement order."""
    chains = fin_antichains(P, cap=cap)
    ups = []
    # Precompute the upward-closure mask of each antichain once.
    closure = []
    for E in chains:
        m = 0
        for x in E:
            m |= P._up[P.index(x)]
        closure.append(m)
    member_mask = [0] * len(chains)
    for k, E in enumerate(chains):
        mm = 0
        for x in E:
            mm |= 1 << P.index(x)
        member_mask[k] = mm
    for i in range(len(chains)):
        mask = 0
        for j in range(len(chains)):
            # chains[i] <= chains[j] iff members of j land inside closure of i
            if not (member_mask[j] & ~closure[i]):
                mask |= 1 << j
        ups.append(mask)
    return Poset._from_up_masks(tuple(chains), tuple(ups))


# -- monad laws ---------------------------------------------------------------


@dataclass(frozen=True)
class MonadLawsReport:
    """Results of checking the three extension laws on all antichains.

    ``unit_identity``: extending the unit gives the identity.
    ``extension_identity``: the extension of h agrees with h on singletons.
    ``associativity``: extending (extended g after h) equals composing the
    two extensions.
    """

    unit_identity: bool
    extension_identity: bool
    associativity: bool
    witness: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.unit_identity and self.extension_identity and self.associativity


def check_monad_laws(
    P: Poset,
    h: Optional[FinMap] = None,
    g: Optional[FinMap] = None,
    *,
    cap: int = FIN_CAP,
) -> MonadLawsReport:
    """Verify the three laws pointwise on every antichain of P.

    ``h`` maps P into antichains of some poset Y, and ``g`` maps Y into
    antichains of some poset Z; both default to the unit on P. Returns the
    first violation found, scanning law by law.
    """
    if h is None:
        h = eta_map(P)
    if g is None:
        g = eta_map(h.target)
    if h.source != P:
        raise PosetError("h must have source P")
    if g.source != h.target:
        raise PosetError("g must have source equal to h's target poset")
    fin_p = fin_antichains(P, cap=cap)
    eta_p = eta_map(P)
    eta_dag = dagger(eta_p)
    h_dag = dagger(h)
    g_dag = dagger(g)

    unit_identity = True
    extension_identity = True
    associativity = True
    witness = None

    for E in fin_p:
        got = eta_dag(E)
        if got != E:
            unit_identity = False
            witness = {"law": "unit_identity", "at": E, "lhs": got, "rhs": E}
            break

    if witness is None:
        for x in P.elements:
            lhs = h_dag(eta(P, x))
            rhs = h(x)
            if lhs != rhs:
                extension_identity = False
                witness = {"law": "extension_identity", "at": x, "lhs": lhs, "rhs": rhs}
                break

    if witness is None:
        composite = FinMap(P, g.target, lambda x: g_dag(h(x)), check=False)
        comp_dag = dagger(composite)
        for E in fin_p:
            lhs = comp_dag(E)
            rhs = g_dag(h_dag(E))
            if lhs != rhs:
                associativity = False
                witness = {"law": "associativity", "at": E, "lhs": lhs, "rhs": rhs}
                break

    return MonadLawsReport(unit_identity, extension_identity, associativity, witness)


# -- quasi-retractions --------------------------------------------------------


@dataclass(frozen=True)
class QuasiSectionReport:
    """Law results for a candidate section of a monotone map.

    ``retraction_law``: pushing the section's antichain through the map gives
    back exactly the singleton at each target point.
    ``projection_law``: every source point is above its section-of-image
    antichain.
    ``canonical`` is True when the candidate coincides with the minimal
    preimage section, None when that section does not exist (map not
    surjective). ``witness`` holds the first violation, element first.
    """

    retraction_law: bool
    projection_law: bool
    canonical: Optional[bool]
    canonical_table: Optional[dict]
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.retraction_law and self.projection_law


def canonical_quasi_section(r: MonotoneMap) -> FinMap:
    """Minimal elements of the preimage of each principal filter.

    Defined whenever ``r`` is surjective; raises otherwise. The result is
    monotone into the antichain order and satisfies both section laws.
    """
    X, Y = r.source, r.target
    image = set(r.values)
    missing = [y for y in Y.elements if y not in image]
    if missing:
        raise PosetError(
            f"canonical section needs a surjective map; unreached: {missing!r}"
        )
    table = {}
    for y in Y.elements:
        pre = [x for x in X.elements if Y.leq(y, r(x))]
        table[y] = X.antichain_normalize(pre)
    return FinMap(Y, X, table)


def check_quasi_retraction(r: MonotoneMap, qs: FinMap) -> QuasiSectionReport:
    """Check both section laws for ``qs`` against ``r``; never raises.

    Violations are reported in element order, retraction law first, so a
    failing input always produces the same witness.
    """
    X, Y = r.source, r.target
    if qs.source != Y or qs.target != X:
        raise PosetError("qs must map the target of r into antichains of its source")
    act = smyth_map(r)
    retraction = True
    projection = True
    witness = None
    for y in Y.elements:
        got = act(qs(y))
        if got != (y,):
            retraction = False
            witness = (
                f"retraction law fails at {y!r}: image antichain {got!r} "
                f"is not {{{y!r}}}"
            )
            break
    for x in X.elements:
        if not X.smyth_leq(qs(r(x)), (x,)):
            projection = False
            if witness is None:
                witness = (
                    f"projection law fails at {x!r}: {x!r} is not above "
                    f"{qs(r(x))!r}"
                )
            break
    canonical = None
    canon_table = None
    if set(Y.elements) <= set(r.values):
        canon = canonical_quasi_section(r)
        canon_table = canon.as_dict()
        canonical = canon.values == qs.values
    return QuasiSectionReport(retraction, projection, canonical, canon_table, witness)


# -- stage chains -------------------------------------------------------------


class StagePreconditionError(PosetError):
    """A stage list violates nesting or membership; carries the failing index."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


def koenig_chain(P: Poset, stages: List[Iterable], y) -> List:
    """Extract a nondecreasing chain through descending antichain stages.

    Given stages whose upward closures shrink (each refines the previous) and
    a point ``y`` inside every closure, returns elements y_0 <= y_1 <= ...
    <= y_d with y_i drawn from stage i and y_d <= y. The search walks the
    candidate tree depth first in element order, so the answer is the
    lexicographically least branch.
    """
    P.index(y)
    norm = [P.antichain_normalize(E) for E in stages]
    if not norm:
        raise StagePreconditionError("at least one stage is required", 0)
    for i, E in enumerate(norm):
        if y not in P.up_closure(E):
            raise StagePreconditionError(
                f"stage {i}: {y!r} is not in the upward closure of {E!r}", i
            )
    for i in range(len(norm) - 1):
        if not P.smyth_leq(norm[i], norm[i + 1]):
            raise StagePreconditionError(
                f"stage {i + 1}: upward closure is not contained in stage {i}'s",
                i + 1,
            )
    d = len(norm)
    chain: List = []

    def rec(i: int, prev) -> bool:
        if i == d:
            return True
        for c in norm[i]:
            if P.leq(c, y) and (prev is None or P.leq(prev, c)):
                chain.append(c)
                if rec(i + 1, c):
                    return True
                chain.pop()
        return False

    found = rec(0, None)
    if not found:
        # Unreachable when the preconditions hold: a chain can always be
        # grown backwards from a stage-d element below y.
        raise StagePreconditionError("no chain exists; preconditions violated", d - 1)
    return chain


# -- serialization --------------------------------------------------------------


def parse_antichain(P: Poset, text: str) -> tuple:
    """Read one antichain: elements separated by commas, braces optional.

    The input need not be an antichain; it is normalized to the minimal
    elements of its upward closure.
    """
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    names = [tok.strip() for tok in body.split(",") if tok.strip()]
    if not names:
        raise PosetError(f"empty antichain in {text!r}")
    return P.antichain_normalize(names)


def format_antichain(E) -> str:
    return "{" + ", ".join(str(x) for x in E) + "}"


def parse_finmap(source: Poset, target: Poset, text: str) -> FinMap:
    """Read an antichain-valued map from ``x -> {y1, y2}`` lines."""
    table: dict = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, arrow, rhs = line.partition("->")
        if not arrow or not lhs.strip() or not rhs.strip():
            raise PosetError(f"line {ln}: expected 'x -> {{y1, y2}}', got {line!r}")
        x = lhs.strip()
        if x in table:
            raise PosetError(f"line {ln}: repeated source element {x!r}")
        source.index(x)
        table[x] = parse_antichain(target, rhs)
    return FinMap(source, target, table)


def format_finmap(h: FinMap) -> str:
    """Inverse of :func:`parse_finmap`, values in canonical form."""
    lines = [
        f"{x} -> {format_antichain(E)}"
        for x, E in zip(h.source.elements, h.values)
    ]
    return "\n".join(lines) + "\n"

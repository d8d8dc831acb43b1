"""Quasi-deflations and their controlled variant.

A quasi-deflation assigns to each point an antichain that the point sits
above, monotonically with respect to refinement. These are the set-valued
cousins of finite-image idempotent shrinking maps, and on finite posets the
unit (point to singleton) is always one. The controlled variant pairs the
assignment with an ordinary monotone endomap that bounds it from below, and
yields a finite separating set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .posets import MonotoneMap, Poset, PosetError
from .smyth import FinMap, dagger


class QuasiDeflation(FinMap):
    """An antichain-valued endomap with every point above its own value.

    Construction validates both laws (membership and monotonicity) unless
    ``check=False`` is passed; use :func:`check_quasi_deflation` to examine a
    candidate table without raising.
    """

    def __init__(self, poset: Poset, table, *, check: bool = True):
        super().__init__(poset, poset, table, check=check)
        if check:
            for x in poset.elements:
                if not poset.smyth_leq(self(x), (x,)):
                    raise PosetError(
                        f"not a quasi-deflation: {x!r} is not above its value {self(x)!r}"
                    )

    @property
    def poset(self) -> Poset:
        return self.source


def eta_deflation(P: Poset) -> QuasiDeflation:
    """The unit as a quasi-deflation (always valid)."""
    return QuasiDeflation(P, lambda x: (x,), check=False)


@dataclass(frozen=True)
class QuasiDeflationReport:
    valid: bool
    membership_violations: Tuple = ()
    monotonicity_violations: Tuple = ()


def check_quasi_deflation(P: Poset, table) -> QuasiDeflationReport:
    """Validate a candidate table; collects violations instead of raising.

    Membership violations are elements not above their assigned antichain;
    monotonicity violations are pairs x <= y whose antichains fail to refine.
    """
    get = table.__getitem__ if isinstance(table, dict) else table
    values = {x: P.antichain_normalize(get(x)) for x in P.elements}
    membership = tuple(
        x for x in P.elements if not P.smyth_leq(values[x], (x,))
    )
    mono = []
    for x in P.elements:
        for y in P.elements:
            if x != y and P.leq(x, y) and not P.smyth_leq(values[x], values[y]):
                mono.append((x, y))
    return QuasiDeflationReport(
        valid=not membership and not mono,
        membership_violations=membership,
        monotonicity_violations=tuple(mono),
    )


def qd_self_compose(phi: QuasiDeflation) -> QuasiDeflation:
    """Extend phi to antichains and apply it to its own values.

    For a law-abiding input the result is again a quasi-deflation; the
    construction itself is pure antichain arithmetic and is not re-validated,
    so it can also be used to see what self-composition does to a broken
    candidate (run :func:`check_quasi_deflation` on the output if it matters).
    """
    ext = dagger(phi)
    return QuasiDeflation(phi.poset, lambda x: ext(phi(x)), check=False)


def product_qd(phi: QuasiDeflation, psi: QuasiDeflation) -> QuasiDeflation:
    """The componentwise product assignment on the product poset."""
    prod = phi.poset.product(psi.poset)

    def table(pair):
        x, y = pair
        return [(m, k) for m in phi(x) for k in psi(y)]

    return QuasiDeflation(prod, table)


def qfs_separator(
    P: Poset,
    pairs: Iterable[Tuple[Iterable, object]],
    candidates: Optional[Iterable[QuasiDeflation]] = None,
) -> QuasiDeflation:
    """Find a quasi-deflation separating antichain/point pairs.

    Each pair (E, x) must satisfy x above E; the returned assignment psi
    satisfies, for every pair, that E refines psi(x) and x is above psi(x).
    On a finite poset the unit always separates and is returned when no
    candidate family is supplied. With ``candidates``, the first member that
    separates every pair is returned (useful for truncations of the lazily
    presented posets, whose interesting families are indexed).
    """
    checked = []
    for E, x in pairs:
        E = P.antichain_normalize(E)
        if x not in P.up_closure(E):
            raise PosetError(f"pair ({E!r}, {x!r}) invalid: point not above the antichain")
        checked.append((E, x))

    def separates(psi: QuasiDeflation) -> bool:
        return all(
            P.smyth_leq(E, psi(x)) and P.smyth_leq(psi(x), (x,))
            for E, x in checked
        )

    if candidates is None:
        psi = eta_deflation(P)
        assert separates(psi)
        return psi
    for psi in candidates:
        if separates(psi):
            return psi
    raise PosetError("no candidate separates all the pairs")


@dataclass(frozen=True)
class ControlledQuasiDeflation:
    """A quasi-deflation bounded below by a monotone endomap.

    The control f and the assignment phi live on the same poset and must
    satisfy: the closure of phi(x) is contained in the filter of f(x). When
    used to produce separating sets, f is additionally below the identity.
    """

    control: MonotoneMap
    deflation: QuasiDeflation


@dataclass(frozen=True)
class ControlledReport:
    valid: bool
    containment_violations: Tuple = ()
    deflating_violations: Tuple = ()


def check_controlled(
    c: ControlledQuasiDeflation, *, require_deflating: bool = False
) -> ControlledReport:
    """Verify the containment law, optionally also that the control shrinks."""
    P = c.deflation.poset
    f, phi = c.control, c.deflation
    if f.source != P or f.target != P:
        raise PosetError("control must be an endomap of the deflation's poset")
    containment = tuple(
        x
        for x in P.elements
        if not P.smyth_leq((f(x),), phi(x))
    )
    deflating: Tuple = ()
    if require_deflating:
        deflating = tuple(x for x in P.elements if not P.leq(f(x), x))
    return ControlledReport(
        valid=not containment and not deflating,
        containment_violations=containment,
        deflating_violations=deflating,
    )


def separating_set_from_controlled(c: ControlledQuasiDeflation) -> Tuple:
    """Collect the image members of the assignment into a separating set.

    For a valid pair with shrinking control, the union M of all antichain
    members satisfies: every x admits m in M with f(x) <= m <= x. The
    postcondition is verified before returning; failure means the input was
    not a valid controlled pair.
    """
    report = check_controlled(c, require_deflating=True)
    if not report.valid:
        raise PosetError(f"invalid controlled pair: {report}")
    P = c.deflation.poset
    f = c.control
    members = set()
    for x in P.elements:
        members.update(c.deflation(x))
    M = tuple(sorted(members, key=P.index))
    for x in P.elements:
        if not any(P.leq(f(x), m) and P.leq(m, x) for m in M):
            raise PosetError(
                f"separation postcondition failed at {x!r}; input pair is inconsistent"
            )
    return M


# -- serialization --------------------------------------------------------------


def parse_quasi_deflation(P: Poset, text: str, *, check: bool = True):
    """Read a quasi-deflation from ``x -> {y1, y2}`` lines.

    Lines of the form ``control: x -> y`` add a monotone control map; when
    any are present the result is a :class:`ControlledQuasiDeflation` (and
    the control must then be total), otherwise a plain
    :class:`QuasiDeflation`.
    """
    from .smyth import parse_antichain

    table: dict = {}
    control: dict = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        target = table
        if line.startswith("control:"):
            line = line[len("control:"):].strip()
            target = control
        lhs, arrow, rhs = line.partition("->")
        if not arrow or not lhs.strip() or not rhs.strip():
            raise PosetError(f"line {ln}: expected 'x -> ...', got {raw.strip()!r}")
        x = lhs.strip()
        P.index(x)
        if x in target:
            raise PosetError(f"line {ln}: repeated element {x!r}")
        if target is control:
            y = rhs.strip()
            P.index(y)
            control[x] = y
        else:
            table[x] = parse_antichain(P, rhs)
    phi = QuasiDeflation(P, table, check=check)
    if not control:
        return phi
    return ControlledQuasiDeflation(MonotoneMap(P, P, control), phi)


def format_quasi_deflation(obj) -> str:
    """Inverse of :func:`parse_quasi_deflation` for either variant."""
    from .smyth import format_antichain

    if isinstance(obj, ControlledQuasiDeflation):
        phi, control = obj.deflation, obj.control
    else:
        phi, control = obj, None
    lines = [
        f"{x} -> {format_antichain(E)}"
        for x, E in zip(phi.poset.elements, phi.values)
    ]
    if control is not None:
        lines.extend(
            f"control: {x} -> {y}"
            for x, y in zip(control.source.elements, control.values)
        )
    return "\n".join(lines) + "\n"

"""Named example instances.

Every call builds fresh objects; nothing is shared between callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .errors import OrdconeError
from .monoid import FinGenMonoid
from .ordgroup import GroupPresentation
from .vspace import STRICT_QUADRANT, QSpaceCone


@dataclass(frozen=True)
class PresentedExample:
    """A presentation together with the known normalized form of its cone."""

    presentation: GroupPresentation
    normal_form: FinGenMonoid


def a_plus_b_eq_2c() -> PresentedExample:
    """Generators a, b, c, all positive, subject to a + b = 2c."""
    pres = GroupPresentation(3, ((1, 1, -2),), ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    return PresentedExample(pres, FinGenMonoid(2, ((1, 0), (1, 2), (1, 1))))


def seven_gen() -> FinGenMonoid:
    """Cone of Z^2 with every point of degree 2 or 3; perforated, since (1,0) is missing."""
    return FinGenMonoid(2, ((2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)))


def min_truncations(k: int) -> FinGenMonoid:
    """``<(1,j), (j,1) : 1 <= j <= k>``; it has ``2k - 1`` irreducible elements."""
    if k < 1:
        raise OrdconeError("min_truncations needs k >= 1")
    gens = [(1, j) for j in range(k, 0, -1)] + [(j, 1) for j in range(2, k + 1)]
    return FinGenMonoid(2, tuple(gens))


def strict_quadrant(n: int = 2) -> QSpaceCone:
    """``{0}`` together with the open positive orthant of Q^n."""
    return QSpaceCone(n, STRICT_QUADRANT)


def quadrant(n: int = 2) -> FinGenMonoid:
    """The standard monoid ``(Z+)^n``."""
    if n < 0:
        raise OrdconeError("quadrant needs n >= 0")
    return FinGenMonoid(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


Entry = Union[PresentedExample, FinGenMonoid, QSpaceCone]

_BUILDERS: dict[str, tuple[Callable[..., Entry], int | None]] = {
    "a_plus_b_eq_2c": (a_plus_b_eq_2c, None),
    "seven_gen": (seven_gen, None),
    "min_truncations": (min_truncations, 3),
    "strict_quadrant": (strict_quadrant, 2),
    "quadrant": (quadrant, 2),
}


def catalog_names() -> list[str]:
    return list(_BUILDERS)


def catalog_entry(name: str, param: int | None = None) -> Entry:
    """Build one named instance; ``param`` is ``k`` or ``n`` for the parametric ones."""
    if name not in _BUILDERS:
        raise OrdconeError(f"unknown catalog entry {name!r}; known: {', '.join(_BUILDERS)}")
    builder, default = _BUILDERS[name]
    if default is None:
        if param is not None:
            raise OrdconeError(f"catalog entry {name!r} takes no parameter")
        return builder()
    return builder(default if param is None else param)


def example_catalog() -> dict[str, Entry]:
    """Every named instance at its default parameter."""
    return {name: catalog_entry(name) for name in _BUILDERS}

"""Element data: symbols, masses, and single-bond covalent radii.

Covalent radii are the Cordero 2008 single-bond values (sp3 carbon);
masses are conventional standard atomic weights.  The table covers the
main-group elements that appear in small-molecule scan datasets.
"""

from __future__ import annotations

from dataclasses import dataclass


class UnsupportedElementError(ValueError):
    """Raised when an element is missing from the embedded table."""


@dataclass(frozen=True)
class Element:
    atomic_number: int
    symbol: str
    covalent_radius: float  # angstrom
    mass: float  # amu


_ELEMENT_ROWS = [
    # Z, symbol, covalent radius (A), mass (amu)
    (1, "H", 0.31, 1.008),
    (2, "He", 0.28, 4.0026),
    (3, "Li", 1.28, 6.94),
    (4, "Be", 0.96, 9.0122),
    (5, "B", 0.84, 10.81),
    (6, "C", 0.76, 12.011),
    (7, "N", 0.71, 14.007),
    (8, "O", 0.66, 15.999),
    (9, "F", 0.57, 18.998),
    (10, "Ne", 0.58, 20.180),
    (11, "Na", 1.66, 22.990),
    (12, "Mg", 1.41, 24.305),
    (13, "Al", 1.21, 26.982),
    (14, "Si", 1.11, 28.085),
    (15, "P", 1.07, 30.974),
    (16, "S", 1.05, 32.06),
    (17, "Cl", 1.02, 35.45),
    (18, "Ar", 1.06, 39.948),
    (19, "K", 2.03, 39.098),
    (20, "Ca", 1.76, 40.078),
    (35, "Br", 1.20, 79.904),
    (53, "I", 1.39, 126.90),
]

ELEMENTS: dict[int, Element] = {
    z: Element(z, sym, r, m) for z, sym, r, m in _ELEMENT_ROWS
}
SYMBOL_TO_Z: dict[str, int] = {e.symbol: e.atomic_number for e in ELEMENTS.values()}

# Contiguous index used for embedding/offset parameter tables.
ELEMENT_INDEX: dict[int, int] = {z: i for i, z in enumerate(sorted(ELEMENTS))}
N_ELEMENTS = len(ELEMENT_INDEX)


def element(atomic_number: int) -> Element:
    try:
        return ELEMENTS[atomic_number]
    except KeyError:
        raise UnsupportedElementError(
            f"element Z={atomic_number} is not in the embedded table"
        ) from None


def covalent_radius(atomic_number: int) -> float:
    """Tabulated single-bond covalent radius in angstrom."""
    return element(atomic_number).covalent_radius


def atomic_mass(atomic_number: int) -> float:
    """Conventional atomic mass in amu."""
    return element(atomic_number).mass


def symbol_to_z(symbol: str) -> int:
    try:
        return SYMBOL_TO_Z[symbol]
    except KeyError:
        raise UnsupportedElementError(f"unknown element symbol {symbol!r}") from None


def z_to_symbol(atomic_number: int) -> str:
    return element(atomic_number).symbol

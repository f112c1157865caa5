"""Molecular structures and extended-XYZ I/O.

A Structure is an immutable record of atomic numbers, Cartesian positions
in angstrom, and an optional explicit bond list.  XYZ files follow the
extended convention: atom count, a comment line that may carry
``key=value`` metadata (including an explicit bond list such as
``bonds=0-1,1-2``), then one ``symbol x y z`` line per atom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .elements import covalent_radius, symbol_to_z, z_to_symbol


class XyzParseError(ValueError):
    """Malformed XYZ content; the message carries a 1-based line number."""


BondList = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Structure:
    species: tuple[int, ...]
    positions: np.ndarray  # (N, 3) angstrom
    bonds: BondList | None = None
    tag: str = ""

    def __post_init__(self) -> None:
        pos = np.array(self.positions, dtype=np.float64)
        if pos.ndim != 2 or pos.shape != (len(self.species), 3):
            raise ValueError(
                f"positions must be (N, 3) with N={len(self.species)}, got {pos.shape}"
            )
        if not np.all(np.isfinite(pos)):
            raise ValueError("positions must be finite")
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "species", tuple(int(z) for z in self.species))
        if self.bonds is not None:
            object.__setattr__(self, "bonds", _normalize_bonds(self.bonds, len(self.species)))

    @property
    def n_atoms(self) -> int:
        return len(self.species)

    def with_positions(self, positions: np.ndarray, tag: str | None = None) -> "Structure":
        return Structure(self.species, positions, self.bonds, self.tag if tag is None else tag)

    def symbols(self) -> list[str]:
        return [z_to_symbol(z) for z in self.species]


def _normalize_bonds(bonds, n_atoms: int) -> BondList:
    seen = set()
    out = []
    for pair in bonds:
        i, j = int(pair[0]), int(pair[1])
        if i == j:
            raise ValueError(f"self-bond ({i}, {j}) is not allowed")
        if not (0 <= i < n_atoms and 0 <= j < n_atoms):
            raise ValueError(f"bond ({i}, {j}) out of range for {n_atoms} atoms")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValueError(f"duplicate bond {key}")
        seen.add(key)
        out.append(key)
    return tuple(sorted(out))


def perceive_bonds(s: Structure, scale: float = 1.2) -> BondList:
    """Distance-based bond perception.

    Pair (i, j) is bonded iff |x_i - x_j| < scale * (r_cov_i + r_cov_j).
    An explicit bond list on the structure wins and is returned unchanged.
    """
    if s.bonds is not None:
        return s.bonds
    radii = np.array([covalent_radius(z) for z in s.species])
    out = []
    for i in range(s.n_atoms):
        for j in range(i + 1, s.n_atoms):
            d = float(np.linalg.norm(s.positions[i] - s.positions[j]))
            if d < scale * (radii[i] + radii[j]):
                out.append((i, j))
    return tuple(out)


# ---------------------------------------------------------------------------
# Extended XYZ


def _parse_comment_metadata(comment: str) -> dict[str, str]:
    meta = {}
    for token in comment.split():
        if "=" in token:
            key, _, value = token.partition("=")
            meta[key] = value
    return meta


def _parse_bond_token(token: str, n_atoms: int, line_no: int) -> BondList:
    pairs = []
    if token:
        for chunk in token.split(","):
            try:
                a, _, b = chunk.partition("-")
                pairs.append((int(a), int(b)))
            except ValueError:
                raise XyzParseError(
                    f"line {line_no}: malformed bond entry {chunk!r}"
                ) from None
    try:
        return _normalize_bonds(pairs, n_atoms)
    except ValueError as exc:
        raise XyzParseError(f"line {line_no}: {exc}") from None


def parse_xyz(text: str, tag: str = "") -> Structure:
    """Parse a single extended-XYZ structure.

    Raises XyzParseError with the offending 1-based line number on count
    mismatches, unparseable coordinates, or unknown symbols.
    """
    structures, rest = _parse_one(text.splitlines(), 0, tag)
    for line_no, line in rest:
        if line.strip():
            raise XyzParseError(f"line {line_no}: trailing content {line.strip()!r}")
    return structures


def parse_xyz_frames(text: str, tag: str = "") -> list[Structure]:
    """Parse concatenated extended-XYZ frames."""
    lines = text.splitlines()
    out = []
    offset = 0
    while True:
        while offset < len(lines) and not lines[offset].strip():
            offset += 1
        if offset >= len(lines):
            return out
        frame, rest = _parse_one(lines, offset, f"{tag}[{len(out)}]" if tag else "")
        out.append(frame)
        offset = rest[0][0] - 1 if rest else len(lines)


def _parse_one(lines: list[str], offset: int, tag: str):
    if offset >= len(lines) or not lines[offset].strip():
        raise XyzParseError(f"line {offset + 1}: expected atom count")
    try:
        n_atoms = int(lines[offset].strip())
    except ValueError:
        raise XyzParseError(
            f"line {offset + 1}: atom count {lines[offset].strip()!r} is not an integer"
        ) from None
    if n_atoms < 0:
        raise XyzParseError(f"line {offset + 1}: negative atom count")
    if offset + 1 >= len(lines):
        raise XyzParseError(f"line {offset + 2}: missing comment line")
    comment = lines[offset + 1]
    meta = _parse_comment_metadata(comment)

    species = []
    coords = []
    for k in range(n_atoms):
        line_no = offset + 3 + k  # 1-based
        if offset + 2 + k >= len(lines):
            raise XyzParseError(f"line {line_no}: expected atom {k + 1} of {n_atoms}")
        parts = lines[offset + 2 + k].split()
        if len(parts) < 4:
            raise XyzParseError(f"line {line_no}: expected 'symbol x y z'")
        try:
            z = symbol_to_z(parts[0])
        except Exception:
            raise XyzParseError(f"line {line_no}: unknown element symbol {parts[0]!r}") from None
        try:
            xyz = [float(v) for v in parts[1:4]]
        except ValueError:
            raise XyzParseError(f"line {line_no}: unparseable coordinate") from None
        species.append(z)
        coords.append(xyz)

    bonds = None
    if "bonds" in meta:
        bonds = _parse_bond_token(meta["bonds"], n_atoms, offset + 2)
    if not tag and "tag" in meta:
        tag = meta["tag"]
    structure = Structure(
        tuple(species), np.array(coords, dtype=np.float64).reshape(n_atoms, 3), bonds, tag
    )
    rest = [(offset + 3 + n_atoms + i, line) for i, line in enumerate(lines[offset + 2 + n_atoms :])]
    return structure, rest


def format_xyz(s: Structure, comment_extra: str = "") -> str:
    """Serialize to extended XYZ with 12-significant-digit coordinates."""
    meta = []
    if s.tag:
        meta.append(f"tag={s.tag}")
    if s.bonds is not None:
        meta.append("bonds=" + ",".join(f"{i}-{j}" for i, j in s.bonds))
    if comment_extra:
        meta.append(comment_extra)
    lines = [str(s.n_atoms), " ".join(meta)]
    for sym, row in zip(s.symbols(), s.positions):
        lines.append(f"{sym} {row[0]:.12g} {row[1]:.12g} {row[2]:.12g}")
    return "\n".join(lines) + "\n"


def load_xyz_file(path: str | Path) -> Structure:
    path = Path(path)
    return parse_xyz(path.read_text(), tag=path.stem)


def load_xyz_dir(path: str | Path) -> list[Structure]:
    """Load every .xyz file in a directory; tag is the filename stem."""
    path = Path(path)
    return [load_xyz_file(p) for p in sorted(path.glob("*.xyz"))]

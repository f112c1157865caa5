"""Bond-scan construction.

A scan picks a bridge bond (one whose removal splits the molecule in two),
labels the fragments -1/+1, and rigidly displaces the fragments along the
bond axis: x_i(alpha) = x_i + alpha * h_i * r_hat.  Positive alpha always
stretches the bond (h_a = -1 on the side of the first bond atom, h_b = +1,
r_hat pointing a -> b), so the bond length changes by exactly 2*alpha.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .elements import covalent_radius, z_to_symbol
from .structure import BondList, Structure, format_xyz, parse_xyz_frames, perceive_bonds

# Bond types sampled by default when assembling a scan dataset.
DEFAULT_BOND_TYPES = frozenset(
    frozenset(pair)
    for pair in [
        ("C", "C"), ("C", "N"), ("C", "O"), ("C", "P"), ("C", "S"),
        ("N", "N"), ("N", "O"), ("N", "P"), ("O", "P"),
    ]
)


class NonBridgeBondError(ValueError):
    """The requested bond does not disconnect the molecule."""


@dataclass(frozen=True)
class BondScan:
    base: Structure
    bond: tuple[int, int]
    labels: np.ndarray  # (N,) values in {-1, +1}
    direction: np.ndarray  # (3,) unit vector from bond[0] toward bond[1]
    alpha_grid: np.ndarray  # (M,) angstrom, uniform and increasing
    frames: np.ndarray  # (M, N, 3)
    single_atom_fragment: bool = False
    alpha_zero_outside: bool = False

    @property
    def n_frames(self) -> int:
        return len(self.alpha_grid)

    def frame_structure(self, m: int) -> Structure:
        return self.base.with_positions(self.frames[m], tag=f"{self.base.tag}/frame{m}")


def _adjacency(n_atoms: int, bonds: BondList) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n_atoms)]
    for i, j in bonds:
        adj[i].append(j)
        adj[j].append(i)
    return adj


def find_bridge_bonds(s: Structure, bonds: BondList) -> list[tuple[int, int]]:
    """All bonds whose removal disconnects their connected component.

    Uses the classic DFS low-link method (iterative, so deep chains do not
    hit the recursion limit).  Output is sorted lexicographically.  Bridges
    that would split off a single atom are included; callers that need the
    stricter no-isolated-atom rule can filter with fragment_sizes.
    """
    n = s.n_atoms
    adj = _adjacency(n, bonds)
    order = [-1] * n
    low = [0] * n
    counter = 0
    bridges: list[tuple[int, int]] = []
    for root in range(n):
        if order[root] != -1:
            continue
        # Stack entries: (node, parent-edge iterator index state via explicit stack)
        stack = [(root, -1, iter(adj[root]))]
        order[root] = low[root] = counter
        counter += 1
        while stack:
            node, parent, it = stack[-1]
            advanced = False
            for nbr in it:
                if order[nbr] == -1:
                    order[nbr] = low[nbr] = counter
                    counter += 1
                    stack.append((nbr, node, iter(adj[nbr])))
                    advanced = True
                    break
                elif nbr != parent:
                    low[node] = min(low[node], order[nbr])
            if not advanced:
                stack.pop()
                if stack:
                    pnode = stack[-1][0]
                    low[pnode] = min(low[pnode], low[node])
                    if low[node] > order[pnode]:
                        bridges.append((min(pnode, node), max(pnode, node)))
    return sorted(bridges)


def fragment_labels(s: Structure, bonds: BondList, bridge: tuple[int, int]) -> np.ndarray:
    """Labels in {-1, +1}: -1 for the fragment holding bridge[0], +1 for bridge[1]."""
    a, b = int(bridge[0]), int(bridge[1])
    remaining = [p for p in bonds if tuple(sorted(p)) != (min(a, b), max(a, b))]
    adj = _adjacency(s.n_atoms, tuple(remaining))
    labels = np.zeros(s.n_atoms, dtype=np.float64)

    def flood(start: int, value: float) -> None:
        queue = [start]
        labels[start] = value
        while queue:
            node = queue.pop()
            for nbr in adj[node]:
                if labels[nbr] == 0:
                    labels[nbr] = value
                    queue.append(nbr)

    flood(a, -1.0)
    if labels[b] != 0:
        raise NonBridgeBondError(f"bond {(a, b)} does not disconnect the molecule")
    flood(b, +1.0)
    if np.any(labels == 0):
        # Atoms in other components: not reachable from either side.
        raise NonBridgeBondError(
            f"bond graph is disconnected beyond bond {(a, b)}; operate per component"
        )
    return labels


def fragment_sizes(labels: np.ndarray) -> tuple[int, int]:
    return int(np.sum(labels < 0)), int(np.sum(labels > 0))


def scan_alpha_range(
    s: Structure, bridge: tuple[int, int], n_frames: int = 100
) -> np.ndarray:
    """Uniform alpha grid spanning bond lengths from 0.5x to 2x the radii sum.

    Bond length along the scan is L0 + 2*alpha, so
    alpha in [(0.5R - L0)/2, (2R - L0)/2] with R the covalent-radii sum.
    The grid is kept as computed even if alpha=0 falls outside it (a
    warning is emitted in that case).
    """
    if n_frames < 2:
        raise ValueError("n_frames must be >= 2")
    a, b = bridge
    r_sum = covalent_radius(s.species[a]) + covalent_radius(s.species[b])
    l0 = float(np.linalg.norm(s.positions[b] - s.positions[a]))
    lo = (0.5 * r_sum - l0) / 2.0
    hi = (2.0 * r_sum - l0) / 2.0
    if not (lo <= 0.0 <= hi):
        warnings.warn(
            f"base bond length {l0:.3f} A lies outside the scan window "
            f"[{0.5 * r_sum:.3f}, {2 * r_sum:.3f}] A; alpha=0 is off-grid",
            stacklevel=2,
        )
    return np.linspace(lo, hi, n_frames)


def make_scan(
    s: Structure,
    bridge: tuple[int, int],
    alpha_grid: np.ndarray,
    bonds: BondList | None = None,
) -> BondScan:
    """Build the rigid-fragment displacement frames for one bridge bond."""
    alpha_grid = np.asarray(alpha_grid, dtype=np.float64)
    if alpha_grid.ndim != 1 or len(alpha_grid) < 1:
        raise ValueError("alpha_grid must be a 1-D sequence")
    if len(alpha_grid) > 1:
        steps = np.diff(alpha_grid)
        if np.any(steps <= 0) or np.ptp(steps) > 1e-12 * max(1.0, abs(steps[0])):
            raise ValueError("alpha_grid must be strictly increasing and uniform")
    if bonds is None:
        bonds = perceive_bonds(s)
    a, b = int(bridge[0]), int(bridge[1])
    labels = fragment_labels(s, bonds, (a, b))
    direction = s.positions[b] - s.positions[a]
    norm = float(np.linalg.norm(direction))
    if norm == 0.0:
        raise ValueError("bond atoms coincide; direction undefined")
    direction = direction / norm
    frames = s.positions[None, :, :] + (
        alpha_grid[:, None, None] * labels[None, :, None] * direction[None, None, :]
    )
    sizes = fragment_sizes(labels)
    return BondScan(
        base=s,
        bond=(a, b),
        labels=labels,
        direction=direction,
        alpha_grid=alpha_grid,
        frames=frames,
        single_atom_fragment=min(sizes) == 1,
        alpha_zero_outside=not (alpha_grid[0] <= 0.0 <= alpha_grid[-1]),
    )


def filter_overlaps(scan: BondScan, factor: float = 0.9) -> tuple[np.ndarray, bool]:
    """Per-frame overlap mask and overall verdict.

    A frame is rejected when any atom pair other than the scanned pair gets
    closer than factor * (covalent-radii sum of that pair); the scan as a
    whole is rejected if any frame is.  Returns (keep_mask, scan_ok).
    """
    n = scan.base.n_atoms
    radii = np.array([covalent_radius(z) for z in scan.base.species])
    thresholds = factor * (radii[:, None] + radii[None, :])
    a, b = scan.bond
    keep = np.ones(scan.n_frames, dtype=bool)
    iu = np.triu_indices(n, k=1)
    pair_thresholds = thresholds[iu]
    scanned = (iu[0] == min(a, b)) & (iu[1] == max(a, b))
    for m in range(scan.n_frames):
        delta = scan.frames[m][iu[0]] - scan.frames[m][iu[1]]
        dist = np.linalg.norm(delta, axis=1)
        close = (dist < pair_thresholds) & ~scanned
        keep[m] = not np.any(close)
    return keep, bool(np.all(keep))


def bond_type(s: Structure, bond: tuple[int, int]) -> frozenset[str]:
    return frozenset((z_to_symbol(s.species[bond[0]]), z_to_symbol(s.species[bond[1]])))


def reference_curve_ok(energies: np.ndarray, jump_threshold: float = 1.0) -> bool:
    """Validity check for a reference energy curve.

    Scans whose reference curve jumps by more than jump_threshold (eV)
    between adjacent frames are treated as unreliable and rejected.
    """
    energies = np.asarray(energies, dtype=np.float64)
    if not np.all(np.isfinite(energies)):
        return False
    if len(energies) < 2:
        return True
    return bool(np.max(np.abs(np.diff(energies))) <= jump_threshold)


def sample_scan_dataset(
    structures: list[Structure],
    allowed_bond_types=DEFAULT_BOND_TYPES,
    n_frames: int = 100,
    seed: int = 0,
    max_per_structure: int | None = None,
    allow_single_atom_fragments: bool = True,
) -> list[BondScan]:
    """Assemble scans over bridge bonds of the allowed element-pair types.

    Deterministic for a fixed seed: candidates are enumerated in input
    order; when max_per_structure limits the per-structure count, a seeded
    permutation picks which candidates survive.  Every returned scan passes
    the overlap filter.
    """
    allowed = {frozenset(p) for p in allowed_bond_types}
    rng = np.random.default_rng(seed)
    dataset: list[BondScan] = []
    for s in structures:
        bonds = perceive_bonds(s)
        candidates = []
        for bridge in find_bridge_bonds(s, bonds):
            if bond_type(s, bridge) not in allowed:
                continue
            scan = make_scan(s, bridge, scan_alpha_range(s, bridge, n_frames), bonds)
            if scan.single_atom_fragment and not allow_single_atom_fragments:
                continue
            _, ok = filter_overlaps(scan)
            if ok:
                candidates.append(scan)
        if max_per_structure is not None and len(candidates) > max_per_structure:
            order = rng.permutation(len(candidates))[:max_per_structure]
            candidates = [candidates[i] for i in sorted(order)]
        dataset.extend(candidates)
    return dataset


# ---------------------------------------------------------------------------
# On-disk format: one directory per scan with scan.json + frames.xyz


def scan_dir_name(scan: BondScan) -> str:
    a, b = scan.bond
    base = scan.base.tag or "structure"
    return f"{base}__bond{a}-{b}"


def save_scan(scan: BondScan, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    record = {
        "tag": scan.base.tag,
        "bond": list(scan.bond),
        "labels": scan.labels.tolist(),
        "direction": scan.direction.tolist(),
        "alpha_grid": scan.alpha_grid.tolist(),
        "species": list(scan.base.species),
        "bonds": [list(p) for p in (scan.base.bonds or perceive_bonds(scan.base))],
        "single_atom_fragment": scan.single_atom_fragment,
        "alpha_zero_outside": scan.alpha_zero_outside,
    }
    (directory / "scan.json").write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    frames_text = []
    for m in range(scan.n_frames):
        frame = scan.frame_structure(m)
        frames_text.append(format_xyz(frame, comment_extra=f"alpha={scan.alpha_grid[m]:.12g}"))
    (directory / "frames.xyz").write_text("".join(frames_text))
    return directory


def load_scan(directory: str | Path) -> BondScan:
    directory = Path(directory)
    record = json.loads((directory / "scan.json").read_text())
    frames = parse_xyz_frames((directory / "frames.xyz").read_text())
    base_positions = frames[0].positions - (
        np.asarray(record["alpha_grid"])[0]
        * np.asarray(record["labels"])[:, None]
        * np.asarray(record["direction"])[None, :]
    )
    base = Structure(
        tuple(record["species"]),
        base_positions,
        tuple(tuple(p) for p in record["bonds"]),
        tag=record["tag"],
    )
    return BondScan(
        base=base,
        bond=tuple(record["bond"]),
        labels=np.asarray(record["labels"], dtype=np.float64),
        direction=np.asarray(record["direction"], dtype=np.float64),
        alpha_grid=np.asarray(record["alpha_grid"], dtype=np.float64),
        frames=np.stack([f.positions for f in frames]),
        single_atom_fragment=record["single_atom_fragment"],
        alpha_zero_outside=record["alpha_zero_outside"],
    )


def save_scan_dataset(scans: list[BondScan], root: str | Path) -> list[Path]:
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    paths = []
    for scan in scans:
        name = scan_dir_name(scan)
        path = root / name
        suffix = 1
        while path.exists():
            suffix += 1
            path = root / f"{name}_{suffix}"
        paths.append(save_scan(scan, path))
    return paths


def load_scan_dataset(root: str | Path) -> list[BondScan]:
    root = Path(root)
    return [load_scan(p.parent) for p in sorted(root.glob("*/scan.json"))]

"""ASCII maze files for the Pac-Man model.

Legend: ``#`` wall, ``.`` pill, ``o`` powerpill, ``P`` Pac-Man start,
``1``-``4`` ghost starts, space for an empty cell.  Grids are 20 by 20.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

SIZE = 20
LEGEND = frozenset("#.oP1234 ")


class MazeError(ValueError):
    pass


@dataclass(frozen=True)
class MazeSpec:
    rows: tuple[str, ...]
    name: str = "custom"

    @classmethod
    def parse(cls, text: str, name: str = "custom") -> "MazeSpec":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if len(lines) != SIZE:
            raise MazeError(f"maze must have {SIZE} rows, got {len(lines)}")
        for i, line in enumerate(lines, 1):
            if len(line) != SIZE:
                raise MazeError(f"row {i} has {len(line)} columns, expected {SIZE}")
            bad = set(line) - LEGEND
            if bad:
                raise MazeError(f"row {i} has unknown cell characters {sorted(bad)}")
        flat = "".join(lines)
        for marker in "P1234":
            n = flat.count(marker)
            if n != 1:
                raise MazeError(f"maze needs exactly one {marker!r}, found {n}")
        return cls(tuple(lines), name)

    def serialize(self) -> str:
        return "\n".join(self.rows) + "\n"

    def find(self, marker: str) -> tuple[int, int]:
        for y, row in enumerate(self.rows):
            x = row.find(marker)
            if x >= 0:
                return (x, y)
        raise MazeError(f"marker {marker!r} missing")

    @property
    def pac_start(self) -> tuple[int, int]:
        return self.find("P")

    @property
    def ghost_starts(self) -> tuple:
        return tuple(self.find(str(i)) for i in range(1, 5))

    def grid_bytes(self) -> bytes:
        """Row-major cell bytes with entity markers cleared to empty."""
        flat = "".join(self.rows)
        for marker in "P1234":
            flat = flat.replace(marker, " ")
        return flat.encode("ascii")


def load_maze(path: str | Path) -> MazeSpec:
    p = Path(path)
    return MazeSpec.parse(p.read_text(), name=str(path))


def default_maze() -> MazeSpec:
    text = resources.files("gamemonoid.games").joinpath("data/default.maze").read_text()
    return MazeSpec.parse(text, name="default")


def resolve_maze(ref: str | None) -> MazeSpec:
    if ref in (None, "", "default"):
        return default_maze()
    return load_maze(ref)

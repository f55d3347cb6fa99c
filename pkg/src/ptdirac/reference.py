"""Published energy table shipped with the package."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

TABLE1_FILE = "table1.csv"
TABLE1_DIMS = (3, 4, 5)
TABLE1_NS = (1, 2, 3, 4, 5)
TABLE1_ALPHAS = (0.0001, 0.001, 0.005, 0.01)


@dataclass(frozen=True)
class ReferenceCell:
    dim: int
    n: int
    alpha: float
    e_paper: float | None
    present: bool
    e_text: str = ""

    @property
    def last_digit_unit(self) -> float | None:
        """Value of one unit in the last printed digit of ``e_text``."""
        if not self.present:
            return None
        mantissa, _, exponent = self.e_text.lower().partition("e")
        decimals = len(mantissa.partition(".")[2])
        return 10.0 ** (int(exponent or 0) - decimals)


def table1_text() -> str:
    return resources.files("ptdirac").joinpath("data").joinpath(TABLE1_FILE).read_text(encoding="utf-8")


def load_table1() -> list[ReferenceCell]:
    """All 60 cells, ordered by dimension, then n, then alpha."""
    cells = []
    for row in csv.DictReader(io.StringIO(table1_text())):
        present = row["present"] == "1"
        cells.append(
            ReferenceCell(
                dim=int(row["dim"]),
                n=int(row["n"]),
                alpha=float(row["alpha"]),
                e_paper=float(row["e_paper"]) if present else None,
                present=present,
                e_text=row["e_paper"],
            )
        )
    return cells


def table1_lookup() -> dict[tuple[int, int, float], ReferenceCell]:
    return {(c.dim, c.n, c.alpha): c for c in load_table1()}

"""Classification of real and complex Clifford algebras and the tenfold table.

``Cl_{n,s}`` denotes the real Clifford algebra on n generators squaring to
-1 and s squaring to +1.  Every such algebra is a matrix algebra K(m) or a
double K(m)+K(m) over K in {R, C, H}; which one depends only on
(s - n) mod 8, while the size m is fixed by the real dimension 2^(n+s).
The whole 8x8 chessboard is therefore derived from a single audited base
column Cl*_k = Cl_{0,k} (k negative generators) plus dimension counting.

The index of the rank-k real (complex) Dirac operator takes values in a
group determined by k mod 8 (mod 2); laying those groups out against the
ten Altland-Zirnbauer symmetry classes reproduces the periodic table of
topological insulators and superconductors.
"""

from __future__ import annotations

from dataclasses import dataclass

_RING_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class MatrixAlgebraLabel:
    """K(m) or K(m)+K(m) with K in {R, C, H}."""

    ring: str
    size: int
    double: bool = False

    def __post_init__(self):
        if self.ring not in _RING_DIM:
            raise ValueError(f"ring must be one of R, C, H, got {self.ring!r}")
        if self.size < 1:
            raise ValueError("size must be positive")

    @property
    def real_dim(self) -> int:
        return self.size ** 2 * _RING_DIM[self.ring] * (2 if self.double else 1)

    def __str__(self):
        cell = self.ring if self.size == 1 else f"{self.ring}({self.size})"
        return f"{cell}⊕{cell}" if self.double else cell


# Base column Cl*_k = Cl_{0,k}, k = 0..7 (chessboard column n = 0 with
# Cl*_k == Cl_{0,k}); every other cell is derived from it.
_BASE_COLUMN = (
    ("R", 1, False),
    ("R", 1, True),
    ("R", 2, False),
    ("C", 2, False),
    ("H", 2, False),
    ("H", 2, True),
    ("H", 4, False),
    ("C", 8, False),
)


def classify_real(n: int, s: int) -> MatrixAlgebraLabel:
    """Matrix-algebra type of Cl_{n,s} (n negative, s positive generators)."""
    if n < 0 or s < 0:
        raise ValueError("generator counts must be non-negative")
    ring, _, double = _BASE_COLUMN[(s - n) % 8]
    unit = _RING_DIM[ring] * (2 if double else 1)
    total = 1 << (n + s)
    m_sq, rem = divmod(total, unit)
    if rem:
        raise AssertionError(f"dimension 2^{n+s} not divisible by {unit}")
    m = round(m_sq ** 0.5)
    if m * m != m_sq:
        raise AssertionError(f"non-square matrix size for Cl_({n},{s})")
    return MatrixAlgebraLabel(ring, m, double)


def classify_complex(k: int) -> MatrixAlgebraLabel:
    """Complexified classification: C(m) for k even, C(m)+C(m) for k odd."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k % 2 == 0:
        return MatrixAlgebraLabel("C", 1 << (k // 2), False)
    return MatrixAlgebraLabel("C", 1 << ((k - 1) // 2), True)


@dataclass(frozen=True)
class IndexGroup:
    """The group where the index of the rank-k Dirac operator lives."""

    value: str  # "Z" | "Z2" | "0"

    def __str__(self):
        return {"Z": "Z", "Z2": "Z2", "0": "0"}[self.value]


def index_group(k: int, flavor: str = "real") -> IndexGroup:
    """Index group of the Dirac operator on a Cl*_k bundle.

    Real case by k mod 8: residues 1, 2 give Z2 (mod-2 dimension counts of
    harmonic spinors), residues 0, 4 give Z (A-hat genus cases), the rest
    vanish.  Complex case: Z for k even (Todd class), 0 for k odd.
    """
    if flavor == "real":
        r = k % 8
        if r in (1, 2):
            return IndexGroup("Z2")
        if r in (0, 4):
            return IndexGroup("Z")
        return IndexGroup("0")
    if flavor == "complex":
        return IndexGroup("Z" if k % 2 == 0 else "0")
    raise ValueError(f"flavor must be 'real' or 'complex', got {flavor!r}")


@dataclass(frozen=True)
class AZClass:
    """Altland-Zirnbauer symmetry class: (T, C, S) data of a gapped Hamiltonian."""

    label: str
    T: int
    C: int
    S: int

    def __post_init__(self):
        both = self.T != 0 and self.C != 0
        neither = self.T == 0 and self.C == 0
        if both and self.S != 1:
            raise ValueError("S must be 1 when both T and C are present")
        if not both and not neither and self.S != 0:
            raise ValueError("S must be 0 when exactly one of T, C is present")


# The ten classes, in the row order of the periodic table: two complex
# classes first, then the eight real classes in Bott order.
COMPLEX_CLASSES = (
    AZClass("A", 0, 0, 0),
    AZClass("AIII", 0, 0, 1),
)
REAL_CLASSES = (
    AZClass("AI", +1, 0, 0),
    AZClass("BDI", +1, +1, 1),
    AZClass("D", 0, +1, 0),
    AZClass("DIII", -1, +1, 1),
    AZClass("AII", -1, 0, 0),
    AZClass("CII", -1, -1, 1),
    AZClass("C", 0, -1, 0),
    AZClass("CI", +1, -1, 1),
)
AZ_CLASSES = COMPLEX_CLASSES + REAL_CLASSES


def tenfold_cell(az: AZClass, d: int) -> IndexGroup:
    """Entry of the periodic table for class ``az`` in spatial dimension d.

    Row-offset convention: with r the row index of the class inside its
    (complex or real) block, the entry is the index group of k = (r - d)
    mod 2 (complex) or mod 8 (real).  The offset is pinned once by the
    golden-table test, cell for cell.
    """
    if az in COMPLEX_CLASSES:
        r = COMPLEX_CLASSES.index(az)
        return index_group((r - d) % 2, "complex")
    r = REAL_CLASSES.index(az)
    return index_group((r - d) % 8, "real")


def tenfold_table() -> list[tuple[AZClass, list[IndexGroup]]]:
    """The full 10 x 8 periodic table (dimensions d = 0..7)."""
    return [(az, [tenfold_cell(az, d) for d in range(8)]) for az in AZ_CLASSES]


def chessboard() -> list[list[MatrixAlgebraLabel]]:
    """The 8 x 8 table: rows s = 0..7, columns n = 0..7."""
    return [[classify_real(n, s) for n in range(8)] for s in range(8)]


def complex_table() -> list[list[MatrixAlgebraLabel]]:
    """The 2 x 2 complex table: rows s = 0..1, columns n = 0..1."""
    return [[classify_complex((s - n) % 2) for n in range(2)] for s in range(2)]


def complex_spinor_dim(n: int, s: int) -> int:
    """Size of the irreducible complex representation, 2^floor(dim/2)."""
    return 1 << ((n + s) // 2)


def label_complex_rep_dim(label: MatrixAlgebraLabel) -> int:
    """Complex irrep size predicted by a real label via complexification.

    R(m) and C(m) complexify with irrep size m, H(m) with 2m; doubling
    does not change the irrep size.
    """
    return label.size * (2 if label.ring == "H" else 1)


# ---------------------------------------------------------------------------
# table emission (CSV / JSON / Markdown); Markdown is the golden-file format


def chessboard_markdown() -> str:
    rows = chessboard()
    lines = ["| Cl_{n,s} | " + " | ".join(f"n={n}" for n in range(8)) + " |",
             "|" + "---|" * 9]
    for s in range(8):
        cells = " | ".join(str(rows[s][n]) for n in range(8))
        lines.append(f"| s={s} | {cells} |")
    return "\n".join(lines) + "\n"


def complex_markdown() -> str:
    rows = complex_table()
    lines = ["| Cl_{s-n mod 2} | n=0 | n=1 |", "|---|---|---|"]
    for s in range(2):
        lines.append(f"| s={s} | {rows[s][0]} | {rows[s][1]} |")
    return "\n".join(lines) + "\n"


def tenfold_markdown() -> str:
    table = tenfold_table()
    lines = ["| label | T | C | S | " + " | ".join(str(d) for d in range(8)) + " |",
             "|" + "---|" * 12]
    for az, cells in table:
        sym = f"{az.label} | {_sign(az.T)} | {_sign(az.C)} | {az.S}"
        lines.append("| " + sym + " | " + " | ".join(str(c) for c in cells) + " |")
    return "\n".join(lines) + "\n"


def _sign(v: int) -> str:
    return {0: "0", 1: "+1", -1: "-1"}[v]


def chessboard_rows() -> list[list[str]]:
    """CSV-ready rows for the chessboard (header + 8 rows)."""
    out = [["Cl_{n,s}"] + [f"n={n}" for n in range(8)]]
    for s, row in enumerate(chessboard()):
        out.append([f"s={s}"] + [str(cell) for cell in row])
    return out


def complex_rows() -> list[list[str]]:
    out = [["Cl_{s-n mod 2}", "n=0", "n=1"]]
    for s, row in enumerate(complex_table()):
        out.append([f"s={s}"] + [str(cell) for cell in row])
    return out


def tenfold_rows() -> list[list[str]]:
    out = [["label", "T", "C", "S"] + [str(d) for d in range(8)]]
    for az, cells in tenfold_table():
        out.append([az.label, _sign(az.T), _sign(az.C), str(az.S)]
                   + [str(c) for c in cells])
    return out


def chessboard_json() -> dict:
    return {
        "rows": [
            {"s": s, "cells": [
                {"n": n, "ring": cell.ring, "size": cell.size, "double": cell.double}
                for n, cell in enumerate(row)
            ]}
            for s, row in enumerate(chessboard())
        ]
    }


def complex_json() -> dict:
    return {
        "rows": [
            {"s": s, "cells": [
                {"n": n, "ring": cell.ring, "size": cell.size, "double": cell.double}
                for n, cell in enumerate(row)
            ]}
            for s, row in enumerate(complex_table())
        ]
    }


def tenfold_json() -> dict:
    return {
        "rows": [
            {"label": az.label, "T": az.T, "C": az.C, "S": az.S,
             "groups": [str(c) for c in cells]}
            for az, cells in tenfold_table()
        ]
    }

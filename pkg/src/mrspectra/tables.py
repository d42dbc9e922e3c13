"""Table generation: molecule registry, unit conversion, reference comparison, output.

The reference corpus ``data/reference_tables.csv`` holds every printed cell
of the six published tables, one row per cell, with the formula that
generated it and an ``excluded`` reason for cells that are transcription
errors.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .closedform import QuantumNumbers, energy_manning_rosen
from .errors import ConfigError, DomainError
from .potentials import (AMU_EV_PAPER_CALIBRATED, AMU_EV_PHYSICAL, HBAR_C_EV_ANGSTROM,
                         CentrifugalScheme, PhysicalConstants, PotentialParams)

UNIT_MODES = ("atomic", "physical", "paper-calibrated")
CSV_FIELDS = ("state", "inv_b", "scheme", "value", "paper_ref", "deviation", "excluded")

#: Row layout shared by all six tables: three screenings for n = 0 and 1
#: p/d states, two for the next shell, one for the rest.
TABLE_ROWS: Tuple[Tuple[str, float], ...] = tuple(
    [(s, ib) for s in ("2p", "3p", "3d") for ib in (0.025, 0.050, 0.075)]
    + [(s, ib) for s in ("4p", "4d", "4f") for ib in (0.025, 0.050)]
    + [(s, 0.025) for s in ("5p", "5d", "5f", "5g", "6p", "6d", "6f", "6g")]
)

#: table id -> (alpha, molecules)
TABLE_LAYOUT: Dict[int, Tuple[float, Tuple[Optional[str], ...]]] = {
    1: (0.75, (None,)),
    2: (1.5, (None,)),
    3: (0.75, ("CH", "CO")),
    4: (0.75, ("HCl", "LiH")),
    5: (1.5, ("CH", "CO")),
    6: (1.5, ("HCl", "LiH")),
}


def _data_path(name: str):
    return resources.files("mrspectra").joinpath("data", name)


# molecules

@dataclass(frozen=True)
class MoleculeSpec:
    name: str
    reduced_mass_amu: float

    def __post_init__(self):
        if not self.reduced_mass_amu > 0:
            raise ConfigError(f"{self.name}: reduced mass must be positive")


def load_registry(path: Union[str, Path, None] = None) -> Dict[str, MoleculeSpec]:
    """Parse ``name mass_amu`` lines; ``#`` starts a comment."""
    text = Path(path).read_text() if path is not None else _data_path("molecules.txt").read_text()
    registry: Dict[str, MoleculeSpec] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(f"registry line {lineno}: expected 'name mass_amu'")
        name, mass = parts
        if name in registry:
            raise ConfigError(f"registry line {lineno}: duplicate molecule {name!r}")
        try:
            registry[name] = MoleculeSpec(name, float(mass))
        except ValueError:
            raise ConfigError(f"registry line {lineno}: bad mass {mass!r}") from None
    return registry


# units

def amu_energy(mode: str) -> float:
    if mode == "physical":
        return AMU_EV_PHYSICAL
    if mode == "paper-calibrated":
        return AMU_EV_PAPER_CALIBRATED
    raise ConfigError(f"unit mode {mode!r} has no amu conversion")


def constants_for(units: str, molecule: Optional[MoleculeSpec]) -> PhysicalConstants:
    if units not in UNIT_MODES:
        raise ConfigError(f"unknown unit mode {units!r}; choose from {UNIT_MODES}")
    if units == "atomic":
        if molecule is not None:
            raise ConfigError("a molecule needs eV units (physical or paper-calibrated)")
        return PhysicalConstants.atomic()
    if molecule is None:
        raise ConfigError(f"units {units!r} need a molecule")
    return PhysicalConstants.molecular(molecule.reduced_mass_amu, amu_energy(units))


def convert_energy(value_dimensionless: float, b: float, molecule: MoleculeSpec, mode: str) -> float:
    """``D (hbar c)^2 / (2 mu_amu K b^2)`` in eV, with ``K`` chosen by ``mode``."""
    if mode == "atomic":
        raise ConfigError("convert_energy produces eV; atomic units need no conversion")
    if not b > 0:
        raise DomainError("b must be positive")
    K = amu_energy(mode)
    return value_dimensionless * HBAR_C_EV_ANGSTROM ** 2 / (2.0 * molecule.reduced_mass_amu * K * b * b)


# reference corpus

@dataclass(frozen=True)
class ReferenceCell:
    table: int
    molecule: Optional[str]
    alpha: float
    state: str
    inv_b: float
    column: str
    scheme: Optional[str]
    printed: str
    value: float
    excluded: Optional[str]
    note: Optional[str]


@lru_cache(maxsize=None)
def _load_default_reference() -> Tuple[ReferenceCell, ...]:
    return tuple(_parse_reference(_data_path("reference_tables.csv").read_text()))


def _parse_reference(text: str) -> List[ReferenceCell]:
    cells = []
    for row in csv.DictReader(io.StringIO(text)):
        cells.append(ReferenceCell(
            table=int(row["table"]), molecule=row["molecule"] or None, alpha=float(row["alpha"]),
            state=row["state"], inv_b=float(row["inv_b"]), column=row["column"],
            scheme=row["scheme"] or None, printed=row["printed"], value=float(row["value"]),
            excluded=row["excluded"] or None, note=row["note"] or None))
    return cells


def load_reference(path: Union[str, Path, None] = None) -> List[ReferenceCell]:
    if path is None:
        return list(_load_default_reference())
    return _parse_reference(Path(path).read_text())


# table building

@dataclass(frozen=True)
class RunConfig:
    states: Tuple = tuple(s for s, _ in TABLE_ROWS)
    screenings: Tuple[float, ...] = (0.025,)
    alpha: float = 0.75
    a_over_b: float = 2.0
    schemes: Tuple = ("approx1", "approx2", "approx3")
    units: str = "atomic"
    molecule: Optional[str] = None
    output_format: str = "csv"
    rows: Optional[Tuple[Tuple[str, float], ...]] = None
    table: Optional[int] = None
    oracle_points: int = 8000

    def __post_init__(self):
        if not self.schemes:
            raise ConfigError("at least one scheme is required")
        if self.rows is None and (not self.states or not self.screenings):
            raise ConfigError("states and screenings must be non-empty")
        if self.units not in UNIT_MODES:
            raise ConfigError(f"unknown unit mode {self.units!r}")
        if self.output_format not in ("csv", "markdown", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if not (self.a_over_b == self.a_over_b and abs(self.a_over_b) < float("inf")):
            raise ConfigError("the A-rule must give a finite A")
        for s in self.schemes:
            CentrifugalScheme.parse(s)

    @classmethod
    def for_table(cls, table: int, molecule: Optional[str] = None, units: Optional[str] = None,
                  schemes: Sequence[str] = ("approx1", "approx2", "approx3"),
                  output_format: str = "csv") -> "RunConfig":
        if table not in TABLE_LAYOUT:
            raise ConfigError(f"no table {table}; choose 1-6")
        alpha, mols = TABLE_LAYOUT[table]
        if mols == (None,):
            if molecule is not None:
                raise ConfigError(f"table {table} is in atomic units and has no molecule")
            units = units or "atomic"
        else:
            if molecule is None:
                raise ConfigError(f"table {table} covers {' and '.join(mols)}; pass a molecule")
            if molecule not in mols:
                raise ConfigError(f"table {table} covers {' and '.join(mols)}, not {molecule}")
            units = units or "paper-calibrated"
        return cls(alpha=alpha, schemes=tuple(schemes), units=units, molecule=molecule,
                   output_format=output_format, rows=TABLE_ROWS, table=table)

    def cells(self) -> List[Tuple[str, float]]:
        if self.rows is not None:
            return list(self.rows)
        out = []
        for st in self.states:
            label = st if isinstance(st, str) else QuantumNumbers(*st).label
            for ib in self.screenings:
                out.append((label, float(ib)))
        return out


@dataclass
class OutputRow:
    state: str
    inv_b: float
    scheme: str
    value: float
    paper_ref: Optional[float] = None
    deviation: Optional[float] = None
    excluded: Optional[str] = None


@dataclass
class OutputTable:
    rows: List[OutputRow] = field(default_factory=list)
    units: str = "atomic"
    title: str = ""

    def schemes(self) -> List[str]:
        seen = []
        for r in self.rows:
            if r.scheme not in seen:
                seen.append(r.scheme)
        return seen

    def keys(self) -> List[Tuple[str, float]]:
        seen = []
        for r in self.rows:
            if (r.state, r.inv_b) not in seen:
                seen.append((r.state, r.inv_b))
        return seen

    def cell(self, state: str, inv_b: float, scheme: str) -> OutputRow:
        for r in self.rows:
            if r.state == state and abs(r.inv_b - inv_b) < 1e-12 and r.scheme == scheme:
                return r
        raise KeyError((state, inv_b, scheme))


def _match_table(config: RunConfig) -> Optional[int]:
    if config.table is not None:
        return config.table
    for t, (alpha, mols) in TABLE_LAYOUT.items():
        if alpha != config.alpha or config.a_over_b != 2.0:
            continue
        if mols == (None,) and config.molecule is None and config.units == "atomic":
            return t
        if config.molecule in mols and config.units == "paper-calibrated":
            return t
    return None


def _reference_index(table: Optional[int], molecule: Optional[str],
                     reference: Iterable[ReferenceCell]) -> Dict[Tuple[str, float, str], ReferenceCell]:
    if table is None:
        return {}
    index = {}
    for c in reference:
        if c.table == table and c.molecule == molecule and c.scheme:
            index[(c.state, round(c.inv_b, 6), c.scheme)] = c
    return index


def build_table(config: RunConfig, registry: Optional[Dict[str, MoleculeSpec]] = None,
                reference: Optional[Iterable[ReferenceCell]] = None) -> OutputTable:
    """Compute every requested cell and attach reference values where a printed table matches."""
    registry = registry if registry is not None else load_registry()
    molecule = None
    if config.molecule is not None:
        if config.molecule not in registry:
            raise ConfigError(f"unknown molecule {config.molecule!r}; known: {sorted(registry)}")
        molecule = registry[config.molecule]
    consts = constants_for(config.units, molecule)
    schemes = [CentrifugalScheme.parse(s) for s in config.schemes]
    table_id = _match_table(config)
    index = _reference_index(table_id, config.molecule,
                             reference if reference is not None else _load_default_reference())

    out = OutputTable(units=consts.units, title=_title(config, table_id))
    for state, inv_b in config.cells():
        qn = QuantumNumbers.from_label(state)
        params = PotentialParams.from_screening(inv_b, config.alpha, config.a_over_b)
        for scheme in schemes:
            if scheme is CentrifugalScheme.EXACT:
                from .oracle import manning_rosen_level
                value = manning_rosen_level(qn, params, scheme, consts,
                                            count=config.oracle_points).energy
            else:
                value = energy_manning_rosen(qn, params, scheme, consts).value
            row = OutputRow(state, inv_b, scheme.value, float(value))
            ref = index.get((state, round(inv_b, 6), scheme.value))
            if ref is not None:
                row.paper_ref = ref.value
                row.excluded = ref.excluded
                if ref.excluded is None:
                    row.deviation = row.value - ref.value
            out.rows.append(row)
    return out


def _title(config: RunConfig, table_id: Optional[int]) -> str:
    who = f"{config.molecule}, " if config.molecule else ""
    ref = f"table {table_id}: " if table_id else ""
    return f"{ref}{who}alpha = {config.alpha}, A = {config.a_over_b:g} b, {config.units} units"


# output

def _fmt(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.9f}"


def _fmt_inv_b(x: float) -> str:
    return f"{x:.3f}"


def to_csv(table: OutputTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in table.rows:
        w.writerow([r.state, _fmt_inv_b(r.inv_b), r.scheme, _fmt(r.value), _fmt(r.paper_ref),
                    _fmt(r.deviation), r.excluded or ""])
    return buf.getvalue()


def parse_csv(text: str) -> OutputTable:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise ConfigError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for rec in reader:
        opt = lambda k: float(rec[k]) if rec[k] else None
        rows.append(OutputRow(rec["state"], float(rec["inv_b"]), rec["scheme"], float(rec["value"]),
                              opt("paper_ref"), opt("deviation"), rec["excluded"] or None))
    return OutputTable(rows=rows)


def to_json(table: OutputTable) -> str:
    def num(x):
        return None if x is None else round(x, 9)

    data = [dict(state=r.state, inv_b=r.inv_b, scheme=r.scheme, value=num(r.value),
                 paper_ref=num(r.paper_ref), deviation=num(r.deviation), excluded=r.excluded)
            for r in table.rows]
    return json.dumps(data, indent=1) + "\n"


def to_markdown(table: OutputTable) -> str:
    """One line per (state, 1/b) in build order, one column per scheme."""
    schemes = table.schemes()
    has_ref = any(r.paper_ref is not None for r in table.rows)
    head = ["states", "1/b"] + [CentrifugalScheme.parse(s).label for s in schemes]
    if has_ref:
        head += [f"ref {CentrifugalScheme.parse(s).label}" for s in schemes]
    lines = []
    if table.title:
        lines += [f"**{table.title}**", ""]
    lines += ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    last = None
    for state, inv_b in table.keys():
        cells = [state if state != last else "", _fmt_inv_b(inv_b)]
        last = state
        rows = [table.cell(state, inv_b, s) for s in schemes]
        cells += [_fmt(r.value) for r in rows]
        if has_ref:
            cells += [(_fmt(r.paper_ref) + (" *" if r.excluded else "")) if r.paper_ref is not None
                      else "" for r in rows]
        lines.append("| " + " | ".join(cells) + " |")
    if has_ref and any(r.excluded for r in table.rows):
        lines += ["", "`*` printed value is a known transcription error; excluded from comparison."]
    return "\n".join(lines) + "\n"


def render(table: OutputTable, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table)
    if fmt == "markdown":
        return to_markdown(table)
    raise ConfigError(f"unknown output format {fmt!r}")


def emit(table: OutputTable, fmt: str = "csv", destination: Union[str, Path, None] = None) -> None:
    """Write the table to ``destination`` (a path) or stdout."""
    text = render(table, fmt)
    if destination is None or str(destination) == "-":
        sys.stdout.write(text)
        return
    Path(destination).write_text(text)


# calibration

@dataclass(frozen=True)
class CalibrationReport:
    k_fit: float
    k_shipped: float
    k_physical: float
    cells: int
    k_min: float
    k_max: float

    @property
    def ratio(self) -> float:
        return self.k_physical / self.k_fit

    def lines(self) -> List[str]:
        return [
            f"amu->eV constant fitted from atomic vs CH cells: K = {self.k_fit:.6f} eV/amu "
            f"(median of {self.cells} cells, spread {self.k_min:.6f} .. {self.k_max:.6f})",
            f"constant used by --units paper-calibrated: K = {self.k_shipped:.1f} eV/amu",
            f"physical constant (--units physical): K = {self.k_physical:.8e} eV/amu",
            f"ratio physical / fitted = {self.ratio:.6e}",
        ]


def calibrate(reference: Optional[Iterable[ReferenceCell]] = None,
              registry: Optional[Dict[str, MoleculeSpec]] = None,
              molecule: str = "CH") -> CalibrationReport:
    """Fit ``K`` from printed atomic-unit cells and the matching printed molecular cells.

    For the same dimensionless bracket ``D``, ``E_au = D/(2 b^2)`` and
    ``E_eV = D (hbar c)^2/(2 mu K b^2)``, so ``K = (hbar c)^2 E_au/(mu E_eV)``.
    The median over all non-excluded pairs is robust to the few bad cells.
    """
    cells = list(reference if reference is not None else _load_default_reference())
    registry = registry if registry is not None else load_registry()
    mu = registry[molecule].reduced_mass_amu
    pairs = []
    for t_au, (alpha, mols) in TABLE_LAYOUT.items():
        if mols != (None,):
            continue
        for t_mol, (alpha_m, mols_m) in TABLE_LAYOUT.items():
            if alpha_m == alpha and molecule in mols_m:
                pairs.append((t_au, t_mol))
    ks = []
    for t_au, t_mol in pairs:
        au = {(c.state, c.inv_b, c.scheme): c for c in cells
              if c.table == t_au and c.scheme and c.scheme != "exact" and not c.excluded}
        for c in cells:
            if c.table != t_mol or c.molecule != molecule or not c.scheme or c.excluded:
                continue
            a = au.get((c.state, c.inv_b, c.scheme))
            if a is not None and c.value != 0:
                ks.append(HBAR_C_EV_ANGSTROM ** 2 * a.value / (mu * c.value))
    if not ks:
        raise ConfigError("no overlapping reference cells to calibrate against")
    return CalibrationReport(statistics.median(ks), AMU_EV_PAPER_CALIBRATED, AMU_EV_PHYSICAL,
                             len(ks), min(ks), max(ks))

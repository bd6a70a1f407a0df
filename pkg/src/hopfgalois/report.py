"""Correspondence reports: construction, text and JSON rendering, JSON parsing."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .action import correspondence_lattice, hasse_edges
from .errors import InputError
from .fixtures import FORMAT_VERSION, _dump
from .greither_pareigis import HGStructure, SplittingDatum, group_side_correspondence
from .linalg import Field, field_from_name

REPORT_KIND = "lattice_report"
FLAG_NAMES = ("h_subextension", "h_stable", "h_normal", "hopf_ideal", "normal_subgroup")


@dataclass
class ReportRow:
    dim: int
    field_basis: list[tuple]
    ideal_basis: list[tuple]
    hopf_subalgebra_basis: list[tuple]
    v: list[list[int]] | None
    u: list[str] | None
    flags: dict[str, bool]


@dataclass
class LatticeReport:
    field: Field
    name: str
    rows: list[ReportRow] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, LatticeReport):
            return NotImplemented
        return emit_json(self) == emit_json(other)


def lattice_report(datum: SplittingDatum, s: HGStructure, name: str = "") -> LatticeReport:
    """Both sides of the correspondence for one structure, matched row by row."""
    groups = group_side_correspondence(s, datum)
    lat = correspondence_lattice(s.module, [g.ideal for g in groups])
    by_ideal = {g.ideal: g for g in groups}
    rows = []
    for r in lat.rows:
        g = by_ideal[r.ideal]
        rows.append(
            ReportRow(
                dim=r.dim,
                field_basis=list(r.field.basis),
                ideal_basis=list(r.ideal.basis),
                hopf_subalgebra_basis=list(r.hopf_subalgebra.basis),
                v=[list(p) for p in g.v.elements],
                u=[datum.label_of[a] for a in g.u.elements],
                flags={
                    "h_subextension": r.h_subextension,
                    "h_stable": r.h_stable,
                    "h_normal": r.h_normal,
                    "hopf_ideal": r.hopf_ideal,
                    "normal_subgroup": g.normal,
                },
            )
        )
    verdicts = dict(lat.verdicts)
    verdicts["fixed_field_equals_group_side"] = all(by_ideal[r.ideal].field == r.field for r in lat.rows)
    return LatticeReport(datum.field, name, rows, list(lat.edges), verdicts)


def empty_report(fld: Field, name: str = "") -> LatticeReport:
    return LatticeReport(fld, name)


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------


def _vecs(fld: Field, vs) -> list[list[str]]:
    return [[fld.fmt(x) for x in v] for v in vs]


def report_to_dict(r: LatticeReport) -> dict:
    fld = r.field
    return {
        "format_version": FORMAT_VERSION,
        "kind": REPORT_KIND,
        "field": fld.name,
        "name": r.name,
        "rows": [
            {
                "dim": row.dim,
                "field_basis": _vecs(fld, row.field_basis),
                "ideal_basis": _vecs(fld, row.ideal_basis),
                "hopf_subalgebra_basis": _vecs(fld, row.hopf_subalgebra_basis),
                "V": row.v,
                "U": row.u,
                "flags": {k: row.flags[k] for k in FLAG_NAMES if k in row.flags},
            }
            for row in r.rows
        ],
        "edges": [list(e) for e in r.edges],
        "verdicts": {k: r.verdicts[k] for k in sorted(r.verdicts)},
    }


def emit_json(r: LatticeReport) -> str:
    return _dump(report_to_dict(r), 0) + "\n"


def emit_text(r: LatticeReport) -> str:
    fld = r.field
    lines = [f"lattice report {r.name or '(unnamed)'} over {fld.name}: {len(r.rows)} rows, {len(r.edges)} edges"]
    for i, row in enumerate(r.rows):
        flags = " ".join(k for k in FLAG_NAMES if row.flags.get(k))
        lines.append(f"[{i}] dim {row.dim}  ideal dim {len(row.ideal_basis)}  Hopf subalgebra dim {len(row.hopf_subalgebra_basis)}  flags: {flags or '-'}")
        lines.append("    field basis: " + "; ".join(" ".join(v) for v in _vecs(fld, row.field_basis)))
        if row.v is not None:
            lines.append(f"    |V| = {len(row.v)}  U = {{{', '.join(row.u or [])}}}")
    for i, j in r.edges:
        lines.append(f"edge [{i}] < [{j}]  (dim {r.rows[i].dim} < dim {r.rows[j].dim})")
    for k in sorted(r.verdicts):
        lines.append(f"verdict {k}: {r.verdicts[k]}")
    return "\n".join(lines) + "\n"


def emit_report(r: LatticeReport, fmt: str = "text") -> str:
    if fmt == "json":
        return emit_json(r)
    if fmt == "text":
        return emit_text(r)
    raise InputError(f"unknown report format {fmt!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def parse_report(raw: dict | str) -> LatticeReport:
    if isinstance(raw, str):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"report is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict) or raw.get("kind") != REPORT_KIND or raw.get("format_version") != FORMAT_VERSION:
        raise InputError("not a lattice report")
    fld = field_from_name(raw["field"])

    def vecs(vs):
        return [tuple(fld.parse(x) for x in v) for v in vs]

    rows = [
        ReportRow(
            dim=int(row["dim"]),
            field_basis=vecs(row["field_basis"]),
            ideal_basis=vecs(row["ideal_basis"]),
            hopf_subalgebra_basis=vecs(row["hopf_subalgebra_basis"]),
            v=row.get("V"),
            u=row.get("U"),
            flags=dict(row["flags"]),
        )
        for row in raw.get("rows", [])
    ]
    edges = [(int(a), int(b)) for a, b in raw.get("edges", [])]
    return LatticeReport(fld, raw.get("name", ""), rows, edges, dict(raw.get("verdicts", {})))


def check_edges(r: LatticeReport) -> bool:
    """Edges recomputed from the field bases agree with the stored ones."""
    from .linalg import Subspace

    if not r.rows:
        return not r.edges
    n = len(r.rows[0].field_basis[0]) if r.rows[0].field_basis else 0
    spaces = [Subspace.span(r.field, n, row.field_basis) for row in r.rows]
    return hasse_edges(spaces) == [tuple(e) for e in r.edges]

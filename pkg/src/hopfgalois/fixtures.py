"""Fixture files: JSON with exact scalars as strings.

Every fixture has a ``header`` (format version, field, tensor index
convention), optional ``metadata`` and exactly one payload block:
``splitting_datum``, ``module_algebra`` or ``tower``.  The layouts are
documented in ``docs/schemas.md``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .action import ModuleAlgebraDatum
from .errors import DimensionError, InputError
from .finite_fields import embedding_matrix, frobenius_powers, gf_algebra, smallest_root
from .greither_pareigis import SplittingDatum
from .hopf import FinAlgebra, FinCoalgebra, HopfAlgebraData
from .linalg import GF, TENSOR_INDEX_CONVENTION, Field, Matrix, field_from_name

FORMAT_VERSION = 1
PAYLOAD_KINDS = ("splitting_datum", "module_algebra", "tower")
BUILTIN_DATA = {
    "q-x3m2-closure": "q_x3m2_closure.json",
    "q-cbrt2": "q_cbrt2.json",
}


@dataclass
class Fixture:
    header: dict
    metadata: dict
    kind: str
    payload: Any
    field: Field

    def to_json(self) -> dict:
        out = {"header": self.header}
        if self.metadata:
            out["metadata"] = self.metadata
        out[self.kind] = emit_payload(self.kind, self.payload)
        return out


def make_header(field: Field) -> dict:
    return {"format_version": FORMAT_VERSION, "field": field.name, "tensor_index_convention": TENSOR_INDEX_CONVENTION}


# ---------------------------------------------------------------------------
# scalars and tensors
# ---------------------------------------------------------------------------


def _scalars(field: Field, seq, n: int | None = None, what: str = "vector") -> tuple:
    if not isinstance(seq, list):
        raise InputError(f"{what} must be a JSON array")
    if n is not None and len(seq) != n:
        raise DimensionError(f"{what} has length {len(seq)}, expected {n}")
    return tuple(field.parse(x) for x in seq)


def parse_matrix(field: Field, rows, nrows: int | None = None, ncols: int | None = None, what: str = "matrix") -> Matrix:
    if not isinstance(rows, list) or (nrows is not None and len(rows) != nrows):
        raise DimensionError(f"{what} must have {nrows} rows")
    data = [_scalars(field, r, ncols, what) for r in rows]
    if ncols is None:
        ncols = len(data[0]) if data else 0
    return Matrix(field, data, ncols, reduced=True)


def emit_matrix(m: Matrix) -> list:
    return m.to_lists()


def parse_algebra(field: Field, block: dict, what: str = "algebra") -> FinAlgebra:
    d = _dim(block, what)
    mul = block.get("mul")
    if not isinstance(mul, list) or len(mul) != d or any(not isinstance(r, list) or len(r) != d for r in mul):
        raise DimensionError(f"{what}.mul must be a {d} x {d} array of vectors")
    table = [[_scalars(field, mul[i][j], d, f"{what}.mul[{i}][{j}]") for j in range(d)] for i in range(d)]
    unit = _scalars(field, block.get("unit"), d, f"{what}.unit")
    return FinAlgebra.from_table(field, table, unit)


def emit_algebra(a: FinAlgebra) -> dict:
    return {"dim": a.dim, "mul": a.to_json_table(), "unit": [a.field.fmt(x) for x in a.unit]}


def parse_hopf(field: Field, block: dict) -> HopfAlgebraData:
    d = _dim(block, "hopf")
    alg = parse_algebra(field, {"dim": d, "mul": block.get("mul"), "unit": block.get("unit")}, "hopf")
    comul = block.get("comul")
    if not isinstance(comul, list) or len(comul) != d:
        raise DimensionError(f"hopf.comul must list {d} tensors")
    cols = []
    for k in range(d):
        t = comul[k]
        if not isinstance(t, list) or len(t) != d:
            raise DimensionError(f"hopf.comul[{k}] must be a {d} x {d} array")
        cols.append(tuple(x for a in range(d) for x in _scalars(field, t[a], d, f"hopf.comul[{k}][{a}]")))
    coalg = FinCoalgebra(field, Matrix.from_columns(field, cols, d * d), _scalars(field, block.get("counit"), d, "hopf.counit"))
    anti = block.get("antipode")
    s = parse_matrix(field, anti, d, d, "hopf.antipode") if anti is not None else None
    return HopfAlgebraData(alg, coalg, s)


def emit_hopf(h: HopfAlgebraData) -> dict:
    return h.to_json()


def _dim(block: dict, what: str) -> int:
    if not isinstance(block, dict):
        raise InputError(f"{what} must be an object")
    d = block.get("dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InputError(f"{what}.dim must be a positive integer")
    return d


# ---------------------------------------------------------------------------
# payloads
# ---------------------------------------------------------------------------


def parse_splitting(field: Field, block: dict) -> SplittingDatum:
    if not isinstance(block, dict):
        raise InputError("splitting_datum must be an object")
    lt = parse_algebra(field, block.get("closure_algebra"), "closure_algebra")
    auts = block.get("automorphisms")
    if not isinstance(auts, list) or not auts:
        raise InputError("automorphisms must be a nonempty array")
    labels, mats = [], []
    for a in auts:
        if not isinstance(a, dict) or not isinstance(a.get("label"), str):
            raise InputError("each automorphism needs a string label")
        labels.append(a["label"])
        mats.append(parse_matrix(field, a.get("matrix"), lt.dim, lt.dim, f"automorphism {a['label']}"))
    pos = {s: i for i, s in enumerate(labels)}
    table = block.get("group_table")
    if not isinstance(table, list) or len(table) != len(labels):
        raise DimensionError("group_table must have one row per automorphism")
    try:
        idx = [[pos[x] for x in row] for row in table]
        gp = [pos[x] for x in block.get("g_prime", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"unknown automorphism label {exc}") from exc
    if any(len(r) != len(labels) for r in idx):
        raise DimensionError("group_table rows must have one entry per automorphism")
    return SplittingDatum(lt, labels, mats, idx, gp)


def emit_splitting(s: SplittingDatum) -> dict:
    return {
        "closure_algebra": emit_algebra(s.ltilde),
        "automorphisms": [{"label": lab, "matrix": emit_matrix(m)} for lab, m in zip(s.labels, s.matrices)],
        "group_table": [[s.labels[k] for k in row] for row in s.table],
        "g_prime": [s.labels[i] for i in s.g_prime_idx],
    }


def parse_module(field: Field, block: dict) -> ModuleAlgebraDatum:
    if not isinstance(block, dict):
        raise InputError("module_algebra must be an object")
    h = parse_hopf(field, block.get("hopf"))
    l = parse_algebra(field, block.get("algebra"), "algebra")
    act = block.get("action")
    if not isinstance(act, list) or len(act) != h.dim:
        raise DimensionError("action must list one block per basis vector of H")
    cols = []
    for i, blk in enumerate(act):
        if not isinstance(blk, list) or len(blk) != l.dim:
            raise DimensionError(f"action[{i}] must list one vector per basis vector of L")
        for x, v in enumerate(blk):
            cols.append(_scalars(field, v, l.dim, f"action[{i}][{x}]"))
    return ModuleAlgebraDatum(h, l, Matrix.from_columns(field, cols, l.dim))


def emit_module(d: ModuleAlgebraDatum) -> dict:
    return d.to_json()


def parse_tower(field: Field, block: dict):
    from .towers import TowerDatum

    if not isinstance(block, dict):
        raise InputError("tower must be an object")
    depth = block.get("depth")
    levels = block.get("levels")
    maps = block.get("maps")
    if not isinstance(depth, int) or depth < 1 or not isinstance(levels, list) or len(levels) != depth:
        raise InputError("tower needs depth >= 1 and one level per depth")
    if not isinstance(maps, list) or len(maps) != depth - 1:
        raise InputError("tower needs depth - 1 maps")
    lv = [parse_splitting(field, b) for b in levels]
    mp = []
    for k, m in enumerate(maps):
        if not isinstance(m, dict):
            raise InputError("each tower map must be an object")
        emb = parse_matrix(field, m.get("embedding"), lv[k + 1].ltilde.dim, lv[k].ltilde.dim, f"maps[{k}].embedding")
        gm = m.get("group_map")
        if not isinstance(gm, dict):
            raise InputError(f"maps[{k}].group_map must map labels to labels")
        try:
            gmap = [lv[k].labels.index(gm[lab]) for lab in lv[k + 1].labels]
        except (KeyError, ValueError) as exc:
            raise InputError(f"maps[{k}].group_map is incomplete or names an unknown label") from exc
        mp.append((emb, gmap))
    return TowerDatum(lv, mp)


def emit_tower(t) -> dict:
    return {
        "depth": t.depth,
        "levels": [emit_splitting(s) for s in t.levels],
        "maps": [
            {
                "embedding": emit_matrix(emb),
                "group_map": {t.levels[k + 1].labels[i]: t.levels[k].labels[j] for i, j in enumerate(gmap)},
            }
            for k, (emb, gmap) in enumerate(t.maps)
        ],
    }


_PARSERS = {"splitting_datum": parse_splitting, "module_algebra": parse_module, "tower": parse_tower}
_EMITTERS = {"splitting_datum": emit_splitting, "module_algebra": emit_module, "tower": emit_tower}


def emit_payload(kind: str, payload) -> dict:
    return _EMITTERS[kind](payload)


def parse_fixture(raw: dict) -> Fixture:
    if not isinstance(raw, dict):
        raise InputError("fixture must be a JSON object")
    header = raw.get("header")
    if not isinstance(header, dict):
        raise InputError("fixture lacks a header")
    if header.get("format_version") != FORMAT_VERSION:
        raise InputError(f"unsupported format_version {header.get('format_version')!r}")
    if header.get("tensor_index_convention") != TENSOR_INDEX_CONVENTION:
        raise InputError("fixture declares a different tensor index convention")
    field = field_from_name(str(header.get("field", "")))
    kinds = [k for k in PAYLOAD_KINDS if k in raw]
    if len(kinds) != 1:
        raise InputError("fixture needs exactly one of splitting_datum, module_algebra, tower")
    kind = kinds[0]
    extra = set(raw) - {"header", "metadata", kind}
    if extra:
        raise InputError(f"unknown top-level keys {sorted(extra)}")
    payload = _PARSERS[kind](field, raw[kind])
    return Fixture(header, raw.get("metadata") or {}, kind, payload, field)


def load_fixture(path: str | Path) -> Fixture:
    text = str(path)
    if text.startswith("builtin:"):
        return builtin_fixture(text[len("builtin:"):])
    p = Path(path)
    try:
        raw = json.loads(p.read_text())
    except FileNotFoundError as exc:
        raise InputError(f"fixture file not found: {p}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"fixture is not valid JSON: {exc}") from exc
    return parse_fixture(raw)


def dump_fixture(raw: dict) -> str:
    """Stable JSON text: containers indented, arrays of scalars kept on one line."""
    return _dump(raw, 0) + "\n"


def _dump(x, level: int) -> str:
    pad = "  " * (level + 1)
    end = "  " * level
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, level + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(x, list):
        if all(not isinstance(v, (list, dict)) for v in x):
            return json.dumps(x)
        if all(isinstance(v, list) and all(not isinstance(w, (list, dict)) for w in v) for v in x) and len(x) <= 8:
            return "[" + ", ".join(json.dumps(v) for v in x) + "]"
        return "[\n" + ",\n".join(pad + _dump(v, level + 1) for v in x) + "\n" + end + "]"
    return json.dumps(x)


# ---------------------------------------------------------------------------
# generators and builtins
# ---------------------------------------------------------------------------


def _frob_label(k: int) -> str:
    return f"frob^{k}"


def gf_splitting_block(p: int, n: int) -> tuple[dict, list[int]]:
    alg, poly = gf_algebra(p, n)
    mats = frobenius_powers(alg)
    block = {
        "closure_algebra": emit_algebra(alg),
        "automorphisms": [{"label": _frob_label(k), "matrix": emit_matrix(m)} for k, m in enumerate(mats)],
        "group_table": [[_frob_label((i + j) % n) for j in range(n)] for i in range(n)],
        "g_prime": [_frob_label(0)],
    }
    return block, poly


def _poly_text(poly: list[int]) -> str:
    terms = []
    for k in range(len(poly) - 1, -1, -1):
        c = poly[k]
        if not c:
            continue
        mono = "1" if k == 0 else ("x" if k == 1 else f"x^{k}")
        terms.append(mono if c == 1 and k else f"{c}*{mono}" if k else str(c))
    return " + ".join(terms)


def gen_gf_splitting_datum(p: int, n: int) -> dict:
    """Fixture for ``GF(p^n)/GF(p)`` with ``G = C_n`` generated by Frobenius and ``G' = 1``."""
    block, poly = gf_splitting_block(p, n)
    return {
        "header": make_header(GF(p)),
        "metadata": {"name": f"gf-{p}-{n}", "description": f"GF({p}^{n}) = GF({p})[x]/({_poly_text(poly)}), Frobenius group"},
        "splitting_datum": block,
    }


def gen_gf_tower(p: int, degrees: list[int]) -> dict:
    """Tower of fields ``GF(p^{n_1}) < ... < GF(p^{n_d})`` with their Frobenius groups.

    Each degree must divide the next; ``GF(p^{n_k})`` embeds by sending ``x`` to
    the lexicographically least root of its defining polynomial.
    """
    for a, b in zip(degrees, degrees[1:]):
        if b % a:
            raise InputError("tower degrees must divide one another")
    levels = []
    polys = []
    algs = []
    for n in degrees:
        block, poly = gf_splitting_block(p, n)
        levels.append(block)
        polys.append(poly)
        algs.append(gf_algebra(p, n)[0])
    maps = []
    for k in range(len(degrees) - 1):
        root = smallest_root(algs[k + 1], polys[k])
        emb = embedding_matrix(algs[k + 1], root, degrees[k])
        gm = {_frob_label(j): _frob_label(j % degrees[k]) for j in range(degrees[k + 1])}
        maps.append({"embedding": emit_matrix(emb), "group_map": gm})
    name = f"gf-{p}-tower-" + "-".join(str(n) for n in degrees)
    return {
        "header": make_header(GF(p)),
        "metadata": {"name": name, "description": f"tower of GF({p}^n) for n in {degrees}, Frobenius groups"},
        "tower": {"depth": len(degrees), "levels": levels, "maps": maps},
    }


def builtin_names() -> list[str]:
    return sorted(BUILTIN_DATA) + ["gf-P-N", "gf2-tower-D"]


def builtin_raw(name: str) -> dict:
    if name in BUILTIN_DATA:
        text = resources.files("hopfgalois").joinpath("data").joinpath(BUILTIN_DATA[name]).read_text()
        return json.loads(text)
    parts = name.split("-")
    try:
        if len(parts) == 3 and parts[0] == "gf":
            return gen_gf_splitting_datum(int(parts[1]), int(parts[2]))
        if len(parts) == 3 and parts[0] == "gf2" and parts[1] == "tower":
            depth = int(parts[2])
            return gen_gf_tower(2, [2**k for k in range(1, depth + 1)])
    except ValueError as exc:
        raise InputError(f"bad builtin fixture name {name!r}") from exc
    raise InputError(f"unknown builtin fixture {name!r}; known: {builtin_names()}")


def builtin_fixture(name: str) -> Fixture:
    return parse_fixture(builtin_raw(name))

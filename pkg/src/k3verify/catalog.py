"""Loader for the bundled group and curve catalogs.

Group documents start with a ``name`` line; see ``data/groups.cat`` for the
format.  In strict mode every group is generated at load time and refused
when its orders disagree with the ``expect`` line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from .cyclo import parse_cyclo
from .matgroup import (GroupError, MatrixGroup, ProjectiveMap, Relation, generate, mat_det,
                       mat_scale, matrix_order, parse_relation, to_matrix, verify_relations)
from .polyring import Grading, MultiPoly, parse_poly

AMBIENTS = {"P2": (3, None), "P3": (4, None), "P1xP1": (4, 2)}


class CatalogError(ValueError):
    pass


@dataclass
class GenSpec:
    name: str
    rows: list                 # list of lists of expression strings
    scale: Optional[str] = None
    swap: bool = False


@dataclass
class GroupSpec:
    name: str
    ambient: str
    conductor: int
    generators: list = field(default_factory=list)
    matrices: dict = field(default_factory=dict)     # auxiliary lifts: name -> rows
    relations: list = field(default_factory=list)
    expected_order: Optional[int] = None
    expected_linear_order: Optional[int] = None
    source: str = ""

    @property
    def dim(self) -> int:
        return AMBIENTS[self.ambient][0]

    @property
    def split(self) -> Optional[int]:
        return AMBIENTS[self.ambient][1]

    def matrix(self, rows, scale=None):
        m = to_matrix([[parse_cyclo(e, self.conductor) for e in r] for r in rows], self.conductor)
        if scale is not None:
            m = mat_scale(m, parse_cyclo(scale, self.conductor))
        return m

    def maps(self) -> list:
        out = []
        for g in self.generators:
            m = self.matrix(g.rows, g.scale)
            if len(m) != self.dim or any(len(r) != self.dim for r in m):
                raise CatalogError(f"{self.name}: generator {g.name} is not {self.dim}x{self.dim}")
            if mat_det(m).is_zero():
                raise CatalogError(f"{self.name}: generator {g.name} has zero determinant")
            if matrix_order(m) is None:
                raise CatalogError(f"{self.name}: generator {g.name} has no finite linear order")
            out.append(ProjectiveMap(m, self.split, g.name, block_swap=g.swap if self.split else None))
        return out

    def aux_matrices(self) -> dict:
        return {k: self.matrix(rows) for k, rows in self.matrices.items()}


@dataclass
class CurveSpec:
    name: str
    nvars: int
    grading: Grading
    text: str

    def poly(self) -> MultiPoly:
        return parse_poly(self.text, self.nvars, self.grading)


# -- parsing ----------------------------------------------------------------------------------------

def _split_rows(text: str) -> list:
    """'[[a, b], [c, d]]' -> [['a', 'b'], ['c', 'd']], respecting parentheses."""
    text = text.strip()
    if not (text.startswith("[[") and text.endswith("]]")):
        raise CatalogError(f"matrix literal must look like [[...], ...]: {text!r}")
    inner = text[1:-1]
    rows, depth, cur, row = [], 0, [], None
    for ch in inner:
        if ch == "[" and depth == 0:
            row, cur = [], []
        elif ch == "]" and depth == 0:
            row.append("".join(cur).strip())
            rows.append(row)
            row = None
        elif ch == "," and depth == 0 and row is not None:
            row.append("".join(cur).strip())
            cur = []
        else:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if row is not None:
                cur.append(ch)
    if any(not e for r in rows for e in r):
        raise CatalogError(f"empty matrix entry in {text!r}")
    return rows


_GEN = re.compile(r"^(gen|matrix)\s+(\S+)\s*=\s*(.*?)\s*(swap)?$")


def _parse_gen(line: str):
    m = _GEN.match(line)
    if not m:
        raise CatalogError(f"malformed generator line: {line!r}")
    kind, name, body, swap = m.groups()
    scale = None
    k = body.find("[[")
    if k < 0:
        raise CatalogError(f"missing matrix in {line!r}")
    if k > 0:
        head = body[:k].strip()
        if not head.endswith("*"):
            raise CatalogError(f"scalar prefactor must end with '*': {line!r}")
        scale = head[:-1].strip()
    return kind, GenSpec(name, _split_rows(body[k:]), scale, bool(swap))


def parse_groups(text: str) -> list:
    specs: list = []
    cur: Optional[GroupSpec] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "name":
                cur = GroupSpec(rest, "P2", 1)
                specs.append(cur)
                continue
            if cur is None:
                raise CatalogError("entry before the first 'name' line")
            if key == "ambient":
                if rest not in AMBIENTS:
                    raise CatalogError(f"unknown ambient {rest!r}")
                cur.ambient = rest
            elif key == "conductor":
                cur.conductor = int(rest)
            elif key == "source":
                cur.source = rest
            elif key in ("gen", "matrix"):
                kind, g = _parse_gen(line)
                if kind == "gen":
                    cur.generators.append(g)
                else:
                    cur.matrices[g.name] = g.rows
            elif key == "relation":
                cur.relations.append(parse_relation(rest))
            elif key == "expect":
                m = re.fullmatch(r"order\s+(\d+)(?:\s+linear\s+(\d+))?", rest)
                if not m:
                    raise CatalogError(f"malformed expect line {rest!r}")
                cur.expected_order = int(m.group(1))
                cur.expected_linear_order = int(m.group(2)) if m.group(2) else None
            else:
                raise CatalogError(f"unknown key {key!r}")
        except (CatalogError, GroupError, ValueError) as e:
            raise CatalogError(f"line {lineno}: {e}") from e
    return specs


_CURVE = re.compile(r"^curve\s+(\S+)\s+vars\s+(\d+)\s+(?:degree\s+(\d+)|bidegree\s+(\d+)\s*,\s*(\d+))\s*=\s*(.+)$")


def parse_curves(text: str) -> dict:
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _CURVE.match(line)
        if not m:
            raise CatalogError(f"line {lineno}: malformed curve entry")
        name, n, d, a, b, poly = m.groups()
        grading = Grading.total(int(d)) if d else Grading.bi(int(a), int(b), 2)
        spec = CurveSpec(name, int(n), grading, poly.strip())
        try:
            spec.poly()
        except ValueError as e:
            raise CatalogError(f"line {lineno}: {e}") from e
        out[name] = spec
    return out


# -- loading --------------------------------------------------------------------------------------

@dataclass
class Catalog:
    groups: dict                  # name -> GroupSpec
    curves: dict                  # name -> CurveSpec
    strict: bool = True
    _built: dict = field(default_factory=dict)

    def group(self, name: str) -> MatrixGroup:
        if name not in self.groups:
            raise CatalogError(f"unknown group {name!r}")
        if name not in self._built:
            self._built[name] = build_group(self.groups[name], self.strict)
        return self._built[name]

    def curve(self, name: str) -> MultiPoly:
        if name not in self.curves:
            raise CatalogError(f"unknown curve {name!r}")
        return self.curves[name].poly()


def build_group(spec: GroupSpec, strict: bool = True) -> MatrixGroup:
    G = generate(spec.maps(), name=spec.name)
    if strict:
        if spec.expected_order is not None and G.order != spec.expected_order:
            raise CatalogError(f"{spec.name}: generated order {G.order}, expected {spec.expected_order}")
        if spec.expected_linear_order is not None and G.linear_order != spec.expected_linear_order:
            raise CatalogError(f"{spec.name}: linear order {G.linear_order}, "
                               f"expected {spec.expected_linear_order}")
    return G


def check_relations(spec: GroupSpec, G: MatrixGroup) -> list:
    """[(relation, holds)] for every relation listed in the catalog entry."""
    aux = spec.aux_matrices()
    return [(r, verify_relations(G, [r], aux)) for r in spec.relations]


def _read_data(name: str) -> str:
    return resources.files("k3verify").joinpath("data", name).read_text(encoding="utf-8")


def load_catalog(path=None, strict: bool = True, eager: bool = False) -> Catalog:
    """Load groups (and curves) from a file or directory, or the bundled data.

    A directory is expected to hold ``groups.cat`` and optionally
    ``curves.cat``; a single file is read as a group catalog.
    """
    if path is None:
        groups_text, curves_text = _read_data("groups.cat"), _read_data("curves.cat")
    else:
        p = Path(path)
        if p.is_dir():
            groups_text = (p / "groups.cat").read_text(encoding="utf-8")
            cp = p / "curves.cat"
            curves_text = cp.read_text(encoding="utf-8") if cp.exists() else ""
        else:
            groups_text, curves_text = p.read_text(encoding="utf-8"), ""
    specs = parse_groups(groups_text)
    cat = Catalog({s.name: s for s in specs}, parse_curves(curves_text), strict)
    for s in specs:
        s.maps()              # parse errors and infinite-order lifts surface at load time
        if eager:
            cat.group(s.name)
    return cat


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return load_catalog()


__all__ = ["AMBIENTS", "Catalog", "CatalogError", "CurveSpec", "GenSpec", "GroupSpec", "Relation",
           "build_group", "check_relations", "default_catalog", "load_catalog", "parse_curves",
           "parse_groups"]

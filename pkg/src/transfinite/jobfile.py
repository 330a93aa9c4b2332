"""
Loading job files.

A job file is TOML.  The ``[group]`` table describes either a permutation
group (``degree`` and ``generators``) or, with ``kind = "tower"``, a tower
group (``bound`` plus ``default``, ``cycle`` and ``pieces`` labels).
Each ``[[series]]`` entry lists one subgroup per index:

* permutation series use ``subgroups``, whose items are generator lists or
  the words ``"trivial"`` / ``"whole"``;
* tower series use either ``supports`` (interval literals, one per index)
  or ``moves`` (block moves applied to the identity bijection), optionally
  with ``entries`` overriding the support at named indices.

An optional ``[butterfly]`` table names ``big1``, ``small1``, ``big2`` and
``small2`` for the Zassenhaus verb.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import tomli

from . import permgroup as pg
from .chains import TransfiniteSeries
from .errors import DomainError, ParseError
from .ordinal import format_ordinal, parse as parse_ordinal
from .tower import (IntervalSet, PositionBijection, TowerGroup, parse_intervals,
                    series_from_bijection)


class JobError(Exception):
    """Malformed job file; the message names where the problem is."""


@dataclass
class Job:
    path: str
    kind: str
    group: object
    series: list = field(default_factory=list)
    butterfly: dict | None = None

    def need_series(self, count: int, verb: str):
        if len(self.series) < count:
            raise JobError(f"{self.path}: '{verb}' needs {count} [[series]] entries, found {len(self.series)}")
        return self.series[:count]


def _where(text: str, needle) -> str:
    """``line L, column C`` of the first occurrence of a value in the source."""
    if not isinstance(needle, str) or not needle:
        return ""
    k = text.find(needle)
    if k < 0:
        return ""
    line = text.count("\n", 0, k) + 1
    col = k - (text.rfind("\n", 0, k) + 1) + 1
    return f" (line {line}, column {col})"


class _Loader:
    def __init__(self, path: str, text: str):
        self.path = path
        self.text = text

    def fail(self, where: str, message: str, value=None):
        raise JobError(f"{self.path}: {where}: {message}{_where(self.text, value)}")

    def get(self, table: dict, key: str, where: str, kind=None, default=...):
        if key not in table:
            if default is ...:
                self.fail(where, f"missing key '{key}'")
            return default
        value = table[key]
        if kind is not None and not isinstance(value, kind):
            self.fail(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}")
        return value

    def ordinal(self, text, where):
        if isinstance(text, int) and not isinstance(text, bool):
            text = str(text)
        if not isinstance(text, str):
            self.fail(where, "expected an ordinal literal")
        try:
            return parse_ordinal(text)
        except ParseError as e:
            self.fail(where, str(e), text)

    def intervals(self, text, where) -> IntervalSet:
        if not isinstance(text, str):
            self.fail(where, "expected an interval literal such as \"[0,w)\"")
        try:
            return parse_intervals(text)
        except (ParseError, DomainError) as e:
            self.fail(where, str(e), text)

    # -- permutation groups ----------------------------------------------------

    def perm_group(self, spec, degree, where, ambient=None) -> pg.PermGroup:
        if spec == "trivial":
            return pg.trivial_group(degree)
        if spec == "whole" and ambient is not None:
            return ambient
        if isinstance(spec, str):
            spec = [spec]
        if not isinstance(spec, list):
            self.fail(where, "expected a list of generators, \"trivial\" or \"whole\"")
        gens = []
        for k, g in enumerate(spec):
            if not isinstance(g, str):
                self.fail(f"{where}[{k}]", "generators are cycle-notation strings")
            try:
                gens.append(pg.parse_perm(g, degree))
            except (ParseError, DomainError) as e:
                self.fail(f"{where}[{k}]", str(e), g)
        H = pg.generate(gens, degree)
        if ambient is not None and not H <= ambient:
            self.fail(where, "generators leave the declared group", spec[0] if spec else None)
        return H

    def permutation_job(self, doc, group_table) -> Job:
        degree = self.get(group_table, "degree", "group", int)
        if degree < 1:
            self.fail("group.degree", "degree must be positive")
        G = self.perm_group(self.get(group_table, "generators", "group", list), degree, "group.generators")
        job = Job(self.path, "permutation", G)
        for k, s in enumerate(self.series_tables(doc)):
            where = f"series[{k + 1}]"
            items = self.get(s, "subgroups", where, list)
            if not items:
                self.fail(f"{where}.subgroups", "a series needs at least one subgroup")
            chain = [self.perm_group(item, degree, f"{where}.subgroups[{a}]", G)
                     for a, item in enumerate(items, start=1)]
            job.series.append(TransfiniteSeries.finite(G, chain, name=s.get("name", f"series {k + 1}")))
        if "butterfly" in doc:
            b = self.get(doc, "butterfly", "document", dict)
            job.butterfly = {key: self.perm_group(self.get(b, key, "butterfly"), degree, f"butterfly.{key}", G)
                             for key in ("big1", "small1", "big2", "small2")}
        return job

    # -- tower groups ------------------------------------------------------------

    def tower_job(self, doc, group_table) -> Job:
        bound = self.ordinal(self.get(group_table, "bound", "group"), "group.bound")
        pieces = []
        for k, piece in enumerate(self.get(group_table, "pieces", "group", list, default=[])):
            where = f"group.pieces[{k + 1}]"
            if not isinstance(piece, dict):
                self.fail(where, "pieces are tables with 'support' and 'label'")
            pieces.append((self.intervals(self.get(piece, "support", where), f"{where}.support"),
                           self.get(piece, "label", where, str)))
        try:
            G = TowerGroup(bound, pieces, default=group_table.get("default"),
                           cycle=group_table.get("cycle"))
        except DomainError as e:
            self.fail("group", str(e))
        job = Job(self.path, "tower", G)
        for k, s in enumerate(self.series_tables(doc)):
            job.series.append(self.tower_series(G, s, f"series[{k + 1}]", s.get("name", f"series {k + 1}")))
        return job

    def tower_series(self, G, table, where, name) -> TransfiniteSeries:
        if "supports" in table:
            items = self.get(table, "supports", where, list)
            if not items:
                self.fail(f"{where}.supports", "a series needs at least one index")
            chain = [self.intervals(x, f"{where}.supports[{a}]") for a, x in enumerate(items, start=1)]
            return TransfiniteSeries.tower(G, len(chain), lambda a: chain[int(a) - 1], name=name)
        pi = PositionBijection.identity(G.bound)
        for k, move in enumerate(self.get(table, "moves", where, list, default=[])):
            mw = f"{where}.moves[{k + 1}]"
            if not isinstance(move, dict):
                self.fail(mw, "moves are tables with 'cut' and 'to'")
            cut = self.intervals(self.get(move, "cut", mw), f"{mw}.cut")
            if len(cut.intervals) != 1:
                self.fail(f"{mw}.cut", "cut a single interval of ranks", move.get("cut"))
            (lo, hi), = cut.intervals
            to = self.get(move, "to", mw, default="end")
            dest = None if to == "end" else self.ordinal(to, f"{mw}.to")
            try:
                pi = pi.moved(lo, hi, dest)
            except DomainError as e:
                self.fail(mw, str(e), move.get("cut"))
        series = series_from_bijection(G, pi, name=name)
        entries = self.get(table, "entries", where, dict, default={})
        if not entries:
            return series
        fixed = {}
        for key, value in entries.items():
            a = self.ordinal(key, f"{where}.entries")
            if not 1 <= a <= series.top:
                self.fail(f"{where}.entries", f"index {format_ordinal(a)} outside [1,{format_ordinal(series.top)}]", key)
            fixed[a] = self.intervals(value, f"{where}.entries.{key}")
        base = series.subgroup_at
        return TransfiniteSeries.tower(G, series.top, lambda a: fixed[a] if a in fixed else base(a),
                                       bijection=pi, name=name)

    def series_tables(self, doc):
        items = self.get(doc, "series", "document", list, default=[])
        for k, s in enumerate(items):
            if not isinstance(s, dict):
                self.fail(f"series[{k + 1}]", "each series is a [[series]] table")
        return items


def load_text(text: str, path: str = "<job>") -> Job:
    loader = _Loader(path, text)
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as e:
        raise JobError(f"{path}: {e}") from None
    group_table = loader.get(doc, "group", "document", dict)
    kind = group_table.get("kind", "permutation")
    if kind == "permutation":
        return loader.permutation_job(doc, group_table)
    if kind == "tower":
        return loader.tower_job(doc, group_table)
    loader.fail("group.kind", f"unknown group kind {kind!r}; use \"permutation\" or \"tower\"", kind)


def load(path) -> Job:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise JobError(f"{path}: cannot read job file ({e.strerror})") from None
    return load_text(text, str(path))


_LINE_COL = re.compile(r"line (\d+), column (\d+)")


def error_position(message: str):
    """``(line, column)`` mentioned in a job error, if any."""
    m = _LINE_COL.search(message)
    return (int(m.group(1)), int(m.group(2))) if m else None

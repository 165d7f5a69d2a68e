"""Replayable JSON witness certificates and experiment reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ..errors import HilbtreesError, ReplayDivergence, SchemaMismatch
from ..geometry import Hypersurface, Line, line_section, segre_coords
from ..hilbert import (IntersectionProfile, bigraded_cohomology, components_of,
                       linking_cohomology, profile)
from ..polyspace import BinaryForm, Form, RationalCurveParam
from ..trees import Forest, TreeCurve, TreeType

SCHEMA_VERSION = 1

WITNESS_SEMANTICS = (
    "Witness semantics: every computation is exact over F_p. A single configuration "
    "whose condition matrix has maximal rank certifies, by semicontinuity of rank, the "
    "same property for the generic configuration of its type over the algebraic closure "
    "of any field. A failed search is evidence of defectivity only when it reproduces "
    "across several primes."
)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def curve_to_dict(C) -> dict:
    if isinstance(C, RationalCurveParam):
        return {"kind": "rational", "degree": C.degree,
                "coords": [list(c.coeffs) for c in C.coords]}
    if isinstance(C, Forest):
        return {"kind": "forest", "trees": [curve_to_dict(T) for T in C.trees]}
    return {"kind": "tree", "tau": list(C.type.tau),
            "lines": [[list(r) for r in L.basis] for L in C.lines]}


def curve_from_dict(d: dict, p: int):
    kind = d["kind"]
    if kind == "rational":
        return RationalCurveParam(tuple(BinaryForm(tuple(c), p) for c in d["coords"]))
    if kind == "forest":
        return Forest(tuple(curve_from_dict(t, p) for t in d["trees"]))
    if kind == "tree":
        lines = [Line.through(tuple(a), tuple(b), p) for a, b in d["lines"]]
        return TreeCurve.from_lines(lines, TreeType(len(lines), tuple(d["tau"])))
    raise SchemaMismatch(f"unknown curve kind {kind!r}")


@dataclass
class WitnessCertificate:
    prime: int
    seed: int
    n: int
    W: Hypersurface
    curve: object
    profile: IntersectionProfile
    t_min: int
    t_max: int
    linking: dict | None = None
    meta: dict = field(default_factory=dict)
    created: str = field(default_factory=_now)
    schema_version: int = SCHEMA_VERSION
    # divisors read from a file, checked against recomputation on replay
    stored_sections: list | None = field(default=None, repr=False, compare=False)

    @property
    def verdict(self) -> str:
        return self.profile.verdict

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "semantics": WITNESS_SEMANTICS,
            "prime": self.prime,
            "seed": self.seed,
            "n": self.n,
            "hypersurface": {"degree": self.W.degree, "coeffs": list(self.W.form.coeffs)},
            "curve": curve_to_dict(self.curve),
            "t_min": self.t_min,
            "t_max": self.t_max,
            "sections": self.sections(),
            "profile": self.profile.to_dict(),
            "verdict": self.verdict,
            "linking": self.linking,
            "meta": self.meta,
            "created": self.created,
        }

    @classmethod
    def from_dict(cls, d: dict) -> WitnessCertificate:
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaMismatch(f"certificate schema {version!r}, this build reads {SCHEMA_VERSION}")
        p, n = d["prime"], d["n"]
        h = d["hypersurface"]
        W = Hypersurface(Form(n, h["degree"], tuple(h["coeffs"]), p))
        return cls(p, d["seed"], n, W, curve_from_dict(d["curve"], p),
                   IntersectionProfile.from_dict(d["profile"]), d["t_min"], d["t_max"],
                   d.get("linking"), d.get("meta", {}), d.get("created", ""), version,
                   d.get("sections"))

    def sections(self) -> list[list[int]]:
        """Divisor of f on each component (low to high coefficients), in curve order."""
        return [[int(c) for c in comp.divisor] for comp in components_of(self.W, self.curve)]

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path) -> WitnessCertificate:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def replay(self) -> str:
        """Recompute everything from the stored data; raise on any difference."""
        try:
            return self._replay()
        except ReplayDivergence:
            raise
        except HilbtreesError as exc:
            raise ReplayDivergence(f"recomputation failed: {exc}") from exc

    def _replay(self) -> str:
        stored = self.stored_sections
        if stored is not None and stored != self.sections():
            raise ReplayDivergence("section divisors differ from the stored ones")
        again = profile(self.W, self.curve, self.t_min, self.t_max)
        if again.to_dict() != self.profile.to_dict():
            diff = [(a.t, a.pair, b.pair) for a, b in zip(again.rows, self.profile.rows)
                    if a != b]
            raise ReplayDivergence(f"recomputed profile differs: {diff or 'shape'}")
        if self.linking:
            lk = self.linking
            pair = linking_cohomology(self.W, self.curve, lk["t"], lk["line_index"], lk["root"])
            if [pair.h0, pair.h1] != [lk["h0"], lk["h1"]]:
                raise ReplayDivergence("linking point cohomology differs")
            line = self.curve.lines[lk["line_index"]]
            if not (line.contains(lk["point"]) and self.W.contains(lk["point"])):
                raise ReplayDivergence("linking point is not on its line and W")
        if "bigraded" in self.meta:
            pts = [segre_coords(x) for L in self.curve.lines
                   for x, _ in line_section(L, self.W, want_points=True).points()]
            for cell in self.meta["bigraded"]:
                pair = bigraded_cohomology(pts, cell["a"], cell["b"], self.prime)
                if [pair.h0, pair.h1] != [cell["h0"], cell["h1"]]:
                    raise ReplayDivergence(f"bidegree ({cell['a']},{cell['b']}) differs")
        return again.verdict


def save_certificate(cert: WitnessCertificate, path) -> None:
    cert.save(path)


def load_certificate(path) -> WitnessCertificate:
    return WitnessCertificate.load(path)


def replay_certificate(path_or_cert) -> str:
    cert = path_or_cert if isinstance(path_or_cert, WitnessCertificate) else load_certificate(path_or_cert)
    return cert.replay()


@dataclass
class ExperimentReport:
    """Outcome of a sweep: one dict per cell, plus the certificates found."""

    name: str
    parameters: dict
    cells: list[dict] = field(default_factory=list)
    certificates: list[WitnessCertificate] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add_certificate(self, cert: WitnessCertificate) -> int:
        self.certificates.append(cert)
        return len(self.certificates) - 1

    @property
    def exhausted(self) -> list[dict]:
        return [c for c in self.cells if c.get("outcome") == "attempts exhausted"]

    def summary(self) -> dict:
        counts: dict[str, int] = {}
        for c in self.cells:
            counts[c.get("outcome", "?")] = counts.get(c.get("outcome", "?"), 0) + 1
        return {"cells": len(self.cells), "outcomes": counts}

    def to_dict(self) -> dict:
        return {
            "report": self.name,
            "semantics": WITNESS_SEMANTICS,
            "parameters": self.parameters,
            "summary": self.summary(),
            "notes": self.notes,
            "cells": self.cells,
            "certificates": [c.to_dict() for c in self.certificates],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, default=str)

    def to_csv(self) -> str:
        """One row per (cell parameters, t)."""
        out = io.StringIO()
        rows = []
        for cell in self.cells:
            base = {k: v for k, v in cell.items() if not isinstance(v, (list, dict))}
            per_t = cell.get("rows") or [{}]
            for r in per_t:
                rows.append({**base, **r})
        keys: list[str] = []
        for r in rows:
            keys.extend(k for k in r if k not in keys)
        w = csv.DictWriter(out, fieldnames=keys)
        w.writeheader()
        w.writerows(rows)
        return out.getvalue()

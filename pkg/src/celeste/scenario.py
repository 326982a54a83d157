"""Scenario files: a YAML document describing a tower, a divisor and a set.

Grammar (UTF-8 YAML; ``#`` starts a comment)::

    name: <text>                          # optional
    command: <command>                    # optional default for ``celeste run``
    base_fan:                             # or the name of a corpus fan, e.g. P2
      rank: <1|2|3>
      rays: [[a, b], ...]                 # primitive integer vectors
      cones: [[i, j], ...]                # maximal cones, 0-based ray indices
    subdivisions: [[a, b], ...]           # ordered new rays, or "auto"
    germs:                                # optional, named Newton supports
      f: [[3, 0], [0, 2]]
    divisor:                              # optional, default 0
      - {atom: "ray:(1,0)", coeff: m}
      - {atom: "germ:f", coeff: "2m+1"}
    set: ambient                          # or a list of atoms
    sets: [[...], [...]]                  # additivity-check only
    point: [i, j]                         # base maximal cone, ray indices
    levels: [i, j]                        # cov-check only

Atoms are written ``ray:(a,b)``, ``cone:((a,b),(c,d))``, ``germ:<name>`` or
``ambient``.  ``subdivisions: auto`` resolves the single declared germ by
inserting sums of adjacent rays until every facet normal is a ray.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

import yaml

from . import corpus
from .errors import CelesteError, ParseError, ValidationError
from .fan import Fan, make_cone, validate_fan
from .models import (AMBIENT, BoundaryAtom, ConstructibleSet, HypersurfaceAtom,
                     NewtonPolygon, OrbitAtom, ResolutionTower, SystemDivisor,
                     newton_resolution)
from .scalar import as_scalar, format_scalar, parse_scalar

COMMANDS = ("integrate", "cov-check", "zeta-global", "zeta-local", "stringy", "csm",
            "chern-numbers", "additivity-check", "local-value")

_KEYS = {"name", "command", "base_fan", "subdivisions", "germs", "divisor", "set",
         "sets", "point", "levels"}

_INT = re.compile(r"-?\d+")


@dataclass
class Scenario:
    name: str
    tower: ResolutionTower
    command: Optional[str] = None
    germs: dict = field(default_factory=dict)
    divisor: SystemDivisor = field(default_factory=SystemDivisor)
    set: Optional[ConstructibleSet] = None
    sets: tuple = ()
    point: Optional[tuple] = None
    levels: Optional[tuple] = None

    @property
    def base(self):
        return self.tower.base


# -- parsing ----------------------------------------------------------------

def _load(text):
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        problem = getattr(exc, "problem", None) or str(exc)
        if mark is not None:
            raise ParseError(problem, mark.line + 1, mark.column + 1) from None
        raise ParseError(problem) from None
    if not isinstance(data, dict):
        raise ParseError("a scenario must be a mapping", 1, 1)
    unknown = set(data) - _KEYS
    if unknown:
        raise ValidationError(f"unknown field(s): {', '.join(sorted(map(str, unknown)))}")
    return data


def _vector(x, what):
    if isinstance(x, str):
        x = [int(t) for t in _INT.findall(x)]
    if not isinstance(x, (list, tuple)) or not x or not all(isinstance(t, int) for t in x):
        raise ValidationError(f"{what}: expected an integer vector, got {x!r}")
    return tuple(x)


def parse_fan(data):
    """A Fan from a ``{rank, rays, cones}`` mapping or a corpus fan name."""
    if isinstance(data, str):
        makers = dict(corpus.SMOOTH_COMPLETE)
        makers["P(1,1,2)"] = corpus.weighted_plane_112
        makers["quadrant"] = lambda: corpus.QUADRANT
        if data not in makers:
            raise ValidationError(f"unknown corpus fan {data!r}")
        return makers[data]()
    if not isinstance(data, dict) or set(data) != {"rank", "rays", "cones"}:
        raise ValidationError("base_fan needs exactly the fields rank, rays, cones")
    rank = data["rank"]
    if rank not in (1, 2, 3):
        raise ValidationError(f"rank must be 1, 2 or 3, not {rank!r}")
    rays = [_vector(r, "ray") for r in data["rays"]]
    cones = []
    for c in data["cones"]:
        if not isinstance(c, list) or not all(isinstance(i, int) and 0 <= i < len(rays)
                                              for i in c):
            raise ValidationError(f"cone {c!r} has a bad ray index")
        cones.append(c)
    for r in rays:
        if len(r) != rank:
            raise ValidationError(f"ray {r} does not have length {rank}")
    fan = Fan.from_indices(rank, rays, cones)
    report = validate_fan(fan)
    if not report.ok:
        raise ValidationError("invalid fan: " + "; ".join(report.violations))
    return fan


def dump_fan(fan):
    """The ``{rank, rays, cones}`` mapping of ``fan``."""
    index = {r: i for i, r in enumerate(fan.rays)}
    return {"rank": fan.rank,
            "rays": [list(r) for r in fan.rays],
            "cones": [[index[r] for r in c] for c in fan.max_cones]}


def parse_atom(text, germs, tower):
    """One atom from its textual form."""
    text = str(text).strip()
    if text == "ambient":
        return AMBIENT
    kind, _, rest = text.partition(":")
    if kind == "ray":
        ray = _vector(rest, "ray atom")
        if not any(ray in f.rays for f in tower.levels):
            raise ValidationError(f"{text} is not a ray of the tower")
        return BoundaryAtom(ray)
    if kind == "cone":
        inner = re.findall(r"\(([-\d,\s]+)\)", rest)
        cone = make_cone(_vector(v, "cone atom") for v in inner)
        if not any(f.has_cone(cone) for f in tower.levels):
            raise ValidationError(f"{text} is not a cone of the tower")
        if len(cone) == 1:
            return BoundaryAtom(cone[0])
        return OrbitAtom(cone)
    if kind == "germ":
        if rest not in germs:
            raise ValidationError(f"undeclared germ {rest!r}")
        return germs[rest]
    raise ValidationError(f"cannot parse atom {text!r}")


def _set(data, germs, tower, what):
    if data == "ambient":
        return ConstructibleSet.ambient()
    if isinstance(data, str):
        data = [data]
    if not isinstance(data, list) or not data:
        raise ValidationError(f"{what}: expected 'ambient' or a nonempty atom list")
    return ConstructibleSet(parse_atom(a, germs, tower) for a in data)


def parse_scenario(text):
    """A :class:`Scenario` from YAML text; raises ParseError/ValidationError."""
    data = _load(text)
    if "base_fan" not in data:
        raise ValidationError("missing field base_fan")
    command = data.get("command")
    if command is not None and command not in COMMANDS:
        raise ValidationError(f"unknown command {command!r}")
    base = parse_fan(data["base_fan"])

    germs = {}
    for name, exps in (data.get("germs") or {}).items():
        try:
            poly = NewtonPolygon(frozenset(_vector(e, "exponent") for e in exps))
        except (ValueError, TypeError) as exc:
            raise ValidationError(f"germ {name}: {exc}") from None
        germs[str(name)] = HypersurfaceAtom(str(name), poly)

    subs = data.get("subdivisions") or []
    tower = ResolutionTower(base)
    if subs == "auto":
        if len(germs) != 1:
            raise ValidationError("subdivisions: auto needs exactly one germ")
        tower = newton_resolution(next(iter(germs.values())).polygon, tower)
    else:
        for v in subs:
            v = _vector(v, "subdivision")
            try:
                tower = tower.extend(v)
            except (CelesteError, ValueError) as exc:
                raise ValidationError(f"subdivision {v}: {exc}") from None

    terms = {}
    for item in data.get("divisor") or []:
        if not isinstance(item, dict) or set(item) != {"atom", "coeff"}:
            raise ValidationError(f"divisor entry {item!r} needs atom and coeff")
        atom = parse_atom(item["atom"], germs, tower)
        try:
            c = parse_scalar(str(item["coeff"]))
        except (ValueError, SyntaxError, TypeError) as exc:
            raise ValidationError(f"bad coefficient {item['coeff']!r}: {exc}") from None
        terms[atom] = terms.get(atom, as_scalar(0)) + c
    try:
        divisor = SystemDivisor(terms)
    except (TypeError, ValueError) as exc:
        raise ValidationError(str(exc)) from None

    S = _set(data["set"], germs, tower, "set") if "set" in data else None
    sets = tuple(_set(s, germs, tower, "sets") for s in data.get("sets") or ())

    point = None
    if data.get("point") is not None:
        idx = data["point"]
        if not isinstance(idx, list) or not all(isinstance(i, int) and 0 <= i < len(base.rays)
                                                for i in idx):
            raise ValidationError(f"point {idx!r} has a bad ray index")
        point = make_cone(base.rays[i] for i in idx)
        if point not in base.max_cones:
            raise ValidationError(f"point {idx!r} is not a maximal cone of the base")

    levels = None
    if data.get("levels") is not None:
        lv = data["levels"]
        if (not isinstance(lv, list) or len(lv) != 2
                or not all(isinstance(i, int) and 0 <= i <= tower.height for i in lv)):
            raise ValidationError(f"levels {lv!r} must be two tower levels")
        levels = tuple(lv)

    return Scenario(name=str(data.get("name", "")), tower=tower, command=command,
                    germs=germs, divisor=divisor, set=S, sets=sets, point=point,
                    levels=levels)


def load_scenario(path):
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


# -- serialization ----------------------------------------------------------

def _atom_text(atom):
    return str(atom)


def _set_data(S):
    if S.is_ambient:
        return "ambient"
    return sorted(_atom_text(a) for a in S.atoms)


def dump_scenario(sc):
    """YAML text that re-parses to a scenario equal to ``sc``."""
    base = sc.tower.base
    index = {r: i for i, r in enumerate(base.rays)}
    data = {"name": sc.name}
    if sc.command:
        data["command"] = sc.command
    data["base_fan"] = dump_fan(base)
    data["subdivisions"] = [list(v) for v in sc.tower.new_rays]
    if sc.germs:
        data["germs"] = {n: sorted(list(e) for e in g.polygon.exponents)
                         for n, g in sorted(sc.germs.items())}
    if sc.divisor.terms:
        data["divisor"] = [{"atom": _atom_text(a), "coeff": format_scalar(c)}
                           for a, c in sorted(sc.divisor.terms.items(), key=lambda t: str(t[0]))]
    if sc.set is not None:
        data["set"] = _set_data(sc.set)
    if sc.sets:
        data["sets"] = [_set_data(s) for s in sc.sets]
    if sc.point is not None:
        data["point"] = [index[r] for r in sc.point]
    if sc.levels is not None:
        data["levels"] = list(sc.levels)
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None)


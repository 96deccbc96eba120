"""Problem files and run configuration.

A problem file is UTF-8 JSON::

    {"ring": {"field": "q", "blocks": [["x0", "x1"], ["y0", "y1"]]},
     "ideal": ["x0^2", "x0*y1"],
     "module": {"type": "ideal-as-module", "relations": [], "power": 1},
     "task": {"n_max": 5, "seed": 3}}

Validation errors name the offending field, e.g. ``module.relations[1]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field, replace

from .errors import UserError
from .field import Field
from .asymptotics import power_module
from .modules import PresentedModule, quotient_module
from .ring import NOT_HOMOGENEOUS, Polynomial, Ring

MODULE_TYPES = ("quotient", "ideal-as-module", "power-times-quotient")


class ProblemError(UserError):
    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class RunConfig:
    field: str | None = None
    seed: int = 0
    n_max: int = 6
    window: int = 2
    n0_max: int = 8
    max_subset: int = 3
    fmt: str = "text"
    jobs: int = 1

    def merged(self, task: dict, overrides: dict) -> RunConfig:
        """Defaults, then the problem's task block, then explicit overrides."""
        cfg = self
        for source in (task, overrides):
            values = {k: v for k, v in source.items() if k in self.__dataclass_fields__ and v is not None}
            cfg = replace(cfg, **values)
        return cfg


@dataclass
class Problem:
    ring: Ring
    ideal: list = dc_field(default_factory=list)
    module_type: str = "quotient"
    relations: list = dc_field(default_factory=list)
    power: int = 1
    task: dict = dc_field(default_factory=dict)

    def module(self) -> PresentedModule:
        if self.module_type == "quotient":
            return quotient_module(self.ring, self.relations)
        if not self.ideal:
            raise ProblemError("ideal", f"required for module type {self.module_type}")
        n = self.power if self.module_type == "power-times-quotient" else 1
        return power_module(self.ring, self.ideal, n, self.relations)

    def describe(self) -> dict:
        return {
            "ring": self.ring.describe(),
            "ideal": [str(f) for f in self.ideal],
            "module": {"type": self.module_type, "relations": [str(f) for f in self.relations], "power": self.power},
        }


def _require(obj, key, where, kind):
    path = f"{where}.{key}" if where else key
    if key not in obj:
        raise ProblemError(path, "missing")
    if not isinstance(obj[key], kind):
        raise ProblemError(path, f"expected {kind.__name__}")
    return obj[key]


def _parse_list(ring: Ring, texts, where: str, allow_zero: bool) -> list:
    if not isinstance(texts, list):
        raise ProblemError(where, "expected a list of strings")
    out = []
    for i, t in enumerate(texts):
        here = f"{where}[{i}]"
        if not isinstance(t, str):
            raise ProblemError(here, "expected a string")
        try:
            f = ring.parse(t)
        except UserError as exc:
            raise ProblemError(here, str(exc)) from exc
        if f.is_zero():
            if allow_zero:
                continue
            raise ProblemError(here, "generator is zero")
        if f.multidegree() is NOT_HOMOGENEOUS:
            raise ProblemError(here, f"{t!r} is not multihomogeneous")
        out.append(f)
    return out


def problem_from_dict(data: dict, field_override: str | None = None) -> Problem:
    if not isinstance(data, dict):
        raise ProblemError("problem", "expected a JSON object")
    ring_data = _require(data, "ring", "", dict)
    blocks = _require(ring_data, "blocks", "ring", list)
    field_text = field_override or ring_data.get("field", "q")
    try:
        fld = Field.parse(str(field_text))
    except ValueError as exc:
        raise ProblemError("ring.field", str(exc)) from exc
    if not blocks or not all(isinstance(b, list) and b and all(isinstance(n, str) for n in b) for b in blocks):
        raise ProblemError("ring.blocks", "expected a nonempty list of nonempty lists of variable names")
    try:
        ring = Ring(tuple(tuple(b) for b in blocks), fld)
    except ValueError as exc:
        raise ProblemError("ring.blocks", str(exc)) from exc
    ideal = _parse_list(ring, data.get("ideal", []), "ideal", allow_zero=False)
    mod = data.get("module", {"type": "quotient", "relations": []})
    if not isinstance(mod, dict):
        raise ProblemError("module", "expected an object")
    mtype = mod.get("type", "quotient")
    if mtype not in MODULE_TYPES:
        raise ProblemError("module.type", f"expected one of {', '.join(MODULE_TYPES)}")
    relations = _parse_list(ring, mod.get("relations", []), "module.relations", allow_zero=True)
    power = mod.get("power", 1)
    if not isinstance(power, int) or isinstance(power, bool) or power < 1:
        raise ProblemError("module.power", "expected a positive integer")
    task = data.get("task", {})
    if not isinstance(task, dict):
        raise ProblemError("task", "expected an object")
    return Problem(ring, ideal, mtype, relations, power, dict(task))


def load_problem(path: str, field_override: str | None = None) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ProblemError("input", f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemError("input", f"invalid JSON: {exc.msg} (line {exc.lineno})") from exc
    return problem_from_dict(data, field_override)


def parse_sequence(ring: Ring, text, where: str = "sequence") -> list:
    """Comma separated polynomials (or a list of strings)."""
    items = [s.strip() for s in text.split(",")] if isinstance(text, str) else list(text)
    seq = _parse_list(ring, items, where, allow_zero=False)
    if not seq:
        raise ProblemError(where, "empty sequence")
    return seq


def polys_as_dicts(polys) -> list:
    return [f.terms if isinstance(f, Polynomial) else dict(f) for f in polys]

"""JSON workspaces: named algebras, groups, extensions, modules, partial
actions, corings and comodules loaded from one document.

Objects are built lazily and memoized.  With ``validate=True`` (the default)
``load`` builds every object and runs its checker, so a returned workspace is
fully valid; ``check_all`` instead collects violations without raising.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from . import exactla as la
from .algmod import Algebra, Module, check_algebra, check_algebra_map, check_module, free_module
from .comodule import CoactionSpace, Comodule, check_comodule, end_C_algebra
from .coring import Coring, check_coring, coaction_from_grouplike, sweedler_coring, sweedler_unit, trivial_coring
from .descent import induced_comodule
from .errors import AxiomError, CoringError, DimensionMismatch, NotPrime
from .groups import FiniteGroup
from .partial import PartialAction, canonical_comodule, check_partial_action, partial_action_coring

KINDS = ("algebras", "groups", "extensions", "modules", "partial_actions", "corings", "comodules")


class WorkspaceError(CoringError):
    """Input problems that are neither mathematical nor resource failures."""


class ParseError(WorkspaceError):
    pass


class SchemaError(WorkspaceError):
    pass


class UnknownObject(WorkspaceError):
    pass


@lru_cache(maxsize=1)
def schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("schema.json").read_text())


def corpus_dir() -> Path:
    return Path(str(resources.files(__package__).joinpath("corpus")))


def corpus_files() -> list[Path]:
    return sorted(corpus_dir().glob("*.json"))


def resolve_path(spec: str | Path) -> Path:
    """A file path, or the name of a bundled corpus file (``swap_c2``)."""
    path = Path(spec)
    if path.is_file():
        return path
    bundled = corpus_dir() / (path.name if path.suffix == ".json" else f"{path.name}.json")
    if bundled.is_file():
        return bundled
    raise ParseError(f"no workspace file {str(spec)!r} (and no bundled example of that name)")


@dataclass
class Workspace:
    doc: dict
    source: str = ""
    _built: dict[str, Any] = field(default_factory=dict, repr=False)
    _building: set[str] = field(default_factory=set, repr=False)

    def __post_init__(self):
        seen: dict[str, str] = {}
        for kind in KINDS:
            for name in self.doc.get(kind, {}):
                if name in seen:
                    raise SchemaError(f"name {name!r} is used by both {seen[name]} and {kind}")
                seen[name] = kind
        self.kinds = seen

    @property
    def cap(self) -> int | None:
        return self.doc.get("caps", {}).get("enumeration")

    def names(self, kind: str | None = None) -> list[str]:
        if kind is None:
            return [n for k in KINDS for n in self.doc.get(k, {})]
        return list(self.doc.get(kind, {}))

    def kind_of(self, name: str) -> str:
        if name not in self.kinds:
            raise UnknownObject(f"no object named {name!r} in {self.source or 'workspace'}")
        return self.kinds[name]

    def pick(self, kind: str, name: str | None = None) -> str:
        """``name`` if it has the given kind, else the unique object of that kind."""
        if name is not None:
            if self.kind_of(name) != kind:
                raise UnknownObject(f"{name!r} is a {self.kinds[name][:-1]}, expected one of {kind}")
            return name
        options = self.names(kind)
        if len(options) != 1:
            raise UnknownObject(f"name one of the {kind}: {options}")
        return options[0]

    def get(self, name: str) -> Any:
        kind = self.kind_of(name)
        if name in self._built:
            return self._built[name]
        if name in self._building:
            raise SchemaError(f"{name!r} refers to itself")
        self._building.add(name)
        try:
            obj = getattr(self, f"_build_{kind}")(name, self.doc[kind][name])
        except (DimensionMismatch, NotPrime, ValueError, IndexError) as exc:
            if isinstance(exc, AxiomError):
                raise
            raise AxiomError(name, [f"malformed data: {exc}"]) from exc
        finally:
            self._building.discard(name)
        self._built[name] = obj
        return obj

    def ref(self, name: str, kind: str, owner: str) -> Any:
        if name not in self.kinds:
            raise UnknownObject(f"{owner!r} refers to unknown object {name!r}")
        if self.kinds[name] != kind:
            raise SchemaError(f"{owner!r} refers to {name!r}, which is not one of the {kind}")
        return self.get(name)

    # --- builders -----------------------------------------------------------

    def _build_algebras(self, name, d):
        a = Algebra(d["p"], d["mul"], d["one"], name)
        if a.dim != d["dim"]:
            raise DimensionMismatch(f"dim {d['dim']} but unit has {a.dim} coordinates")
        return a

    def _build_groups(self, name, d):
        table = np.asarray(d["table"], dtype=np.int64)
        if table.ndim != 2:
            raise DimensionMismatch("Cayley table must be square")
        return FiniteGroup(table, d.get("identity", 0))

    def _build_extensions(self, name, d):
        b = self.ref(d["source"], "algebras", name)
        a = self.ref(d["target"], "algebras", name)
        phi = la.fp(d["map"], a.p)
        if phi.shape != (b.dim, a.dim):
            raise DimensionMismatch(f"map of shape {phi.shape}, expected {(b.dim, a.dim)}")
        return b, a, phi

    def _build_modules(self, name, d):
        a = self.ref(d["algebra"], "algebras", name)
        mats = np.asarray(d["action"], dtype=np.int64).reshape(a.dim, d["dim"], d["dim"])
        if d.get("side", "right") == "left":
            return Module(a.p, d["dim"], left=a, lmats=mats, name=name)
        return Module(a.p, d["dim"], right=a, rmats=mats, name=name)

    def _build_partial_actions(self, name, d):
        g = self.ref(d["group"], "groups", name)
        a = self.ref(d["algebra"], "algebras", name)
        if len(d["alphas"]) != g.order or len(d["idempotents"]) != g.order:
            raise DimensionMismatch(f"need one idempotent and one alpha per group element ({g.order})")
        return PartialAction(g, a, d["idempotents"], [np.asarray(x, dtype=np.int64) for x in d["alphas"]], name)

    def _build_corings(self, name, d):
        kind = d["kind"]
        if kind == "trivial":
            c = trivial_coring(self.ref(d["algebra"], "algebras", name))
        elif kind == "sweedler":
            b, a, phi = self.ref(d["extension"], "extensions", name)
            c = sweedler_coring(b, a, phi)
        else:
            c = partial_action_coring(self.ref(d["action"], "partial_actions", name))
        return Coring(c.algebra, c.bimodule, c.coproduct, c.counit, name, c.presentation)

    def _build_comodules(self, name, d):
        kind = d["kind"]
        if kind == "grouplike":
            c = self.ref(d["coring"], "corings", name)
            g = d["grouplike"]
            if g == "canonical":
                return self._canonical(name, d["coring"], c)
            m = coaction_from_grouplike(c, la.fp(g, c.p))
            return Comodule(m.space, m.coaction, name)
        if kind == "induced":
            sigma = self.ref(d["sigma"], "comodules", name)
            _, sigma_b = end_C_algebra(sigma)
            n = free_module(sigma_b.module.left, d["rank"])
            m, _ = induced_comodule(n, sigma_b)
            return Comodule(m.space, m.coaction, name)
        c = self.ref(d["coring"], "corings", name)
        mod = self.ref(d["module"], "modules", name)
        if mod.right is None or not mod.right.same_as(c.algebra):
            raise DimensionMismatch(f"module {d['module']!r} is not a right module over the base of {d['coring']!r}")
        space = CoactionSpace(mod, c)
        coaction = la.fp(d["coaction"], c.p)
        if coaction.shape != (mod.dim, space.mc.dim):
            raise DimensionMismatch(f"coaction of shape {coaction.shape}, expected {(mod.dim, space.mc.dim)}")
        return Comodule(space, coaction, name)

    def _canonical(self, name, coring_name, c):
        """The distinguished grouplike of a constructed coring, as a comodule on ``A``."""
        spec = self.doc["corings"][coring_name]
        if spec["kind"] == "partial":
            pa = self.ref(spec["action"], "partial_actions", coring_name)
            m = canonical_comodule(pa, c)
        elif spec["kind"] == "sweedler":
            m = coaction_from_grouplike(c, sweedler_unit(c))
        else:
            m = coaction_from_grouplike(c, c.algebra.one)
        return Comodule(m.space, m.coaction, name)

    # --- validation ---------------------------------------------------------

    def violations(self, name: str) -> list[str]:
        """Axiom violations of one object (its dependencies must be valid)."""
        kind = self.kind_of(name)
        obj = self.get(name)
        if kind == "algebras":
            return check_algebra(obj)
        if kind == "groups":
            return obj.check()
        if kind == "extensions":
            return check_algebra_map(obj[2], obj[0], obj[1])
        if kind == "modules":
            return check_module(obj)
        if kind == "partial_actions":
            return check_partial_action(obj)
        if kind == "corings":
            return check_coring(obj)
        return check_comodule(obj)

    def dependencies(self, name: str) -> list[str]:
        d = self.doc[self.kind_of(name)][name]
        keys = ("source", "target", "algebra", "group", "extension", "action", "coring", "sigma", "module")
        return [d[k] for k in keys if isinstance(d.get(k), str)]

    def check_all(self, names: list[str] | None = None) -> dict[str, list[str]]:
        """Violations per object; objects over an invalid dependency are reported as such."""
        out: dict[str, list[str]] = {}

        def visit(n: str) -> list[str]:
            if n in out:
                return out[n]
            bad = [dep for dep in self.dependencies(n) if visit(dep)]
            if bad:
                out[n] = [f"depends on invalid object {dep!r}" for dep in bad]
                return out[n]
            try:
                out[n] = self.violations(n)
            except AxiomError as exc:
                out[n] = exc.violations
            return out[n]

        for n in names if names is not None else self.names():
            self.kind_of(n)
            visit(n)
        return out

    def validate(self) -> None:
        for n, problems in self.check_all().items():
            if problems:
                raise AxiomError(n, problems)


def parse(text: str, source: str = "") -> dict:
    try:
        doc = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source or 'input'}: {exc}") from exc
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise SchemaError(f"{source or 'input'} at {where}: {exc.message}") from exc
    return doc


def loads(text: str, source: str = "", validate: bool = True) -> Workspace:
    ws = Workspace(parse(text, source), source)
    if validate:
        ws.validate()
    return ws


def load(path: str | Path, validate: bool = True) -> Workspace:
    """Read, schema-check and (by default) axiom-check a workspace file.

    Raises ``ParseError``, ``SchemaError``, or ``AxiomError`` naming the
    object and the violated identities.
    """
    path = resolve_path(path)
    return loads(path.read_text(), path.name, validate)

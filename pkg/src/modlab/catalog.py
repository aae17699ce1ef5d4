"""Catalog files (JSON) naming rings, modules and submodules, plus report
serialization.

Catalog format (top-level keys, all integers, no floats):

{
  "rings":      {id: ring spec},
  "modules":    {id: module spec},
  "submodules": {id: {"module": module id, "generators": [...]}},
  "defaults":   {"caps": {...}, "suite": "all" | [check ids]}
}

Ring specs: {"kind": "zn", "n": 30} | {"kind": "product", "factors": [ring
spec | ring id, ...]} | {"kind": "trunc_poly", "p": 2, "vars": 3} |
{"kind": "localization", "base": ring spec | ring id,
 "mult_set_generators": [..]}.

Module specs: {"kind": "ring_as_module", "ring": ring id, "scalar_mode":
"ring"|"integer_image"} | {"kind": "free", "ring": .., "rank": k, ..} |
{"kind": "quotient", "base": module id | module spec, "kernel_generators":
[..]} | {"kind": "product", "factors": [module id | spec, ...]} |
{"kind": "cyclic_quotient", "ring": .., "ideal_generators": [..]} |
{"kind": "localization", "base": .., "mult_set_generators": [..]}.

Generators are element indices or coordinate lists (free/product modules).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from .errors import (CapExceededError, CatalogParseError,
                     CatalogReferenceError, SpecError)
from .modules import (DEFAULT_FULL_ENUM_SIZE, DEFAULT_HOM_CANDIDATE_CAP,
                      DEFAULT_HOM_WORK_CAP, DEFAULT_LATTICE_CAP,
                      DEFAULT_MODULE_CAP, FiniteModule, ModuleSpec,
                      ScalarMode, Submodule, build_module,
                      submodule_generated)
from .rings import (DEFAULT_IDEAL_LATTICE_CAP, DEFAULT_RING_CAP, FiniteRing,
                    RingSpec, build_ring)

SCHEMA_VERSION = 1

DEFAULT_CAPS = {
    "ring_size": DEFAULT_RING_CAP,
    "module_size": DEFAULT_MODULE_CAP,
    "ideal_lattice": DEFAULT_IDEAL_LATTICE_CAP,
    "submodule_lattice": DEFAULT_LATTICE_CAP,
    "full_enum_size": DEFAULT_FULL_ENUM_SIZE,
    "hom_candidates": DEFAULT_HOM_CANDIDATE_CAP,
    "hom_work": DEFAULT_HOM_WORK_CAP,
}


@dataclass
class Catalog:
    rings: dict[str, RingSpec] = field(default_factory=dict)
    modules: dict[str, ModuleSpec] = field(default_factory=dict)
    submodules: dict[str, tuple[str, tuple]] = field(default_factory=dict)
    caps: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_CAPS))
    suite: Union[str, list[str]] = "all"

    def digest(self) -> str:
        return hashlib.sha256(canonical_catalog_json(self).encode()).hexdigest()


# --------------------------------------------------------------------------- #
# Parsing
# --------------------------------------------------------------------------- #

def load_catalog(path: Union[str, Path]) -> Catalog:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogParseError(f"cannot read catalog {path}: {exc}") from exc
    return parse_catalog(text)


def parse_catalog(text: str) -> Catalog:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogParseError(
            f"catalog parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno, column=exc.colno) from exc
    if not isinstance(raw, dict):
        raise CatalogParseError("catalog top level must be an object")
    rings_raw = raw.get("rings", {})
    modules_raw = raw.get("modules", {})
    submodules_raw = raw.get("submodules", {})
    defaults = raw.get("defaults", {})
    catalog = Catalog()

    def ring_spec(node, seen: tuple = ()) -> RingSpec:
        if isinstance(node, str):
            if node in seen:
                raise CatalogReferenceError(f"cyclic ring reference {node!r}", reference=node)
            if node not in rings_raw:
                raise CatalogReferenceError(f"unknown ring id {node!r}", reference=node)
            return ring_spec(rings_raw[node], seen + (node,))
        if not isinstance(node, dict):
            raise CatalogParseError(f"ring spec must be an object or id, got {node!r}")
        kind = node.get("kind")
        if kind == "zn":
            return RingSpec(kind="zn", n=int(node["n"]))
        if kind == "product":
            return RingSpec(kind="product",
                            factors=tuple(ring_spec(f, seen) for f in node["factors"]))
        if kind == "trunc_poly":
            return RingSpec(kind="trunc_poly", p=int(node["p"]), vars=int(node["vars"]))
        if kind == "localization":
            return RingSpec(kind="localization", base=ring_spec(node["base"], seen),
                            mult_set_generators=tuple(int(g) for g in
                                                      node.get("mult_set_generators", [])))
        raise CatalogParseError(f"unknown ring kind {kind!r}")

    def gen_tuple(raw_gens) -> tuple:
        out = []
        for g in raw_gens:
            if isinstance(g, list):
                out.append(tuple(int(c) for c in g))
            else:
                out.append(int(g))
        return tuple(out)

    def module_spec(node, seen: tuple = ()) -> ModuleSpec:
        if isinstance(node, str):
            if node in seen:
                raise CatalogReferenceError(f"cyclic module reference {node!r}", reference=node)
            if node not in modules_raw:
                raise CatalogReferenceError(f"unknown module id {node!r}", reference=node)
            return module_spec(modules_raw[node], seen + (node,))
        if not isinstance(node, dict):
            raise CatalogParseError(f"module spec must be an object or id, got {node!r}")
        kind = node.get("kind")
        mode = ScalarMode(node.get("scalar_mode", "ring"))
        if kind == "ring_as_module":
            return ModuleSpec(kind=kind, ring=ring_spec(node["ring"]), scalar_mode=mode)
        if kind == "free":
            return ModuleSpec(kind=kind, ring=ring_spec(node["ring"]),
                              rank=int(node["rank"]), scalar_mode=mode)
        if kind == "quotient":
            return ModuleSpec(kind=kind, base=module_spec(node["base"], seen),
                              kernel_generators=gen_tuple(node.get("kernel_generators", [])),
                              scalar_mode=mode)
        if kind == "product":
            return ModuleSpec(kind=kind,
                              factors=tuple(module_spec(f, seen) for f in node["factors"]),
                              scalar_mode=mode)
        if kind == "cyclic_quotient":
            return ModuleSpec(kind=kind, ring=ring_spec(node["ring"]),
                              ideal_generators=tuple(int(g) for g in
                                                     node.get("ideal_generators", [])),
                              scalar_mode=mode)
        if kind == "localization":
            return ModuleSpec(kind=kind, base=module_spec(node["base"], seen),
                              mult_set_generators=tuple(int(g) for g in
                                                        node.get("mult_set_generators", [])),
                              scalar_mode=mode)
        raise CatalogParseError(f"unknown module kind {kind!r}")

    for rid in sorted(rings_raw):
        spec = ring_spec(rings_raw[rid])
        spec.validate()
        catalog.rings[rid] = spec
    for mid in sorted(modules_raw):
        catalog.modules[mid] = module_spec(modules_raw[mid])
    for sid in sorted(submodules_raw):
        node = submodules_raw[sid]
        if not isinstance(node, dict) or "module" not in node:
            raise CatalogParseError(f"submodule {sid!r} needs a 'module' field")
        mid = node["module"]
        if mid not in catalog.modules:
            raise CatalogReferenceError(
                f"submodule {sid!r} references unknown module {mid!r}", reference=mid)
        catalog.submodules[sid] = (mid, gen_tuple(node.get("generators", [])))
    caps = dict(DEFAULT_CAPS)
    for key, value in defaults.get("caps", {}).items():
        if key not in DEFAULT_CAPS:
            raise CatalogParseError(f"unknown cap {key!r}")
        caps[key] = int(value)
    catalog.caps = caps
    catalog.suite = defaults.get("suite", "all")
    return catalog


# --------------------------------------------------------------------------- #
# Canonical serialization
# --------------------------------------------------------------------------- #

def _ring_spec_json(spec: RingSpec) -> dict:
    if spec.kind == "zn":
        return {"kind": "zn", "n": spec.n}
    if spec.kind == "product":
        return {"kind": "product", "factors": [_ring_spec_json(f) for f in spec.factors]}
    if spec.kind == "trunc_poly":
        return {"kind": "trunc_poly", "p": spec.p, "vars": spec.vars}
    if spec.kind == "localization":
        return {"kind": "localization", "base": _ring_spec_json(spec.base),
                "mult_set_generators": list(spec.mult_set_generators)}
    raise SpecError(f"unknown ring kind {spec.kind!r}")


def _module_spec_json(spec: ModuleSpec) -> dict:
    out: dict = {"kind": spec.kind, "scalar_mode": spec.scalar_mode.value}
    if spec.kind in ("ring_as_module", "free", "cyclic_quotient"):
        out["ring"] = _ring_spec_json(spec.ring)
    if spec.kind == "free":
        out["rank"] = spec.rank
    if spec.kind == "quotient":
        out["base"] = _module_spec_json(spec.base)
        out["kernel_generators"] = [list(g) if isinstance(g, tuple) else g
                                    for g in spec.kernel_generators]
    if spec.kind == "product":
        out["factors"] = [_module_spec_json(f) for f in spec.factors]
    if spec.kind == "cyclic_quotient":
        out["ideal_generators"] = list(spec.ideal_generators)
    if spec.kind == "localization":
        out["base"] = _module_spec_json(spec.base)
        out["mult_set_generators"] = list(spec.mult_set_generators)
    return out


def canonical_catalog_json(catalog: Catalog) -> str:
    doc = {
        "rings": {rid: _ring_spec_json(s) for rid, s in sorted(catalog.rings.items())},
        "modules": {mid: _module_spec_json(s) for mid, s in sorted(catalog.modules.items())},
        "submodules": {
            sid: {"module": mid,
                  "generators": [list(g) if isinstance(g, tuple) else g for g in gens]}
            for sid, (mid, gens) in sorted(catalog.submodules.items())},
        "defaults": {"caps": dict(sorted(catalog.caps.items())), "suite": catalog.suite},
    }
    return json.dumps(doc, sort_keys=True, indent=1)


def write_catalog(catalog: Catalog, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_catalog_json(catalog) + "\n", encoding="utf-8")


def default_catalog() -> Catalog:
    text = resources.files("modlab").joinpath("data/default_catalog.json").read_text("utf-8")
    return parse_catalog(text)


# --------------------------------------------------------------------------- #
# Workspace: built objects over a catalog
# --------------------------------------------------------------------------- #

class Workspace:
    """Lazily builds and caches the rings, modules and submodules of a catalog."""

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self.caps = catalog.caps
        self._ring_cache: dict[RingSpec, FiniteRing] = {}
        self._rings: dict[str, FiniteRing] = {}
        self._modules: dict[str, FiniteModule] = {}
        self._submodules: dict[str, Submodule] = {}

    def ring(self, rid: str) -> FiniteRing:
        if rid not in self._rings:
            spec = self.catalog.rings.get(rid)
            if spec is None:
                raise CatalogReferenceError(f"unknown ring id {rid!r}", reference=rid)
            if spec not in self._ring_cache:
                self._ring_cache[spec] = build_ring(spec, self.caps["ring_size"])
            self._rings[rid] = self._ring_cache[spec]
        return self._rings[rid]

    def module(self, mid: str) -> FiniteModule:
        if mid not in self._modules:
            spec = self.catalog.modules.get(mid)
            if spec is None:
                raise CatalogReferenceError(f"unknown module id {mid!r}", reference=mid)
            self._modules[mid] = build_module(
                spec, cap=self.caps["module_size"], ring_cap=self.caps["ring_size"],
                ring_cache=self._ring_cache)
        return self._modules[mid]

    def submodule(self, sid: str) -> Submodule:
        if sid not in self._submodules:
            entry = self.catalog.submodules.get(sid)
            if entry is None:
                raise CatalogReferenceError(f"unknown submodule id {sid!r}", reference=sid)
            mid, gens = entry
            self._submodules[sid] = submodule_generated(self.module(mid), gens)
        return self._submodules[sid]

    def ring_ids(self) -> list[str]:
        return sorted(self.catalog.rings)

    def module_ids(self) -> list[str]:
        return sorted(self.catalog.modules)

    def named_submodules_of(self, mid: str) -> list[tuple[str, Submodule]]:
        out = []
        for sid in sorted(self.catalog.submodules):
            m, _ = self.catalog.submodules[sid]
            if m == mid:
                out.append((sid, self.submodule(sid)))
        return out

    def submodules_for(self, mid: str, proper_only: bool = True
                       ) -> tuple[list[tuple[str, Submodule]], bool]:
        """(named submodule list, lattice_complete).

        The full lattice when enumeration fits the caps, otherwise the
        catalog-named submodules of the module plus the zero submodule.
        """
        module = self.module(mid)
        try:
            lattice = module.submodule_lattice(
                lattice_cap=self.caps["submodule_lattice"],
                full_enum_size=self.caps["full_enum_size"])
        except CapExceededError:
            named = {sid: sub for sid, sub in self.named_submodules_of(mid)}
            zero = module.zero_submodule()
            if not any(sub.key() == zero.key() for sub in named.values()):
                named[f"{mid}.zero"] = zero
            items = sorted(named.items())
            if proper_only:
                items = [(n, s) for n, s in items if s.is_proper()]
            return items, False
        width = len(str(len(lattice)))
        items = [(f"lat{idx:0{width}d}", sub) for idx, sub in enumerate(lattice)]
        if proper_only:
            items = [(n, s) for n, s in items if s.is_proper()]
        return items, True


# --------------------------------------------------------------------------- #
# Report serialization
# --------------------------------------------------------------------------- #

def _jsonable(value):
    import numpy as np
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def classification_report_doc(report, catalog_digest: str = "") -> dict:
    """Canonical JSON document for a ClassificationReport."""
    from .classify import PredicateId, render_witness
    module = report.module
    N = report.submodule
    predicates = []
    for pid in PredicateId:
        v = report.verdicts[pid]
        entry = {
            "predicate": pid.value,
            "holds": bool(v.holds),
            "instances_scanned": int(v.instances_scanned),
        }
        if v.witness is not None:
            entry["witness"] = _jsonable(list(v.witness))
            entry["witness_rendered"] = render_witness(N, pid, v.witness)
        predicates.append(entry)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "catalog_digest": catalog_digest,
        "module": module.describe(),
        "submodule": {"generators": _jsonable(list(N.gens())), "size": N.size},
        "predicates": predicates,
        "quadruple_zeros": [_jsonable(list(q.as_tuple())) for q in report.quadruple_zeros],
        "quadruple_zeros_truncated": bool(report.quadruple_zeros_truncated),
        "colon_summaries": [
            {k: v for k, v in (("m", s.m), ("ideal_size", s.ideal_size),
                               ("weakly_one_abs", s.weakly_one_abs),
                               ("integer_generator", s.integer_generator))
             if v is not None}
            for s in report.colon_summaries],
    }
    return doc


def dump_report(doc: dict, path: Union[str, Path, None] = None,
                include_runtime: bool = True) -> str:
    """Serialize a report document deterministically; runtime fields are the
    only nondeterministic content and can be dropped for byte comparisons."""
    if not include_runtime:
        doc = _strip_runtime(doc)
    text = json.dumps(_jsonable(doc), sort_keys=True, indent=1)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text


def _strip_runtime(node):
    if isinstance(node, dict):
        return {k: _strip_runtime(v) for k, v in node.items() if k != "runtime_ms"}
    if isinstance(node, list):
        return [_strip_runtime(v) for v in node]
    return node

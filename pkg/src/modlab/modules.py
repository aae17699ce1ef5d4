"""Finite modules over finite rings, their submodules, and module operations.

A module is a dense pair of tables: addition (size x size) and the scalar
action (ring-size x size).  Every module carries a scalar-quantification
mode:

* ``RING``          -- "nonunit scalar" quantifiers range over the nonunits
                       of the carrier ring;
* ``INTEGER_IMAGE`` -- the carrier ring is Z_n but the module is read as a
                       module over the integers acting through Z_n.  Every
                       residue class mod n (n >= 2) contains nonunit
                       integers, so nonunit-scalar quantifiers range over
                       ALL residues.  Ideal quantifiers range over the
                       images of the proper ideals of the integers, which
                       are exactly all subgroups of Z_n (the full ring
                       included, as the image of e.g. (n+1)Z).

Size-1 (zero) modules are rejected everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import CapExceededError, SpecError
from .rings import (DEFAULT_RING_CAP, FiniteRing, Ideal, RingSpec, build_ring,
                    ideal_product)
from . import kernels

DEFAULT_MODULE_CAP = 1024
DEFAULT_LATTICE_CAP = 65536
DEFAULT_FULL_ENUM_SIZE = 256
DEFAULT_HOM_CANDIDATE_CAP = 100_000
# candidates * |M| * |R| bound for one hom-enumeration pair
DEFAULT_HOM_WORK_CAP = 200_000_000


class ScalarMode(str, Enum):
    RING = "ring"
    INTEGER_IMAGE = "integer_image"


# --------------------------------------------------------------------------- #
# Specifications
# --------------------------------------------------------------------------- #

@dataclass(frozen=True)
class ModuleSpec:
    """Constructor recipe for a finite module.

    kind is one of "ring_as_module", "free", "quotient", "product",
    "cyclic_quotient", "localization".
    """

    kind: str
    ring: Optional[RingSpec] = None
    rank: int = 0
    base: Optional["ModuleSpec"] = None
    kernel_generators: tuple = ()
    factors: tuple["ModuleSpec", ...] = ()
    ideal_generators: tuple[int, ...] = ()
    mult_set_generators: tuple[int, ...] = ()
    scalar_mode: ScalarMode = ScalarMode.RING

    def describe(self) -> str:
        mode = "" if self.scalar_mode is ScalarMode.RING else " (Z-scalars)"
        if self.kind == "ring_as_module":
            return f"{self.ring.describe()} over itself{mode}"
        if self.kind == "free":
            return f"{self.ring.describe()}^{self.rank}{mode}"
        if self.kind == "quotient":
            return f"({self.base.describe()})/L{mode}"
        if self.kind == "product":
            return " x ".join(f.describe() for f in self.factors) + mode
        if self.kind == "cyclic_quotient":
            gens = ",".join(str(g) for g in self.ideal_generators)
            return f"{self.ring.describe()}/<{gens}>{mode}"
        if self.kind == "localization":
            gens = ",".join(str(g) for g in self.mult_set_generators)
            return f"S^-1({self.base.describe()}); S=<{gens}>"
        return self.kind


def ring_as_module(ring: RingSpec, mode: ScalarMode = ScalarMode.RING) -> ModuleSpec:
    return ModuleSpec(kind="ring_as_module", ring=ring, scalar_mode=mode)


def free_module(ring: RingSpec, rank: int, mode: ScalarMode = ScalarMode.RING) -> ModuleSpec:
    return ModuleSpec(kind="free", ring=ring, rank=rank, scalar_mode=mode)


def cyclic_quotient(ring: RingSpec, ideal_gens: Sequence[int],
                    mode: ScalarMode = ScalarMode.RING) -> ModuleSpec:
    return ModuleSpec(kind="cyclic_quotient", ring=ring,
                      ideal_generators=tuple(int(g) for g in ideal_gens), scalar_mode=mode)


# --------------------------------------------------------------------------- #
# Core types
# --------------------------------------------------------------------------- #

@dataclass(eq=False)
class Submodule:
    """Subset of a module closed under addition and the full scalar action.

    `generators` is provenance; construction from a bare mask defers the
    greedy generator reduction until `gens()` is first called.
    """

    module: "FiniteModule"
    members: np.ndarray          # uint8 mask
    generators: Optional[tuple[int, ...]]

    def __post_init__(self):
        self.members.setflags(write=False)

    def gens(self) -> tuple[int, ...]:
        if self.generators is None:
            self.generators = self.module._reduce_generators(self.members)
        return self.generators

    @property
    def size(self) -> int:
        return int(self.members.sum())

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def contains(self, m: int) -> bool:
        return bool(self.members[m])

    def is_proper(self) -> bool:
        return self.size < self.module.size

    def is_zero(self) -> bool:
        return self.size == 1

    def key(self) -> bytes:
        return self.members.tobytes()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Submodule) and self.module is other.module
                and self.key() == other.key())

    def __hash__(self) -> int:
        return hash((id(self.module), self.key()))

    def render(self) -> str:
        gens = ",".join(self.module.render_element(g) for g in self.gens())
        return f"<{gens}> ({self.size} elts)"


@dataclass(eq=False)
class ModuleHom:
    """Module homomorphism given by a per-element image table."""

    source: "FiniteModule"
    target: "FiniteModule"
    table: np.ndarray

    def __call__(self, m: int) -> int:
        return int(self.table[m])

    def is_mono(self) -> bool:
        return np.unique(self.table).size == self.source.size

    def is_epi(self) -> bool:
        return np.unique(self.table).size == self.target.size

    def kernel(self) -> Submodule:
        mask = (self.table == self.target.zero).astype(np.uint8)
        return self.source.submodule_from_mask(mask)

    def image(self) -> Submodule:
        mask = np.zeros(self.target.size, dtype=np.uint8)
        mask[np.unique(self.table)] = 1
        return self.target.submodule_from_mask(mask)

    def image_of(self, N: Submodule) -> Submodule:
        mask = np.zeros(self.target.size, dtype=np.uint8)
        mask[np.unique(self.table[N.elements()])] = 1
        return self.target.submodule_from_mask(mask)

    def preimage_of(self, N: Submodule) -> Submodule:
        mask = N.members[self.table].astype(np.uint8)
        return self.source.submodule_from_mask(mask)


class FiniteModule:
    """A finite module over a finite commutative ring, backed by dense tables."""

    def __init__(self, spec: ModuleSpec, ring: FiniteRing, add_table: np.ndarray,
                 action_table: np.ndarray, element_names: list[str],
                 skip_scan: bool = False):
        self.spec = spec
        self.ring = ring
        self.size = add_table.shape[0]
        self.add_table = np.ascontiguousarray(add_table, dtype=np.int64)
        self.action_table = np.ascontiguousarray(action_table, dtype=np.int64)
        self.add_table.setflags(write=False)
        self.action_table.setflags(write=False)
        self.zero = 0
        self.scalar_mode = spec.scalar_mode
        self.element_names = element_names
        if self.size < 2:
            raise SpecError("zero module rejected: module must have size >= 2")
        if self.scalar_mode is ScalarMode.INTEGER_IMAGE and ring.spec.kind != "zn":
            raise SpecError("INTEGER_IMAGE scalars need a Z_n carrier ring")
        if not skip_scan:
            self._scan_axioms()
        self.generators_hint = self._greedy_generators()
        self._lattice: Optional[list[Submodule]] = None

    # -- checks ----------------------------------------------------------------

    def _scan_axioms(self) -> None:
        add, act = self.add_table, self.action_table
        n = self.size
        if not np.array_equal(add, add.T):
            raise SpecError("module addition is not commutative")
        if not np.array_equal(add[self.zero], np.arange(n)):
            raise SpecError("module zero is not an additive identity")
        if not all((add[x] == self.zero).any() for x in range(n)):
            raise SpecError("a module element has no additive inverse")
        if kernels.assoc_violation(add) >= 0:
            raise SpecError("module addition is not associative")
        if not np.array_equal(act[self.ring.one], np.arange(n)):
            raise SpecError("module action is not unital")
        if kernels.action_assoc_violation(self.ring.mul_table, act) >= 0:
            raise SpecError("module action is not associative over ring multiplication")
        if kernels.action_distrib_violation(add, act) >= 0:
            raise SpecError("module action does not distribute over module addition")
        # (r+s)m == rm + sm, chunked over r
        for r in range(self.ring.size):
            lhs = act[self.ring.add_table[r]]
            B = add[act[r]]
            rhs = np.take_along_axis(B, act.T, axis=1).T
            if not np.array_equal(lhs, rhs):
                raise SpecError("module action does not distribute over ring addition")

    def _greedy_generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        span = np.zeros(self.size, dtype=np.uint8)
        span[self.zero] = 1
        while not span.all():
            e = int(np.flatnonzero(span == 0)[0])
            gens.append(e)
            span = kernels.closure_members(
                self.add_table, self.action_table,
                np.asarray(gens, dtype=np.int64), self.size)
        return tuple(gens)

    # -- arithmetic --------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def act(self, r: int, m: int) -> int:
        return int(self.action_table[r, m])

    def neg(self, m: int) -> int:
        return int(np.argmax(self.add_table[m] == self.zero))

    def render_element(self, m: int) -> str:
        return self.element_names[m]

    def describe(self) -> str:
        return self.spec.describe()

    # -- submodules ----------------------------------------------------------------

    def submodule(self, gens: Iterable[int]) -> Submodule:
        gens = tuple(int(g) for g in gens)
        for g in gens:
            if not 0 <= g < self.size:
                raise SpecError(f"generator {g} outside module of size {self.size}")
        members = kernels.closure_members(self.add_table, self.action_table,
                                          np.asarray(gens, dtype=np.int64), self.size)
        return Submodule(module=self, members=members, generators=gens)

    def zero_submodule(self) -> Submodule:
        return self.submodule(())

    def full_submodule(self) -> Submodule:
        return self.submodule(self.generators_hint)

    def submodule_from_mask(self, mask: np.ndarray,
                            generators: Optional[tuple[int, ...]] = None) -> Submodule:
        mask = np.asarray(mask, dtype=np.uint8)
        return Submodule(module=self, members=mask, generators=generators)

    def _reduce_generators(self, mask: np.ndarray) -> tuple[int, ...]:
        gens: list[int] = []
        span = np.zeros(self.size, dtype=np.uint8)
        span[self.zero] = 1
        target = np.asarray(mask, dtype=np.uint8)
        while not np.array_equal(span, target):
            candidates = np.flatnonzero((target == 1) & (span == 0))
            if candidates.size == 0:
                raise SpecError("mask is not a submodule (closure overshoots)")
            gens.append(int(candidates[0]))
            span = kernels.closure_members(
                self.add_table, self.action_table,
                np.asarray(gens, dtype=np.int64), self.size)
            if not (span <= target).all():
                raise SpecError("mask is not a submodule")
        return tuple(gens)

    def submodule_lattice(self, lattice_cap: int = DEFAULT_LATTICE_CAP,
                          full_enum_size: int = DEFAULT_FULL_ENUM_SIZE) -> list[Submodule]:
        """All submodules via cyclic-join fixpoint, canonical order.

        Full enumeration is only attempted for size <= `full_enum_size`;
        larger modules raise CapExceededError and callers fall back to
        targeted submodules.
        """
        if self._lattice is not None:
            return self._lattice
        if self.size > full_enum_size:
            raise CapExceededError(
                f"module {self.describe()} has size {self.size} > {full_enum_size}; "
                "full lattice enumeration skipped",
                cap_name="full_enum_size", limit=full_enum_size, requested=self.size)
        seen: dict[bytes, Submodule] = {}
        zero = self.zero_submodule()
        seen[zero.key()] = zero
        for g in range(self.size):
            sub = self.submodule((g,))
            if sub.key() not in seen:
                seen[sub.key()] = sub
        frontier = list(seen.values())
        while frontier:
            fresh: list[Submodule] = []
            for a in frontier:
                for b in list(seen.values()):
                    if len(seen) > lattice_cap:
                        raise CapExceededError(
                            f"submodule lattice of {self.describe()} exceeds cap {lattice_cap}",
                            cap_name="submodule_lattice", limit=lattice_cap,
                            requested=len(seen) + 1)
                    joined = kernels.sumset(self.add_table, a.elements(), b.elements(),
                                            self.size)
                    key = joined.tobytes()
                    if key not in seen:
                        sub = Submodule(module=self, members=joined,
                                        generators=tuple(sorted(set(a.generators)
                                                                | set(b.generators))))
                        seen[key] = sub
                        fresh.append(sub)
            frontier = fresh
        lattice = sorted(seen.values(), key=lambda s: _mask_sort_key(s.members))
        lattice = [self.submodule_from_mask(s.members) for s in lattice]
        self._lattice = lattice
        return lattice

    def proper_submodules(self, **caps) -> list[Submodule]:
        return [s for s in self.submodule_lattice(**caps) if s.is_proper()]


def _mask_sort_key(mask: np.ndarray) -> tuple:
    return (int(mask.sum()), mask.tobytes()[::-1])


# --------------------------------------------------------------------------- #
# Constructors
# --------------------------------------------------------------------------- #

def build_module(spec: ModuleSpec, cap: int = DEFAULT_MODULE_CAP,
                 ring_cap: int = DEFAULT_RING_CAP,
                 ring_cache: Optional[dict] = None) -> FiniteModule:
    """Build the module described by `spec`; full axiom scan included.

    `ring_cache` maps RingSpec -> FiniteRing so that modules sharing a ring
    spec share the ring object (same-ring operations compare identity).
    """
    if ring_cache is None:
        ring_cache = {}

    def get_ring(rspec: RingSpec) -> FiniteRing:
        if rspec not in ring_cache:
            ring_cache[rspec] = build_ring(rspec, ring_cap)
        return ring_cache[rspec]

    kind = spec.kind
    if kind == "ring_as_module":
        ring = get_ring(spec.ring)
        _check_cap(ring.size, cap, spec)
        names = list(ring.element_names)
        mod = FiniteModule(spec, ring, ring.add_table, ring.mul_table, names)
        if hasattr(ring, "factor_encode"):
            mod.encode = ring.factor_encode
            mod.decode = ring.factor_decode
        return mod
    if kind == "free":
        if spec.rank < 1:
            raise SpecError("free module needs rank >= 1")
        ring = get_ring(spec.ring)
        _check_cap(ring.size ** spec.rank, cap, spec)
        return _build_free(spec, ring)
    if kind == "cyclic_quotient":
        ring = get_ring(spec.ring)
        base_spec = ModuleSpec(kind="ring_as_module", ring=spec.ring,
                               scalar_mode=spec.scalar_mode)
        base = FiniteModule(base_spec, ring, ring.add_table, ring.mul_table,
                            list(ring.element_names))
        L = base.submodule(spec.ideal_generators)
        mod, _ = quotient_module(base, L, out_spec=spec)
        return mod
    if kind == "quotient":
        base = build_module(spec.base, cap, ring_cap, ring_cache)
        gens = _resolve_generators(base, spec.kernel_generators)
        L = base.submodule(gens)
        mod, _ = quotient_module(base, L, out_spec=spec)
        return mod
    if kind == "product":
        if len(spec.factors) < 2:
            raise SpecError("product module needs at least 2 factors")
        mods = [build_module(f, cap, ring_cap, ring_cache) for f in spec.factors]
        out = mods[0]
        for nxt in mods[1:]:
            out = direct_product(out, nxt)
        _check_cap(out.size, cap, spec)
        if out.scalar_mode is not spec.scalar_mode:
            raise SpecError("product scalar mode does not match its factors")
        out.spec = spec
        return out
    if kind == "localization":
        base = build_module(spec.base, cap, ring_cap, ring_cache)
        mod, _ = localize_module(base, spec.mult_set_generators, out_spec=spec)
        return mod
    raise SpecError(f"unknown module kind {kind!r}")


def _check_cap(size: int, cap: int, spec: ModuleSpec) -> None:
    if size > cap:
        raise CapExceededError(
            f"module {spec.describe()} has size {size} > cap {cap}",
            cap_name="module_size", limit=cap, requested=size)


def _resolve_generators(module: FiniteModule, gens: Sequence) -> tuple[int, ...]:
    """Accept element indices or coordinate tuples (free/product modules)."""
    out = []
    for g in gens:
        if isinstance(g, (tuple, list)):
            out.append(module.encode(tuple(int(c) for c in g)))
        else:
            out.append(int(g))
    return tuple(out)


def _build_free(spec: ModuleSpec, ring: FiniteRing) -> FiniteModule:
    k = spec.rank
    n = ring.size
    size = n ** k

    def decode(v: int) -> tuple[int, ...]:
        out = []
        for _ in range(k):
            out.append(v % n)
            v //= n
        return tuple(reversed(out))

    def encode(coords: Sequence[int]) -> int:
        v = 0
        for c in coords:
            v = v * n + c
        return v

    coords = np.array([decode(v) for v in range(size)], dtype=np.int64)  # (size, k)
    weights = np.array([n ** (k - 1 - i) for i in range(k)], dtype=np.int64)
    # add[a,b] = encode(componentwise ring add)
    add = np.zeros((size, size), dtype=np.int64)
    for i in range(k):
        add += ring.add_table[np.ix_(coords[:, i], coords[:, i])] * weights[i]
    act = np.zeros((ring.size, size), dtype=np.int64)
    for i in range(k):
        act += ring.mul_table[:, coords[:, i]] * weights[i]
    names = ["(" + ",".join(ring.render_element(c) for c in cs) + ")" for cs in coords]
    mod = FiniteModule(spec, ring, add, act, names)
    mod.encode = encode
    mod.decode = decode
    return mod


# --------------------------------------------------------------------------- #
# Operations
# --------------------------------------------------------------------------- #

def submodule_generated(module: FiniteModule, gens: Iterable) -> Submodule:
    return module.submodule(_resolve_generators(module, list(gens)))


def submodule_lattice(module: FiniteModule, **caps) -> list[Submodule]:
    return module.submodule_lattice(**caps)


def colon_ring(N: Submodule, K: Union[Submodule, Sequence[int], None] = None) -> Ideal:
    """(N :_R K) = {x in R : xK subset N} as an ideal of the carrier ring.

    K defaults to the whole module.  For integer-scalar modules use
    `colon_ring_integer` for the pulled-back generator of the ideal of Z.
    """
    module = N.module
    if isinstance(K, Submodule):
        if K.module is not module:
            raise SpecError("colon_ring: K lives in a different module")
        k_elems = K.elements()
    elif K is None:
        k_elems = np.arange(module.size)
    else:
        k_elems = np.asarray(_resolve_generators(module, list(K)), dtype=np.int64)
    in_n = N.members.astype(bool)
    if k_elems.size == 0:
        mask = np.ones(module.ring.size, dtype=np.uint8)
    else:
        mask = in_n[module.action_table[:, k_elems]].all(axis=1).astype(np.uint8)
    return module.ring.ideal_from_mask(mask)


def colon_ring_integer(N: Submodule, K: Union[Submodule, Sequence[int], None] = None) -> int:
    """Nonnegative generator d of the preimage in Z of (N :_Z K).

    The carrier colon set is a subgroup gZ_n of Z_n; its preimage under
    Z -> Z_n is gZ when g > 0 and nZ when the colon set is {0}.
    """
    module = N.module
    if module.scalar_mode is not ScalarMode.INTEGER_IMAGE:
        raise SpecError("integer colon generator needs an INTEGER_IMAGE module")
    ideal = colon_ring(N, K)
    elems = ideal.elements()
    nonzero = elems[elems != module.ring.zero]
    if nonzero.size == 0:
        return module.ring.size
    return int(nonzero.min())


def colon_module(N: Submodule, J: Union[Ideal, int]) -> Submodule:
    """(N :_M J) = {m : Jm subset N} for an ideal J, or (N :_M a) for a scalar."""
    module = N.module
    in_n = N.members.astype(bool)
    if isinstance(J, Ideal):
        if J.ring is not module.ring:
            raise SpecError("colon_module: ideal belongs to a different ring")
        elems = J.elements()
        mask = in_n[module.action_table[elems, :]].all(axis=0).astype(np.uint8)
    else:
        mask = in_n[module.action_table[int(J)]].astype(np.uint8)
    return module.submodule_from_mask(mask)


def quotient_module(M: FiniteModule, L: Submodule,
                    out_spec: Optional[ModuleSpec] = None) -> tuple[FiniteModule, ModuleHom]:
    """M/L with the canonical projection.  Cosets are ordered by minimal
    representative; L = M is rejected (size-1 module)."""
    if L.module is not M:
        raise SpecError("quotient_module: submodule belongs to a different module")
    if not L.is_proper():
        raise SpecError("quotient by the full module gives the zero module")
    l_elems = L.elements()
    rep = M.add_table[:, l_elems].min(axis=1)       # coset representative per element
    reps = np.unique(rep)                            # sorted ascending; rep[0] == 0
    index_of = {int(r): i for i, r in enumerate(reps)}
    proj = np.array([index_of[int(rep[m])] for m in range(M.size)], dtype=np.int64)
    size = reps.size
    add = proj[M.add_table[np.ix_(reps, reps)]]
    act = proj[M.action_table[:, reps]]
    names = ["[" + M.render_element(int(r)) + "]" for r in reps]
    spec = out_spec or ModuleSpec(kind="quotient", base=M.spec,
                                  kernel_generators=L.gens(),
                                  scalar_mode=M.scalar_mode)
    quotient = FiniteModule(spec, M.ring, add, act, names)
    hom = ModuleHom(source=M, target=quotient, table=proj)
    return quotient, hom


def direct_product(M1: FiniteModule, M2: FiniteModule,
                   product_ring: Optional[FiniteRing] = None) -> FiniteModule:
    """Componentwise product, over the common ring or over a product ring.

    Same-ring variant: M1, M2 over the identical ring and scalar mode.
    Product-ring variant: pass the built product ring R1 x R2; the factors
    must match the factor rings of M1 and M2 (ring-scalar mode only).
    """
    if M1.size < 2 or M2.size < 2:
        raise SpecError("degenerate factor in direct product")
    size = M1.size * M2.size

    def encode(pair):
        return pair[0] * M2.size + pair[1]

    i1 = np.repeat(np.arange(M1.size), M2.size)
    i2 = np.tile(np.arange(M2.size), M1.size)
    add = (M1.add_table[np.ix_(i1, i1)] * M2.size + M2.add_table[np.ix_(i2, i2)])
    names = [f"({M1.render_element(a)},{M2.render_element(b)})" for a, b in zip(i1, i2)]
    if product_ring is None:
        if M1.ring is not M2.ring:
            raise SpecError("same-ring product needs both modules over the same ring")
        if M1.scalar_mode is not M2.scalar_mode:
            raise SpecError("same-ring product needs equal scalar modes")
        ring = M1.ring
        act = M1.action_table[:, i1] * M2.size + M2.action_table[:, i2]
        mode = M1.scalar_mode
    else:
        ring = product_ring
        factors = getattr(ring, "factor_rings", None)
        if factors is None or len(factors) != 2:
            raise SpecError("product-ring variant needs a 2-factor product ring")
        if M1.ring is not factors[0] or M2.ring is not factors[1]:
            raise SpecError("module rings do not match the product-ring factors")
        if (M1.scalar_mode is not ScalarMode.RING
                or M2.scalar_mode is not ScalarMode.RING):
            raise SpecError("product-ring variant is ring-scalar only")
        mode = ScalarMode.RING
        decode = ring.factor_decode
        r1 = np.array([decode(r)[0] for r in range(ring.size)])
        r2 = np.array([decode(r)[1] for r in range(ring.size)])
        act = M1.action_table[np.ix_(r1, i1)] * M2.size + M2.action_table[np.ix_(r2, i2)]
    spec = ModuleSpec(kind="product", factors=(M1.spec, M2.spec), scalar_mode=mode,
                      ring=ring.spec)
    out = FiniteModule(spec, ring, add, act, names)
    out.encode = encode
    out.decode = lambda v: (v // M2.size, v % M2.size)
    out.factor_modules = (M1, M2)
    return out


def product_submodule(P: FiniteModule, N1_mask: np.ndarray, N2_mask: np.ndarray) -> Submodule:
    """Embed N1 x N2 in a 2-factor product module."""
    M1, M2 = P.factor_modules
    mask = (np.repeat(N1_mask.astype(bool), M2.size)
            & np.tile(N2_mask.astype(bool), M1.size)).astype(np.uint8)
    return P.submodule_from_mask(mask)


def localize_module(M: FiniteModule, s_gens: Sequence[int],
                    out_spec: Optional[ModuleSpec] = None) -> tuple[FiniteModule, dict]:
    """S^-1 M over S^-1 R, with the localization data needed to map submodules.

    Classes of pairs (m, s) under (m,s) ~ (m',t) iff u(tm - sm') = 0 for some
    u in S.  Ring-scalar modules only.  Returns (module, info) where info has
    the localized ring map, the element map m -> class(m/1), and
    `submodule_image(N)`.
    """
    from .rings import localize_ring
    if M.scalar_mode is not ScalarMode.RING:
        raise SpecError("localization needs a ring-scalar module")
    ring = M.ring
    loc_ring, ring_map = localize_ring(ring, s_gens)
    # reconstruct S (closure of gens and 1 under multiplication)
    s_set = {ring.one}
    frontier = [ring.one] + [int(g) for g in s_gens]
    s_set.update(frontier)
    while frontier:
        x = frontier.pop()
        for y in sorted(s_set):
            z = int(ring.mul_table[x, y])
            if z not in s_set:
                s_set.add(z)
                frontier.append(z)
    s_elems = sorted(s_set)
    act, add = M.action_table, M.add_table

    def equivalent(m: int, s: int, m2: int, t: int) -> bool:
        diff = int(add[act[t, m], M.neg(int(act[s, m2]))])
        return any(act[u, diff] == M.zero for u in s_elems)

    class_of: dict[tuple[int, int], int] = {}
    reps: list[tuple[int, int]] = []
    for m in range(M.size):
        for s in s_elems:
            found = None
            for idx, (m2, t) in enumerate(reps):
                if equivalent(m, s, m2, t):
                    found = idx
                    break
            if found is None:
                found = len(reps)
                reps.append((m, s))
            class_of[(m, s)] = found
    size = len(reps)
    if size < 2:
        raise SpecError("localized module collapsed to the zero module")
    new_add = np.empty((size, size), dtype=np.int64)
    for i, (m, s) in enumerate(reps):
        for j, (m2, t) in enumerate(reps):
            num = int(add[act[t, m], act[s, m2]])
            new_add[i, j] = class_of[(num, int(ring.mul_table[s, t]))]
    new_act = np.empty((loc_ring.size, size), dtype=np.int64)
    # scalar classes of the localized ring are classes of (a, u) pairs;
    # recover one representative pair per scalar via the discovery order
    ring_reps = _localization_reps(ring, s_elems, loc_ring.size)
    for ri, (a, u) in enumerate(ring_reps):
        for j, (m, s) in enumerate(reps):
            new_act[ri, j] = class_of[(int(act[a, m]), int(ring.mul_table[u, s]))]
    names = [f"{M.render_element(m)}/{ring.render_element(s)}" for m, s in reps]
    spec = out_spec or ModuleSpec(kind="localization", base=M.spec,
                                  mult_set_generators=tuple(int(g) for g in s_gens),
                                  scalar_mode=ScalarMode.RING)
    loc_mod = FiniteModule(spec, loc_ring, new_add, new_act, names)
    elem_map = np.array([class_of[(m, ring.one)] for m in range(M.size)], dtype=np.int64)

    def submodule_image(N: Submodule) -> Submodule:
        mask = np.zeros(size, dtype=np.uint8)
        for n in N.elements():
            for s in s_elems:
                mask[class_of[(int(n), s)]] = 1
        return loc_mod.submodule_from_mask(mask)

    info = {"ring": loc_ring, "ring_map": ring_map, "element_map": elem_map,
            "submodule_image": submodule_image, "s_elems": s_elems}
    return loc_mod, info


def _localization_reps(ring: FiniteRing, s_elems: list[int], expect: int) -> list[tuple[int, int]]:
    mul, add = ring.mul_table, ring.add_table

    def equivalent(a: int, s: int, b: int, t: int) -> bool:
        diff = int(add[mul[a, t], ring.neg(int(mul[b, s]))])
        return any(mul[u, diff] == ring.zero for u in s_elems)

    reps: list[tuple[int, int]] = []
    for a in range(ring.size):
        for s in s_elems:
            if not any(equivalent(a, s, b, t) for b, t in reps):
                reps.append((a, s))
    if len(reps) != expect:
        raise SpecError("localization bookkeeping mismatch")
    return reps


def enumerate_homs(M: FiniteModule, M2: FiniteModule,
                   candidate_cap: int = DEFAULT_HOM_CANDIDATE_CAP,
                   work_cap: int = DEFAULT_HOM_WORK_CAP) -> list[ModuleHom]:
    """All module homomorphisms M -> M2 over the same ring and scalar mode.

    Candidates assign images to M.generators_hint and are extended by BFS
    with full edge checking (see kernels.hom_extend); surviving extensions
    are exactly the homomorphisms.  Deterministic lexicographic order over
    image assignments.
    """
    if M.ring is not M2.ring:
        raise SpecError("hom enumeration needs modules over the same ring")
    if M.scalar_mode is not M2.scalar_mode:
        raise SpecError("hom enumeration needs equal scalar modes")
    k = len(M.generators_hint)
    candidates = M2.size ** k
    if candidates > candidate_cap:
        raise CapExceededError(
            f"hom search {M.describe()} -> {M2.describe()} needs {candidates} candidates",
            cap_name="hom_candidates", limit=candidate_cap, requested=candidates)
    work = candidates * M.size * M.ring.size
    if work > work_cap:
        raise CapExceededError(
            f"hom search {M.describe()} -> {M2.describe()} needs ~{work} steps",
            cap_name="hom_work", limit=work_cap, requested=work)
    gens = np.asarray(M.generators_hint, dtype=np.int64)
    out: list[ModuleHom] = []
    for images in itertools.product(range(M2.size), repeat=k):
        fmap = kernels.hom_extend(M.add_table, M.action_table,
                                  M2.add_table, M2.action_table,
                                  gens, np.asarray(images, dtype=np.int64), M.size)
        if fmap.size:
            out.append(ModuleHom(source=M, target=M2, table=fmap))
    return out


def tensor_free(M: FiniteModule, k: int, N: Submodule,
                cap: int = DEFAULT_MODULE_CAP,
                power: Optional[FiniteModule] = None) -> tuple[FiniteModule, Submodule]:
    """(M^k, N^k) realizing R^k (x) M with R^k (x) N.

    Asserts the flat-colon identity (N^k :_{M^k} a) = (N :_M a)^k for every
    scalar a at build time.  A prebuilt `power` (from a previous call with
    the same M and k) skips the table construction.
    """
    if k < 1:
        raise SpecError("tensor_free needs k >= 1")
    if N.module is not M:
        raise SpecError("tensor_free: submodule belongs to a different module")
    if M.size ** k > cap:
        raise CapExceededError(
            f"free tensor power {M.describe()}^{k} has size {M.size ** k}",
            cap_name="module_size", limit=cap, requested=M.size ** k)
    if power is None:
        power = M
        for _ in range(k - 1):
            power = direct_product(power, M)
    elif power.size != M.size ** k:
        raise SpecError("prebuilt power has the wrong size")
    # N^k mask: all coordinates in N
    mask = N.members.astype(bool)
    out_mask = mask
    for _ in range(k - 1):
        out_mask = np.repeat(out_mask, M.size) & np.tile(mask, out_mask.size)
    Nk = power.submodule_from_mask(out_mask.astype(np.uint8))
    # flat-colon identity, per scalar
    in_nk = Nk.members.astype(bool)
    in_n = N.members.astype(bool)
    for a in range(M.ring.size):
        lhs = in_nk[power.action_table[a]]
        col = in_n[M.action_table[a]]
        rhs = col
        for _ in range(k - 1):
            rhs = np.repeat(rhs, M.size) & np.tile(col, rhs.size)
        if not np.array_equal(lhs, rhs):
            raise SpecError("flat-colon identity failed on the free power")
    return power, Nk


# --------------------------------------------------------------------------- #
# Structure profiles
# --------------------------------------------------------------------------- #

@dataclass
class MultProfile:
    is_multiplication: bool
    failing: Optional[Submodule] = None
    module: Optional[FiniteModule] = None

    def submodule_product(self, N: Submodule, K: Submodule) -> Submodule:
        """NK = (N:M)(K:M)M on a certified multiplication module."""
        if not self.is_multiplication:
            raise SpecError("submodule products need a multiplication module")
        I = colon_ring(N)
        J = colon_ring(K)
        return ideal_times_module(ideal_product(I, J), self.module)

    def product_with_cyclic(self, N: Submodule, m: int) -> Submodule:
        M = self.module
        return self.submodule_product(N, M.submodule((m,)))


def ideal_times_module(I: Ideal, M: FiniteModule) -> Submodule:
    """I*M: the submodule generated by {i*m}: additive closure of the products."""
    elems = I.elements()
    if elems.size == 0:
        return M.zero_submodule()
    prods = np.unique(M.action_table[elems, :])
    members = kernels.closure_members(M.add_table, M.action_table,
                                      prods.astype(np.int64), M.size)
    return M.submodule_from_mask(members)


def multiplication_profile(M: FiniteModule, **caps) -> MultProfile:
    """Whether every submodule N satisfies N = (N :_R M) M."""
    for N in M.submodule_lattice(**caps):
        I = colon_ring(N)
        if ideal_times_module(I, M) != N:
            return MultProfile(is_multiplication=False, failing=N, module=M)
    return MultProfile(is_multiplication=True, module=M)


@dataclass
class ModuleProfile:
    cyclic: bool
    cyclic_generator: Optional[int]
    faithful: bool
    reduced: bool
    torsion_module: bool
    non_torsion: bool
    torsion_mask: np.ndarray


def module_profile(M: FiniteModule) -> ModuleProfile:
    """Cyclicity, faithfulness, reducedness and the torsion set.

    A torsion element has nonzero annihilator over the quantifier ring; for
    integer scalars the annihilator always contains nZ, so every element of
    a finite integer-scalar module is torsion and such a module is never
    faithful.
    """
    act = M.action_table
    cyclic_gen = None
    for m in range(M.size):
        if M.submodule((m,)).size == M.size:
            cyclic_gen = m
            break
    if M.scalar_mode is ScalarMode.INTEGER_IMAGE:
        faithful = False
        torsion_mask = np.ones(M.size, dtype=bool)
    else:
        nonzero_scalars = np.array([r for r in range(M.ring.size) if r != M.ring.zero])
        faithful = not (act[nonzero_scalars] == M.zero).all(axis=1).any()
        torsion_mask = (act[nonzero_scalars] == M.zero).any(axis=0)
        torsion_mask = torsion_mask.copy()
        torsion_mask[M.zero] = True
    # reduced: a^2 m = 0 implies a m = 0, for every carrier scalar
    reduced = True
    squares = np.array([int(M.ring.mul_table[r, r]) for r in range(M.ring.size)])
    for r in range(M.ring.size):
        bad = (act[squares[r]] == M.zero) & (act[r] != M.zero)
        if bad.any():
            reduced = False
            break
    torsion_module = bool(torsion_mask.all())
    return ModuleProfile(cyclic=cyclic_gen is not None, cyclic_generator=cyclic_gen,
                         faithful=faithful, reduced=reduced,
                         torsion_module=torsion_module,
                         non_torsion=not torsion_module, torsion_mask=torsion_mask)


# --------------------------------------------------------------------------- #
# Scalar quantifiers
# --------------------------------------------------------------------------- #

def nonunit_scalars(M: FiniteModule) -> np.ndarray:
    """Index set for "nonunit scalar" quantifiers, per the module's mode."""
    if M.scalar_mode is ScalarMode.INTEGER_IMAGE:
        return np.arange(M.ring.size)
    return M.ring.nonunits()


def all_scalars(M: FiniteModule) -> np.ndarray:
    return np.arange(M.ring.size)


def nonunit_representative(M: FiniteModule, r: int) -> int:
    """A nonunit integer representing residue r (integer-scalar modules)."""
    if M.scalar_mode is not ScalarMode.INTEGER_IMAGE:
        return int(r)
    n = M.ring.size
    return int(r) if r != 1 else 1 + n


def quantifier_ideals(M: FiniteModule) -> list[Ideal]:
    """The "proper ideal" quantifier set for this module's mode.

    Ring scalars: proper ideals of the carrier ring.  Integer scalars: the
    images in Z_n of the proper ideals of Z, which are all subgroups gZ_n
    (g | n), the full ring included (image of (n+1)Z).
    """
    ring = M.ring
    if M.scalar_mode is ScalarMode.INTEGER_IMAGE:
        return list(ring.ideal_lattice())
    return ring.proper_ideals()

"""T-faces of the Mori cone of the pseudostable space.

The face ``F_T`` is spanned by the elliptic bridge curves whose type lies in
``T``; its rays are the minimal subsets contained in the admissible part of
``T``.  Its annihilator inside ``Pic(ps)_Q`` is the space of T-compatible
classes, computed here as an exact null space.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import boundary as bd
from .boundary import HyperbolicPair, TypeSet
from .divisors import PS, DivisorClass, presentation
from .errors import CapExceeded, GenusZeroUnsupported
from .linalg import Echelon, nullspace
from .pairing import bridge_functional, ensure_well_posed

DEFAULT_LATTICE_CAP = 4096
DOT_ANNOTATION_LIMIT = 64


def lattice_cap():
    import os
    return int(os.environ.get("MFL_CAP", DEFAULT_LATTICE_CAP))


@dataclass(frozen=True)
class FaceDescriptor:
    pair: HyperbolicPair
    typeset: TypeSet
    adm: TypeSet
    rays: tuple
    dim: int
    perp_dim: int
    perp_basis: tuple


def _require_genus(p):
    if p.g == 0:
        raise GenusZeroUnsupported("Picard groups in genus 0 are not encoded")


def ray_functionals(p: HyperbolicPair, rays) -> list[dict]:
    pres = presentation(p, PS)
    out = []
    for t in rays:
        f = bridge_functional(p, t)
        ensure_well_posed(pres, f, f"bridge pairing {t!r}")
        out.append(f)
    return out


def perp_space(p: HyperbolicPair, rays) -> list[DivisorClass]:
    """Basis of the classes on ps that are zero on every ray."""
    pres = presentation(p, PS)
    kernel = nullspace(ray_functionals(p, rays), len(pres.generators))
    # The kernel contains the killed/relation subspace; keep a basis of its image.
    image = Echelon()
    out = []
    for x in kernel:
        r = pres.echelon.reduce(x)
        if r and image.add(r):
            out.append(DivisorClass.from_vector(p, PS, r))
    return out


def face_of(p: HyperbolicPair, T: TypeSet) -> FaceDescriptor:
    _require_genus(p)
    bd.check_typeset(p, T)
    adm = bd.adm_closure(p, T)
    rays = bd.minimal_subsets_in(p, adm)
    perp = perp_space(p, rays)
    return FaceDescriptor(p, T, adm, rays, len(rays), len(perp), tuple(perp))


def t_compatible(p: HyperbolicPair, T: TypeSet, L: DivisorClass):
    """``(True, None)`` if L is zero on every bridge curve of type in T,
    else ``(False, (first failing ray, its value))``."""
    from .pairing import pair_bridge
    L = L if L.space.uses_ps_presentation else L.on(PS)
    for t in bd.minimal_subsets_in(p, bd.adm_closure(p, T)):
        v = pair_bridge(p, t, L)
        if v:
            return False, (t, v)
    return True, None


def face_dim_closed_form(p: HyperbolicPair) -> int:
    g, n = p.g, p.n
    if g == 0:
        return 0
    if (g, n) == (2, 0):
        return 1
    if n == 0:
        return (g - 1) // 2 if g % 2 else g // 2 - 1
    return g * 2 ** (n - 1) - 1


@dataclass(frozen=True)
class IndependenceReport:
    pair: HyperbolicPair
    n_minimal: int
    n_basis: int
    rank: int

    @property
    def independent(self):
        return self.rank == self.n_minimal


def independence_report(p: HyperbolicPair) -> IndependenceReport:
    """Rank of the matrix (bridge curve) x (basis class of Pic(ps)_Q)."""
    _require_genus(p)
    pres = presentation(p, PS)
    rays = bd.minimal_subsets(p)
    basis_cols = pres.free_columns()
    rows = []
    for f in ray_functionals(p, rays):
        # column j: value on the j-th basis class e_j
        rows.append({j: f[c] for j, c in enumerate(basis_cols) if c in f})
    return IndependenceReport(p, len(rays), len(basis_cols), Echelon(rows).rank)


# ---------------------------------------------------------------------------
# Lattice of T-faces


@dataclass(frozen=True)
class LatticeNode:
    typeset: TypeSet
    dim: int
    perp_dim: int


@dataclass(frozen=True)
class FaceLattice:
    pair: HyperbolicPair
    nodes: tuple
    covers: tuple  # (lower index, upper index)

    def to_json(self) -> dict:
        p = self.pair
        return {
            "schema": "lattice/1",
            "g": p.g,
            "n": p.n,
            "nodes": [
                {"T": bd.format_typeset(p, nd.typeset), "dim": nd.dim, "perp_dim": nd.perp_dim}
                for nd in self.nodes
            ],
            "covers": [list(c) for c in self.covers],
        }

    def to_dot(self) -> str:
        p = self.pair
        annotate = len(self.nodes) <= DOT_ANNOTATION_LIMIT
        lines = [f'digraph "faces_{p.g}_{p.n}" {{', "  rankdir=BT;"]
        for i, nd in enumerate(self.nodes):
            name = bd.format_typeset(p, nd.typeset) or "{}"
            label = f"{name} | {nd.dim} | {nd.perp_dim}" if annotate else name
            lines.append(f'  n{i} [label="{label}"];')
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def face_lattice(p: HyperbolicPair, cap: int | None = None) -> FaceLattice:
    """All T-faces (one per admissible subset) ordered by inclusion."""
    _require_genus(p)
    cap = lattice_cap() if cap is None else cap
    minimal = bd.minimal_subsets(p)
    required = 2 ** len(minimal)
    if required > cap:
        raise CapExceeded(required, cap)
    unions = set()
    for k in range(len(minimal) + 1):
        for combo in combinations(minimal, k):
            unions.add(frozenset().union(*(m.members for m in combo)))
    order = sorted(unions, key=lambda u: (len(u), sorted(x.sort_key() for x in u)))
    index = {u: i for i, u in enumerate(order)}
    rank_ps = presentation(p, PS).rank
    functionals = dict(zip(minimal, ray_functionals(p, minimal)))
    nodes = []
    for u in order:
        inside = [m for m in minimal if m.members <= u]
        r = Echelon(functionals[m] for m in inside).rank
        nodes.append(LatticeNode(TypeSet(u), len(inside), rank_ps - r))
    covers = set()
    for u in order:
        for m in minimal:
            if m.members <= u:
                continue
            v = u | m.members
            inside_v = [x for x in minimal if x.members <= v and not x.members <= u]
            if all(u | x.members == v for x in inside_v):
                covers.add((index[u], index[v]))
    return FaceLattice(p, tuple(nodes), tuple(sorted(covers)))

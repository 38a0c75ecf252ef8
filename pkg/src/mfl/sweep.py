"""Verification sweep over hyperbolic pairs and type sets.

Each check produces :class:`Outcome` records.  ``assert`` outcomes that fail
make the sweep fail; ``finding`` outcomes are reported (closed forms that
disagree with the direct rank, raw tacnodal counts, non-Boolean lattices)
but never change the exit status.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from itertools import combinations

from . import boundary as bd
from . import criteria as cr
from .boundary import HyperbolicPair, TypeSet
from .divisors import PS, basis, named_class, pullback_upsilon, space_tplus
from .errors import NotHyperbolic
from .faces import face_dim_closed_form, independence_report, lattice_cap
from .pairing import (pair_bridge, pair_bridge_upstairs, pair_tacnodal,
                      rosary_weight)

RANK_T_ANCHORS = {(g, 0) for g in range(3, 9)} | {(3, 1), (3, 2), (2, 1), (1, 2)}
RANK_TPLUS_ANCHORS = {(g, 0) for g in range(3, 9)} | {(3, 2)}

# Pairs listed in the Q-factoriality remark for the full T+ space.
QFACT_TABLE_N0 = {g: g <= 6 for g in range(3, 9)}
QFACT_TABLE_POS = {(2, 1), (3, 1), (3, 2)}


@dataclass
class SweepConfig:
    g_max: int = 8
    n_max: int = 6
    typeset_mode: object = "FullOnly"   # "FullOnly" | "AllAdmissible" | {"Sampled": k}
    parallel: bool = False
    seed: int = 0
    lattice: bool = True

    @classmethod
    def from_json(cls, obj: dict):
        cfg = cls(**{k: v for k, v in obj.items() if k in cls.__dataclass_fields__})
        mode = cfg.typeset_mode
        if not (mode in ("FullOnly", "AllAdmissible")
                or (isinstance(mode, dict) and set(mode) == {"Sampled"})):
            raise ValueError(f"unknown typeset_mode {mode!r}")
        return cfg

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True, order=True)
class Outcome:
    key: tuple
    check: str
    kind: str          # "assert" | "finding"
    ok: bool
    detail: str = ""


@dataclass
class SweepResult:
    config: SweepConfig
    outcomes: list = field(default_factory=list)

    @property
    def failures(self):
        return [o for o in self.outcomes if o.kind == "assert" and not o.ok]

    @property
    def findings(self):
        return [o for o in self.outcomes if o.kind == "finding" and not o.ok]

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        def enc(o):
            return {"key": list(o.key), "check": o.check, "detail": o.detail}
        n_assert = sum(o.kind == "assert" for o in self.outcomes)
        return {
            "schema": "verify/1",
            "config": asdict(self.config),
            "asserted": n_assert,
            "failures": [enc(o) for o in self.failures],
            "findings": [enc(o) for o in self.findings],
        }


def pairs(g_max, n_max, min_g=0):
    out = []
    for g in range(min_g, g_max + 1):
        for n in range(n_max + 1):
            try:
                out.append(HyperbolicPair(g, n))
            except NotHyperbolic:
                pass
    return out


def admissible_typesets(p: HyperbolicPair, cap=None, seed=0, samples=64):
    """Every admissible T (as unions of minimal subsets) when there are at
    most ``cap`` of them; otherwise a seeded sample plus the extremes.
    Returns ``(typesets, exhaustive)``."""
    cap = lattice_cap() if cap is None else cap
    minimal = bd.minimal_subsets(p)
    if 2 ** len(minimal) <= cap:
        seen = set()
        for k in range(len(minimal) + 1):
            for combo in combinations(minimal, k):
                seen.add(frozenset().union(*(m.members for m in combo)))
        return [TypeSet(u) for u in sorted(seen, key=_fkey)], True
    rng = random.Random(f"{seed}:{p.g}:{p.n}")
    seen = {frozenset(), bd.adm_closure(p, bd.full_typeset(p)).members}
    seen.update(m.members for m in minimal)
    while len(seen) < samples:
        chosen = [m for m in minimal if rng.random() < 0.5]
        seen.add(frozenset().union(*(m.members for m in chosen)))
    return [TypeSet(u) for u in sorted(seen, key=_fkey)], False


def sampled_typesets(p: HyperbolicPair, k: int, seed=0):
    """``k`` seeded random subsets of T_{g,n} (not necessarily admissible) and T_{g,n}."""
    rng = random.Random(f"{seed}:{p.g}:{p.n}")
    classes = bd.enumerate_classes(p)
    out = {bd.full_typeset(p).members}
    for _ in range(k):
        out.add(frozenset(c for c in classes if rng.random() < 0.5))
    return [TypeSet(u) for u in sorted(out, key=_fkey)]


def _fkey(u):
    return (len(u), sorted(bd.sort_key(x) for x in u))


# ---------------------------------------------------------------------------
# Checks


def check_pair(p: HyperbolicPair, lattice=True) -> list[Outcome]:
    """T-independent checks for one pair."""
    key = (p.g, p.n)
    out = []
    minimal = bd.minimal_subsets(p)
    if p.g >= 1:
        closed = face_dim_closed_form(p)
        out.append(Outcome(key, "face_dim_closed_form", "assert", len(minimal) == closed,
                           f"|minimal|={len(minimal)} closed={closed}"))
        rep = independence_report(p)
        out.append(Outcome(key, "independence", "finding", rep.independent,
                           f"rank={rep.rank} minimal={rep.n_minimal}"))
        out.extend(_check_projection(p))
        out.extend(_check_constants(p))
        out.extend(_check_descent_weights(p))
        out.append(_check_qfact_table(p))
    if lattice:
        out.append(_check_boolean_lattice(p))
    return out


def _check_projection(p):
    key = (p.g, p.n)
    bad = []
    for L in basis(p, PS):
        up = pullback_upsilon(p, L)
        for t in bd.minimal_subsets(p):
            if pair_bridge(p, t, L) != pair_bridge_upstairs(p, t, up):
                bad.append(f"{bd.format_pair_type(p, t)} on {L!r}")
    return [Outcome(key, "projection_formula", "assert", not bad, "; ".join(bad[:3]))]


def _check_constants(p):
    key = (p.g, p.n)
    kp = named_class(p, PS, "K_plus_psi")
    k = named_class(p, PS, "K")
    bad = []
    T = bd.full_typeset(p)
    kp_plus = kp.on(space_tplus(T))
    for t in bd.minimal_subsets(p):
        if pair_bridge(p, t, kp) != -7:
            bad.append(f"(K+psi).C{bd.format_pair_type(p, t)}")
        if pair_bridge(p, t, k) >= 0:
            bad.append(f"K.C{bd.format_pair_type(p, t)} >= 0")
        if cr.is_tacnodal_type(p, t) and not cr._special(p):
            if pair_tacnodal(p, t, kp_plus) != 7:
                bad.append(f"(K+psi).D{bd.format_pair_type(p, t)}")
    return [Outcome(key, "universal_constants", "assert", not bad, "; ".join(bad[:3]))]


def _check_descent_weights(p, T=None):
    key = (p.g, p.n)
    T = bd.full_typeset(p) if T is None else T
    s = space_tplus(T)
    triples = cr.triples_in(p, T)
    bad = []
    for L in basis(p, s):
        compat, _ = cr.tplus_compatible(p, T, L)
        weights_zero = all(rosary_weight(p, r, L) == 0 for r in triples)
        if compat != weights_zero:
            bad.append(repr(L))
    return [Outcome(key, "descent_weights", "assert", not bad, "; ".join(bad[:3]))]


def _check_qfact_table(p):
    key = (p.g, p.n)
    got = cr.q_factorial_MTplus(p, bd.full_typeset(p))
    if cr._special(p):
        return Outcome(key, "qfact_table", "assert", not got.applicable, got.verdict.value)
    if p.n == 0 and p.g in QFACT_TABLE_N0:
        want = QFACT_TABLE_N0[p.g]
    else:
        want = p.g <= 1 or (p.g, p.n) in QFACT_TABLE_POS
    return Outcome(key, "qfact_table", "assert", bool(got) == want,
                   f"got {got.verdict.value}, table {'Yes' if want else 'No'}")


def _check_boolean_lattice(p, cap=None):
    key = (p.g, p.n)
    minimal = bd.minimal_subsets(p)
    cap = lattice_cap() if cap is None else cap
    if 2 ** len(minimal) > cap:
        return Outcome(key, "boolean_lattice", "finding", True, "skipped: over cap")
    ts, _ = admissible_typesets(p, cap)
    want = 2 ** len(minimal)
    return Outcome(key, "boolean_lattice", "finding", len(ts) == want,
                   f"nodes={len(ts)} 2^#minimal={want}")


def check_typeset(p: HyperbolicPair, T: TypeSet, full: bool) -> list[Outcome]:
    """T-dependent checks: closure laws, rank consistency, flip verdicts."""
    key = (p.g, p.n, "full" if T == bd.full_typeset(p) else bd.format_typeset(p, T))
    out = []
    adm = bd.adm_closure(p, T)
    union = frozenset().union(*(m.members for m in bd.minimal_subsets_in(p, T)))
    out.append(Outcome(key, "closure_laws", "assert",
                       bd.adm_closure(p, adm) == adm and adm.members == union
                       and bd.is_admissible(p, adm) and adm <= T))
    if p.g == 0:
        return out
    pic = cr.picard_number_report(p, T)
    out.append(Outcome(key, "rank_ps_minus_t", "assert", pic.rank_ps - pic.rank_t == pic.face_dim,
                       f"{pic.rank_ps}-{pic.rank_t} vs dim {pic.face_dim}"))
    if not cr._special(p):
        out.append(Outcome(key, "rank_tplus_minus_t_span", "finding",
                           pic.rel_tplus == pic.tacnodal_span,
                           f"{pic.rel_tplus} vs span {pic.tacnodal_span}"))
        out.append(Outcome(key, "rank_tplus_minus_t_count", "finding",
                           pic.rel_tplus == pic.n_tacnodal_rays,
                           f"{pic.rel_tplus} vs {pic.n_tacnodal_rays} tacnodal rays"))
    if full:
        for name, value in pic.closed_forms.items():
            if value is None:
                continue
            agrees = pic.agreement[name]
            anchored = ((name == "rank_t" and (p.g, p.n) in RANK_T_ANCHORS)
                        or (name == "rank_tplus" and (p.g, p.n) in RANK_TPLUS_ANCHORS)
                        or name == "rel_t")
            out.append(Outcome(key, f"closed_{name}", "assert" if anchored else "finding",
                               agrees, f"closed {value}"))
    if not cr._special(p):
        kp = cr.flip_verdict(p, T, named_class(p, PS, "K_plus_psi")).is_L_flip
        k = cr.flip_verdict(p, T, named_class(p, PS, "K")).is_L_flip
        gor = cr.q_gorenstein_MTplus(p, T)
        out.append(Outcome(key, "kpsi_flip", "assert", bool(kp), kp.verdict.value))
        out.append(Outcome(key, "k_flip_vs_gorenstein", "assert", k.verdict == gor.verdict,
                           f"{k.verdict.value} vs {gor.verdict.value}"))
        qf = cr.q_factorial_MTplus(p, T)
        if qf:
            out.append(Outcome(key, "qfact_no_constraints", "assert",
                               pic.rank_tplus == pic.rank_tplus_presentation))
    return out


def _typesets_for(p, cfg):
    mode = cfg.typeset_mode
    if mode == "FullOnly":
        return [bd.full_typeset(p)]
    if mode == "AllAdmissible":
        ts, _ = admissible_typesets(p, seed=cfg.seed)
        return ts
    return sampled_typesets(p, int(mode["Sampled"]), cfg.seed)


def run_pair(args) -> list[Outcome]:
    (g, n), cfg = args
    p = HyperbolicPair(g, n)
    out = check_pair(p, lattice=cfg.lattice)
    full_adm = bd.adm_closure(p, bd.full_typeset(p))
    for T in _typesets_for(p, cfg):
        out.extend(check_typeset(p, T, full=(bd.adm_closure(p, T) == full_adm)))
    return out


def run_sweep(cfg: SweepConfig) -> SweepResult:
    tasks = [((p.g, p.n), cfg) for p in pairs(cfg.g_max, cfg.n_max)]
    if cfg.parallel:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor() as ex:
            chunks = list(ex.map(run_pair, tasks))
    else:
        chunks = [run_pair(t) for t in tasks]
    outcomes = sorted((o for ch in chunks for o in ch), key=lambda o: (o.key, o.check))
    return SweepResult(cfg, outcomes)


def format_result(res: SweepResult) -> str:
    lines = [f"seed {res.config.seed}; {sum(o.kind == 'assert' for o in res.outcomes)} "
             f"assertions, {len(res.failures)} failed, {len(res.findings)} findings"]
    for o in res.failures:
        lines.append(f"FAIL {o.check} {o.key} {o.detail}")
    if res.findings:
        lines.append("findings:")
        for o in res.findings:
            lines.append(f"  {o.check} {o.key} {o.detail}")
    return "\n".join(lines)

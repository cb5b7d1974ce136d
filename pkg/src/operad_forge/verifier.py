"""Checks that confront the rewriting engine with independent enumeration oracles.

Every check returns a :class:`VerificationReport`.  Reports are reproducible
from ``(check, bounds)``; wall-clock time is kept on the report but only
serialized on request.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import trees
from .bounds import Bounds
from .operad import BudgetError, FreeOperad, TreeOperad, TwoPointCollection, canonical_decorated, check_axioms, enumerate_decorated
from .pushout import (
    UNDECIDED,
    _orbit,
    closure,
    confluence_sample,
    equal_in_pushout,
    normal_form,
    normalize,
    reachable_classes,
)
from .surfaces.decorations import dec_genus
from .surfaces.dm import cap_map, fr_map, stable_marked_skeletons
from .surfaces.dualgraph import Component, CornerCase, annulus_graph, dm_graph, nodfr_compose
from .surfaces.enumeration import stable_boundary_graphs
from .surfaces.instances import FrDisc, NodAnnDisc, NodFrDisc
from .surfaces.moduli import INF, ExtModulus, grid_sums
from .surfaces.split import dual_graph, enumerate_splits, fr_pieces, hd_normalize, split_of
from .surfaces.system import erase_seams_free, surface_pushout
from .surfaces.wsystem import (
    NODFR,
    _SideOp,
    from_flat,
    is_protected_w,
    nodfr_code,
    to_nodfr,
    w_genus,
    w_node_count,
    w_surface_pushout,
)
from .trees import TRIVIAL, Leaf, Node
from .wconstruction import WOperad, random_w_element, w_canonical, w_contract, w_partial

PASS, FAIL, UNDECIDED_STATUS, SKIPPED = "PASS", "FAIL", "UNDECIDED", "SKIPPED"
EXIT_CODES = {PASS: 0, SKIPPED: 0, FAIL: 1, UNDECIDED_STATUS: 2}


@dataclass
class VerificationReport:
    check: str
    bounds: dict
    status: str = PASS
    counts: dict = field(default_factory=dict)
    cells: list = field(default_factory=list)
    witness: list = field(default_factory=list)
    counterexample: dict | None = None
    notes: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self, timing: bool = False) -> dict:
        d = {
            "check": self.check,
            "status": self.status,
            "bounds": self.bounds,
            "counts": self.counts,
            "cells": self.cells,
            "witness": self.witness,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }
        if timing:
            d["elapsed_s"] = round(self.elapsed, 3)
        return d


class _Failures:
    """Collects failures and reports the smallest by (vertex count, code)."""

    def __init__(self):
        self.items: list[tuple] = []

    def add(self, size: int, code: str, detail: dict):
        self.items.append((size, code, detail))

    def __bool__(self):
        return bool(self.items)

    def minimal(self) -> dict | None:
        if not self.items:
            return None
        size, code, detail = min(self.items, key=lambda t: (t[0], t[1]))
        return {"vertices": size, "code": code, **detail, "total_failures": len(self.items)}


def worker_count() -> int:
    cap = os.environ.get("OPERAD_FORGE_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            pass
    return n


def _pmap(fn, items: list) -> list:
    """Map in worker processes when allowed; results keep input order."""
    if worker_count() <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(worker_count(), len(items))) as ex:
        return list(ex.map(fn, items))


def _size(t) -> int:
    return trees.n_vertices(t) if t is not TRIVIAL else 0


def _finish(rep: VerificationReport, fails: _Failures, t0: float) -> VerificationReport:
    if fails:
        rep.status = FAIL
        rep.counterexample = fails.minimal()
    rep.elapsed = time.perf_counter() - t0
    return rep


# ----------------------------------------------------------------------
# free elements versus split structures


def verify_free_split_bijection(b: Bounds, budget: int = 2_000_000) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport("free-split", b.to_json())
    fails = _Failures()
    fr = FrDisc()
    pieces = fr_pieces(b)
    planned = 0
    for n in range(1, b.max_arity + 1):
        for shape in trees.enumerate_tree_forms(n, b.max_vertices):
            if shape is TRIVIAL:
                continue
            k = 1
            for v in trees.vertices(shape):
                k *= len(fr.elements(v.valency, b))
            planned += k
    rep.counts["planned_free_elements"] = planned
    if planned > budget:
        rep.status = UNDECIDED_STATUS
        rep.notes.append(f"enumeration of {planned} free elements exceeds the budget of {budget}")
        rep.elapsed = time.perf_counter() - t0
        return rep
    for n in range(1, b.max_arity + 1):
        free = enumerate_decorated(fr, n, b.max_vertices, b)
        image: dict[str, str] = {}
        for e in free:
            code = canonical_decorated(e, fr) if e is not TRIVIAL else "|"
            s = split_of(e)
            sc = s.code()
            if sc in image:
                fails.add(_size(e), code, {"reason": "two free elements glue to one split structure", "other": image[sc]})
            image[sc] = code
            want = trees.canonicalize(e) if e is not TRIVIAL else "|"
            got = trees.canonicalize(dual_graph(s)) if s.core is not None or s.chain else "|"
            if want != got:
                fails.add(_size(e), code, {"reason": "dual graph differs from the underlying tree", "dual_graph": got})
        splits = enumerate_splits(n, b.max_vertices, pieces)
        missing = sorted(set(splits) - set(image))
        extra = sorted(set(image) - set(splits))
        for sc in missing:
            fails.add(b.max_vertices + 1, sc, {"reason": "split structure not hit by gluing"})
        for sc in extra:
            fails.add(b.max_vertices + 1, sc, {"reason": "glued element outside the enumerated split structures"})
        ok = not missing and not extra
        rep.cells.append({"arity": n, "free": len(free), "split": len(splits), "status": PASS if ok else FAIL})
        if image:
            first = sorted(image.items())[0]
            rep.witness.append({"split": first[0], "free": first[1]})
    rep.counts["free"] = sum(c["free"] for c in rep.cells)
    rep.counts["split"] = sum(c["split"] for c in rep.cells)
    return _finish(rep, fails, t0)


# ----------------------------------------------------------------------
# the geometric pushout


def graph_min_vertices(g) -> int:
    """Fewest tree vertices needed for a stable graph: one per node, one per non-half component.

    A half is a genus-0 component with one boundary circle and one node.
    """
    halves = sum(1 for i, c in enumerate(g.comps) if c.genus == 0 and c.n_boundary == 1 and g.degree(i) == 1)
    return g.n_nodes + g.n_components - halves


def stable_graph_oracle(b: Bounds) -> set:
    """Stable graphs reachable within the bounds, from enumeration alone."""
    out = set()
    for n in range(1, b.max_arity + 1):
        for g in stable_boundary_graphs(n, b.max_genus, b.max_vertices):
            if graph_min_vertices(g) <= b.max_vertices:
                out.add(g)
    for value in grid_sums(b.modulus_grid, b.max_vertices):
        out.add(annulus_graph(value))
    return out


def _genus_weight(d) -> int:
    return dec_genus(d.value)


def brute_force_classes(sys, b: Bounds) -> set:
    """Normal forms of every free element within ``b``, by plain enumeration."""
    out = set()
    for n in range(1, b.max_arity + 1):
        for e in enumerate_decorated(sys.collection, n, b.max_vertices, b):
            if e is not TRIVIAL and sum(_genus_weight(v.dec) for v in trees.vertices(e)) > b.max_genus:
                continue
            out.add(normal_form(sys, e))
    return out


def verify_geometric_pushout(b: Bounds, crosscheck: Bounds | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport("geometric-pushout", b.to_json())
    fails = _Failures()
    sys = surface_pushout()
    table = reachable_classes(sys, b, _genus_weight, b.max_genus)
    nodes: dict[str, object] = {}
    for n in sorted(table.reps):
        for r in table.reps[n]:
            nodes.update(_orbit(sys, r))
    phi: dict[str, object] = {}
    preimages: dict[object, list] = {}
    for code in sorted(nodes):
        g = erase_seams_free(nodes[code])
        phi[code] = g
        preimages.setdefault(g, []).append(code)
    for g, codes in preimages.items():
        if len(codes) > 1:
            fails.add(table.cost[codes[0]], codes[0], {"reason": "two normal forms erase to one graph", "other": codes[1], "graph": g.code})
    oracle = stable_graph_oracle(b)
    for g in sorted(oracle - set(preimages)):
        fails.add(b.max_vertices + 1, g.code, {"reason": "stable graph without a normal form"})
    for g in sorted(set(preimages) - oracle):
        code = preimages[g][0]
        fails.add(table.cost[code], code, {"reason": "normal form erases to a graph outside the oracle", "graph": g.code})
    for code, g in phi.items():
        if g.arity != table.arity[code] or g.genus != table.weight[code]:
            fails.add(table.cost[code], code, {"reason": "arity or genus not preserved", "graph": g.code})

    for n in range(1, b.max_arity + 1):
        for gen in range(b.max_genus + 1):
            nf = sum(1 for c in nodes if table.arity[c] == n and table.weight[c] == gen)
            gr = sum(1 for g in oracle if g.arity == n and g.genus == gen)
            rep.cells.append({"arity": n, "genus": gen, "normal_forms": nf, "stable_graphs": gr, "status": PASS if nf == gr else FAIL})

    # composition on seeded pairs
    rng = random.Random(f"geometric-pushout:{b.seed}")
    codes = sorted(nodes)
    agree = 0
    for _ in range(b.trial_count):
        cx, cy = rng.choice(codes), rng.choice(codes)
        x, y = nodes[cx], nodes[cy]
        i = rng.randint(1, table.arity[cx])
        left = erase_seams_free(normalize(sys, trees.partial_graft(x, i, y)).tree)
        right = nodfr_compose(phi[cx], i, phi[cy])
        if left == right:
            agree += 1
        else:
            fails.add(table.cost[cx] + table.cost[cy], f"{cx} o{i} {cy}", {"reason": "erase-seams does not commute with composition", "lhs": left.code, "rhs": right.code})
    rep.counts.update(
        normal_forms=len(nodes),
        stable_graphs=len(oracle),
        orbit_representatives=sum(len(v) for v in table.reps.values()),
        composition_pairs=b.trial_count,
        composition_agree=agree,
    )
    if crosscheck is not None:
        brute = brute_force_classes(sys, crosscheck)
        dp = {c for c in nodes if table.cost[c] <= crosscheck.max_vertices and table.arity[c] <= crosscheck.max_arity and table.weight[c] <= crosscheck.max_genus}
        rep.counts["crosscheck_brute_force"] = len(brute)
        rep.counts["crosscheck_dynamic"] = len(dp)
        if brute != dp:
            diff = sorted(brute ^ dp)
            fails.add(0, diff[0], {"reason": "dynamic enumeration disagrees with brute force", "differences": len(diff)})
    for code in codes[:3]:
        rep.witness.append({"normal_form": sys.to_sexp(nodes[code]), "graph": phi[code].code})
    return _finish(rep, fails, t0)


# ----------------------------------------------------------------------
# the W-diagram pushout


def _tagged_decs(k: int, b: Bounds):
    out = [("P", x) for x in NodAnnDisc().elements(k, b)]
    out += [("Q", x) for x in FrDisc().elements(k, b)]
    return out


def _place(shape, decs, lens):
    di, li = iter(decs), iter(lens)

    def walk(node, is_root):
        d = next(di)
        ln = None if is_root else next(li)
        return Node(d, [c if isinstance(c, Leaf) else walk(c, False) for c in node.children], ln)

    return walk(shape, True)


def _edges_parent_child(shape):
    """(parent index, child index) per edge, in the vertex order used by ``_place``."""
    out = []
    counter = itertools.count()

    def walk(node, parent):
        me = next(counter)
        if parent is not None:
            out.append((parent, me))
        for c in node.children:
            if isinstance(c, Node):
                walk(c, me)

    walk(shape, None)
    return out


def w_pushout_classes(sys, b: Bounds) -> dict:
    """Normal forms of the W-diagram pushout for every flat element within ``b``."""
    max_nodes = 1 if b.max_nodes is None else b.max_nodes
    found: dict[str, object] = {}
    side_op = _SideOp(sys)
    for n in range(1, b.max_arity + 1):
        for shape in trees.enumerate_tree_forms(n, b.max_vertices):
            if shape is TRIVIAL:
                continue
            verts = trees.vertices(shape)
            domains = [_tagged_decs(v.valency, b) for v in verts]
            if any(not d for d in domains):
                continue
            edges = _edges_parent_child(shape)
            for decs in itertools.product(*domains):
                if sum(dec_genus(x) for _, x in decs) > b.max_genus:
                    continue
                choices = [b.length_grid if decs[p][0] == decs[c][0] else (Fraction(1),) for p, c in edges]
                for lens in itertools.product(*choices):
                    flat = _place(shape, decs, lens)
                    contracted = w_contract(side_op, flat)
                    if sum(1 for v in trees.vertices(contracted) if v.dec[1] == INF) > max_nodes:
                        continue
                    nf = normalize(sys, from_flat(sys, flat))
                    found.setdefault(nf.code, nf.tree)
    return found


def protected_w_elements(b: Bounds) -> dict:
    """Protected contracted W(NodFr) elements within ``b``, from enumeration alone."""
    max_nodes = 1 if b.max_nodes is None else b.max_nodes
    inner = b.with_(max_vertices=max_nodes + 1)
    found: dict[str, object] = {}
    for n in range(1, b.max_arity + 1):
        for shape in trees.enumerate_tree_forms(n, b.max_vertices):
            if shape is TRIVIAL:
                continue
            verts = trees.vertices(shape)
            domains = [NODFR.elements(v.valency, inner) for v in verts]
            if any(not d for d in domains):
                continue
            n_edges = len(verts) - 1
            for decs in itertools.product(*domains):
                if sum(g.genus for g in decs) > b.max_genus:
                    continue
                for lens in itertools.product(b.length_grid, repeat=n_edges):
                    t = w_contract(NODFR, _place(shape, decs, lens))
                    if w_node_count(t) > max_nodes or w_genus(t) > b.max_genus:
                        continue
                    if not is_protected_w(t):
                        continue
                    node, code = w_canonical(NODFR, t)
                    found.setdefault(code, node)
    return found


def verify_w_colimit(b: Bounds) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport("w-colimit", b.to_json())
    fails = _Failures()
    sys = w_surface_pushout()
    nfs = w_pushout_classes(sys, b)
    psi: dict[str, str] = {}
    pre: dict[str, list] = {}
    for code in sorted(nfs):
        target = nodfr_code(to_nodfr(nfs[code]))
        psi[code] = target
        pre.setdefault(target, []).append(code)
    for target, codes in pre.items():
        if len(codes) > 1:
            fails.add(_size(nfs[codes[0]]), codes[0], {"reason": "two normal forms map to one protected element", "other": codes[1], "target": target})
    for code in sorted(nfs):
        t = w_contract(NODFR, to_nodfr(nfs[code]))
        if not is_protected_w(t):
            fails.add(_size(nfs[code]), code, {"reason": "normal form maps to an unprotected element"})
    protected = protected_w_elements(b)
    for target in sorted(set(protected) - set(pre)):
        fails.add(_size(protected[target]), target, {"reason": "protected element without a normal form"})
    for target in sorted(set(pre) - set(protected)):
        code = pre[target][0]
        fails.add(_size(nfs[code]), code, {"reason": "normal form outside the protected enumeration", "target": target})

    for n in range(1, b.max_arity + 1):
        a = sum(1 for c in nfs if trees.arity(nfs[c]) == n)
        p = sum(1 for c in protected if trees.arity(protected[c]) == n)
        rep.cells.append({"arity": n, "normal_forms": a, "protected": p, "status": PASS if a == p else FAIL})

    rng = random.Random(f"w-colimit:{b.seed}")
    codes = sorted(nfs)
    agree = 0
    for _ in range(b.trial_count):
        cx, cy = rng.choice(codes), rng.choice(codes)
        x, y = nfs[cx], nfs[cy]
        i = rng.randint(1, trees.arity(x))
        lhs = nodfr_code(to_nodfr(normalize(sys, trees.partial_graft(x, i, y)).tree))
        rhs = nodfr_code(w_partial(to_nodfr(x), i, to_nodfr(y)))
        if lhs == rhs:
            agree += 1
        else:
            fails.add(_size(x) + _size(y), f"{cx} o{i} {cy}", {"reason": "comparison map does not commute with composition", "lhs": lhs, "rhs": rhs})
    rep.counts.update(normal_forms=len(nfs), protected=len(protected), composition_pairs=b.trial_count, composition_agree=agree)
    for code in codes[:3]:
        rep.witness.append({"normal_form": code, "protected": psi[code]})
    return _finish(rep, fails, t0)


# ----------------------------------------------------------------------
# Fr and cap


def _retract_cell(args):
    n, b = args
    by_genus: dict[int, list] = {}
    for d in stable_marked_skeletons(n, b.max_genus, b.max_vertices):
        by_genus.setdefault(d.genus, []).append(d)
    out = []
    for g in range(b.max_genus + 1):
        ds = by_genus.get(g, [])
        bad = [d.code for d in ds if cap_map(fr_map(d)) != d]
        out.append((n, g, len(ds), bad))
    return out


def verify_fr_cap_retract(b: Bounds) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport("fr-cap", b.to_json())
    fails = _Failures()
    results = [cell for part in _pmap(_retract_cell, [(n, b) for n in range(1, b.max_arity + 1)]) for cell in part]
    checked = 0
    for n, g, count, bad in results:
        if (n, g) == (1, 0):
            reason = "arity-1 genus-0 marked curves have no stable model"
            try:
                fr_map(dm_graph([Component(0, (1,), True)], []))
                reason += "; fr_map did not flag the corner"
            except CornerCase:
                pass
            rep.cells.append({"arity": n, "genus": g, "skeletons": count, "status": SKIPPED, "reason": reason})
            continue
        checked += count
        for code in bad:
            fails.add(0, code, {"reason": "cap(fr(d)) differs from d"})
        rep.cells.append({"arity": n, "genus": g, "skeletons": count, "status": PASS if not bad else FAIL})
    rep.counts["skeletons_checked"] = checked
    rep.counts["cells_skipped"] = sum(1 for c in rep.cells if c["status"] == SKIPPED)
    return _finish(rep, fails, t0)


# ----------------------------------------------------------------------
# canonical codes against explicit orbits


def _planar_orbit(t) -> set:
    """Every planar presentation reachable by permuting siblings, as s-expressions."""

    def variants(node):
        if isinstance(node, Leaf):
            return [f"#{node.label}"]
        kid_vars = [variants(c) for c in node.children]
        out = set()
        for perm in itertools.permutations(range(len(kid_vars))):
            for combo in itertools.product(*(kid_vars[p] for p in perm)):
                out.add("(_" + "".join(" " + x for x in combo) + ")")
        return sorted(out)

    return set(variants(t))


def verify_canonical_oracle(b: Bounds) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport("canon-oracle", b.to_json())
    fails = _Failures()
    total_orbits = 0
    for n in range(0, b.max_arity + 1):
        seen: set = set()
        code_owner: dict[str, str] = {}
        orbits = 0
        for v in range(1, b.max_vertices + 1):
            for t in trees.planar_trees(n, v):
                s = trees.to_sexp(t)
                if s in seen:
                    continue
                orbit = _planar_orbit(t)
                seen |= orbit
                orbits += 1
                codes = {trees.canonicalize(trees.parse_tree(x)) for x in orbit}
                if len(codes) != 1:
                    fails.add(v, s, {"reason": "isomorphic presentations get different codes", "codes": sorted(codes)[:2]})
                for c in codes:
                    if c in code_owner and code_owner[c] != s:
                        fails.add(v, s, {"reason": "non-isomorphic trees share a code", "other": code_owner[c]})
                    code_owner.setdefault(c, s)
        listed = len([c for c in trees.enumerate_trees(n, b.max_vertices) if c != "|"])
        rep.cells.append({"arity": n, "orbits": orbits, "codes": len(code_owner), "enumerated": listed, "status": PASS if orbits == len(code_owner) == listed else FAIL})
        if not orbits == len(code_owner) == listed:
            fails.add(b.max_vertices, f"arity {n}", {"reason": "orbit count differs from code count"})
        total_orbits += orbits
    rep.counts["orbits"] = total_orbits
    return _finish(rep, fails, t0)


# ----------------------------------------------------------------------
# rewriting properties on seeded starts


def random_free_element(sys, rng: random.Random, b: Bounds):
    """A random free element over P ⊔ Q within the arity, vertex and genus bounds."""
    while True:
        n = rng.randint(1, b.max_arity)
        shapes = [s for s in trees.enumerate_tree_forms(n, b.max_vertices) if s is not TRIVIAL and all(v.valency >= 1 for v in trees.vertices(s))]
        if not shapes:
            continue
        shape = rng.choice(shapes)
        verts = trees.vertices(shape)
        decs = [rng.choice(sys.collection.elements(v.valency, b)) for v in verts]
        if sum(_genus_weight(d) for d in decs) > b.max_genus:
            continue
        it = iter(decs)

        def walk(node):
            d = next(it)
            return Node(d, [c if isinstance(c, Leaf) else walk(c) for c in node.children])

        return walk(shape)


def verify_word_problem(b: Bounds, starts: int = 1000, budget: int = 5000) -> VerificationReport:
    """Closures of seeded starts against normal forms, in both directions."""
    t0 = time.perf_counter()
    rep = VerificationReport("word-problem", b.to_json())
    fails = _Failures()
    sys = surface_pushout()
    rng = random.Random(f"word-problem:{b.seed}")
    undecided = pairs = 0
    owner: dict[str, tuple[int, str]] = {}
    nf_of_start: list[str] = []
    for k in range(starts):
        e = random_free_element(sys, rng, b)
        nf = normal_form(sys, e)
        nf_of_start.append(nf)
        c = closure(sys, e, budget)
        if c is None:
            undecided += 1
            continue
        for code, x in c.items():
            pairs += 1
            if normal_form(sys, x) != nf:
                fails.add(_size(x), code, {"reason": "closure member with a different normal form", "start": sys.code(e)})
            if code in owner and owner[code][1] != nf:
                fails.add(_size(x), code, {"reason": "overlapping closures with different normal forms", "other_start": owner[code][0]})
            owner.setdefault(code, (k, nf))
        if nf not in c:
            fails.add(_size(e), sys.code(e), {"reason": "normal form not reachable by single steps", "normal_form": nf})
    rep.counts.update(starts=starts, closure_pairs=pairs, undecided=undecided, distinct_normal_forms=len(set(nf_of_start)))
    if undecided and not fails:
        rep.status = UNDECIDED_STATUS
    return _finish(rep, fails, t0)


def verify_confluence(b: Bounds, starts: int = 200, trials: int | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    trials = b.trial_count if trials is None else trials
    rep = VerificationReport("confluence", b.to_json())
    fails = _Failures()
    sys = surface_pushout()
    rng = random.Random(f"confluence:{b.seed}")
    for k in range(starts):
        e = random_free_element(sys, rng, b)
        r = confluence_sample(sys, e, trials, b.seed * 1_000_003 + k)
        if not r.ok:
            fails.add(_size(e), r.start, {"reason": "random maximal orders reach several codes", "outcomes": r.outcomes})
    rep.counts.update(starts=starts, trials_per_start=trials)
    return _finish(rep, fails, t0)


def verify_hd(b: Bounds, samples: int = 1000) -> VerificationReport:
    """Gluing across zero-weight seams against zero-length contraction."""
    t0 = time.perf_counter()
    rep = VerificationReport("hd", b.to_json())
    fails = _Failures()
    fr = FrDisc()
    rng = random.Random(f"hd:{b.seed}")
    zero_seams = 0
    for _ in range(samples):
        e = random_w_element(fr, rng, rng.randint(1, b.max_arity), b.max_vertices, b)
        zero_seams += sum(1 for v in trees.vertices(e) if v.length == 0)
        lhs = w_canonical(fr, hd_normalize(e))[1]
        rhs = w_canonical(fr, e)[1]
        if lhs != rhs:
            fails.add(_size(e), trees.to_sexp(e, fr.encode), {"reason": "hd_normalize differs from w_contract", "hd": lhs, "w": rhs})
    rep.counts.update(samples=samples, zero_weight_seams=zero_seams)
    return _finish(rep, fails, t0)


# ----------------------------------------------------------------------
# operad axioms


def axiom_suite() -> list[tuple]:
    """``(instance, bounds, tuple_size)`` for every shipped instance and its W-construction.

    Bounds are per instance: the full default bounds are out of reach for an
    exhaustive check of triples.
    """
    half = Fraction(1, 2)
    return [
        (TreeOperad(), Bounds(4, 3, 4), 4),
        (FreeOperad(TwoPointCollection()), Bounds(4, 3, 3), 3),
        (FrDisc(), Bounds(), None),
        (NodAnnDisc(), Bounds(), None),
        (NodFrDisc(), Bounds(4, 3, 3), 3),
        (WOperad(TreeOperad(), 2), Bounds(2, 0, 1), 3),
        (WOperad(FreeOperad(TwoPointCollection()), 2), Bounds(2, 0, 1), 3),
        (WOperad(FrDisc(), 2), Bounds(2, 1, 1, modulus_grid=(0, half)), 3),
        (WOperad(NodAnnDisc(), 3), Bounds(1, 0, 3, modulus_grid=(0, half)), 3),
        (WOperad(NodFrDisc(), 2), Bounds(2, 1, 2, modulus_grid=(0, half)), 2),
    ]


def _axiom_job(args):
    op, bb, ts = args
    try:
        r = check_axioms(op, bb, tuple_size=ts)
    except BudgetError as exc:
        return op.name, bb.to_json(), ts, {"budget": str(exc)}, None
    return op.name, bb.to_json(), ts, r.counts, r.violations


def verify_axioms(b: Bounds | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport("axioms", (b or Bounds()).to_json())
    fails = _Failures()
    budget_hit = False
    for name, bj, ts, counts, violations in _pmap(_axiom_job, axiom_suite()):
        if violations is None:
            budget_hit = True
            rep.cells.append({"instance": name, "bounds": bj, "tuple_size": ts, "counts": counts, "status": UNDECIDED_STATUS})
            continue
        rep.cells.append({"instance": name, "bounds": bj, "tuple_size": ts, "counts": counts, "violations": len(violations), "status": PASS if not violations else FAIL})
        for v in violations:
            fails.add(len(v["tuple"]), f"{name}:{v['check']}", {"tuple": v["tuple"]})
    rep.counts["instances"] = len(rep.cells)
    if budget_hit and not fails:
        rep.status = UNDECIDED_STATUS
    return _finish(rep, fails, t0)


CHECKS = {
    "free-split": verify_free_split_bijection,
    "geometric-pushout": verify_geometric_pushout,
    "w-colimit": verify_w_colimit,
    "fr-cap": verify_fr_cap_retract,
    "canon-oracle": verify_canonical_oracle,
    "word-problem": verify_word_problem,
    "confluence": verify_confluence,
    "hd": verify_hd,
    "axioms": verify_axioms,
}

"""Verification harness: subset enumeration/sampling, premise checkers, and
seeded campaigns for the two boundary-connectivity statements and the
cutset-crossing principle.

Campaign kinds (the short names are the CLI tokens):

* ``dp`` — for a subset connected in the plain box and an observer outside
  it, the visible boundary (adjacency = plain) is connected inside a probe
  graph, by default the face-diagonal augmentation ``plus``.
* ``k`` — for a subset connected in the king-move box, the star-visible
  boundary (adjacency = star) is connected inside the plain box itself.
* ``lemma`` — sampled minimal cutsets split in two must be crossed by a
  generator with an odd edge count into the observer's side; the
  constructive witness is re-verified from definitions.

Observers default to the apex vertex (the far-away surrogate), in which
case subsets must keep an L∞ margin of at least 2 from the box surface so
the apex faithfully models the unbounded outside.

Trials are pure functions of immutable graphs plus a per-trial seed string
``"{seed}:{index}"``, so campaigns may fan out to worker threads (capped by
the BOUNDARYKIT_THREADS environment variable) and still produce reports
that are byte-identical to sequential runs.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .boundary import full_report, outer_visible_boundary, report_to_json
from .cyclespace import (CycleGen, EdgeVector, crossing_cycle_witness,
                         fundamental_basis, is_chordal_cycle, is_generating)
from .errors import InputError
from .graphs import (Graph, GraphPair, component_of, is_connected_in,
                     is_minimal_cutset, vertexset_to_json)
from .lattice import (ApexGraph, BoxSpec, build_box, build_box_pair,
                      extra_edge_patches, four_cycle_gen, margin_interior,
                      with_apex)

THEOREMS = ("dp", "k", "lemma")
MODES = ("exhaustive", "random")
X_POLICIES = ("apex", "all-outside", "fixed")
THREADS_ENV = "BOUNDARYKIT_THREADS"

# Exhaustive enumeration is refused beyond this, to keep desk-scale runs
# desk-scale: either few candidate vertices or small subsets.
EXHAUSTIVE_VERTEX_BUDGET = 25
EXHAUSTIVE_SIZE_BUDGET = 9


def enumerate_connected_subsets(g: Graph, max_size: int,
                                allowed: Optional[frozenset] = None) -> Iterator[frozenset]:
    """Yield every connected subset of 1..max_size vertices exactly once.

    Canonical order: grouped by smallest member (ascending), each subset
    before its extensions.  Exactly-once discovery works by growing from the
    subset's smallest vertex and only ever adding larger ids, feeding each
    candidate vertex into the extension pool at most once per root.
    ``allowed`` restricts both members and connectivity to a vertex subset.
    """
    if allowed is None:
        allowed_set = frozenset(range(g.vertex_count))
    else:
        allowed_set = frozenset(allowed)
        for v in allowed_set:
            g.require_vertex(v)
    if max_size > EXHAUSTIVE_SIZE_BUDGET and len(allowed_set) > EXHAUSTIVE_VERTEX_BUDGET:
        raise InputError(
            f"enumeration budget exceeded: {len(allowed_set)} candidate vertices with "
            f"max_size {max_size}; need ≤ {EXHAUSTIVE_VERTEX_BUDGET} vertices or "
            f"max_size ≤ {EXHAUSTIVE_SIZE_BUDGET}")
    if max_size < 1:
        return
    for root in sorted(allowed_set):
        ext = [w for w in g.adjacency[root] if w > root and w in allowed_set]
        yield from _grow(g, (root,), ext, frozenset([root, *ext]),
                         root, max_size, allowed_set)


def _grow(g: Graph, sub: tuple, ext: list, seen: frozenset, root: int,
          max_size: int, allowed: frozenset) -> Iterator[frozenset]:
    yield frozenset(sub)
    if len(sub) == max_size:
        return
    for i, u in enumerate(ext):
        fresh = [w for w in g.adjacency[u]
                 if w > root and w in allowed and w not in seen]
        yield from _grow(g, sub + (u,), ext[i + 1:] + fresh,
                         seen | frozenset(fresh), root, max_size, allowed)


def sample_connected_subset(g: Graph, size: int, seed,
                            allowed: Optional[frozenset] = None) -> frozenset:
    """Seeded randomized growth of a connected subset of exactly ``size``
    vertices (within ``allowed`` when given).  Deterministic per seed."""
    pool = sorted(allowed) if allowed is not None else list(range(g.vertex_count))
    for v in pool:
        g.require_vertex(v)
    if not 1 <= size <= len(pool):
        raise InputError(f"cannot grow {size} vertices out of {len(pool)} candidates")
    allowed_set = frozenset(pool)
    rng = random.Random(seed)
    for _attempt in range(64):
        start = pool[rng.randrange(len(pool))]
        chosen = {start}
        frontier = [w for w in g.adjacency[start] if w in allowed_set]
        while frontier and len(chosen) < size:
            w = frontier.pop(rng.randrange(len(frontier)))
            if w in chosen:
                continue
            chosen.add(w)
            for z in g.adjacency[w]:
                if z in allowed_set and z not in chosen:
                    frontier.append(z)
        if len(chosen) == size:
            return frozenset(chosen)
    raise InputError("the allowed region cannot grow a connected subset of the requested size")


def random_connected_graph(vertex_count: int, extra_edges: int, seed) -> Graph:
    """Seeded random spanning tree plus up to ``extra_edges`` random chords."""
    if vertex_count < 1:
        raise InputError("need at least one vertex")
    rng = random.Random(seed)
    order = list(range(vertex_count))
    rng.shuffle(order)
    edges = set()
    for i in range(1, vertex_count):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    added = attempts = 0
    while added < extra_edges and attempts < 20 * extra_edges + 100:
        attempts += 1
        u, v = rng.randrange(vertex_count), rng.randrange(vertex_count)
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e not in edges:
            edges.add(e)
            added += 1
    return Graph(vertex_count, sorted(edges))


# --- premise checkers ------------------------------------------------------

_HYPOTHESES_CACHE: Dict[tuple, bool] = {}


def check_dp_hypotheses(pair: GraphPair, gen: CycleGen) -> bool:
    """Premises of the visible-boundary connectivity statement: ``gen``
    spans the base graph's cycle space and every generator is chordal in
    the augmentation.  Results are cached per (pair, gen) fingerprint."""
    if gen.host is not pair.g and gen.host.fingerprint() != pair.g.fingerprint():
        raise InputError("generators must live in the pair's base graph")
    key = ("base", pair.g.fingerprint(), pair.g_plus.fingerprint(), gen.fingerprint())
    cached = _HYPOTHESES_CACHE.get(key)
    if cached is None:
        cached = (is_generating(gen, pair.g)
                  and all(is_chordal_cycle(o, pair.g_plus) for o in gen.cycles))
        _HYPOTHESES_CACHE[key] = cached
    return cached


def check_k_hypotheses(pair: GraphPair, gen: CycleGen,
                       patch_map: Dict[Tuple[int, int], EdgeVector]) -> bool:
    """Premises of the star-boundary connectivity statement: the base
    premises plus, for every augmentation-only edge e, a patch cycle
    through e whose other edges lie in the base graph, chordal in the
    augmentation.  ``patch_map`` must be keyed by exactly those edges."""
    extra = [e for e in pair.g_plus.edges if not pair.g.has_edge(*e)]
    patches = {}
    for k, vec in patch_map.items():
        u, v = k
        patches[(min(u, v), max(u, v))] = vec
    missing = [e for e in extra if e not in patches]
    if missing:
        raise InputError(
            f"{len(missing)} augmentation edges lack patch cycles, e.g. {missing[:3]}")
    foreign = sorted(set(patches) - set(extra))
    if foreign:
        raise InputError(
            f"patch map keys must be augmentation-only edges; offenders e.g. {foreign[:3]}")
    key = ("patched", pair.g.fingerprint(), pair.g_plus.fingerprint(),
           gen.fingerprint(),
           hash(tuple(sorted((e, vec.bits) for e, vec in patches.items()))))
    cached = _HYPOTHESES_CACHE.get(key)
    if cached is None:
        cached = _check_k_uncached(pair, gen, patches, extra)
        _HYPOTHESES_CACHE[key] = cached
    return cached


def _check_k_uncached(pair: GraphPair, gen: CycleGen, patches, extra) -> bool:
    if not check_dp_hypotheses(pair, gen):
        return False
    for e in extra:
        vec = patches[e]
        if vec.host is not pair.g_plus and vec.host.fingerprint() != pair.g_plus.fingerprint():
            raise InputError("patch cycles must live in the augmentation graph")
        if not vec.is_cycle():
            return False
        if not (vec.bits >> pair.g_plus.edge_id(*e)) & 1:
            return False
        if any(pe != e and not pair.g.has_edge(*pe) for pe in vec.edges()):
            return False
        if not is_chordal_cycle(vec, pair.g_plus):
            return False
    return True


# --- campaign configuration ------------------------------------------------

@dataclass(frozen=True)
class TrialConfig:
    """One verification campaign, fully determined by its fields.

    ``x_policy`` picks observers: the apex surrogate, every vertex outside
    the subset plus the apex (``all-outside``), or one ``fixed`` vertex
    (requires ``x_vertex``).  ``probe`` overrides the connectivity probe of
    ``dp`` campaigns (default ``plus``); ``g_prime`` overrides the adjacency
    graph of ``k`` campaigns (default ``star``) — both exist mainly for
    negative controls.  ``lemma`` campaigns are sampling-only; they ignore
    margin and x_policy and alternate between the configured box and seeded
    random connected graphs.
    """

    theorem: str
    box: BoxSpec
    mode: str = "exhaustive"
    max_size: int = 6
    trials: int = 1000
    seed: int = 0
    margin: int = 2
    x_policy: str = "apex"
    x_vertex: Optional[int] = None
    probe: Optional[str] = None
    g_prime: Optional[str] = None

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise InputError(f"theorem must be one of {THEOREMS}, got {self.theorem!r}")
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.x_policy not in X_POLICIES:
            raise InputError(f"x_policy must be one of {X_POLICIES}, got {self.x_policy!r}")
        if self.max_size < 1:
            raise InputError("max_size must be ≥ 1")
        if self.margin < 0:
            raise InputError("margin must be ≥ 0")
        if self.mode == "random" and self.trials < 1:
            raise InputError("random mode needs trials ≥ 1")
        if self.mode == "exhaustive":
            if (self.box.side ** self.box.d > EXHAUSTIVE_VERTEX_BUDGET
                    and self.max_size > EXHAUSTIVE_SIZE_BUDGET):
                raise InputError(
                    "exhaustive budget: box must have ≤ "
                    f"{EXHAUSTIVE_VERTEX_BUDGET} vertices or max_size ≤ "
                    f"{EXHAUSTIVE_SIZE_BUDGET}")
        if self.x_policy == "apex" and self.theorem != "lemma" and self.margin < 2:
            raise InputError("apex observers need margin ≥ 2 to stay faithful")
        if self.x_policy == "fixed" and self.x_vertex is None:
            raise InputError("fixed x_policy needs x_vertex")
        if self.theorem == "lemma" and self.mode != "random":
            raise InputError("the crossing-lemma campaign samples instances; use mode=random")
        if self.theorem != "lemma" and self.box.d < 2:
            raise InputError("boundary campaigns need d ≥ 2 (cycle space is trivial otherwise)")
        if self.probe is not None and self.theorem != "dp":
            raise InputError("probe overrides apply to dp campaigns only")
        if self.g_prime is not None and self.theorem != "k":
            raise InputError("g_prime overrides apply to k campaigns only")

    def echo(self) -> dict:
        return {
            "theorem": self.theorem,
            "box": str(self.box),
            "mode": self.mode,
            "max_size": self.max_size,
            "trials": self.trials,
            "seed": self.seed,
            "margin": self.margin,
            "x_policy": self.x_policy,
            "x_vertex": self.x_vertex,
            "probe": self.probe,
            "g_prime": self.g_prime,
        }


@dataclass
class VerifyReport:
    """Outcome of one campaign; failures carry full replay data."""

    config: dict
    trials_run: int
    failures: List[dict]
    trial_seeds: List[str]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, include_elapsed: bool = True) -> dict:
        out = {
            "schema": 1,
            "config": self.config,
            "trials_run": self.trials_run,
            "failures": self.failures,
            "trial_seeds": self.trial_seeds,
            "passed": self.passed,
        }
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def _run_trials(worker, tasks: Sequence) -> List:
    """Run independent trials, merging results in task order regardless of
    worker count."""
    workers = _worker_count()
    if workers <= 1:
        return [worker(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, tasks))


def _vertex_json(g: Graph, v: int):
    return list(g.labels[v]) if g.labels is not None else v


def _trial_seed(seed: int, index: int) -> str:
    return f"{seed}:{index}"


# --- boundary campaigns (dp / k) -------------------------------------------

def _boundary_setting(cfg: TrialConfig, skip_hypotheses: bool):
    """Build graphs, generators, and premise verdicts for a dp/k campaign."""
    base = BoxSpec(cfg.box.d, cfg.box.side, "plain")
    gen = four_cycle_gen(base)
    if cfg.theorem == "dp":
        pair = build_box_pair(base, cfg.probe or "plus")
        hyp_ok = check_dp_hypotheses(pair, gen)
        connect_host = pair.g          # subsets must be plain-connected
    else:
        pair = build_box_pair(base, cfg.g_prime or "star")
        hyp_ok = check_k_hypotheses(pair, gen, extra_edge_patches(pair))
        connect_host = pair.g_plus     # subsets must be star-connected
    if not hyp_ok and not skip_hypotheses:
        raise InputError(
            "theorem premises fail for this configuration; "
            "pass skip_hypotheses (CLI: --skip-hypotheses) to run it as a negative control")
    apexed = with_apex(pair)
    if cfg.theorem == "dp":
        graphs = (apexed.pair.g, apexed.pair.g, apexed.pair.g_plus)
    else:
        graphs = (apexed.pair.g, apexed.pair.g_plus, apexed.pair.g)
    return pair, apexed, graphs, connect_host


def _observers(cfg: TrialConfig, apexed: ApexGraph, c: frozenset) -> List[int]:
    if cfg.x_policy == "apex":
        return [apexed.apex]
    if cfg.x_policy == "fixed":
        x = cfg.x_vertex
        if not 0 <= x <= apexed.apex:
            raise InputError(f"x_vertex {x} outside the apexed graph")
        return [x] if x not in c else []
    return [apexed.apex] + [v for v in range(apexed.apex) if v not in c]


def _run_boundary_campaign(cfg: TrialConfig, skip_hypotheses: bool,
                           fixed_c: Optional[frozenset]):
    pair, apexed, (g_t, gp_t, probe_t), connect_host = _boundary_setting(cfg, skip_hypotheses)
    allowed = margin_interior(pair.g, cfg.margin)

    def run_one(task):
        index, seed_str, c, x = task
        rep = full_report(g_t, gp_t, probe_t, c, x)
        if rep.component_count == 1:
            return None
        return {
            "trial": index,
            "seed": seed_str,
            "kind": "disconnected-visible-boundary",
            "c": vertexset_to_json(pair.g, c),
            "x": "apex" if x == apexed.apex else _vertex_json(pair.g, x),
            "report": report_to_json(rep, g_t),
        }

    tasks = []
    trial_seeds: List[str] = []
    if fixed_c is not None:
        c = frozenset(fixed_c)
        for v in c:
            pair.g.require_vertex(v)
        if not is_connected_in(connect_host, c):
            raise InputError(
                "precondition: the supplied subset is not connected in the graph "
                "the theorem requires (dp: plain box, k: the adjacency graph)")
        if cfg.x_policy == "apex" and not c <= allowed:
            raise InputError(
                f"precondition: apex observers need the subset inside margin {cfg.margin}")
        for x in _observers(cfg, apexed, c):
            tasks.append((len(tasks), None, c, x))
    elif cfg.mode == "exhaustive":
        for c in enumerate_connected_subsets(connect_host, cfg.max_size, allowed=allowed):
            for x in _observers(cfg, apexed, c):
                tasks.append((len(tasks), None, c, x))
    else:
        size_cap = min(cfg.max_size, len(allowed))
        if size_cap < 1:
            raise InputError(f"margin {cfg.margin} leaves no room for subsets in {cfg.box}")
        for i in range(cfg.trials):
            seed_str = _trial_seed(cfg.seed, i)
            trial_seeds.append(seed_str)
            rng = random.Random(seed_str)
            size = rng.randint(1, size_cap)
            xs = None
            for attempt in range(64):
                c = sample_connected_subset(connect_host, size,
                                            seed=f"{seed_str}/c{attempt}",
                                            allowed=allowed)
                xs = _observers(cfg, apexed, c)
                if xs:
                    break
            if not xs:
                raise InputError("could not sample a subset compatible with the observer policy")
            x = xs[0] if len(xs) == 1 else sorted(xs)[rng.randrange(len(xs))]
            tasks.append((i, seed_str, c, x))

    failures = [f for f in _run_trials(run_one, tasks) if f is not None]
    return len(tasks), failures, trial_seeds


# --- crossing-lemma campaign ------------------------------------------------

def _crossing_postconditions(g: Graph, o: EdgeVector, s1: frozenset,
                             s2: frozenset, x: int, s: frozenset) -> List[str]:
    """Definition-level re-verification of a crossing witness; returns the
    list of violated postconditions (empty = all good)."""
    problems = []
    edges = o.edges()
    if not any(u in s1 or v in s1 for u, v in edges):
        problems.append("witness does not touch the first half")
    if not any(u in s2 or v in s2 for u, v in edges):
        problems.append("witness does not touch the second half")
    side = component_of(g, x, s)
    crossing = sum(1 for u, v in edges
                   if (u in s2 and v in side) or (v in s2 and u in side))
    if crossing % 2 == 0:
        problems.append(f"crossing count {crossing} is even")
    return problems


def _run_crossing_campaign(cfg: TrialConfig, skip_hypotheses: bool,
                           fixed_c: Optional[frozenset]):
    if fixed_c is not None:
        raise InputError("crossing-lemma campaigns sample their own instances")
    base = BoxSpec(cfg.box.d, cfg.box.side, "plain")
    box = build_box(base)
    box_gen = four_cycle_gen(base) if cfg.box.d >= 2 else fundamental_basis(box)
    if not skip_hypotheses and not is_generating(box_gen, box):
        raise InputError("the box generating set does not span its cycle space")

    trial_seeds = [_trial_seed(cfg.seed, i) for i in range(cfg.trials)]

    def run_one(index: int):
        seed_str = trial_seeds[index]
        rng = random.Random(seed_str)
        # Alternate hosts: even trials exercise the configured box with its
        # unit-face generators, odd trials a seeded random connected graph
        # with a spanning-tree basis.
        for round_ in range(8):
            if index % 2 == 0 and round_ == 0:
                g, gen = box, box_gen
            else:
                nv = rng.randint(8, 16)
                g = random_connected_graph(nv, rng.randint(max(2, nv // 4), nv),
                                           seed=f"{seed_str}/g{round_}")
                gen = fundamental_basis(g)
            instance = _sample_crossing_instance(g, rng, cfg.max_size, seed_str, round_)
            if instance is None:
                continue
            c, x, y, s, s1, s2 = instance
            if not is_minimal_cutset(g, s, x, frozenset({y})):
                return {"trial": index, "seed": seed_str,
                        "kind": "cutset-not-minimal",
                        "c": vertexset_to_json(g, c),
                        "x": _vertex_json(g, x), "y": _vertex_json(g, y),
                        "s": vertexset_to_json(g, s)}
            try:
                o = crossing_cycle_witness(g, gen, s1, s2, x, y)
            except Exception as exc:
                return {"trial": index, "seed": seed_str,
                        "kind": "witness-error", "error": str(exc),
                        "c": vertexset_to_json(g, c),
                        "x": _vertex_json(g, x), "y": _vertex_json(g, y),
                        "s1": vertexset_to_json(g, s1),
                        "s2": vertexset_to_json(g, s2)}
            problems = _crossing_postconditions(g, o, s1, s2, x, s)
            if not any(o.bits == member.bits for member in gen.cycles):
                problems.append("witness is not a member of the generating set")
            if problems:
                return {"trial": index, "seed": seed_str,
                        "kind": "postcondition-failure", "problems": problems,
                        "witness": o.to_json(),
                        "c": vertexset_to_json(g, c),
                        "x": _vertex_json(g, x), "y": _vertex_json(g, y),
                        "s1": vertexset_to_json(g, s1),
                        "s2": vertexset_to_json(g, s2)}
            return None
        raise RuntimeError(
            f"trial {index} ({seed_str}) could not sample a usable cutset instance; "
            "the sampler or the configuration is off — refusing to skip silently")

    failures = [f for f in _run_trials(run_one, range(cfg.trials)) if f is not None]
    return cfg.trials, failures, trial_seeds


def _sample_crossing_instance(g: Graph, rng: random.Random, max_size: int,
                              seed_str: str, round_: int):
    """One attempt batch at (c, x, y, cutset, halves) on a host graph."""
    for attempt in range(40):
        size = rng.randint(1, max(1, min(max_size, g.vertex_count - 3)))
        try:
            c = sample_connected_subset(
                g, size, seed=f"{seed_str}/r{round_}/c{attempt}")
        except InputError:
            continue
        eligible = [v for v in range(g.vertex_count)
                    if v not in c and not any(w in c for w in g.adjacency[v])]
        if not eligible:
            continue
        x = eligible[rng.randrange(len(eligible))]
        s = outer_visible_boundary(g, g, c, x)
        if len(s) < 2:
            continue
        members = sorted(s)
        rng.shuffle(members)
        cut = rng.randrange(1, len(members))
        s1, s2 = frozenset(members[:cut]), frozenset(members[cut:])
        ys = sorted(c)
        y = ys[rng.randrange(len(ys))]
        return c, x, y, s, s1, s2
    return None


# --- entry points -----------------------------------------------------------

def run_verification(cfg: TrialConfig, skip_hypotheses: bool = False,
                     fixed_c: Optional[frozenset] = None) -> VerifyReport:
    """Run one campaign.  Premises are checked first and failing ones refuse
    to run unless ``skip_hypotheses`` is set (negative controls).  With
    ``fixed_c``, the campaign runs that single subset (ids of the box graph)
    against the configured observers instead of generating subsets."""
    start = time.perf_counter()
    if cfg.theorem in ("dp", "k"):
        trials_run, failures, trial_seeds = _run_boundary_campaign(
            cfg, skip_hypotheses, fixed_c)
    else:
        trials_run, failures, trial_seeds = _run_crossing_campaign(
            cfg, skip_hypotheses, fixed_c)
    return VerifyReport(cfg.echo(), trials_run, failures, trial_seeds,
                        time.perf_counter() - start)


def hypothesis_report(theorem: str, box: BoxSpec, probe: Optional[str] = None,
                      g_prime: Optional[str] = None) -> dict:
    """Premise verdict for a theorem on a box, as a JSON-ready dict."""
    base = BoxSpec(box.d, box.side, "plain")
    gen = four_cycle_gen(base)
    if theorem == "dp":
        pair = build_box_pair(base, probe or "plus")
        ok = check_dp_hypotheses(pair, gen)
        detail = {"generators": len(gen.cycles), "augmentation": probe or "plus"}
    elif theorem == "k":
        pair = build_box_pair(base, g_prime or "star")
        patches = extra_edge_patches(pair)
        ok = check_k_hypotheses(pair, gen, patches)
        detail = {"generators": len(gen.cycles), "patch_cycles": len(patches),
                  "augmentation": g_prime or "star"}
    else:
        raise InputError("premise checks exist for the dp and k theorems")
    return {"schema": 1, "theorem": theorem, "box": str(box), "pass": ok, **detail}

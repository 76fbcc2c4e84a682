"""Exhaustive search for Arrow social welfare functions at small scale.

Every IIA SWF on a full domain is a choice of one aggregation table per pair
of alternatives.  On linear ballots a table is a boolean function
``f_ab : 2^m -> 2`` (bit ``U`` set iff society puts ``a`` above ``b`` when
exactly the voters in ``U`` do).  A candidate survives when every table is
Pareto (``f(all) = 1``, ``f(none) = 0``) and, at every profile, the
assembled pairwise outcomes are transitive.

Two independent engines:

* ``flat`` enumerates the Pareto tables per pair and tests all combinations
  with numpy, one outer ``f_ab`` at a time (parallel over ``f_ab`` chunks).
* ``backtrack`` solves the same constraints with forward-checking
  backtracking; it also covers m = 4 and the weak-ballot search.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .base import format_coalition
from .decisive import arrow_conclusion, check_ultrafilter, decisive_family
from .factorization import check_factorization, family_to_boolfn, projection
from .orders import alternatives, enumerate_linear_orders, enumerate_weak_orders
from .profiles import full_linear, full_weak
from .swf import PairwiseTables, Swf, dictatorship, find_dictator, from_pairwise

log = logging.getLogger(__name__)

KINDS = ("linear", "weak")
METHODS = ("auto", "flat", "backtrack")


class InfeasibleConfig(ValueError):
    pass


class ArrowAssertionFailed(AssertionError):
    """A survivor contradicts the expected Arrow conclusion."""


@dataclass(frozen=True)
class SearchConfig:
    n: int = 3
    m: int = 2
    kind: str = "linear"
    jobs: int = 1
    method: str = "auto"
    verbose: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InfeasibleConfig(f"domain kind must be one of {KINDS}, got {self.kind!r}")
        if self.method not in METHODS:
            raise InfeasibleConfig(f"method must be one of {METHODS}, got {self.method!r}")
        if self.jobs < 1:
            raise InfeasibleConfig("jobs must be >= 1")
        if self.kind == "linear":
            ok = (self.n in (2, 3) and 1 <= self.m <= 3) or (self.n == 3 and self.m == 4)
            if not ok:
                raise InfeasibleConfig(
                    f"linear search supports n in {{2,3}} with m in 1..3, or n=3, m=4; got n={self.n}, m={self.m}")
            if self.m == 4 and self.method == "flat":
                raise InfeasibleConfig("m=4 is only searched by backtracking")
        else:
            if not (self.n == 3 and self.m in (1, 2)):
                raise InfeasibleConfig(f"weak search supports n=3, m in {{1,2}}; got n={self.n}, m={self.m}")
            if self.method == "flat":
                raise InfeasibleConfig("the weak search is backtracking only")

    @property
    def engine(self) -> str:
        if self.method != "auto":
            return self.method
        return "flat" if self.kind == "linear" and self.m <= 3 else "backtrack"

    @property
    def candidates(self) -> int:
        pairs = math.comb(self.n, 2)
        if self.kind == "linear":
            return (2 ** (2 ** self.m)) ** pairs
        return (3 ** (3 ** self.m)) ** pairs


# -- constraint data -----------------------------------------------------------

_PAIRS3 = ((0, 1), (0, 2), (1, 2))  # ab, ac, bc


def _linear_profile_triples(m: int) -> list[tuple[int, int, int]]:
    """Distinct ``(U_ab, U_ac, U_bc)`` over all ``6^m`` linear profiles on ``{a,b,c}``."""
    orders = enumerate_linear_orders(3)
    bits = [tuple(r.holds(x, y) for x, y in _PAIRS3) for r in orders]
    out = set()
    for combo in itertools.product(bits, repeat=m):
        out.add(tuple(sum(1 << i for i, b in enumerate(combo) if b[k]) for k in range(3)))
    return sorted(out)


def _pareto_tables(m: int) -> list[int]:
    full = (1 << m) - 1
    return [t for t in range(1 << (1 << m)) if t >> full & 1 and not t & 1]


def _cyclic(ab: int, ac: int, bc: int) -> bool:
    # a>b>c>a or its reverse
    return bool((ab and bc and not ac) or (not ab and not bc and ac))


# -- flat engine ----------------------------------------------------------------

def _scan_chunk(args) -> list[tuple[int, int, int]]:
    m, outer = args
    tables = _pareto_tables(m)
    triples = _linear_profile_triples(m)
    bits = np.array([[t >> U & 1 for U in range(1 << m)] for t in tables], dtype=bool)
    found = []
    for ia in outer:
        t_ab = tables[ia]
        bad = np.zeros((len(tables), len(tables)), dtype=bool)  # rows f_ac, cols f_bc
        for u_ab, u_ac, u_bc in triples:
            if t_ab >> u_ab & 1:
                bad |= np.outer(~bits[:, u_ac], bits[:, u_bc])
            else:
                bad |= np.outer(bits[:, u_ac], ~bits[:, u_bc])
        for i_ac, i_bc in zip(*np.nonzero(~bad)):
            found.append((t_ab, tables[i_ac], tables[i_bc]))
    return found


def _flat_linear(n: int, m: int, jobs: int) -> list[tuple[int, ...]]:
    tables = _pareto_tables(m)
    if n == 2:
        return [(t,) for t in tables]
    idx = list(range(len(tables)))
    if jobs == 1:
        found = _scan_chunk((m, idx))
    else:
        chunks = [(m, idx[k::jobs]) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = [row for part in pool.map(_scan_chunk, chunks) for row in part]
    return sorted(found)


# -- backtracking engine ----------------------------------------------------------

def solve_all(domains: list[tuple], constraints: list[tuple[tuple[int, ...], frozenset]]) -> list[tuple]:
    """Every assignment satisfying all table constraints, in lexicographic order.

    ``constraints`` are ``(scope, allowed_value_tuples)``.  Forward checking:
    when a constraint has one open variable left, that variable's domain is
    cut to the values some allowed tuple still permits.
    """
    nv = len(domains)
    by_var: list[list[int]] = [[] for _ in range(nv)]
    for ci, (scope, _) in enumerate(constraints):
        for v in set(scope):
            by_var[v].append(ci)
    solutions = []

    def propagate(doms, var) -> list | None:
        doms = list(doms)
        queue = [var]
        while queue:
            v = queue.pop()
            for ci in by_var[v]:
                scope, allowed = constraints[ci]
                open_vars = [w for w in scope if len(doms[w]) > 1]
                if len(open_vars) > 1:
                    continue
                if not open_vars:
                    if tuple(doms[w][0] for w in scope) not in allowed:
                        return None
                    continue
                w = open_vars[0]
                keep = tuple(
                    val for val in doms[w]
                    if tuple(val if x == w else doms[x][0] for x in scope) in allowed
                )
                if not keep:
                    return None
                if len(keep) < len(doms[w]):
                    doms[w] = keep
                    queue.append(w)
        return doms

    def search(doms):
        open_vars = [v for v in range(nv) if len(doms[v]) > 1]
        if not open_vars:
            solutions.append(tuple(d[0] for d in doms))
            return
        v = min(open_vars, key=lambda w: (len(doms[w]), w))
        for val in doms[v]:
            trial = list(doms)
            trial[v] = (val,)
            nxt = propagate(trial, v)
            if nxt is not None:
                search(nxt)

    start = [tuple(d) for d in domains]
    for v in range(nv):
        if len(start[v]) == 1:
            start = propagate(start, v)
            if start is None:
                return []
    search(start)
    return sorted(solutions)


def _backtrack_linear(n: int, m: int) -> list[tuple[int, ...]]:
    size = 1 << m
    full = size - 1
    pairs = list(itertools.combinations(range(n), 2))
    domains = []
    for _ in pairs:
        for U in range(size):
            domains.append((1,) if U == full else (0,) if U == 0 else (0, 1))
    constraints = []
    if n == 3:
        allowed = frozenset(t for t in itertools.product((0, 1), repeat=3) if not _cyclic(*t))
        for u_ab, u_ac, u_bc in _linear_profile_triples(m):
            constraints.append(((u_ab, size + u_ac, 2 * size + u_bc), allowed))
    out = []
    for sol in solve_all(domains, constraints):
        out.append(tuple(
            sum(sol[k * size + U] << U for U in range(size)) for k in range(len(pairs))
        ))
    return sorted(out)


_WEAK_CODES = (">", "<", "~")


def _code(r, x, y) -> str:
    xy, yx = r.holds(x, y), r.holds(y, x)
    return "~" if xy and yx else ">" if xy else "<"


def _backtrack_weak(m: int) -> list[tuple[dict, ...]]:
    keys = list(itertools.product(_WEAK_CODES, repeat=m))
    kidx = {k: i for i, k in enumerate(keys)}
    size = len(keys)
    domains = []
    for _ in _PAIRS3:
        for k in keys:
            if all(c == ">" for c in k):
                domains.append((">",))
            elif all(c == "<" for c in k):
                domains.append(("<",))
            else:
                domains.append(_WEAK_CODES)
    orders = enumerate_weak_orders(3)
    allowed = frozenset(tuple(_code(r, x, y) for x, y in _PAIRS3) for r in orders)
    scopes = set()
    for combo in itertools.product(orders, repeat=m):
        codes = [tuple(_code(r, x, y) for r in combo) for x, y in _PAIRS3]
        scopes.add(tuple(pi * size + kidx[c] for pi, c in enumerate(codes)))
    constraints = [(scope, allowed) for scope in sorted(scopes)]
    out = []
    for sol in solve_all(domains, constraints):
        out.append(tuple({k: sol[pi * size + i] for i, k in enumerate(keys)} for pi in range(3)))
    return out


# -- materialisation --------------------------------------------------------------

def _linear_tables(n: int, m: int, funcs: tuple[int, ...]) -> PairwiseTables:
    pairs = list(itertools.combinations(range(n), 2))
    tables = {}
    for pair, f in zip(pairs, funcs):
        tab = {}
        for key in itertools.product((">", "<"), repeat=m):
            U = sum(1 << i for i, c in enumerate(key) if c == ">")
            tab[key] = ">" if f >> U & 1 else "<"
        tables[pair] = tab
    return PairwiseTables(alternatives(n), m, "linear", tables)


def search_linear_tables(cfg: SearchConfig) -> list[tuple[int, ...]]:
    """Surviving per-pair truth tables ``(f_ab, f_ac, f_bc)`` (just ``(f_ab,)`` for n=2)."""
    if cfg.kind != "linear":
        raise InfeasibleConfig("search_linear_tables needs a linear configuration")
    if cfg.engine == "flat":
        return _flat_linear(cfg.n, cfg.m, cfg.jobs)
    return _backtrack_linear(cfg.n, cfg.m)


def enumerate_arrow_swfs(cfg: SearchConfig) -> list[Swf]:
    """All IIA + Pareto SWFs with transitive outputs on the full linear domain."""
    domain = full_linear(cfg.n, cfg.m)
    return [from_pairwise(_linear_tables(cfg.n, cfg.m, f), domain)
            for f in search_linear_tables(cfg)]


def enumerate_arrow_swfs_weak(cfg: SearchConfig) -> list[Swf]:
    """All IIA + Pareto SWFs with weak-order outputs on the full weak domain (n=3)."""
    if cfg.kind != "weak":
        raise InfeasibleConfig("enumerate_arrow_swfs_weak needs kind='weak'")
    domain = full_weak(cfg.n, cfg.m)
    out = []
    for tabs in _backtrack_weak(cfg.m):
        t = PairwiseTables(domain.carrier, cfg.m, "weak", dict(zip(_PAIRS3, tabs)))
        out.append(from_pairwise(t, domain))
    return out


# -- verification -----------------------------------------------------------------

@dataclass
class SurvivorInfo:
    dictator: int | None
    family: frozenset
    h_hex: str
    ultrafilter: bool
    square: str

    def line(self, k: int) -> str:
        fam = ",".join(format_coalition(U) for U in sorted(self.family)) or "-"
        dic = "none" if self.dictator is None else str(self.dictator)
        uf = "principal" if self.ultrafilter else "no"
        return f"survivor {k}: dictator={dic} ultrafilter={uf} h=0x{self.h_hex} square={self.square} family={fam}"


@dataclass
class SearchReport:
    config: SearchConfig
    candidates: int
    valid: int
    survivors: list[SurvivorInfo] = field(default_factory=list)
    swfs: list[Swf] = field(default_factory=list, repr=False)
    duration: float = 0.0

    @property
    def dictators(self) -> list[int]:
        return sorted({s.dictator for s in self.survivors if s.dictator is not None})

    @property
    def dictatorial(self) -> int:
        return sum(s.dictator is not None for s in self.survivors)

    def summary(self) -> str:
        line = f"candidates={self.candidates} valid={self.valid} dictators=[{','.join(map(str, self.dictators))}]"
        if self.config.n < 3 or self.config.kind == "weak":
            line += f" dictatorial={self.dictatorial}"
        return line

    def lines(self) -> list[str]:
        cfg = self.config
        out = [self.summary(), f"alternatives={cfg.n} voters={cfg.m} domain={cfg.kind}"]
        out += [info.line(k) for k, info in enumerate(self.survivors)]
        if cfg.n < 3:
            out.append("arrow: not applicable (|A| < 3)")
        return out


def _survivor_info(s: Swf, with_square: bool) -> SurvivorInfo:
    fam = decisive_family(s)
    rep = check_ultrafilter(fam, s.m)
    h = family_to_boolfn(fam, s.m)
    square = "-"
    if with_square:
        fr = check_factorization(s)
        square = "OK" if fr.square_commutes else "FAIL"
    return SurvivorInfo(find_dictator(s), fam, h.to_hex(), rep.ok, square)


def verify_arrow(cfg: SearchConfig) -> SearchReport:
    """Run the search and push every survivor through the decisive-set pipeline.

    For ``n >= 3`` on linear ballots, asserts that there are exactly ``m``
    survivors, that they are the ``m`` dictatorships, that each decisive
    family is the principal ultrafilter at the dictator and that its
    characteristic function is that projection with a commuting
    factorization square.  On weak ballots, asserts every survivor has a
    dictator.  Raises :class:`ArrowAssertionFailed` at the first discrepancy.
    """
    t0 = time.perf_counter()
    if cfg.kind == "linear":
        swfs = enumerate_arrow_swfs(cfg)
    else:
        swfs = enumerate_arrow_swfs_weak(cfg)
    log.info("search n=%d m=%d %s: %d survivors", cfg.n, cfg.m, cfg.kind, len(swfs))
    arrow = cfg.n >= 3
    report = SearchReport(cfg, cfg.candidates, len(swfs), swfs=swfs)
    for s in swfs:
        report.survivors.append(_survivor_info(s, with_square=arrow and cfg.kind == "linear"))

    if arrow:
        for k, (s, info) in enumerate(zip(swfs, report.survivors)):
            if info.dictator is None:
                raise ArrowAssertionFailed(f"survivor {k} has no dictator")
            if arrow_conclusion(s) != info.dictator:
                raise ArrowAssertionFailed(f"survivor {k}: ultrafilter generator differs from dictator")
            if not info.ultrafilter:
                raise ArrowAssertionFailed(f"survivor {k}: decisive family is not an ultrafilter")
        if cfg.kind == "linear":
            if len(swfs) != cfg.m:
                raise ArrowAssertionFailed(f"expected {cfg.m} survivors, found {len(swfs)}")
            if sorted(i.dictator for i in report.survivors) != list(range(cfg.m)):
                raise ArrowAssertionFailed("survivors are not one dictatorship per voter")
            for k, (s, info) in enumerate(zip(swfs, report.survivors)):
                if s != dictatorship(info.dictator, s.domain):
                    raise ArrowAssertionFailed(f"survivor {k} differs from dictatorship({info.dictator})")
                if info.h_hex != projection(info.dictator, cfg.m).to_hex():
                    raise ArrowAssertionFailed(f"survivor {k}: h is not the projection onto {info.dictator}")
                if info.square != "OK":
                    raise ArrowAssertionFailed(f"survivor {k}: factorization square does not commute")
    report.duration = time.perf_counter() - t0
    return report


def emit_survivors(report: SearchReport, directory) -> list[Path]:
    from .formats import write_swf

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, s in enumerate(report.swfs):
        path = directory / f"survivor_{k}.swf"
        write_swf(s, path)
        paths.append(path)
    return paths

"""Closed-form lower bounds on ``Delta - rho`` and per-graph bound reports."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields

from .canon import MAX_CANON_N, is_isomorphic
from .constructions import b_graph
from .graph import DisconnectedGraphError, Graph, GraphError, is_bipartite
from .spectral import DEFAULT_TOL, spectral_radius

# all bounds are strict inequalities; "satisfied" demands this relative margin
STRICT_MARGIN = 1e-12


def stevanovic_bound(n: int, delta: int) -> float:
    """``1 / (2n(n Delta - 1) Delta^2)``, valid for connected irregular graphs."""
    if n < 2 or delta < 1:
        raise ValueError(f"need n >= 2 and Delta >= 1, got n={n}, Delta={delta}")
    return 1.0 / (2 * n * (n * delta - 1) * delta * delta)


def cioaba_bound(n: int, diameter: int) -> float:
    """``1 / (n D)``, valid for connected irregular graphs of diameter ``D``."""
    if n < 1 or diameter < 1:
        raise ValueError(f"need n, D >= 1, got n={n}, D={diameter}")
    return 1.0 / (n * diameter)


def new_bipartite_bound(n: int, delta: int) -> float:
    """``2 Delta / (n (4n + Delta - 4))``, valid for connected irregular bipartite graphs."""
    if n < 2 or delta < 2:
        raise ValueError(f"need n >= 2 and Delta >= 2, got n={n}, Delta={delta}")
    return 2.0 * delta / (n * (4 * n + delta - 4))


def sqrt_size_bound(m: int) -> float:
    """``sqrt(m)``, an upper bound on ``rho`` of any bipartite graph with ``m`` edges."""
    return math.sqrt(m)


def lemma5_bounds(n: int) -> tuple[float, float]:
    """Lower and upper bound on ``3 - rho(B_n)`` for even ``n >= 6``."""
    if n < 6 or n % 2:
        raise ValueError(f"need even n >= 6, got {n}")
    lower = 4.0 * math.sin(math.pi / (2 * n + 2)) ** 2
    upper = (4 * n + 48) / (n - 2) * math.sin(math.pi / (2 * n)) ** 2
    return lower, upper


def strictly_exceeds(value: float, bound: float) -> bool:
    return value - bound > STRICT_MARGIN * max(abs(bound), 1e-300)


@dataclass
class BoundReport:
    n: int
    delta: int
    m: int
    diameter: int
    bipartite: bool
    rho: float
    gap: float
    stevanovic: float
    cioaba: float
    new_bound: float | None
    sqrt_m: float | None
    lemma5_lower: float | None
    lemma5_upper: float | None
    stevanovic_ok: bool
    cioaba_ok: bool
    new_bound_ok: bool | None
    sqrt_m_ok: bool | None
    lemma5_ok: bool | None
    graph6: str = ""

    def all_ok(self) -> bool:
        flags = (self.stevanovic_ok, self.cioaba_ok, self.new_bound_ok,
                 self.sqrt_m_ok, self.lemma5_ok)
        return all(f for f in flags if f is not None)

    def to_dict(self) -> dict:
        return asdict(self)


def _is_b_graph(g: Graph) -> bool:
    if g.n < 6 or g.max_degree != 3:
        return False
    ref = b_graph(g.n)
    if g == ref:
        return True
    return g.n <= MAX_CANON_N and is_isomorphic(g, ref)


def bound_report(g: Graph, tol: float = DEFAULT_TOL) -> BoundReport:
    from .formats import graph6_encode

    if not g.is_connected():
        raise DisconnectedGraphError("bound report needs a connected graph")
    if g.is_regular():
        raise GraphError("bound report needs an irregular graph")
    n, delta, D = g.n, g.max_degree, g.diameter
    rho = spectral_radius(g, tol).rho
    gap = delta - rho
    st = stevanovic_bound(n, delta)
    ci = cioaba_bound(n, D)
    bip = is_bipartite(g)
    nb = new_bipartite_bound(n, delta) if bip and delta >= 2 else None
    sq = sqrt_size_bound(g.m) if bip else None
    lo = hi = None
    l5_ok = None
    if n % 2 == 0 and _is_b_graph(g):
        lo, hi = lemma5_bounds(n)
        l5_ok = lo <= 3.0 - rho <= hi
    return BoundReport(
        n=n, delta=delta, m=g.m, diameter=D, bipartite=bip, rho=rho, gap=gap,
        stevanovic=st, cioaba=ci, new_bound=nb, sqrt_m=sq,
        lemma5_lower=lo, lemma5_upper=hi,
        stevanovic_ok=strictly_exceeds(gap, st),
        cioaba_ok=strictly_exceeds(gap, ci),
        new_bound_ok=None if nb is None else strictly_exceeds(gap, nb),
        sqrt_m_ok=None if sq is None else rho <= sq + 10 * tol,
        lemma5_ok=l5_ok,
        graph6=graph6_encode(g),
    )


REPORT_COLUMNS = [f.name for f in fields(BoundReport)]


def reports_to_json(reports: list[BoundReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def reports_from_json(text: str) -> list[BoundReport]:
    return [BoundReport(**row) for row in json.loads(text)]


def reports_to_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        row = r.to_dict()
        w.writerow({k: ("" if v is None else (f"{v:.10g}" if isinstance(v, float) else v))
                    for k, v in row.items()})
    return buf.getvalue()

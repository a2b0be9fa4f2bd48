"""Periodic tower configurations of the integer grid.

A configuration is a rank-2 integer lattice plus tower offsets, one set
per fundamental domain. Everything here is exact: coordinates are
integers, coefficients are rationals, densities and averages are
fractions. Verifying one full set of coset representatives certifies
the entire grid by periodicity.

Geometry conventions: distance is the Manhattan (ell-1) metric, and a
tower at u delivers max(0, t - |u - v|_1) to the cell v. The raw sum
decides broadcasting; sums capped at r per tower drive the excess
accounting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .signal import SignalParams

Vec = tuple[int, int]

# Window orientations: x-range and y-range of the audited rectangle,
# relative to the tower. N/W/S are the successive quarter turns of E.
_WINDOW_FRAMES = ("E", "N", "W", "S")


@dataclass(frozen=True)
class LatticeConfig:
    """Integer lattice spanned by a and b, plus tower offsets.

    The towers are {m*a + n*b + o : m, n integers, o in offsets}. The
    basis must be nondegenerate and the offsets pairwise distinct
    modulo the lattice, so every fundamental domain holds exactly
    len(offsets) towers.
    """

    a: Vec
    b: Vec
    offsets: tuple[Vec, ...] = ((0, 0),)

    def __post_init__(self) -> None:
        for name, vec in (("a", self.a), ("b", self.b)):
            if len(vec) != 2 or not all(isinstance(c, int) for c in vec):
                raise InputError(f"basis vector {name} must be an integer pair")
        if self.det == 0:
            raise InputError("basis vectors must be linearly independent")
        if not self.offsets:
            raise InputError("need at least one tower offset")
        seen = set()
        for o in self.offsets:
            if len(o) != 2 or not all(isinstance(c, int) for c in o):
                raise InputError("offsets must be integer pairs")
            rep = reduce_point(self, o)
            if rep in seen:
                raise InputError(f"offset {o} duplicates another offset modulo the lattice")
            seen.add(rep)

    @property
    def det(self) -> int:
        return self.a[0] * self.b[1] - self.a[1] * self.b[0]

    @property
    def index(self) -> int:
        """Cells per fundamental domain: |det(a, b)|."""
        return abs(self.det)

    def to_json_dict(self) -> dict:
        return {
            "a": list(self.a),
            "b": list(self.b),
            "offsets": [list(o) for o in self.offsets],
        }


def config_from_json_dict(data: dict) -> LatticeConfig:
    """Rebuild a configuration from {"a": [x,y], "b": [x,y], "offsets": [[x,y],...]}."""
    if not isinstance(data, dict):
        raise InputError("lattice config must be a JSON object")
    try:
        a = tuple(int(c) for c in data["a"])
        b = tuple(int(c) for c in data["b"])
        offsets = tuple(tuple(int(c) for c in o) for o in data["offsets"])
    except (KeyError, TypeError, ValueError):
        raise InputError("lattice config needs integer keys 'a', 'b', 'offsets'") from None
    if len(a) != 2 or len(b) != 2 or any(len(o) != 2 for o in offsets):
        raise InputError("lattice vectors and offsets must be coordinate pairs")
    return LatticeConfig(a, b, offsets)


def reduce_point(config: LatticeConfig, v: Vec) -> Vec:
    """Canonical representative of v modulo the lattice.

    Writes v = alpha*a + beta*b exactly and drops the integer parts, so
    the result is the unique representative in the half-open fundamental
    parallelogram {x*a + y*b : 0 <= x, y < 1}.
    """
    ax, ay = config.a
    bx, by = config.b
    det = config.det
    # Cramer coefficients, floored exactly (Python // floors for any sign).
    m = (v[0] * by - v[1] * bx) // det
    n = (ax * v[1] - ay * v[0]) // det
    return (v[0] - m * ax - n * bx, v[1] - m * ay - n * by)


def density(config: LatticeConfig) -> Fraction:
    """Towers per cell, exact: len(offsets) / |det|."""
    return Fraction(len(config.offsets), config.index)


def axis_periods(config: LatticeConfig) -> tuple[int, int]:
    """Minimal horizontal and vertical periods of the configuration.

    Triangularizing the basis shows the lattice points on the x-axis
    are generated by (|det| / gcd(a_y, b_y), 0), and symmetrically for
    the y-axis.
    """
    nn = config.index
    p1 = nn // math.gcd(config.a[1], config.b[1])
    p2 = nn // math.gcd(config.a[0], config.b[0])
    return (p1, p2)


def fundamental_domain(config: LatticeConfig) -> list[Vec]:
    """Exactly index-many cells, pairwise distinct modulo the lattice.

    Uses the triangular transversal {(x, y) : 0 <= x < p1, 0 <= y < s}
    with p1 the x-axis period and s = index / p1.
    """
    p1, _ = axis_periods(config)
    s = config.index // p1
    return [(x, y) for y in range(s) for x in range(p1)]


def _towers_within(config: LatticeConfig, point: Vec, radius: int):
    """Yield (tower, distance) for every tower within ell-1 radius of point.

    For each offset, the candidate translate coefficients are bracketed
    by exact bounds derived from Cramer's rule, padded by two to absorb
    the floors; over-scanning is harmless, missing a tower is not.
    """
    ax, ay = config.a
    bx, by = config.b
    det = config.det
    nn = abs(det)
    pad_m = (radius * max(abs(bx), abs(by))) // nn + 2
    pad_n = (radius * max(abs(ax), abs(ay))) // nn + 2
    px, py = point
    for ox, oy in config.offsets:
        qx, qy = px - ox, py - oy
        m0 = (qx * by - qy * bx) // det
        n0 = (ax * qy - ay * qx) // det
        for m in range(m0 - pad_m, m0 + pad_m + 1):
            for n in range(n0 - pad_n, n0 + pad_n + 1):
                tx = m * ax + n * bx + ox
                ty = m * ay + n * by + oy
                d = abs(tx - px) + abs(ty - py)
                if d <= radius:
                    yield (tx, ty), d


def raw_signal_at(config: LatticeConfig, params: SignalParams, point: Vec) -> int:
    """Uncapped signal sum at one cell."""
    return sum(params.t - d for _, d in _towers_within(config, point, params.t - 1))


def capped_signal_at(config: LatticeConfig, params: SignalParams, point: Vec) -> int:
    """Signal sum at one cell with each tower's contribution clipped at r."""
    t, r = params.t, params.r
    return sum(min(r, t - d) for _, d in _towers_within(config, point, t - 1))


def excess_at(config: LatticeConfig, params: SignalParams, point: Vec) -> int:
    """Capped signal minus demand at one cell (negative when deficient)."""
    return capped_signal_at(config, params, point) - params.r


@dataclass(frozen=True)
class PeriodicCheck:
    """Outcome of a periodic broadcast verification.

    A failing check carries the first deficient representative (in
    transversal order) and its raw signal.
    """

    ok: bool
    witness: Vec | None = None
    signal: int | None = None


def verify_periodic(config: LatticeConfig, params: SignalParams) -> PeriodicCheck:
    """Certify that every grid cell collects raw signal at least r.

    Checking the finitely many coset representatives suffices: the
    signal field is invariant under lattice translations.
    """
    t, r = params.t, params.r
    for point in fundamental_domain(config):
        raw = sum(t - d for _, d in _towers_within(config, point, t - 1))
        if raw < r:
            return PeriodicCheck(False, point, raw)
    return PeriodicCheck(True)


@dataclass(frozen=True)
class ExcessReport:
    """Per-domain excess accounting for a periodic configuration.

    per_vertex maps each canonical representative to (capped_signal,
    excess). Totals are per fundamental domain; the average divides by
    towers_per_domain and stays an exact fraction.
    """

    params: SignalParams
    period: tuple[int, int]
    per_vertex: dict[Vec, tuple[int, int]]
    total_excess: int
    towers_per_domain: int
    avg_excess_per_tower: Fraction
    broadcasting: bool

    def to_json_dict(self) -> dict:
        return {
            "params": {"t": self.params.t, "r": self.params.r},
            "period": list(self.period),
            "towers_per_domain": self.towers_per_domain,
            "total_excess": self.total_excess,
            "avg_excess_per_tower": str(self.avg_excess_per_tower),
            "broadcasting": self.broadcasting,
            "per_vertex": [
                {"vertex": list(v), "capped_signal": c, "excess": e}
                for v, (c, e) in sorted(self.per_vertex.items())
            ],
        }

    def csv_rows(self) -> list[list]:
        rows: list[list] = [["x", "y", "capped_signal", "excess"]]
        for (x, y), (c, e) in sorted(self.per_vertex.items()):
            rows.append([x, y, c, e])
        return rows


def excess_report(config: LatticeConfig, params: SignalParams) -> ExcessReport:
    """Audit one fundamental domain cell by cell.

    Reports capped signal and excess for every representative, the
    domain total, and the exact per-tower average. A configuration that
    fails to broadcast is still reported, flagged by the broadcasting
    field (its deficient cells carry negative excess).
    """
    t, r = params.t, params.r
    per_vertex: dict[Vec, tuple[int, int]] = {}
    total = 0
    broadcasting = True
    for point in fundamental_domain(config):
        raw = 0
        capped = 0
        for _, d in _towers_within(config, point, t - 1):
            raw += t - d
            capped += min(r, t - d)
        if raw < r:
            broadcasting = False
        rep = reduce_point(config, point)
        per_vertex[rep] = (capped, capped - r)
        total += capped - r
    return ExcessReport(
        params=params,
        period=axis_periods(config),
        per_vertex=per_vertex,
        total_excess=total,
        towers_per_domain=len(config.offsets),
        avg_excess_per_tower=Fraction(total, len(config.offsets)),
        broadcasting=broadcasting,
    )


def window_excess(
    config: LatticeConfig, params: SignalParams, tower: Vec, orientation: str = "E"
) -> int:
    """Excess summed over the 7x9 audit window beside one tower.

    Orientation E spans tower + [t-4, t+2] x [-4, 4]; N, W, S are the
    quarter turns of that rectangle about the tower. Needs t >= 5 so
    the window sits cleanly ahead of the tower.
    """
    t = params.t
    if t < 5:
        raise InputError(f"window audit needs t >= 5, got t={t}")
    if orientation not in _WINDOW_FRAMES:
        raise InputError(f"orientation must be one of {_WINDOW_FRAMES}, got {orientation!r}")
    offset_reps = {reduce_point(config, o) for o in config.offsets}
    if reduce_point(config, tower) not in offset_reps:
        raise InputError(f"{tower} is not a tower of this configuration")
    if orientation == "E":
        xs, ys = range(t - 4, t + 3), range(-4, 5)
    elif orientation == "N":
        xs, ys = range(-4, 5), range(t - 4, t + 3)
    elif orientation == "W":
        xs, ys = range(-t - 2, -t + 5), range(-4, 5)
    else:
        xs, ys = range(-4, 5), range(-t - 2, -t + 5)
    tx, ty = tower
    return sum(
        excess_at(config, params, (tx + dx, ty + dy)) for dx in xs for dy in ys
    )


def promote_check(config: LatticeConfig, t: int, base_r: int, k: int) -> bool:
    """Does a (t, base_r) configuration still broadcast at (t+k, base_r+2k)?

    base_r must be 1 or 2, the demands for which raising the strength
    by k buys 2k extra demand everywhere. The configuration must
    actually broadcast at the base parameters; k = 0 is the identity.
    """
    if base_r not in (1, 2):
        raise InputError(f"promotion is defined for base demand 1 or 2, got {base_r}")
    if k < 0:
        raise InputError(f"need k >= 0, got {k}")
    base = verify_periodic(config, SignalParams(t, base_r))
    if not base.ok:
        raise InputError(
            f"configuration does not broadcast at (t={t}, r={base_r}); "
            f"cell {base.witness} collects {base.signal}"
        )
    if k == 0:
        return True
    return verify_periodic(config, SignalParams(t + k, base_r + 2 * k)).ok


def t1_tiling(t: int) -> LatticeConfig:
    """Perfect single-cover configuration for demand 1 at strength t.

    One tower per |det| = t^2 + (t-1)^2 cells, basis (t-1, t) and
    (t, 1-t): every cell is within t - 1 of exactly one tower.
    """
    if t < 2:
        raise InputError(f"need t >= 2, got {t}")
    return LatticeConfig(a=(t - 1, t), b=(t, 1 - t))


def t3_tiling(t: int) -> LatticeConfig:
    """Low-excess configuration for demand 3 at strength t.

    One tower per |det| = (t-1)^2 + (t-2)^2 cells, basis (t-1, t-2) and
    (t-2, 1-t). Interior cells collect their full demand from one
    tower; boundary cells at distance t - 2 pick up the remainder from
    a neighboring tower.
    """
    if t < 3:
        raise InputError(f"need t >= 3, got {t}")
    return LatticeConfig(a=(t - 1, t - 2), b=(t - 2, 1 - t))


def centered_t1_frame(t: int) -> LatticeConfig:
    """Perfect single-cover configuration, framed around the origin.

    Mirror orientation of t1_tiling, translated so the origin sits in
    the middle of its four nearest towers (t-1, 0), (-1, -(t-1)),
    (-t, 1), and (0, t). This is the frame the promotion excess profile
    audits.
    """
    if t < 2:
        raise InputError(f"need t >= 2, got {t}")
    return LatticeConfig(a=(t, t - 1), b=(t - 1, -t), offsets=((t - 1, 0),))


@dataclass(frozen=True)
class DiagonalExcess:
    """Observed excesses along one diagonal x + y = diagonal of the square."""

    diagonal: int
    claimed: int
    observed: tuple[int, ...]


@dataclass(frozen=True)
class PromotionProfile:
    """Excess layout of the perfect single cover after a k-step promotion.

    Audits centered_t1_frame(t) at (t + k, 2k + 1) and reads the excess
    on the 2k x 2k square with corners (k-1, -(k-1)) and (-k, k),
    grouped by diagonal. claimed_* fields carry the closed forms the
    audit is checked against (2k - 2i - 1 per diagonal i and
    k(k+1)(2k+1)/6 in total); matches_claimed records whether the
    observed average agrees with the claimed total.
    """

    t: int
    k: int
    audit_params: SignalParams
    square: tuple[Vec, ...]
    per_diagonal: tuple[DiagonalExcess, ...]
    square_excess_sum: int
    domain_total_excess: int
    average_per_tower: Fraction
    claimed_total: Fraction
    all_excess_inside_square: bool
    matches_claimed: bool

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "k": self.k,
            "audit_params": {"t": self.audit_params.t, "r": self.audit_params.r},
            "square": [list(v) for v in self.square],
            "per_diagonal": [
                {
                    "diagonal": d.diagonal,
                    "claimed": d.claimed,
                    "observed": list(d.observed),
                }
                for d in self.per_diagonal
            ],
            "square_excess_sum": self.square_excess_sum,
            "domain_total_excess": self.domain_total_excess,
            "average_per_tower": str(self.average_per_tower),
            "claimed_total": str(self.claimed_total),
            "all_excess_inside_square": self.all_excess_inside_square,
            "matches_claimed": self.matches_claimed,
        }


def promotion_excess_profile(t: int, k: int) -> PromotionProfile:
    """Audit where the promoted perfect cover accumulates its excess.

    Builds the centered perfect single cover for strength t, promotes
    the audit to (t + k, 2k + 1), and reports observed excess against
    the claimed per-diagonal and total closed forms. Discrepancies are
    reported, not adjudicated.
    """
    if k < 1:
        raise InputError(f"need k >= 1, got {k}")
    if t <= k:
        raise InputError(f"need t > k, got t={t}, k={k}")
    config = centered_t1_frame(t)
    params = SignalParams(t + k, 2 * k + 1)
    report = excess_report(config, params)

    square = tuple((x, y) for y in range(-(k - 1), k + 1) for x in range(-k, k))
    observed_at = {
        pt: report.per_vertex[reduce_point(config, pt)][1] for pt in square
    }
    diagonals: dict[int, list[int]] = {}
    for (x, y), e in observed_at.items():
        diagonals.setdefault(x + y, []).append(e)
    per_diagonal = tuple(
        DiagonalExcess(i, 2 * k - 2 * i - 1, tuple(sorted(vals)))
        for i, vals in sorted(diagonals.items())
    )

    square_reps = {reduce_point(config, pt) for pt in square}
    positives = {rep for rep, (_, e) in report.per_vertex.items() if e > 0}
    claimed_total = Fraction(k * (k + 1) * (2 * k + 1), 6)
    return PromotionProfile(
        t=t,
        k=k,
        audit_params=params,
        square=square,
        per_diagonal=per_diagonal,
        square_excess_sum=sum(observed_at.values()),
        domain_total_excess=report.total_excess,
        average_per_tower=report.avg_excess_per_tower,
        claimed_total=claimed_total,
        all_excess_inside_square=positives <= square_reps,
        matches_claimed=report.avg_excess_per_tower == claimed_total,
    )

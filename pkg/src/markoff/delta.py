"""Construction and verification of the orbit-divisibility certificate.

Three angle functions Delta_i assign a value to every nonzero solution
subject to three identities:

  total:  Delta_1 + Delta_2 + Delta_3 = s            at every point
  pair:   Delta_i(x) + Delta_i(m_i x) = s            for every i
  fix:    Delta_i(x) = s/2                           when m_i x = x

Summing them over an orbit of size V gives s*V = 3*s*V/2, hence
s*V = 0, hence p | V when s != 0.  Off the coordinate hyperplanes the
functions have a closed form; on a hyperplane x_i = 0 the two values
Delta_{i +- 1} are propagated around the dihedral cycle generated by
m_{i-1} and m_{i+1}, one free starting value per cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

import numpy as np

from .enumeration import SolutionSet, zero_locus
from .orbits import OrbitPartition, compute_orbits
from .surface import SurfaceParams, Triple, apply_move


class NoConsistentExtension(Exception):
    """The angle functions admit no extension over a degenerate zero cycle."""


class CertificateError(Exception):
    """A certificate identity failed; the assignment is not valid."""


def delta_values(params: SurfaceParams, x: Triple) -> Triple:
    """The closed-form (Delta_1, Delta_2, Delta_3) at a point with x1*x2*x3 != 0."""
    if any(v % params.p == 0 for v in x):
        raise ValueError("closed form needs all coordinates nonzero; "
                         "zero-coordinate points are handled by cycle extension")
    return tuple(delta_at(params, x, i) for i in range(3))


def delta_at(params: SurfaceParams, x: Triple, i: int) -> int:
    """Delta_i(x) = x_i/(x_{i-1}x_{i+1}) + (a_{i-1}/x_{i-1} + a_{i+1}/x_{i+1})/2.

    Well-defined whenever the two other coordinates are nonzero; in
    particular on the locus x_i = 0, where the first term drops out.
    """
    p = params.p
    a = params.a
    inv = params.field.inv
    im1, ip1 = (i - 1) % 3, (i + 1) % 3
    if x[im1] % p == 0 or x[ip1] % p == 0:
        raise ValueError(f"Delta_{i} undefined when a neighbouring coordinate vanishes")
    inv2 = (p + 1) // 2
    t = x[i] * inv(x[im1] * x[ip1] % p) % p
    return (t + (a[im1] * inv(x[im1]) + a[ip1] * inv(x[ip1])) * inv2) % p


@dataclass
class ZeroCycle:
    """Dihedral orbit of a point with x_i = 0 under m_{i-1} and m_{i+1}.

    Stored as the rotation orbit zs = [x, rho x, ...] and its mirror
    ws = [m_{i-1} z for z in zs], rho = m_{i+1} m_{i-1} of order rho_order.
    """

    i: int
    base: Triple
    root: int            # r with x_{i+1} = r * x_{i-1} on the base line
    rho_order: int
    zs: list[Triple]
    ws: list[Triple]

    def points(self) -> list[Triple]:
        if self.rho_order == 1 and self.ws[0] == self.zs[0]:
            return list(self.zs)
        return self.zs + self.ws


def build_zero_cycle(params: SurfaceParams, x: Triple, i: int) -> ZeroCycle:
    """Walk the m_{i+1}, m_{i-1} cycle through a nonzero solution with x_i = 0."""
    from .field import mult_order
    p = params.p
    x = tuple(v % p for v in x)
    if x == (0, 0, 0) or x[i] != 0:
        raise ValueError(f"need a nonzero point with coordinate {i} equal to zero")
    ai = params.a[i]
    if params.field.chi(ai * ai - 4) == -1:
        raise ValueError("no nonzero points on this locus: chi(a_i^2 - 4) = -1")
    im1, ip1 = (i - 1) % 3, (i + 1) % 3
    r = x[ip1] * params.field.inv(x[im1]) % p
    order = mult_order(r * r % p, p)

    zs, ws = [x], []
    z = x
    while True:
        w = apply_move(params, z, im1)
        ws.append(w)
        z = apply_move(params, w, ip1)
        if z == x:
            break
        zs.append(z)
        if len(zs) > 2 * p:
            raise CertificateError("runaway cycle walk")  # pragma: no cover

    if len(zs) != order:
        raise CertificateError(f"walked cycle length {len(zs)} != order {order}")
    if order == 1:
        if ws[0] != x:
            raise CertificateError("order-1 cycle not collapsed to a fixed point")
    else:
        pts = zs + ws
        if len(set(pts)) != 2 * order:
            raise CertificateError("degenerate 2N cycle with N >= 2")
    return ZeroCycle(i, x, r, order, zs, ws)


def extend_delta(params: SurfaceParams, cycle: ZeroCycle,
                 delta0: int | None = None) -> dict[Triple, Triple]:
    """Fill all three Delta values on a zero cycle, starting from delta0.

    Delta_i on the locus comes from the closed form; Delta_{i-1} starts
    at delta0 on the base point and the pair/total identities force the
    rest around the cycle.  The wrap-around is consistent because the
    Delta_i values sum to zero around any non-degenerate cycle.  For an
    order-1 cycle there is no freedom: both neighbours of Delta_i are
    pinned to s/2, which is consistent only when 2a_{i-1} = a_{i+1}a_i.
    """
    p = params.p
    s = params.s
    i = cycle.i
    im1, ip1 = (i - 1) % 3, (i + 1) % 3
    inv2 = (p + 1) // 2
    if delta0 is None:
        delta0 = s * inv2 % p

    di = {pt: delta_at(params, pt, i) for pt in cycle.points()}
    out: dict[Triple, list[int | None]] = {pt: [None, None, None] for pt in cycle.points()}
    for pt, v in di.items():
        out[pt][i] = v

    if cycle.rho_order == 1:
        x = cycle.base
        a = params.a
        if (2 * a[im1] - a[ip1] * a[i]) % p != 0:
            raise NoConsistentExtension(
                f"double fixed point {x} forces Delta_{i} = 0 but "
                f"2a_{im1} != a_{ip1}a_{i} (mod {p})")
        out[x][im1] = s * inv2 % p
        out[x][ip1] = s * inv2 % p
        assert out[x][i] == 0
        return {pt: tuple(v) for pt, v in out.items()}

    zs, ws = cycle.zs, cycle.ws
    n_len = cycle.rho_order
    out[zs[0]][im1] = delta0 % p
    for n in range(n_len):
        zn, wn = zs[n], ws[n]
        out[wn][im1] = (s - out[zn][im1]) % p                  # pair at i-1
        out[wn][ip1] = (s - di[wn] - out[wn][im1]) % p         # total at w_n
        z_next = zs[(n + 1) % n_len]
        val_ip1 = (s - out[wn][ip1]) % p                       # pair at i+1
        if n + 1 < n_len:
            out[z_next][ip1] = val_ip1
            out[z_next][im1] = (s - di[z_next] - val_ip1) % p  # total at z_{n+1}
        else:
            # wrap-around: must reproduce the starting value
            if (s - di[z_next] - val_ip1) % p != out[z_next][im1]:
                raise NoConsistentExtension(
                    f"cycle through {cycle.base} (i={i}) is inconsistent")
    out[zs[0]][ip1] = (s - di[zs[0]] - out[zs[0]][im1]) % p
    return {pt: tuple(v) for pt, v in out.items()}


@dataclass
class DeltaAssignment:
    """Total assignment of (Delta_1, Delta_2, Delta_3) over a SolutionSet."""

    solutions: SolutionSet
    values: np.ndarray        # (M, 3) int64, aligned with solutions.points

    @property
    def params(self) -> SurfaceParams:
        return self.solutions.params

    def at(self, x: Triple) -> Triple:
        row = self.values[self.solutions.index_of(x)]
        return (int(row[0]), int(row[1]), int(row[2]))


def build_certificate(sol: SolutionSet, delta0: int | None = None,
                      rng: Random | None = None) -> DeltaAssignment:
    """Construct a full certificate for one parameter set.

    delta0 fixes the starting value on every cycle (default s/2); pass
    rng instead to draw an independent starting value per cycle, which
    the identities must survive equally well.
    """
    params = sol.params
    p = params.p
    if p < 5:
        raise ValueError("certificate construction needs p >= 5")
    if params.s == 0:
        raise ValueError("certificate construction needs s != 0; "
                         "s = 0 surfaces are supported by enumeration and orbits only")
    pts = sol.points
    m = len(sol)
    values = np.zeros((m, 3), dtype=np.int64)

    inv = params.field.inv_table
    inv2 = (p + 1) // 2
    a = params.a
    x_cols = [pts[:, 0], pts[:, 1], pts[:, 2]]
    nonzero = [c != 0 for c in x_cols]
    for i in range(3):
        im1, ip1 = (i - 1) % 3, (i + 1) % 3
        mask = nonzero[im1] & nonzero[ip1]
        xi = x_cols[i][mask]
        xm, xp_ = x_cols[im1][mask], x_cols[ip1][mask]
        term = xi * inv[xm * xp_ % p] % p
        term = (term + (a[im1] * inv[xm] + a[ip1] * inv[xp_]) * inv2) % p
        values[mask, i] = term

    for i in range(3):
        locus = zero_locus(params, i)
        remaining = set(locus.points)
        while remaining:
            base = min(remaining)
            cycle = build_zero_cycle(params, base, i)
            start = rng.randrange(p) if rng is not None else delta0
            filled = extend_delta(params, cycle, start)
            for pt, vals in filled.items():
                values[sol.index_of(pt)] = vals
            remaining -= set(cycle.points())
    return DeltaAssignment(sol, values)


@dataclass
class OrbitCheck:
    size: int
    rep: Triple
    sum_mod_p: int        # s*V mod p, recomputed from the assignment
    divisible_by_p: bool


@dataclass
class CertificateReport:
    params: SurfaceParams
    n_points: int
    n_fixed_edges: int
    orbit_checks: list[OrbitCheck]

    @property
    def all_divisible(self) -> bool:
        return all(c.divisible_by_p for c in self.orbit_checks)


def verify_certificate(assign: DeltaAssignment,
                       part: OrbitPartition | None = None) -> CertificateReport:
    """Check every identity and rederive p | V per orbit.

    Raises CertificateError on any violated identity; the assignment
    must cover the whole solution set (build_certificate guarantees it).
    """
    sol = assign.solutions
    params = sol.params
    p, s = params.p, params.s
    vals = assign.values
    m = len(sol)
    if vals.shape != (m, 3):
        raise ValueError("assignment does not cover the solution set")
    if part is None:
        part = compute_orbits(sol)

    total_ok = (vals.sum(axis=1) - s) % p == 0
    if not bool(total_ok.all()):
        bad = int(np.flatnonzero(~total_ok)[0])
        raise CertificateError(f"total identity fails at {sol.triple(bad)}")

    nbr = part.neighbors
    n_fixed = 0
    inv2 = (p + 1) // 2
    for i in range(3):
        pair_ok = (vals[:, i] + vals[nbr[i], i] - s) % p == 0
        if not bool(pair_ok.all()):
            bad = int(np.flatnonzero(~pair_ok)[0])
            raise CertificateError(f"pair identity fails at {sol.triple(bad)} for move {i}")
        fixed = nbr[i] == np.arange(m)
        n_fixed += int(fixed.sum())
        fix_ok = (vals[fixed, i] - s * inv2) % p == 0
        if not bool(fix_ok.all()):
            raise CertificateError(f"fixed-point identity fails for move {i}")

    # per-orbit double counting: sum_i sum_x Delta_i = s*V and each i-sum is s*V/2
    sizes = np.bincount(part.component_id)
    checks = []
    per_orbit_total = np.zeros(len(part.orbits), dtype=np.int64)
    for i in range(3):
        acc = np.zeros(len(part.orbits), dtype=np.int64)
        np.add.at(acc, part.component_id, vals[:, i])
        half = acc % p
        expect = (s % p) * (sizes % p) % p * inv2 % p  # s*V/2 from the pairing argument
        if not bool(((half - expect) % p == 0).all()):
            raise CertificateError(f"orbit half-sum identity fails for move {i}")
        per_orbit_total = (per_orbit_total + half) % p
    for k, (size, rep) in enumerate(part.orbits):
        sv = int(per_orbit_total[k])  # = s*V mod p
        if sv != (s % p) * (size % p) % p:
            raise CertificateError(f"orbit sum != s*V for orbit {k}")
        checks.append(OrbitCheck(size, rep, sv, size % p == 0))
        if s % p != 0 and sv != 0:
            raise CertificateError(f"s*V != 0 for orbit {k}: certificate logic violated")
    return CertificateReport(params, m, n_fixed, checks)


def certificate_report(assign: DeltaAssignment, report: CertificateReport) -> dict:
    """JSON-ready certificate dump: per-point values plus per-orbit sizes mod p."""
    sol = assign.solutions
    return {
        "prime": sol.params.p,
        "params": list(sol.params.a),
        "s": sol.params.s,
        "points": [
            {"x": list(sol.triple(k)), "delta": [int(v) for v in assign.values[k]]}
            for k in range(len(sol))
        ],
        "orbits": [
            {"size": c.size, "rep": list(c.rep), "size_mod_p": c.size % sol.params.p,
             "divisible_by_p": c.divisible_by_p}
            for c in report.orbit_checks
        ],
    }

"""Invariants of the regularity function t -> reg(I^t) of an m-primary ideal.

Notation used throughout: ``d`` is the least degree mu such that the
generators of degree <= mu already generate an m-primary ideal ``I'``;
``f(t) = reg(I^t) - d t``; ``b`` is the eventual value of f; ``N`` is the
bigraded module with pieces ``N_{mu,t} = (A/I^t)_{mu + t d}``; ``e_mu`` is the
last t with ``N_{mu,t} != 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import NEG_INF, IdealSpec, Polynomial, basis_tuples
from .groebner import (
    contains_ideal,
    groebner,
    ideal_power,
    ideal_product,
    is_m_primary,
    missing_pure_powers,
    subideal_up_to_degree,
)
from .hilbert import reg_mprimary
from .pieces import engine_for
from .report import AtLeast, Check, compare


class NotMPrimaryIdeal(ValueError):
    def __init__(self, I: IdealSpec, missing: list[int]):
        self.missing = [I.variables[i] for i in missing]
        super().__init__(
            "ideal is not m-primary: no pure power of "
            + ", ".join(self.missing)
            + " among the lead terms"
        )


class HorizonTooSmall(ValueError):
    def __init__(self, needed: int, got: int):
        self.needed = needed
        super().__init__(f"horizon T={got} is too small; use T >= {needed}")


class TheoremViolation(RuntimeError):
    def __init__(self, check: Check):
        self.check = check
        super().__init__(f"theorem check failed: {check.name}: {check.lhs} {check.relation} {check.rhs}")


def require_m_primary(I: IdealSpec):
    G = groebner(I)
    if not is_m_primary(G):
        raise NotMPrimaryIdeal(I, missing_pure_powers(G))
    return G


def compute_d(I: IdealSpec) -> int:
    """Least mu such that the generators of degree <= mu generate an m-primary ideal."""
    require_m_primary(I)
    for mu in sorted(set(I.degrees)):
        sub = subideal_up_to_degree(I, mu)
        if sub.generators and is_m_primary(groebner(sub)):
            return mu
    raise AssertionError("unreachable: I itself is m-primary")


def t0_cap(reg_iprime: int, d: int) -> int:
    return max(1, math.ceil((reg_iprime - d) / (d + 1)))


def maximal_power(I: IdealSpec, d: int) -> IdealSpec:
    n = I.nvars
    return I.with_generators(Polynomial.monomial(I.field, n, m) for m in basis_tuples(n, d))


def compute_t0(I: IdealSpec, d: int, *, extra: int = 8) -> int:
    """Least t >= 1 with m^d I^t contained in I'.

    The scan is capped by max{1, ceil((reg I' - d)/(d+1))}; if the cap is
    passed the true value is located (up to ``extra`` more steps) and a
    :class:`TheoremViolation` is raised.
    """
    Ip = subideal_up_to_degree(I, d)
    Gp = groebner(Ip)
    cap = t0_cap(reg_mprimary(Gp), d)
    md = maximal_power(I, d)
    for t in range(1, cap + extra + 1):
        if contains_ideal(Gp, ideal_product(md, ideal_power(I, t))):
            if t > cap:
                raise TheoremViolation(
                    compare("t0-upper-bound", "t0 <= max{1, ceil((reg I' - d)/(d+1))}", t, "<=", cap)
                )
            return t
    raise TheoremViolation(
        compare("t0-upper-bound", "t0 <= max{1, ceil((reg I' - d)/(d+1))}", AtLeast(cap + extra + 1), "<=", cap)
    )


def reg_table(I: IdealSpec, T: int, d: int | None = None) -> list[tuple[int, int, int]]:
    """Rows (t, reg(I^t), reg(I^t) - d t) for t = 1..T."""
    if T < 1:
        raise ValueError("horizon must be >= 1")
    if d is None:
        d = compute_d(I)
    eng = engine_for(I)
    rows = []
    for t in range(1, T + 1):
        r = eng.full_threshold(t)  # = end(A/I^t) + 1
        rows.append((t, r, r - d * t))
    return rows


def n_strand_dimensions(I: IdealSpec, mu: int, T: int, d: int | None = None) -> list[int]:
    """dim N_{mu,t} = dim (A/I^t)_{mu + t d} for t = 1..T."""
    if d is None:
        d = compute_d(I)
    eng = engine_for(I)
    return [eng.hilbert(t, mu + t * d) for t in range(1, T + 1)]


def strand_end(dims: list[int]) -> int | float | AtLeast:
    """Last t (1-based) with a nonzero entry; AtLeast(T) if the final entry is nonzero."""
    if not dims:
        return NEG_INF
    if dims[-1]:
        return AtLeast(len(dims))
    nz = [t for t, v in enumerate(dims, start=1) if v]
    return nz[-1] if nz else NEG_INF


def verify_monotonicity(grid: dict[int, list[int]], t0: int) -> Check:
    """Zeros of N_{mu,t} must propagate to mu+1 (all t) and to t+1 (t >= t0).

    ``grid[mu][t-1]`` is dim N_{mu,t}; mu keys must be consecutive.
    """
    failures = []
    mus = sorted(grid)
    for mu in mus:
        row = grid[mu]
        nxt = grid.get(mu + 1)
        for i, v in enumerate(row):
            t = i + 1
            if v:
                continue
            if nxt is not None and i < len(nxt) and nxt[i]:
                failures.append({"mu": mu, "t": t, "direction": "mu"})
            if t >= t0 and i + 1 < len(row) and row[i + 1]:
                failures.append({"mu": mu, "t": t, "direction": "t"})
    return Check(
        "zero-propagation",
        "N_{mu,t}=0 => N_{mu+1,t}=0; and N_{mu,t+1}=0 when t >= t0",
        len(failures),
        0,
        "==",
        not failures,
        True,
        "" if not failures else f"failures: {failures[:10]}",
    )


def verify_t0_bounds(I: IdealSpec, d: int | None = None, t0: int | None = None) -> list[Check]:
    if d is None:
        d = compute_d(I)
    Gp = groebner(subideal_up_to_degree(I, d))
    r = reg_mprimary(Gp)
    n = I.nvars
    if t0 is None:
        t0 = compute_t0(I, d)
    return [
        compare("reg-Iprime-bound", "reg(I') <= (d-1)n+1", r, "<=", (d - 1) * n + 1,
                note=f"slack {(d - 1) * n + 1 - r}"),
        compare("t0-upper-bound", "t0 <= max{1, ceil((reg I' - d)/(d+1))}", t0, "<=", t0_cap(r, d),
                note=f"slack {t0_cap(r, d) - t0}"),
    ]


@dataclass
class StabReport:
    d: int
    iprime: IdealSpec
    reg_iprime: int
    t0: int
    table: list[tuple[int, int, int]]
    b: int
    c: int
    c_argmax: int
    e_table: dict
    stab: int
    stab_raw: int | float
    horizon: int
    window: int
    certified: bool
    grid: dict[int, list[int]] = field(default_factory=dict)
    bound_checks: list[Check] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        """The b-strand of N vanishes, so e_b = -inf and Stab is floored at 1."""
        return self.stab_raw == NEG_INF

    def regs(self) -> list[int]:
        return [r for _, r, _ in self.table]

    def fvals(self) -> list[int]:
        return [f for _, _, f in self.table]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "Iprime": [str(g.to_string(self.iprime.variables)) for g in self.iprime.generators],
            "reg_Iprime": self.reg_iprime,
            "t0": self.t0,
            "table": [{"t": t, "reg": r, "f": f} for t, r, f in self.table],
            "b": self.b,
            "c": self.c,
            "c_argmax": self.c_argmax,
            "e": {str(k): v for k, v in self.e_table.items()},
            "stab": self.stab,
            "stab_raw": self.stab_raw,
            "degenerate": self.degenerate,
            "horizon": self.horizon,
            "window": self.window,
            "certified": self.certified,
        }


def default_horizon(n: int, t0: int) -> int:
    return max(2 * n, t0 + n, 8)


def stabilization_report(I: IdealSpec, T: int | None = None, W: int | None = None) -> StabReport:
    d = compute_d(I)
    Ip = subideal_up_to_degree(I, d)
    reg_ip = reg_mprimary(groebner(Ip))
    t0 = compute_t0(I, d)
    n = I.nvars
    if W is None:
        W = n
    if T is None:
        T = default_horizon(n, t0)
    if T < t0 + W:
        raise HorizonTooSmall(t0 + W, T)

    table = reg_table(I, T, d)
    f = [row[2] for row in table]
    b = f[-1]
    certified = len(set(f[-W:])) == 1
    late = [t for t, _, ft in table if ft > b]
    stab_raw = 1 + late[-1] if late else NEG_INF
    stab = max(1, stab_raw)
    c = max(f)
    c_argmax = f.index(c) + 1

    grid = {mu: n_strand_dimensions(I, mu, T, d) for mu in range(0, c + 2)}
    e_table = {mu: strand_end(dims) for mu, dims in grid.items()}
    e_b = e_table.get(b, NEG_INF) if b >= 0 else strand_end(n_strand_dimensions(I, b, T, d))

    checks = verify_t0_bounds(I, d, t0)
    # a non-constant window never proves anything false, it only leaves b open
    checks.append(
        Check("b-window", "f constant on the last W rows", sorted(set(f[-W:])), [b], "==", certified, False,
              "" if certified else f"raise T past {T}")
    )
    for t in range(t0, T):
        checks.append(compare(f"f-decreasing[{t}]", "f(t+1) <= f(t) for t >= t0", f[t], "<=", f[t - 1]))
    for t in range(t0, T + 1):
        checks.append(compare(f"f-above-b[{t}]", "f(t) >= b for t >= t0", f[t - 1], ">=", b, certified))
    checks.append(compare("c-attained-by-t0", "argmax_t f(t) <= t0", c_argmax, "<=", t0))
    checks.append(verify_monotonicity(grid, t0))
    route2 = max(1, e_b + 1) if not isinstance(e_b, AtLeast) else e_b
    checks.append(compare("stab-two-routes", "1 + max{t: f(t) > b} == max(1, e_b + 1)", stab, "==", route2, certified))
    missing = [
        (mu, t)
        for mu in range(0, max(b, 0))
        for t in range(t0, T + 1)
        if grid.get(mu, n_strand_dimensions(I, mu, T, d))[t - 1] == 0
    ]
    checks.append(
        Check("N-nonzero-below-b", "N_{mu,t} != 0 for 0 <= mu < b and t >= t0", len(missing), 0, "==",
              not missing, certified, "" if not missing else f"zeros at {missing[:10]}")
    )
    # reg(I^t) = dt + b beyond e_b and > dt + b on t0..e_b
    if not isinstance(e_b, AtLeast):
        bad = [t for t, r, _ in table if (t > e_b and r != d * t + b) or (t0 <= t <= e_b and r <= d * t + b)]
        checks.append(
            Check("reg-after-e_b", "reg(I^t) = dt+b for t > e_b; > for t0 <= t <= e_b", len(bad), 0, "==",
                  not bad, certified, "" if not bad else f"rows {bad}")
        )

    return StabReport(
        d=d, iprime=Ip, reg_iprime=reg_ip, t0=t0, table=table, b=b, c=c, c_argmax=c_argmax,
        e_table=e_table, stab=stab, stab_raw=stab_raw, horizon=T, window=W, certified=certified,
        grid=grid, bound_checks=checks,
    )

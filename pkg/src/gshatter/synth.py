"""Kernel synthesis: build a kernel whose classifier realizes target orders.

The construction works round by round.  Round l plants, for each of the m
tower functions, one "spike" pair of kernel values at fresh group
elements, sized so that at the bias -c_l exactly the spikes of rounds up
to l are active and the ranking of the nu values equals the l-th target
order.  Spikes of later rounds are too small to matter at -c_l, and an
open value band below each level stays empty so the levels never blur.

Every property claimed of the output is re-checked before the result is
returned, and `verify_synth` re-derives the whole chain of claims from
the finished kernel alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .classifier import nu, order_at
from .errors import (
    GroupTooSmallError,
    SynthesisVerificationError,
)
from .gfunc import GroupFunction, Measure, convolve, counting_measure, indicator
from .groups import FiniteGroup
from .orders import OrderSet, is_complete
from .shatter import is_shattered

MODES = ("order_two", "general")


@dataclass(frozen=True)
class UTower:
    """The functions u_0 = 1_e, u_1 = 1_g, and their alternating recursion

        u_{2q}   = eps_q * u_{2q-2} + u_{2q-1}
        u_{2q+1} = u_{2q-2} + eps_q * u_{2q-1}

    together with the exact coefficient pairs u_i = a_{i,1} 1_e + a_{i,2} 1_g.
    """

    group: FiniteGroup
    g: int
    B: Fraction
    C: Fraction
    p: int
    functions: tuple[GroupFunction, ...]
    coeffs: tuple[tuple[Fraction, Fraction], ...]
    epsilons: tuple[Fraction, ...]

    def u_tilde(self, index: int, k: tuple[Fraction, Fraction]) -> Fraction:
        """Value of u_index's coefficient form on the plane point k."""
        a1, a2 = self.coeffs[index]
        return a1 * k[0] + a2 * k[1]


def build_u_tower(
    group: FiniteGroup, g: int, B: Fraction, C: Fraction, p: int
) -> UTower:
    """Tower u_0 .. u_{2p+1} with eps_q = 4C/B + 1 + (p-q)(B/C + 1)."""
    if g == group.identity:
        raise ValueError("tower element g must differ from the identity")
    if not 0 < B < C:
        raise ValueError(f"need C > B > 0, got B={B}, C={C}")
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    B, C = Fraction(B), Fraction(C)
    epsilons = tuple(
        4 * C / B + 1 + (p - q) * (B / C + 1) for q in range(1, p + 1)
    )
    for a, b in zip(epsilons, epsilons[1:]):
        assert b < a - B / C
    coeffs: list[tuple[Fraction, Fraction]] = [
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
    ]
    for q in range(1, p + 1):
        eq = epsilons[q - 1]
        prev_even, prev_odd = coeffs[2 * q - 2], coeffs[2 * q - 1]
        coeffs.append(
            (
                eq * prev_even[0] + prev_odd[0],
                eq * prev_even[1] + prev_odd[1],
            )
        )
        coeffs.append(
            (
                prev_even[0] + eq * prev_odd[0],
                prev_even[1] + eq * prev_odd[1],
            )
        )
    for q in range(1, p + 1):
        a1, a2 = coeffs[2 * q]
        assert a1 > 0 and a2 > 0
    one_e = indicator(group, group.identity)
    one_g = indicator(group, g)
    functions = tuple(
        GroupFunction(
            group,
            tuple(
                a1 * one_e.values[x] + a2 * one_g.values[x]
                for x in range(group.order)
            ),
        )
        for a1, a2 in coeffs
    )
    return UTower(
        group=group,
        g=g,
        B=B,
        C=C,
        p=p,
        functions=functions,
        coeffs=tuple(coeffs),
        epsilons=epsilons,
    )


def solve_k_vector(
    tower: UTower, i: int, A: Fraction
) -> tuple[Fraction, Fraction]:
    """The plane point k with u~_i(k) = A and u~_l(k) < B for every l != i.

    Solves the exact 2x2 system with rows a_{i-2}, a_{i-1} and right side
    (2A/eps_{i/2}, -A); the post-conditions are then checked directly on
    every tower level.
    """
    if i % 2 != 0 or not 2 <= i <= 2 * tower.p:
        raise ValueError(f"index must be even in [2, 2p], got {i}")
    A = Fraction(A)
    if not tower.B < A < tower.C:
        raise ValueError(f"target {A} outside the open interval ({tower.B}, {tower.C})")
    half = i // 2
    r0, r1 = tower.coeffs[i - 2], tower.coeffs[i - 1]
    rhs0 = 2 * A / tower.epsilons[half - 1]
    rhs1 = -A
    det = r0[0] * r1[1] - r0[1] * r1[0]
    assert det != 0
    k = (
        (rhs0 * r1[1] - r0[1] * rhs1) / det,
        (r0[0] * rhs1 - rhs0 * r1[0]) / det,
    )
    for l in range(2 * tower.p + 2):
        value = tower.u_tilde(l, k)
        if l == i:
            if value != A:
                raise AssertionError(f"u~_{i}(k) = {value}, expected {A}")
        elif not value < tower.B:
            raise AssertionError(
                f"u~_{l}(k) = {value} is not below B = {tower.B}"
            )
    return k


def k_vector_diagnostics(
    tower: UTower, i: int, k: tuple[Fraction, Fraction]
) -> dict[str, bool]:
    """Stronger bounds than solve_k_vector guarantees, for inspection.

    Levels strictly below the anchor row i-1 stay inside (-B, B); the
    anchor itself is pinned to -A < 0, and every level above the solved
    index is negative outright.
    """
    small = all(abs(tower.u_tilde(l, k)) < tower.B for l in range(i - 1))
    negative = all(
        tower.u_tilde(l, k) < 0
        for l in (i - 1, *range(i + 1, 2 * tower.p + 2))
    )
    return {"small_below_anchor": small, "negative_elsewhere": negative}


def _mode_shifts(mode: str) -> range:
    # Newly chosen elements must avoid these powers of g applied to the
    # elements already chosen (and vice versa, hence the symmetric range).
    if mode == "order_two":
        return range(0, 2)  # g^0 and g^1 = g^-1
    return range(-4, 5)


def choose_subsets(
    group: FiniteGroup, g: int, r: int, m: int, mode: str
) -> tuple[tuple[int, ...], ...]:
    """Greedily pick r disjoint m-tuples of spike centres.

    order_two mode keeps the centres and their g-translates pairwise
    distinct; general mode keeps the five-translate windows
    {g^-2 h, g^-1 h, h, g h, g^2 h} pairwise disjoint.  Smallest usable
    element index wins, so the choice is deterministic.  All conditions
    are re-verified exhaustively before returning.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    required = (2 if mode == "order_two" else 9) * r * m
    if group.order < required:
        raise GroupTooSmallError(group.order, required, mode)
    shifts = _mode_shifts(mode)
    blocked: set[int] = set()
    chosen: list[int] = []
    for _ in range(r * m):
        pick = next(
            (x for x in range(group.order) if x not in blocked), None
        )
        assert pick is not None, "greedy selection ran out of elements"
        chosen.append(pick)
        for j in shifts:
            blocked.add(group.mul(group.power(g, j), pick))
    subsets = tuple(
        tuple(chosen[l * m : (l + 1) * m]) for l in range(r)
    )
    _check_subsets(group, g, subsets, mode)
    return subsets


def _translate_window(group: FiniteGroup, g: int, h: int, mode: str) -> frozenset[int]:
    if mode == "order_two":
        return frozenset({h, group.mul(group.inv(g), h)})
    return frozenset(
        group.mul(group.power(g, j), h) for j in range(-2, 3)
    )


def _check_subsets(
    group: FiniteGroup,
    g: int,
    subsets: Sequence[Sequence[int]],
    mode: str,
) -> None:
    flat = [h for sub in subsets for h in sub]
    if len(set(flat)) != len(flat):
        raise SynthesisVerificationError("subset elements are not distinct")
    windows = [_translate_window(group, g, h, mode) for h in flat]
    if mode == "order_two":
        union: set[int] = set()
        for w in windows:
            if len(w) != 2:
                raise SynthesisVerificationError(
                    "an element coincides with its own g-translate"
                )
            union |= w
        if len(union) != 2 * len(flat):
            raise SynthesisVerificationError(
                "centres and their g-translates are not pairwise distinct"
            )
    else:
        for a in range(len(windows)):
            for b in range(a + 1, len(windows)):
                if windows[a] & windows[b]:
                    raise SynthesisVerificationError(
                        f"translate windows of centres {flat[a]} and "
                        f"{flat[b]} overlap"
                    )


@dataclass(frozen=True)
class SynthConfig:
    m: int
    g: int
    orders: OrderSet
    mode: str = "order_two"
    B: Fraction = Fraction(1)
    C: Fraction = Fraction(2)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"need m >= 1, got {self.m}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 < self.B < self.C:
            raise ValueError(f"need C > B > 0, got B={self.B}, C={self.C}")
        if self.orders.m != self.m:
            raise ValueError(
                f"orders are over [{self.orders.m}] but m = {self.m}"
            )
        if not self.orders.rankings:
            raise ValueError("need at least one target order")
        for o in self.orders.rankings:
            if not o.is_strict():
                raise ValueError(f"target order {o.ranks} is not strict")


@dataclass(frozen=True)
class SynthResult:
    kernel: GroupFunction
    u: tuple[GroupFunction, ...]
    subsets: tuple[tuple[int, ...], ...]
    epsilon: Fraction
    thresholds: tuple[Fraction, ...]
    ms: tuple[Fraction, ...]
    g: int
    mode: str
    B: Fraction
    C: Fraction

    @property
    def group(self) -> FiniteGroup:
        return self.kernel.group

    @property
    def m(self) -> int:
        return (len(self.u) - 2) // 2

    def family(self) -> tuple[GroupFunction, ...]:
        """The classified functions u_2, u_4, ..., u_{2m}."""
        return tuple(self.u[2 * k] for k in range(1, self.m + 1))


def synth_epsilon(B: Fraction, C: Fraction, m: int, r: int) -> Fraction:
    """The level-separation constant (C-B)(m-1) / (2m(m-1+m^{r+1}-1)).

    The formula vanishes at m = 1 where no separation between functions
    is needed; any positive value below C - B keeps the single spike
    target inside (B, C), so we use (C-B)/4 there.
    """
    if m < 1 or r < 1:
        raise ValueError("need m >= 1 and r >= 1")
    if m == 1:
        return (C - B) / 4
    return (C - B) * (m - 1) / (2 * m * (m - 1 + m ** (r + 1) - 1))


def _mode_element_ok(group: FiniteGroup, g: int, mode: str) -> bool:
    if g == group.identity:
        return False
    if mode == "order_two":
        return group.mul(g, g) == group.identity
    return group.mul(g, g) != group.identity


def synth_kernel(group: FiniteGroup, config: SynthConfig) -> SynthResult:
    """Build a kernel realizing each target order o_l at bias -c_l.

    Raises SynthesisVerificationError if any of the construction's
    claimed properties fails its final re-check; a returned result has
    passed them all.
    """
    m, g, mode = config.m, config.g, config.mode
    B, C = Fraction(config.B), Fraction(config.C)
    orders = config.orders.rankings
    r = len(orders)
    if not _mode_element_ok(group, g, mode):
        raise ValueError(
            f"element {g} does not satisfy the {mode} mode requirement"
        )
    required = (2 if mode == "order_two" else 9) * r * m
    if group.order < required:
        raise GroupTooSmallError(group.order, required, mode)

    tower = build_u_tower(group, g, B, C, p=m)
    subsets = choose_subsets(group, g, r, m, mode)
    epsilon = synth_epsilon(B, C, m, r)

    kernel_values: dict[int, Fraction] = {}

    def assign(position: int, value: Fraction, kind: str) -> None:
        old = kernel_values.get(position)
        if old is None:
            kernel_values[position] = value
        elif old != value:
            raise SynthesisVerificationError(
                f"{kind} position {position} already carries {old}, "
                f"cannot assign {value}"
            )

    # a_by_round[l][k] = spike target of function k+1 in round l+1.
    a_by_round: list[list[Fraction]] = []
    ms: list[Fraction] = []
    thresholds: list[Fraction] = []
    m_prev, big_m_prev = C, Fraction(0)
    g_inv = group.inv(g)
    for l in range(1, r + 1):
        o = orders[l - 1].ranks
        o_inv = {o[k]: k + 1 for k in range(m)}
        targets = [
            m_prev - (m - i + 1) * (big_m_prev + epsilon)
            for i in range(1, m + 1)
        ]
        if not B < targets[0]:
            raise SynthesisVerificationError(
                f"round {l}: smallest spike target {targets[0]} fell below B"
            )
        round_a = [Fraction(0)] * m
        for i in range(1, m + 1):
            k_func = o_inv[i]
            target = targets[i - 1]
            k1, k2 = solve_k_vector(tower, 2 * k_func, target)
            centre = subsets[l - 1][i - 1]
            assign(centre, k1, "spike")
            assign(group.mul(g_inv, centre), k2, "spike")
            round_a[k_func - 1] = target
        a_by_round.append(round_a)
        m_cur = targets[0]
        probe = -m_cur + epsilon
        nu_hat = [
            sum((a_by_round[p][k] + probe) for p in range(l))
            for k in range(m)
        ]
        assert all(
            a_by_round[p][k] + probe > 0 for p in range(l) for k in range(m)
        )
        big_m_cur = max(nu_hat) - min(nu_hat)
        if not B < m_cur - m * (big_m_cur + epsilon):
            raise SynthesisVerificationError(
                f"round {l}: level condition B < m_l - m(M_l + eps) failed"
            )
        if not big_m_cur <= epsilon * (m**l - 1):
            raise SynthesisVerificationError(
                f"round {l}: spread bound M_l <= eps(m^l - 1) failed"
            )
        if l == 1 and big_m_cur != (m - 1) * epsilon:
            raise SynthesisVerificationError(
                "round 1 spread must equal (m-1) * eps exactly"
            )
        ms.append(m_cur)
        thresholds.append(m_cur - epsilon / 2)
        m_prev, big_m_prev = m_cur, big_m_cur

    if mode == "general":
        k_max = max(abs(v) for v in kernel_values.values())
        even_entries = [
            tower.coeffs[2 * q][j] for q in range(1, m + 1) for j in (0, 1)
        ]
        s_min, s_max = min(even_entries), max(even_entries)
        guard = -k_max * s_max / s_min
        for sub in subsets:
            for centre in sub:
                assign(group.mul(group.power(g, -2), centre), guard, "guard")
                assign(group.mul(g, centre), guard, "guard")

    kernel = GroupFunction(
        group,
        tuple(
            kernel_values.get(x, Fraction(0)) for x in range(group.order)
        ),
    )
    result = SynthResult(
        kernel=kernel,
        u=tower.functions,
        subsets=subsets,
        epsilon=epsilon,
        thresholds=tuple(thresholds),
        ms=tuple(ms),
        g=g,
        mode=mode,
        B=B,
        C=C,
    )
    _post_check(result, config.orders)
    return result


def _post_check(result: SynthResult, orders: OrderSet) -> None:
    """Re-check every claimed property of a freshly built kernel."""
    report = verify_synth(result, orders, include_shattering=False)
    if not report.passed:
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        raise SynthesisVerificationError(
            f"synthesized kernel failed self-checks: {failed}"
        )


@dataclass(frozen=True)
class SynthCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class SynthReport:
    checks: tuple[SynthCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}"
            for c in self.checks
        ]


def verify_synth(
    result: SynthResult,
    orders: OrderSet,
    include_shattering: bool = True,
) -> SynthReport:
    """Re-derive every claim about a synthesized kernel from scratch.

    Only the finished kernel, the tower functions and the group are
    consulted; the level values m_l, the spreads M_l and the thresholds
    are recomputed through nu/convolve rather than trusted.
    """
    checks: list[SynthCheck] = []

    def add(name: str, passed: bool, detail: str) -> None:
        checks.append(SynthCheck(name, bool(passed), detail))

    group = result.group
    m = result.m
    r = len(orders.rankings)
    mu = counting_measure(group)
    fs = result.family()
    kernel = result.kernel
    epsilon = result.epsilon
    B, C = result.B, result.C

    add(
        "epsilon-formula",
        epsilon == synth_epsilon(B, C, m, r),
        f"epsilon = {epsilon}",
    )

    tower = build_u_tower(group, result.g, B, C, p=m)
    add(
        "u-tower-structure",
        all(
            got.values == want.values
            for got, want in zip(result.u, tower.functions)
        )
        and len(result.u) == 2 * m + 2,
        f"{len(result.u)} tower functions",
    )

    mode_ok = _mode_element_ok(group, result.g, result.mode)
    add(
        "mode-element",
        mode_ok,
        f"g = {result.g} suits mode {result.mode}",
    )
    try:
        _check_subsets(group, result.g, result.subsets, result.mode)
        add("subset-disjointness", True, f"{r} rounds x {m} centres")
    except SynthesisVerificationError as exc:
        add("subset-disjointness", False, str(exc))

    # Level recursion: m_l = m_{l-1} - m (M_{l-1} + eps), with the spread
    # M_l read off the finished kernel at the probe -m_l + eps.  Spikes of
    # rounds above l sit below m_l - eps, so they are invisible there and
    # the recursion is well-defined on the final kernel.
    recursion_ok = True
    detail = ""
    m_prev, big_m_prev = C, Fraction(0)
    big_ms: list[Fraction] = []
    for l in range(1, r + 1):
        m_cur = m_prev - m * (big_m_prev + epsilon)
        if l - 1 >= len(result.ms) or result.ms[l - 1] != m_cur:
            recursion_ok = False
            detail = f"round {l}: recorded m_l disagrees with recursion"
            break
        values = [nu(kernel, f, mu, -m_cur + epsilon) for f in fs]
        big_m_cur = max(values) - min(values)
        big_ms.append(big_m_cur)
        m_prev, big_m_prev = m_cur, big_m_cur
    add(
        "level-recursion",
        recursion_ok and len(result.ms) == r,
        detail or f"m_l chain of length {r} reproduced",
    )

    if recursion_ok:
        cond_ok = all(
            B < result.ms[l] - m * (big_ms[l] + epsilon) for l in range(r)
        )
        add(
            "level-condition",
            cond_ok,
            "B < m_l - m(M_l + eps) at every level",
        )
        spread_ok = all(
            big_ms[l] <= epsilon * (m ** (l + 1) - 1) for l in range(r)
        )
        add(
            "spread-bound",
            spread_ok,
            "M_l <= eps (m^l - 1) at every level",
        )
    else:
        add("level-condition", False, "skipped: level recursion broken")
        add("spread-bound", False, "skipped: level recursion broken")

    thresholds_ok = len(result.thresholds) == r and all(
        result.thresholds[l] == result.ms[l] - epsilon / 2 for l in range(r)
    )
    add("thresholds", thresholds_ok, "c_l = m_l - eps/2 for every level")

    orders_ok = True
    detail = ""
    for l in range(r):
        got = order_at(kernel, fs, mu, -result.thresholds[l])
        if got.ranks != orders.rankings[l].ranks:
            orders_ok = False
            detail = (
                f"level {l + 1}: ranking {got.ranks} != target "
                f"{orders.rankings[l].ranks}"
            )
            break
    add("orders-realized", orders_ok, detail or f"all {r} target orders hit")

    gaps_ok = True
    detail = ""
    for l in range(r):
        values = [nu(kernel, f, mu, -result.thresholds[l]) for f in fs]
        for a in range(m):
            for b in range(a + 1, m):
                if abs(values[a] - values[b]) < epsilon:
                    gaps_ok = False
                    detail = f"level {l + 1}: gap below eps"
    add("pairwise-gaps", gaps_ok, detail or "all nu gaps >= eps at each -c_l")

    convs = [convolve(f, kernel, mu) for f in fs]
    band_ok = True
    detail = ""
    for l in range(r):
        lo, hi = result.ms[l] - epsilon, result.ms[l]
        for conv in convs:
            for v in conv.values:
                if lo < v < hi:
                    band_ok = False
                    detail = f"value {v} inside the band around m_{l + 1}"
    add("forbidden-band", band_ok, detail or "no convolution value in any band")

    min_over_b = min(
        (v for conv in convs for v in conv.values if v > B), default=None
    )
    add(
        "kernel-minimum-level",
        min_over_b == result.ms[-1],
        f"smallest convolution value above B is {min_over_b}",
    )

    g_inv = group.inv(result.g)
    centres = [h for sub in result.subsets for h in sub]
    if result.mode == "order_two":
        allowed = set(centres) | {group.mul(g_inv, h) for h in centres}
        support_ok = all(
            kernel.values[x] == 0
            for x in range(group.order)
            if x not in allowed
        )
        add(
            "support-structure",
            support_ok,
            "kernel vanishes outside the centres and their g-translates",
        )
    else:
        spike_positions = set(centres) | {group.mul(g_inv, h) for h in centres}
        guard_positions = {
            group.mul(group.power(result.g, shift), h)
            for h in centres
            for shift in (-2, 1)
        }
        k_max = max(abs(kernel.values[x]) for x in spike_positions)
        even_entries = [
            tower.coeffs[2 * q][j] for q in range(1, m + 1) for j in (0, 1)
        ]
        guard = -k_max * max(even_entries) / min(even_entries)
        guards_ok = all(
            kernel.values[x] == guard for x in guard_positions
        )
        support_ok = all(
            kernel.values[x] == 0
            for x in range(group.order)
            if x not in spike_positions | guard_positions
        )
        add(
            "support-structure",
            support_ok and guards_ok,
            "spikes, exact guard values, zero elsewhere",
        )
        translate_ok = True
        for h in centres:
            for shift in (-2, -1, 1, 2):
                x = group.mul(group.power(result.g, shift), h)
                if any(conv.values[x] > 0 for conv in convs):
                    translate_ok = False
        add(
            "guard-translates",
            translate_ok,
            "convolutions are <= 0 on every guarded translate",
        )

    if include_shattering:
        if is_complete(orders):
            cert = is_shattered(kernel, fs, mu)
            add(
                "shattering",
                cert.shattered,
                f"{cert.witnessed_count()} of {2 ** m} label patterns witnessed",
            )
        else:
            add(
                "shattering",
                True,
                "target orders not complete; shattering not required",
            )

    return SynthReport(tuple(checks))

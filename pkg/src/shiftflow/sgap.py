"""Gap shifts over {0, 1} and their flow-equivalence classification.

A gap set lists the allowed numbers of 0's between consecutive 1's.
Three descriptions are supported: an explicit finite set, an eventually
periodic set R + (T + N*n), and a sampled window of an otherwise unknown
set.  Sampled data can never prove anything beyond its bound, so every
verdict derived from it is bound-qualified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import InvalidInput, PreconditionError
from .words import Word


def _clean_tuple(values, label: str) -> tuple[int, ...]:
    out = tuple(sorted({int(v) for v in values}))
    if out and out[0] < 0:
        raise InvalidInput(f"{label} must be nonnegative")
    return out


@dataclass(frozen=True)
class FiniteGaps:
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = _clean_tuple(self.elements, "gap lengths")
        if not elems:
            raise InvalidInput("a finite gap set needs at least one element")
        object.__setattr__(self, "elements", elems)


@dataclass(frozen=True)
class EventuallyPeriodicGaps:
    """The set R union (T + N*n for n >= 0).  R and T finite, N >= 1."""

    R: tuple[int, ...]
    T: tuple[int, ...]
    N: int

    def __post_init__(self) -> None:
        if int(self.N) < 1:
            raise InvalidInput("period must be at least 1")
        object.__setattr__(self, "R", _clean_tuple(self.R, "sporadic elements"))
        object.__setattr__(self, "T", _clean_tuple(self.T, "tail offsets"))
        object.__setattr__(self, "N", int(self.N))


@dataclass(frozen=True)
class SampledGaps:
    """Every member up to `bound`, listed exactly; nothing known beyond."""

    members: tuple[int, ...]
    bound: int

    def __post_init__(self) -> None:
        mem = _clean_tuple(self.members, "members")
        if int(self.bound) < 0:
            raise InvalidInput("bound must be nonnegative")
        if mem and mem[-1] > int(self.bound):
            raise InvalidInput(f"member {mem[-1]} exceeds the bound {self.bound}")
        object.__setattr__(self, "members", mem)
        object.__setattr__(self, "bound", int(self.bound))


SGapSet = FiniteGaps | EventuallyPeriodicGaps | SampledGaps


@dataclass(frozen=True)
class FullShift:
    symbols: int


@dataclass(frozen=True)
class SoficTag:
    """Tail shape of a strictly sofic gap shift: offset count, period,
    and the lexicographically least translate of the offsets mod N."""

    k: int
    N: int
    residues: tuple[int, ...]


@dataclass(frozen=True)
class Classification:
    kind: str
    bound: int | None = None


@dataclass(frozen=True)
class FEVerdict:
    outcome: str
    witness: tuple[int, int] | None = None
    reason: str | None = None
    bound: int | None = None


def _member_fn(s: FiniteGaps | EventuallyPeriodicGaps) -> Callable[[int], bool]:
    if isinstance(s, FiniteGaps):
        elems = frozenset(s.elements)
        return lambda x: x in elems
    sporadic = frozenset(s.R)
    offsets = s.T
    period = s.N

    def member(x: int) -> bool:
        if x in sporadic:
            return True
        return any(x >= t and (x - t) % period == 0 for t in offsets)

    return member


def forbidden_words(s: SGapSet, max_len: int) -> set[Word]:
    """Forbidden set of the gap shift, as words over {0, 1}.

    Finite sets get their full (finite) forbidden set regardless of
    max_len; infinite sets get every gap word of length <= max_len.
    """
    if isinstance(s, SampledGaps) and max_len > s.bound + 2:
        raise PreconditionError(
            f"max_len {max_len} exceeds the verified window {s.bound} + 2"
        )
    finite_elems: tuple[int, ...] | None = None
    if isinstance(s, FiniteGaps):
        finite_elems = s.elements
    elif isinstance(s, EventuallyPeriodicGaps):
        m = minimal_form(s)
        if not m.T:
            if not m.R:
                raise InvalidInput("empty gap set")
            finite_elems = m.R
    out: set[Word] = set()
    if finite_elems is not None:
        allowed = set(finite_elems)
        top = finite_elems[-1]
        for k in range(top):
            if k not in allowed:
                out.add(Word("1" + "0" * k + "1"))
        out.add(Word("0" * (top + 1)))
        return out
    if isinstance(s, SampledGaps):
        mem = set(s.members)
        member = lambda x: x in mem
    else:
        member = _member_fn(minimal_form(s))
    for k in range(max(max_len - 1, 0)):
        if not member(k):
            out.add(Word("1" + "0" * k + "1"))
    return out


def minimal_form(s: EventuallyPeriodicGaps) -> EventuallyPeriodicGaps:
    """Equivalent description with the least period, tail offsets packed
    into one period window, and sporadic elements outside the tail.

    Idempotent; the described set is unchanged.
    """
    if not isinstance(s, EventuallyPeriodicGaps):
        raise InvalidInput("minimal form applies to eventually periodic sets")
    if not s.T:
        return EventuallyPeriodicGaps(s.R, (), 1)
    period = s.N
    threshold: dict[int, int] = {}
    for t in s.T:
        rho = t % period
        if rho not in threshold or t < threshold[rho]:
            threshold[rho] = t
    residues = set(threshold)
    new_period = next(
        d
        for d in range(1, period + 1)
        if period % d == 0 and all((rho + d) % period in residues for rho in residues)
    )
    base = max(threshold.values()) - new_period + 1

    def in_tail(x: int) -> bool:
        rho = x % period
        return rho in residues and x >= threshold[rho]

    offsets = tuple(x for x in range(max(base, 0), base + new_period) if in_tail(x))

    def in_new_tail(x: int) -> bool:
        return any(x >= t and (x - t) % new_period == 0 for t in offsets)

    leftovers = [x for x in range(max(base, 0)) if in_tail(x) and not in_new_tail(x)]
    sporadic = tuple(sorted({x for x in s.R + tuple(leftovers) if not in_new_tail(x)}))
    return EventuallyPeriodicGaps(sporadic, offsets, new_period)


def classify_type(s: SGapSet) -> Classification:
    """finite_type / strictly_sofic, bound-qualified for sampled input."""
    if isinstance(s, FiniteGaps):
        return Classification("finite_type")
    if isinstance(s, EventuallyPeriodicGaps):
        m = minimal_form(s)
        if not m.T or m.N == 1:
            return Classification("finite_type")
        return Classification("strictly_sofic")
    detected = detect_eventual_periodicity(s)
    if detected is None:
        return Classification("not_eventually_periodic_up_to_bound", bound=s.bound)
    return Classification(classify_type(detected).kind, bound=s.bound)


def shift_set(s: SGapSet, k: int) -> SGapSet:
    """Translate every element by k.  Flow equivalence class is preserved."""
    if k == 0:
        return s
    if isinstance(s, FiniteGaps):
        if s.elements[0] + k < 0:
            raise PreconditionError(f"translation by {k} leaves nonnegative integers")
        return FiniteGaps(tuple(e + k for e in s.elements))
    if isinstance(s, EventuallyPeriodicGaps):
        pool = s.R + s.T
        if not pool:
            return s
        if min(pool) + k < 0:
            raise PreconditionError(f"translation by {k} leaves nonnegative integers")
        return EventuallyPeriodicGaps(
            tuple(e + k for e in s.R), tuple(t + k for t in s.T), s.N
        )
    if s.bound + k < 0 or (s.members and s.members[0] + k < 0):
        raise PreconditionError(f"translation by {k} leaves nonnegative integers")
    return SampledGaps(tuple(m + k for m in s.members), s.bound + k)


def _least_residue_translate(offsets: tuple[int, ...], period: int) -> tuple[int, ...]:
    base = sorted({t % period for t in offsets})
    best: tuple[int, ...] | None = None
    for r in range(period):
        cand = tuple(sorted((t + r) % period for t in base))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def fe_invariant(s: SGapSet) -> FullShift | SoficTag:
    """Canonical flow-equivalence tag for exactly described gap sets."""
    if isinstance(s, SampledGaps):
        raise PreconditionError("sampled sets carry no exact invariant; use fe_equal")
    if isinstance(s, FiniteGaps):
        return FullShift(len(s.elements))
    m = minimal_form(s)
    if not m.T:
        if not m.R:
            raise InvalidInput("empty gap set has no invariant")
        return FullShift(len(m.R))
    if m.N == 1:
        return FullShift(2)
    return SoficTag(len(m.T), m.N, _least_residue_translate(m.T, m.N))


def detect_eventual_periodicity(s: SampledGaps) -> EventuallyPeriodicGaps | None:
    """Eventually periodic description fitting the samples, if one is
    visible for at least three full periods; None otherwise."""
    bound = s.bound
    chi = [0] * (bound + 1)
    for m in s.members:
        chi[m] = 1
    for period in range(1, bound // 3 + 1):
        breaks = [x for x in range(bound - period + 1) if chi[x] != chi[x + period]]
        start = breaks[-1] + 1 if breaks else 0
        if bound - start < 3 * period:
            continue
        offsets = tuple(x for x in range(start, start + period) if chi[x])
        sporadic = tuple(m for m in s.members if m < start)
        return minimal_form(EventuallyPeriodicGaps(sporadic, offsets, period))
    return None


def _signed_range(cap: int) -> Iterator[int]:
    yield 0
    for v in range(1, cap + 1):
        yield v
        yield -v


def _as_exact(s: SGapSet) -> FiniteGaps | EventuallyPeriodicGaps | None:
    if isinstance(s, FiniteGaps):
        return s
    if isinstance(s, EventuallyPeriodicGaps):
        m = minimal_form(s)
        if not m.T:
            if not m.R:
                raise InvalidInput("empty gap set")
            return FiniteGaps(m.R)
        return m
    detected = detect_eventual_periodicity(s)
    if detected is None:
        return None
    if not detected.T:
        if not detected.R:
            raise InvalidInput("empty gap set")
        return FiniteGaps(detected.R)
    return detected


def _fe_equal_exact(
    a: FiniteGaps | EventuallyPeriodicGaps,
    b: FiniteGaps | EventuallyPeriodicGaps,
    bound: int,
) -> FEVerdict:
    tag_a = fe_invariant(a)
    tag_b = fe_invariant(b)
    if isinstance(tag_a, FullShift) or isinstance(tag_b, FullShift):
        if isinstance(tag_a, FullShift) and isinstance(tag_b, FullShift):
            if tag_a.symbols == tag_b.symbols:
                return FEVerdict(
                    "equivalent",
                    reason=f"both flow equivalent to the full {tag_a.symbols}-shift",
                )
            return FEVerdict(
                "not_equivalent",
                reason="full shifts on different symbol counts",
            )
        return FEVerdict(
            "not_equivalent",
            reason="finite type is never flow equivalent to strictly sofic",
        )
    if tag_a != tag_b:
        return FEVerdict("not_equivalent", reason="sofic gap invariants differ")

    # Same tag: hunt for a cofinite translation witness.  Offsets must
    # realign mod N, so only one residue class of r can work.
    ea = minimal_form(a) if isinstance(a, EventuallyPeriodicGaps) else None
    eb = minimal_form(b) if isinstance(b, EventuallyPeriodicGaps) else None
    assert ea is not None and eb is not None
    period = ea.N
    want = {t % period for t in eb.T}
    m1 = _member_fn(ea)
    m2 = _member_fn(eb)
    span = max(ea.R + ea.T + eb.R + eb.T) + period
    best: tuple[tuple[int, int, int], int] | None = None
    for r in _signed_range(span + (bound + 2) * period):
        # beyond the span, |r| alone forces at least one removal per period
        if best is not None and (abs(r) - span) // period > best[0][0]:
            break
        if {(t + r) % period for t in ea.T} != want:
            continue
        horizon = span + abs(r) + 2 * period
        forced_a = [
            x for x in range(horizon + 1) if m1(x) and not (x + r >= 0 and m2(x + r))
        ]
        forced_b = [
            y for y in range(horizon + 1) if m2(y) and not (y - r >= 0 and m1(y - r))
        ]
        n = max(len(forced_a), len(forced_b))
        if n <= bound:
            key = (n, abs(r), 0 if r >= 0 else 1)
            if best is None or key < best[0]:
                best = (key, r)
    if best is None:
        return FEVerdict("unknown_up_to", bound=bound)
    (n, _, _), r = best
    return FEVerdict("equivalent", witness=(n, r))


def _window_membership(s: SGapSet) -> tuple[Callable[[int], bool], int | None]:
    if isinstance(s, SampledGaps):
        mem = frozenset(s.members)
        return (lambda x: x in mem), s.bound
    exact = s if isinstance(s, FiniteGaps) else minimal_form(s)
    return _member_fn(exact), None


def _forced_removals(
    f1: Callable[[int], bool], f2: Callable[[int], bool], r: int, window: int
) -> tuple[list[int], list[int]]:
    hi_a = window - max(r, 0)
    hi_b = window + min(r, 0)
    forced_a = [x for x in range(hi_a + 1) if f1(x) and not (x + r >= 0 and f2(x + r))]
    forced_b = [y for y in range(hi_b + 1) if f2(y) and not (y - r >= 0 and f1(y - r))]
    return forced_a, forced_b


def _window_consistent(s1: SGapSet, s2: SGapSet, witness: tuple[int, int]) -> bool:
    f1, b1 = _window_membership(s1)
    f2, b2 = _window_membership(s2)
    limits = [b for b in (b1, b2) if b is not None]
    if not limits:
        return True
    n, r = witness
    forced_a, forced_b = _forced_removals(f1, f2, r, min(limits))
    return max(len(forced_a), len(forced_b)) <= n


def _fe_equal_window(s1: SGapSet, s2: SGapSet, bound: int) -> FEVerdict:
    """Translation search on the common verified window.

    A witness is accepted only when every forced removal sits in the
    lower half of the window: the upper half must match exactly under
    the translation, otherwise wholesale removals could fake a match.
    """
    f1, b1 = _window_membership(s1)
    f2, b2 = _window_membership(s2)
    limits = [b for b in (b1, b2) if b is not None]
    window = min(limits)
    half = window // 2
    if window < 4:
        return FEVerdict("unknown_up_to", bound=window)
    best: tuple[tuple[int, int, int], int] | None = None
    for r in _signed_range(min(bound, window - half)):
        forced_a, forced_b = _forced_removals(f1, f2, r, window)
        if forced_a and max(forced_a) > half:
            continue
        if forced_b and max(forced_b) > half:
            continue
        n = max(len(forced_a), len(forced_b))
        if n <= bound:
            key = (n, abs(r), 0 if r >= 0 else 1)
            if best is None or key < best[0]:
                best = (key, r)
    if best is not None:
        (n, _, _), r = best
        return FEVerdict("equivalent", witness=(n, r))
    return FEVerdict("not_equivalent_up_to", bound=window)


def fe_equal(s1: SGapSet, s2: SGapSet, search_bound: int = 200) -> FEVerdict:
    """Decide flow equivalence of two gap shifts.

    Exact descriptions give exact verdicts.  Any sampled input caps what
    can be concluded: a negative answer degrades to not_equivalent_up_to,
    and a positive answer needs a witness the window itself confirms.
    """
    if search_bound < 1:
        raise InvalidInput("search bound must be at least 1")
    sampled = isinstance(s1, SampledGaps) or isinstance(s2, SampledGaps)
    e1 = _as_exact(s1)
    e2 = _as_exact(s2)
    if not sampled:
        assert e1 is not None and e2 is not None
        return _fe_equal_exact(e1, e2, search_bound)
    window = min(s.bound for s in (s1, s2) if isinstance(s, SampledGaps))
    if e1 is not None and e2 is not None:
        verdict = _fe_equal_exact(e1, e2, search_bound)
        if verdict.outcome == "equivalent":
            if verdict.witness is None or _window_consistent(s1, s2, verdict.witness):
                return verdict
            return FEVerdict("unknown_up_to", bound=window)
        if verdict.outcome == "not_equivalent":
            return FEVerdict("not_equivalent_up_to", reason=verdict.reason, bound=window)
        return verdict
    return _fe_equal_window(s1, s2, search_bound)

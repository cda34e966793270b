"""The 2k+1-copy test protocol against configurable adversaries.

A trial draws per-copy Pauli attacks from the adversary model, partitions the
copies uniformly into groups of sizes (k, k, 1), tests group 1 against the
B-side syndromes and group 2 against the W-side syndromes, and records the
third copy's fidelity indicator. Everything is driven by a single seeded RNG
per trial; per-trial seeds derive from a master seed via SHA-256, so results
are reproducible regardless of execution order.

RNG consumption order within a trial: adversary draw first, then the
partition shuffle, then (only when requested) raw outcome sampling.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .gf2 import BitVector
from .graphs import BipartiteGraphState
from .pauli import BlockClass, BlockPauli, identity_attack, sample_outcomes, syndromes

__all__ = [
    "Honest",
    "SingleBadCopy",
    "IidPauli",
    "ClassMixture",
    "Explicit",
    "AdversaryModel",
    "Transcript",
    "EstimateResult",
    "trial_seed",
    "draw_attack",
    "run_protocol",
    "run_trials",
    "estimate",
    "transcript_to_json",
]

_CLASS = {
    (0, 0): BlockClass(0, 0),
    (0, 1): BlockClass(0, 1),
    (1, 0): BlockClass(1, 0),
    (1, 1): BlockClass(1, 1),
}


@dataclass(frozen=True)
class Honest:
    """Sends 2k+1 clean copies."""


@dataclass(frozen=True)
class SingleBadCopy:
    """One uniformly placed copy of the given class, the rest clean."""

    bad_class: BlockClass


@dataclass(frozen=True)
class IidPauli:
    """Independent per-qubit X flips (prob p_x) and Z flips (prob p_z) on every copy."""

    p_x: float
    p_z: float


@dataclass(frozen=True)
class ClassMixture:
    """Permutation-invariant adversary described by (beta, Q0, Q1).

    With probability beta the bad-copy counts (a, b) of classes (1,0) and
    (0,1) are drawn from Q0 and no (1,1) copy is sent; otherwise (a, b) comes
    from Q1 and exactly one (1,1) copy is added. Placements are uniform.
    """

    beta: Fraction
    q0: tuple[tuple[tuple[int, int], Fraction], ...]
    q1: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_weights(
        cls,
        beta,
        q0: Mapping[tuple[int, int], object] | Iterable[tuple[tuple[int, int], object]],
        q1: Mapping[tuple[int, int], object] | Iterable[tuple[tuple[int, int], object]],
    ) -> "ClassMixture":
        return cls(Fraction(beta), _canon_weights(q0), _canon_weights(q1))


@dataclass(frozen=True)
class Explicit:
    """Fully explicit adversary: one attack distribution per copy.

    Each entry of ``copies`` is a tuple of (probability, BlockPauli) atoms.
    """

    copies: tuple[tuple[tuple[float, BlockPauli], ...], ...]


AdversaryModel = Union[Honest, SingleBadCopy, IidPauli, ClassMixture, Explicit]


def _canon_weights(q) -> tuple[tuple[tuple[int, int], Fraction], ...]:
    items = q.items() if isinstance(q, Mapping) else q
    out = []
    for (a, b), w in items:
        out.append(((int(a), int(b)), Fraction(w)))
    out.sort(key=lambda item: item[0])
    return tuple(out)


@dataclass(frozen=True)
class Transcript:
    """Record of one protocol run."""

    k: int
    seed: int
    partition: tuple[int, ...]
    classes: tuple[BlockClass, ...]
    observed_syndromes: tuple[tuple[int, BitVector], ...]
    accepted: bool
    third_fidelity: int
    raw_outcomes: tuple[tuple[int, BitVector, BitVector], ...] | None = None


@dataclass(frozen=True)
class EstimateResult:
    pass_rate: Fraction
    conditional_fidelity: Fraction | None
    counts: dict[str, int]


def trial_seed(master_seed: int, index: int) -> int:
    """Derived per-trial seed: top 8 bytes of SHA-256('{master_seed}:{index}')."""
    digest = hashlib.sha256(f"{master_seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _validate_weights(
    name: str, atoms: tuple[tuple[tuple[int, int], Fraction], ...], max_sum: int
) -> None:
    if not atoms:
        raise ValueError(f"{name} has no atoms")
    total = Fraction(0)
    for (a, b), w in atoms:
        if a < 0 or b < 0:
            raise ValueError(f"{name} atom ({a}, {b}) has negative counts")
        if a + b > max_sum:
            raise ValueError(f"{name} atom ({a}, {b}) exceeds the copy budget")
        if w < 0:
            raise ValueError(f"{name} weight for ({a}, {b}) is negative")
        total += w
    if total != 1:
        raise ValueError(f"{name} weights sum to {total}, expected 1")


def _class_rep(g: BipartiteGraphState, s: int, t: int) -> BlockPauli:
    """Canonical attack of class (s, t): Z on the first vertex of each flagged side."""
    if s and g.n_b == 0:
        raise ValueError("class with s=1 is not realizable: graph has no B vertices")
    if t and g.n_w == 0:
        raise ValueError("class with t=1 is not realizable: graph has no W vertices")
    return BlockPauli(
        BitVector.zero(g.n_b),
        BitVector.zero(g.n_w),
        BitVector.unit(g.n_b, 0) if s else BitVector.zero(g.n_b),
        BitVector.unit(g.n_w, 0) if t else BitVector.zero(g.n_w),
    )


class _Plan:
    """Per-(graph, k, model) preparation shared across trials.

    Interns the canonical attacks and their syndromes so the Monte Carlo loop
    never recomputes them. Syndromes of ad-hoc attacks (IidPauli draws) are
    computed on the fly and never cached, since their ids are not stable.
    """

    def __init__(self, g: BipartiteGraphState, k: int, model: AdversaryModel):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.g = g
        self.k = k
        self.n_copies = 2 * k + 1
        self.model = model
        self.identity = identity_attack(g)
        self._syn: dict[int, tuple[BitVector, BitVector]] = {}
        self._memo_attack(self.identity)

        if isinstance(model, Honest):
            pass
        elif isinstance(model, SingleBadCopy):
            cls = model.bad_class
            self._single_rep = self._memo_attack(_class_rep(g, cls.s, cls.t))
        elif isinstance(model, ClassMixture):
            if not 0 <= model.beta <= 1:
                raise ValueError("beta must be in [0, 1]")
            _validate_weights("q0", model.q0, self.n_copies)
            _validate_weights("q1", model.q1, self.n_copies - 1)
            self._beta = float(model.beta)
            self._cum0 = _cumulative(model.q0)
            self._cum1 = _cumulative(model.q1)
            self._rep10 = self._memo_attack(_class_rep(g, 1, 0))
            self._rep01 = self._memo_attack(_class_rep(g, 0, 1))
            self._rep11 = self._memo_attack(_class_rep(g, 1, 1))
        elif isinstance(model, IidPauli):
            if not (0 <= model.p_x <= 1 and 0 <= model.p_z <= 1):
                raise ValueError("flip probabilities must be in [0, 1]")
        elif isinstance(model, Explicit):
            if len(model.copies) != self.n_copies:
                raise ValueError(
                    f"explicit model has {len(model.copies)} copies, needs {self.n_copies}"
                )
            for atoms in model.copies:
                total = 0.0
                for prob, attack in atoms:
                    if prob < 0:
                        raise ValueError("explicit probabilities must be nonnegative")
                    total += prob
                    self._memo_attack(attack)
                if abs(total - 1.0) > 1e-9:
                    raise ValueError("explicit copy distribution is not normalized")
        else:
            raise ValueError(f"unknown adversary model: {model!r}")

    def _memo_attack(self, p: BlockPauli) -> BlockPauli:
        # Caller must keep a reference to p (the plan or model does), so its
        # id stays valid for the lifetime of the cache.
        self._syn[id(p)] = syndromes(self.g, p)
        return p

    def syndromes_of(self, p: BlockPauli) -> tuple[BitVector, BitVector]:
        cached = self._syn.get(id(p))
        if cached is not None:
            return cached
        return syndromes(self.g, p)

    def class_of(self, p: BlockPauli) -> BlockClass:
        sigma1, sigma2 = self.syndromes_of(p)
        return _CLASS[(int(not sigma1.is_zero()), int(not sigma2.is_zero()))]

    def _sample_counts(self, rng: random.Random) -> tuple[int, int, int]:
        if rng.random() < self._beta:
            cum = self._cum0
            c = 0
        else:
            cum = self._cum1
            c = 1
        x = rng.random()
        for threshold, (a, b) in cum:
            if x < threshold:
                return a, b, c
        a, b = cum[-1][1]
        return a, b, c

    def draw(self, rng: random.Random) -> list[BlockPauli]:
        model = self.model
        if isinstance(model, Honest):
            return [self.identity] * self.n_copies
        if isinstance(model, SingleBadCopy):
            attacks = [self.identity] * self.n_copies
            attacks[rng.randrange(self.n_copies)] = self._single_rep
            return attacks
        if isinstance(model, ClassMixture):
            a, b, c = self._sample_counts(rng)
            attacks = [self.identity] * self.n_copies
            chosen = rng.sample(range(self.n_copies), a + b + c)
            for pos in chosen[:a]:
                attacks[pos] = self._rep10
            for pos in chosen[a : a + b]:
                attacks[pos] = self._rep01
            for pos in chosen[a + b :]:
                attacks[pos] = self._rep11
            return attacks
        if isinstance(model, IidPauli):
            return [self._iid_attack(rng, model) for _ in range(self.n_copies)]
        attacks = []
        for atoms in model.copies:
            x = rng.random()
            total = 0.0
            pick = atoms[-1][1]
            for prob, attack in atoms:
                total += prob
                if x < total:
                    pick = attack
                    break
            attacks.append(pick)
        return attacks

    def _iid_attack(self, rng: random.Random, model: IidPauli) -> BlockPauli:
        # Mask order: u_b, u_w, v_b, v_w.
        g = self.g
        masks = []
        for n, p in ((g.n_b, model.p_x), (g.n_w, model.p_x), (g.n_b, model.p_z), (g.n_w, model.p_z)):
            bits = 0
            for i in range(n):
                if rng.random() < p:
                    bits |= 1 << i
            masks.append(bits)
        return BlockPauli(
            BitVector(g.n_b, masks[0]),
            BitVector(g.n_w, masks[1]),
            BitVector(g.n_b, masks[2]),
            BitVector(g.n_w, masks[3]),
        )

    def trial_masks(self, rng: random.Random) -> tuple[int, int]:
        """Copy-indexed syndrome flags: bit i of s_mask (t_mask) is set iff
        copy i would fail a group-1 (group-2) test. Consumes the RNG exactly
        like draw()."""
        model = self.model
        if isinstance(model, Honest):
            return 0, 0
        if isinstance(model, SingleBadCopy):
            pos = rng.randrange(self.n_copies)
            cls = model.bad_class
            return cls.s << pos, cls.t << pos
        if isinstance(model, ClassMixture):
            a, b, c = self._sample_counts(rng)
            chosen = rng.sample(range(self.n_copies), a + b + c)
            s_mask = 0
            t_mask = 0
            for pos in chosen[:a]:
                s_mask |= 1 << pos
            for pos in chosen[a : a + b]:
                t_mask |= 1 << pos
            for pos in chosen[a + b :]:
                s_mask |= 1 << pos
                t_mask |= 1 << pos
            return s_mask, t_mask
        attacks = self.draw(rng)
        s_mask = 0
        t_mask = 0
        for i, p in enumerate(attacks):
            sigma1, sigma2 = self.syndromes_of(p)
            if not sigma1.is_zero():
                s_mask |= 1 << i
            if not sigma2.is_zero():
                t_mask |= 1 << i
        return s_mask, t_mask


def _cumulative(
    atoms: tuple[tuple[tuple[int, int], Fraction], ...]
) -> list[tuple[float, tuple[int, int]]]:
    out = []
    total = 0.0
    for (a, b), w in atoms:
        total += float(w)
        out.append((total, (a, b)))
    return out


def draw_attack(
    model: AdversaryModel, k: int, g: BipartiteGraphState, rng: random.Random
) -> list[BlockPauli]:
    """Draw one round of 2k+1 per-copy attacks from the adversary model."""
    return _Plan(g, k, model).draw(rng)


def _run_full(plan: _Plan, seed: int, record_outcomes: bool) -> Transcript:
    rng = random.Random(seed)
    attacks = plan.draw(rng)
    order = list(range(plan.n_copies))
    rng.shuffle(order)
    k = plan.k
    group1 = sorted(order[:k])
    group2 = sorted(order[k : 2 * k])
    third = order[-1]

    partition = [0] * plan.n_copies
    for i in group1:
        partition[i] = 1
    for i in group2:
        partition[i] = 2
    partition[third] = 3

    accepted = True
    observed = []
    for i in group1:
        sigma1, _ = plan.syndromes_of(attacks[i])
        observed.append((i, sigma1))
        if not sigma1.is_zero():
            accepted = False
    for i in group2:
        _, sigma2 = plan.syndromes_of(attacks[i])
        observed.append((i, sigma2))
        if not sigma2.is_zero():
            accepted = False
    observed.sort(key=lambda item: item[0])

    sigma1, sigma2 = plan.syndromes_of(attacks[third])
    third_fidelity = int(sigma1.is_zero() and sigma2.is_zero())
    classes = tuple(plan.class_of(attacks[i]) for i in range(plan.n_copies))

    raw = None
    if record_outcomes:
        records = []
        for i in group1:
            x, z = sample_outcomes(plan.g, attacks[i], 1, rng)
            records.append((i, x, z))
        for i in group2:
            x, z = sample_outcomes(plan.g, attacks[i], 2, rng)
            records.append((i, x, z))
        records.sort(key=lambda item: item[0])
        raw = tuple(records)

    return Transcript(
        k=k,
        seed=seed,
        partition=tuple(partition),
        classes=classes,
        observed_syndromes=tuple(observed),
        accepted=accepted,
        third_fidelity=third_fidelity,
        raw_outcomes=raw,
    )


def run_protocol(
    g: BipartiteGraphState,
    k: int,
    model: AdversaryModel,
    seed: int,
    record_outcomes: bool = False,
) -> Transcript:
    """Run one full protocol round and return its transcript."""
    return _run_full(_Plan(g, k, model), seed, record_outcomes)


def run_trials(
    g: BipartiteGraphState,
    k: int,
    model: AdversaryModel,
    trials: int,
    master_seed: int,
    record_outcomes: bool = False,
) -> Iterator[Transcript]:
    """Stream transcripts for trials 0..trials-1 under derived per-trial seeds."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    plan = _Plan(g, k, model)
    for index in range(trials):
        yield _run_full(plan, trial_seed(master_seed, index), record_outcomes)


def estimate(
    g: BipartiteGraphState,
    k: int,
    model: AdversaryModel,
    trials: int,
    master_seed: int,
) -> EstimateResult:
    """Monte Carlo aggregate over derived per-trial seeds.

    pass_rate is exact (accepted/trials); conditional_fidelity is the clean
    fraction among accepted trials, or None when nothing was accepted.
    Aggregates equal those of run_trials with the same arguments.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    plan = _Plan(g, k, model)
    n = plan.n_copies
    base = list(range(n))
    accepted = 0
    clean = 0
    for index in range(trials):
        rng = random.Random(trial_seed(master_seed, index))
        s_mask, t_mask = plan.trial_masks(rng)
        order = base[:]
        rng.shuffle(order)
        ok = True
        if s_mask:
            for j in order[:k]:
                if (s_mask >> j) & 1:
                    ok = False
                    break
        if ok and t_mask:
            for j in order[k : 2 * k]:
                if (t_mask >> j) & 1:
                    ok = False
                    break
        if ok:
            accepted += 1
            if not (((s_mask | t_mask) >> order[-1]) & 1):
                clean += 1
    return EstimateResult(
        pass_rate=Fraction(accepted, trials),
        conditional_fidelity=Fraction(clean, accepted) if accepted else None,
        counts={"trials": trials, "accepted": accepted, "accepted_clean": clean},
    )


def transcript_to_json(t: Transcript, trial: int) -> str:
    """One JSON line in the persisted transcript schema."""
    return json.dumps(
        {
            "trial": trial,
            "seed": t.seed,
            "partition": list(t.partition),
            "classes": [[c.s, c.t] for c in t.classes],
            "accepted": t.accepted,
            "third_fidelity": t.third_fidelity,
        }
    )

"""Pauli attacks on graph states: syndromes, classes, outcome sampling.

An attack is described by X/Z error masks on both vertex sets. Phases never
matter here; only commutation patterns against the graph stabilizers and the
induced measurement statistics do.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf2 import BitVector, mat_vec
from .graphs import BipartiteGraphState

__all__ = [
    "BlockPauli",
    "BlockClass",
    "identity_attack",
    "syndromes",
    "block_class",
    "fidelity_indicator",
    "sample_outcomes",
]


@dataclass(frozen=True)
class BlockPauli:
    """Per-copy error masks: u_* are X-error masks, v_* are Z-error masks."""

    u_b: BitVector
    u_w: BitVector
    v_b: BitVector
    v_w: BitVector

    def __post_init__(self) -> None:
        if self.u_b.n != self.v_b.n or self.u_w.n != self.v_w.n:
            raise ValueError("mask lengths disagree between X and Z parts")

    def __xor__(self, other: "BlockPauli") -> "BlockPauli":
        return BlockPauli(
            self.u_b ^ other.u_b,
            self.u_w ^ other.u_w,
            self.v_b ^ other.v_b,
            self.v_w ^ other.v_w,
        )

    def is_identity(self) -> bool:
        return (
            self.u_b.is_zero()
            and self.u_w.is_zero()
            and self.v_b.is_zero()
            and self.v_w.is_zero()
        )


@dataclass(frozen=True)
class BlockClass:
    """Syndrome visibility pair: s = group-1 visible, t = group-2 visible."""

    s: int
    t: int

    def __post_init__(self) -> None:
        if self.s not in (0, 1) or self.t not in (0, 1):
            raise ValueError("class bits must be 0 or 1")


def identity_attack(g: BipartiteGraphState) -> BlockPauli:
    return BlockPauli(
        BitVector.zero(g.n_b),
        BitVector.zero(g.n_w),
        BitVector.zero(g.n_b),
        BitVector.zero(g.n_w),
    )


def _check_dims(g: BipartiteGraphState, p: BlockPauli) -> None:
    if p.u_b.n != g.n_b or p.u_w.n != g.n_w:
        raise ValueError(
            f"attack masks sized ({p.u_b.n}, {p.u_w.n}) do not fit graph "
            f"({g.n_b}, {g.n_w})"
        )


def syndromes(g: BipartiteGraphState, p: BlockPauli) -> tuple[BitVector, BitVector]:
    """Anticommutation bits against the graph stabilizers.

    sigma1[j] flags the B-vertex stabilizer X_j Z_N(j) and is what a group-1
    test observes; sigma2[i] flags the W-vertex stabilizer and is what a
    group-2 test observes.
    """
    _check_dims(g, p)
    sigma1 = p.v_b ^ mat_vec(g.adjacency, p.u_w)
    sigma2 = p.v_w ^ mat_vec(g.adjacency_t, p.u_b)
    return sigma1, sigma2


def block_class(g: BipartiteGraphState, p: BlockPauli) -> BlockClass:
    sigma1, sigma2 = syndromes(g, p)
    return BlockClass(int(not sigma1.is_zero()), int(not sigma2.is_zero()))


def fidelity_indicator(g: BipartiteGraphState, p: BlockPauli) -> int:
    """1 iff the attacked copy still equals the graph state (both syndromes zero)."""
    sigma1, sigma2 = syndromes(g, p)
    return int(sigma1.is_zero() and sigma2.is_zero())


def _random_bits(rng: random.Random, n: int) -> int:
    return rng.getrandbits(n) if n else 0


def sample_outcomes(
    g: BipartiteGraphState,
    p: BlockPauli,
    group: int,
    rng: random.Random,
) -> tuple[BitVector, BitVector]:
    """Sample one block's measurement record under the attack.

    Group 1 measures X on B and Z on W; group 2 measures Z on B and X on W.
    Returns (x_outcomes, z_outcomes). The Z record is uniform; the X record is
    pinned so that the relation-failure pattern equals the relevant syndrome
    deterministically.
    """
    _check_dims(g, p)
    if group == 1:
        base = _random_bits(rng, g.n_w)
        z_obs = BitVector(g.n_w, base ^ p.u_w.bits)
        x_obs = mat_vec(g.adjacency, BitVector(g.n_w, base)) ^ p.v_b
        return x_obs, z_obs
    if group == 2:
        base = _random_bits(rng, g.n_b)
        z_obs = BitVector(g.n_b, base ^ p.u_b.bits)
        x_obs = mat_vec(g.adjacency_t, BitVector(g.n_b, base)) ^ p.v_w
        return x_obs, z_obs
    raise ValueError("group must be 1 or 2")

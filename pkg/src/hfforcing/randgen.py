"""Seeded random instances: sets, names, forcing notions and models."""

from __future__ import annotations

import random
from typing import List, Optional, Sequence

from .order import FiniteForcingNotion
from .sets import EMPTY, HSet, eclose, kpair

__all__ = [
    "random_hset", "random_transset", "random_subset", "random_notion",
    "random_name", "random_forcing_data",
]


def random_hset(rng: random.Random, max_rank: int = 4, width: int = 3) -> HSet:
    """A set of rank at most ``max_rank`` with at most ``width`` members per node."""
    if max_rank <= 0:
        return EMPTY
    k = rng.randint(0, width)
    return HSet(random_hset(rng, rng.randint(0, max_rank - 1), width)
                for _ in range(k))


def random_transset(rng: random.Random, max_rank: int = 4, width: int = 3) -> HSet:
    return eclose(HSet(random_hset(rng, max_rank - 1, width)
                       for _ in range(rng.randint(1, width))))


def random_subset(rng: random.Random, xs: Sequence[HSet],
                  must: Sequence[HSet] = ()) -> HSet:
    return HSet([x for x in xs if rng.random() < 0.5] + list(must))


def random_notion(rng: random.Random, size: int = 8) -> FiniteForcingNotion:
    """A random preorder on distinct small sets, with one of them on top."""
    pool: List[HSet] = []
    while len(pool) < size:
        x = random_hset(rng, 3, 2)
        if x not in pool:
            pool.append(x)
    one = rng.choice(pool)
    pairs = [(rng.choice(pool), rng.choice(pool))
             for _ in range(rng.randint(0, 2 * size))]
    return FiniteForcingNotion.generated(HSet(pool), pairs, one, "random")


def random_name(rng: random.Random, conditions: Sequence[HSet],
                max_rank: int = 4, width: int = 3) -> HSet:
    """A set whose members are mostly pairs <name, condition>."""
    if max_rank <= 0:
        return EMPTY
    out = []
    for _ in range(rng.randint(0, width)):
        sub = random_name(rng, conditions, rng.randint(0, max_rank - 1), width)
        if rng.random() < 0.85:
            out.append(kpair(sub, rng.choice(conditions)))
        else:
            out.append(sub)
    return HSet(out)


def random_forcing_data(rng: random.Random, max_p: int = 4, max_m: int = 40,
                        tries: int = 200) -> Optional["ForcingData"]:
    """Minimal closure of a random small notion plus a few names, of size <= max_m."""
    from .names import ForcingData

    for _ in range(tries):
        notion = random_notion(rng, rng.randint(1, max_p))
        base = ForcingData.minimal(notion)
        if len(base.m) > max_m:
            continue
        extra = [random_name(rng, notion.carrier.elems, 2, 2)
                 for _ in range(rng.randint(0, 3))]
        fd = ForcingData.minimal(notion, *extra)
        if len(fd.m) <= max_m:
            return fd
        return base
    return None

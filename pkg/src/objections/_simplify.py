"""Cosmetic formula shortening for display.

Classic prime-implicant reduction (Quine-McCluskey with a deterministic
greedy cover).  Output is equivalent to the input truth table but usually far
shorter than the canonical minterm DNF.  This is display sugar only: nothing
in the package compares simplified forms, and above ``_MAX_VARS`` variables
the canonical form is returned unchanged.
"""

from __future__ import annotations

from . import logic
from .logic import Not, Sentence, Vocabulary, conjoin, disjoin

_MAX_VARS = 12


def _combine(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int] | None:
    values_a, care = a
    values_b, care_b = b
    if care != care_b:
        return None
    diff = (values_a ^ values_b) & care
    if diff and diff & (diff - 1) == 0:
        return (values_a & ~diff, care & ~diff)
    return None


def _prime_implicants(minterms: list[int], width: int) -> list[tuple[int, int]]:
    full_care = (1 << width) - 1
    current = {(m, full_care) for m in minterms}
    primes: set[tuple[int, int]] = set()
    while current:
        combined: set[tuple[int, int]] = set()
        used: set[tuple[int, int]] = set()
        by_group: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for item in current:
            key = (item[1], bin(item[0] & item[1]).count("1"))
            by_group.setdefault(key, []).append(item)
        for (care, ones), items in by_group.items():
            uppers = by_group.get((care, ones + 1), [])
            for a in items:
                for b in uppers:
                    merged = _combine(a, b)
                    if merged is not None:
                        combined.add(merged)
                        used.add(a)
                        used.add(b)
        primes |= current - used
        current = combined
    return sorted(primes, key=lambda p: (bin(p[1]).count("1"), p[1], p[0]))


def _covers(prime: tuple[int, int], minterm: int) -> bool:
    values, care = prime
    return (minterm & care) == (values & care)


def _select_cover(primes: list[tuple[int, int]], minterms: list[int]) -> list[tuple[int, int]]:
    remaining = set(minterms)
    chosen: list[tuple[int, int]] = []
    # Essential primes first, then greedy by coverage with a stable tiebreak.
    for minterm in sorted(minterms):
        covering = [p for p in primes if _covers(p, minterm)]
        if len(covering) == 1 and covering[0] not in chosen:
            chosen.append(covering[0])
            remaining -= {m for m in remaining if _covers(covering[0], m)}
    while remaining:
        best = max(
            primes,
            key=lambda p: (
                len([m for m in remaining if _covers(p, m)]),
                -bin(p[1]).count("1"),
                -p[1],
                -p[0],
            ),
        )
        chosen.append(best)
        remaining -= {m for m in remaining if _covers(best, m)}
    return chosen


def simplify(mask: int, vocabulary: Vocabulary) -> Sentence:
    """A short sentence equivalent to the truth-table mask."""
    n = len(vocabulary)
    full = (1 << vocabulary.world_count) - 1
    if mask == 0:
        return logic.FALSE
    if mask == full:
        return logic.TRUE
    if n > _MAX_VARS:
        return logic.from_truth_table(mask, vocabulary)

    # World index bit k corresponds to atom position n-1-k.
    minterms = [i for i in range(vocabulary.world_count) if (mask >> i) & 1]
    primes = _prime_implicants(minterms, n)
    cover = _select_cover(primes, minterms)

    terms = []
    for values, care in sorted(cover, key=lambda p: (bin(p[1]).count("1"), p[1], p[0])):
        literals = []
        for position, atom in enumerate(vocabulary.atoms):
            bit = n - 1 - position
            if (care >> bit) & 1:
                literals.append(atom if (values >> bit) & 1 else Not(atom))
        terms.append(conjoin(literals))
    return disjoin(terms)


def simplify_sentence(sentence: Sentence, vocabulary: Vocabulary) -> Sentence:
    return simplify(logic.truth_table(sentence, vocabulary), vocabulary)

"""Cyclic words describing screw columns, layer stacks, and patterns.

Three alphabets are used:

  * sigma words over {S, Z}: handedness per level of a vertical screw
    column, or of a whole parallel-column surface.
  * tau words over {0, x, y}: one letter per horizontal vertex plane of
    a layered surface: 0 for a saddle plane, x or y for a screw plane
    with that screw axis.
  * omega words over {u, p}: pushed/unpushed tower pattern along the
    transverse axis of a slab.

Words are cyclic.  Two words name congruent surfaces when they agree
up to rotation, reversal, and an alphabet involution (S<->Z or x<->y),
so the canonical form minimizes over that orbit.
"""

from __future__ import annotations

from math import lcm

SIGMA_ALPHABET = "SZ"
TAU_ALPHABET = "0xy"
OMEGA_ALPHABET = "up"

_SIGMA_SWAP = str.maketrans("SZ", "ZS")
_TAU_SWAP = str.maketrans("xy", "yx")


def check_word(word: str, alphabet: str) -> str:
    if not word:
        raise ValueError("empty word")
    bad = set(word) - set(alphabet)
    if bad:
        raise ValueError(f"letters {sorted(bad)} not in alphabet {alphabet!r}")
    return word


def rotations(word: str):
    for i in range(len(word)):
        yield word[i:] + word[:i]


def min_cyclic_period(word: str) -> int:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word == word[p:] + word[:p]:
            return p
    return n


def canon(word: str, swap: dict | None = None, reverse: bool = True) -> str:
    """Lexicographic minimum over rotations, optional reversal and swap."""
    variants = {word}
    if reverse:
        variants.add(word[::-1])
    if swap is not None:
        for w in list(variants):
            variants.add(w.translate(swap))
    return min(r for w in variants for r in rotations(w))


def canon_sigma(word: str) -> str:
    return canon(check_word(word, SIGMA_ALPHABET), _SIGMA_SWAP)


def canon_tau(word: str) -> str:
    return canon(check_word(word, TAU_ALPHABET), _TAU_SWAP)


def canon_omega(word: str) -> str:
    return canon(check_word(word, OMEGA_ALPHABET), swap=None)


def column_period(sigma: str) -> int:
    """Minimal vertical period of the face set of a sigma column.

    The transverse span axis alternates with the level, so the period
    is the least common multiple of 2 and the cyclic period of sigma.
    """
    check_word(sigma, SIGMA_ALPHABET)
    return lcm(2, min_cyclic_period(sigma))

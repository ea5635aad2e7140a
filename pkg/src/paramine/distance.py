"""Character-level Levenshtein distance."""

from __future__ import annotations


def levenshtein(a: str, b: str) -> int:
    """Minimum number of character insertions, deletions, and substitutions
    turning ``a`` into ``b``.

    Two-row dynamic programming, O(len(a) * len(b)) time and O(min-side)
    memory; sentence-length inputs only.
    """
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]

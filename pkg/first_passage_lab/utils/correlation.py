"""Autocorrelations, structural indices and correlation classes of words."""
import itertools
from functools import lru_cache
from typing import Dict, List, Tuple

from first_passage_lab.models.enums import Relation
from first_passage_lab.models.errors import InvalidWord, MismatchedAlphabet
from first_passage_lab.models.word import (
    Autocorrelation,
    CorrelationClass,
    PairProfile,
    StructureProfile,
    Word,
    sort_words,
)


def _prefix_function(symbols: Tuple[int, ...]) -> List[int]:
    """Knuth-Morris-Pratt failure function: pi[j] is the longest proper border of symbols[:j+1]."""
    pi = [0] * len(symbols)
    for j in range(1, len(symbols)):
        border = pi[j - 1]
        while border > 0 and symbols[j] != symbols[border]:
            border = pi[border - 1]
        if symbols[j] == symbols[border]:
            border += 1
        pi[j] = border
    return pi


@lru_cache(maxsize=65536)
def autocorrelation(w: Word) -> Autocorrelation:
    """Compute the autocorrelation b_k ... b_1 of a word.

    b_i = 1 exactly when the prefix and the suffix of length i coincide. The
    borders of a word form the chain pi(k), pi(pi(k)), ... of its failure
    function, so all bits come out of a single linear pass.

    Args:
        w: The word

    Returns:
        The autocorrelation with its base-2 value and s (largest proper overlap, 0 if none)
    """
    k = w.k
    pi = _prefix_function(w.symbols)

    borders = {k}
    border = pi[-1]
    while border > 0:
        borders.add(border)
        border = pi[border - 1]

    bits = tuple(1 if i in borders else 0 for i in range(k, 0, -1))
    value = int("".join(str(bit) for bit in bits), 2)
    s = max((i for i in borders if i < k), default=0)
    return Autocorrelation(bits=bits, value=value, s=s)


def _bracket(cor: Autocorrelation, i: int) -> int:
    """[i]: the largest overlap j whose period k - j reaches i, i.e. i = k - t(k - j)."""
    k = cor.k
    return max(
        j for j in cor.overlaps()
        if j >= i and (k - i) % (k - j) == 0
    )


def _tail_agreement(w: Word, i: int, I: List[int]) -> int:
    """T(i): longest common run after the overlaps of size i and of some larger j in I."""
    best = 0
    for j in I:
        if j <= i:
            continue
        t = 0
        while t < w.k - j and w.symbols[i + t] == w.symbols[j + t]:
            t += 1
        best = max(best, t)
    return best


def structure_profile(w: Word) -> StructureProfile:
    """Compute I, [i], S, d, T and the minimal period of a word.

    Args:
        w: The word

    Returns:
        The structure profile
    """
    cor = autocorrelation(w)
    bracket: Dict[int, int] = {i: _bracket(cor, i) for i in cor.overlaps()}
    I = sorted(set(bracket.values()), reverse=True)
    S = frozenset(i for i, top in bracket.items() if top == cor.s)
    T = {i: _tail_agreement(w, i, I) for i in I}

    return StructureProfile(
        word=w,
        cor=cor,
        I=frozenset(I),
        bracket=bracket,
        S=S,
        d=min(I) if I else None,
        T=T,
        per=w.k - cor.s,
    )


def minimal_period(w: Word) -> int:
    """Least p such that w extends to a p-periodic sequence; k - s with the b_0 = 1 convention."""
    return w.k - autocorrelation(w).s


def pair_profile(w: Word, w_prime: Word) -> PairProfile:
    """Compare two autocorrelations and compute r for the pair.

    r = max{ j in I : b_j = 1 and b'_j = 0 }, undefined (None) when no such j exists.

    Raises:
        MismatchedAlphabet: If the words use different alphabet sizes
    """
    if w.q != w_prime.q:
        raise MismatchedAlphabet(f"Cannot compare words over q={w.q} and q={w_prime.q}")

    cor = autocorrelation(w)
    cor_prime = autocorrelation(w_prime)

    if cor.value > cor_prime.value:
        relation = Relation.W_DOMINATES
    elif cor.value < cor_prime.value:
        relation = Relation.W_PRIME_DOMINATES
    else:
        relation = Relation.EQUAL_COR

    profile = structure_profile(w)
    candidates = [j for j in profile.I if cor.b(j) == 1 and cor_prime.b(j) == 0]
    r = max(candidates) if candidates else None
    return PairProfile(w=w, w_prime=w_prime, relation=relation, r=r)


@lru_cache(maxsize=None)
def correlation_classes(q: int, k: int) -> Tuple[CorrelationClass, ...]:
    """Group all q^k words of length k by autocorrelation.

    Members are in lexicographic order, so the first member is the class
    representative; classes are ordered by autocorrelation value.
    """
    if q < 2 or k < 1:
        raise InvalidWord(f"Need q >= 2 and k >= 1, got q={q}, k={k}")

    groups: Dict[Autocorrelation, List[Word]] = {}
    for symbols in itertools.product(range(q), repeat=k):
        word = Word(symbols=symbols, q=q)
        groups.setdefault(autocorrelation(word), []).append(word)

    classes = [CorrelationClass(cor=cor, members=sort_words(words)) for cor, words in groups.items()]
    return tuple(sorted(classes, key=lambda c: c.cor.value))


def class_of(word: Word) -> CorrelationClass:
    """The correlation class containing ``word``."""
    cor = autocorrelation(word)
    for cls in correlation_classes(word.q, word.k):
        if cls.cor == cor:
            return cls
    raise InvalidWord(f"No correlation class found for {word}")

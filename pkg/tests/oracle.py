"""Independent Bruhat-order oracle for symmetric groups.

Deliberately avoids the package under test: elements are permutations of
{0..n-1}, s_i is the transposition (i-1, i), length is inversion count, and
u <= v is decided by enumerating all subwords of a reduced word for v.
"""

from itertools import permutations


def compose(p, q):
    """(p . q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def gen(n, i):
    """The transposition s_i (1-based) as a permutation of {0..n-1}."""
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def perm_of_word(n, word):
    p = tuple(range(n))
    for i in word:
        p = compose(p, gen(n, i))
    return p


def inversions(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p))
               if p[i] > p[j])


def reduced_word(p):
    """Any reduced word, by greedily removing right descents."""
    p = list(p)
    word = []
    while inversions(tuple(p)) > 0:
        for i in range(1, len(p)):
            if p[i - 1] > p[i]:
                p[i - 1], p[i] = p[i], p[i - 1]
                word.append(i)
                break
    word.reverse()
    return tuple(word)


def bruhat_leq_oracle(u, v):
    """u <= v iff u equals the product of some subword of a reduced word of v."""
    word = reduced_word(v)
    n = len(v)
    k = len(word)
    for mask in range(1 << k):
        sub = tuple(word[i] for i in range(k) if mask >> i & 1)
        if perm_of_word(n, sub) == u:
            return True
    return False


def all_perms(n):
    return list(permutations(range(n)))

"""Exact crystallographic Coxeter groups via the integer reflection representation.

Elements are stored as integer matrices acting on the root lattice, together
with a canonical (lexicographically least) reduced word.  All arithmetic is
exact, so finite and affine groups are handled uniformly.
"""

from dataclasses import dataclass
from functools import lru_cache

INF = 0  # Coxeter matrix entry m_ij = infinity (also the JSON encoding)

_ALLOWED_OFFDIAG = {2, 3, 4, 6, INF}

# Cartan integer pairs (c_ij, c_ji) for each bond label; the reflection is
# s_i(alpha_j) = alpha_j - c_ij * alpha_i.  Crystallographic labels only.
_CARTAN_PAIR = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INF: (-2, -2)}


class CoxeterError(ValueError):
    pass


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a, b):
    n = len(a)
    rng = range(n)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in rng) for j in rng) for i in rng
    )


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of bond labels m_ij in {1,2,3,4,6,INF}, 1-based generators."""

    n: int
    entries: tuple

    def __post_init__(self):
        if self.n < 1 or len(self.entries) != self.n:
            raise CoxeterError("rank/entry shape mismatch")
        for i in range(self.n):
            row = self.entries[i]
            if len(row) != self.n:
                raise CoxeterError("entries must be square")
            if row[i] != 1:
                raise CoxeterError("diagonal entries must be 1")
            for j in range(self.n):
                if i == j:
                    continue
                if row[j] != self.entries[j][i]:
                    raise CoxeterError("Coxeter matrix must be symmetric")
                if row[j] not in _ALLOWED_OFFDIAG:
                    raise CoxeterError(
                        "non-crystallographic bond label %r at (%d,%d)"
                        % (row[j], i + 1, j + 1)
                    )

    @property
    def generators(self):
        return range(1, self.n + 1)

    def m(self, i, j):
        return self.entries[i - 1][j - 1]

    def cartan(self):
        C = [[2 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        for i in range(self.n):
            for j in range(i + 1, self.n):
                cij, cji = _CARTAN_PAIR[self.entries[i][j]]
                C[i][j] = cij
                C[j][i] = cji
        return tuple(tuple(row) for row in C)

    def reflection(self, i):
        """Matrix of the simple reflection s_i on the root lattice (i is 1-based)."""
        return _reflections(self)[i - 1]

    def check_word(self, word):
        for letter in word:
            if not 1 <= letter <= self.n:
                raise CoxeterError("invalid generator index %r" % (letter,))
        return tuple(word)

    def to_json_dict(self):
        return {"rank": self.n, "m": [list(row) for row in self.entries]}

    @classmethod
    def from_json_dict(cls, d):
        return cls(d["rank"], tuple(tuple(row) for row in d["m"]))


@lru_cache(maxsize=None)
def _reflections(cox):
    C = cox.cartan()
    n = cox.n
    refls = []
    for i in range(n):
        M = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        for j in range(n):
            M[i][j] -= C[i][j]
        refls.append(tuple(tuple(row) for row in M))
    return tuple(refls)


def builtin_matrix(family, rank=None):
    """The shipped Dynkin types: A_n (chain), D_k (fork at node 3), affine A2."""
    if family == "A":
        if rank is None or rank < 1:
            raise CoxeterError("type A requires rank >= 1")
        ent = [[2] * rank for _ in range(rank)]
        for i in range(rank):
            ent[i][i] = 1
        for i in range(rank - 1):
            ent[i][i + 1] = ent[i + 1][i] = 3
        return CoxeterMatrix(rank, tuple(tuple(r) for r in ent))
    if family == "D":
        if rank is None or rank < 4:
            raise CoxeterError("type D requires at least 4 nodes")
        ent = [[2] * rank for _ in range(rank)]
        for i in range(rank):
            ent[i][i] = 1
        edges = [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, rank)]
        for a, b in edges:
            ent[a - 1][b - 1] = ent[b - 1][a - 1] = 3
        return CoxeterMatrix(rank, tuple(tuple(r) for r in ent))
    if family == "affineA2":
        if rank not in (None, 3):
            raise CoxeterError("affine A2 has rank 3")
        return CoxeterMatrix(3, ((1, 3, 3), (3, 1, 3), (3, 3, 1)))
    raise CoxeterError("unknown family %r" % (family,))


def matrix_by_name(name):
    """Parse builtin names 'A<k>', 'D<k>', 'affineA2'."""
    if name == "affineA2":
        return builtin_matrix("affineA2")
    if len(name) >= 2 and name[0] in "AD" and name[1:].isdigit():
        return builtin_matrix(name[0], int(name[1:]))
    raise CoxeterError("unknown builtin matrix name %r" % (name,))


class GroupElement:
    """A Coxeter group element: reflection-representation matrix plus the
    lexicographically least reduced word.  Immutable and hashable."""

    __slots__ = ("cox", "matrix", "matrix_inv", "word")

    def __init__(self, cox, matrix, matrix_inv):
        self.cox = cox
        self.matrix = matrix
        self.matrix_inv = matrix_inv
        self.word = _canonical_word(cox, matrix, matrix_inv)

    @property
    def length(self):
        return len(self.word)

    def is_identity(self):
        return not self.word

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.cox == other.cox
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.cox, self.matrix))

    def __repr__(self):
        return "GroupElement(%s)" % (".".join(map(str, self.word)) or "e")

    def inverse(self):
        return GroupElement(self.cox, self.matrix_inv, self.matrix)

    def times_gen(self, i, side="right"):
        """Product with a simple reflection on the given side."""
        S = self.cox.reflection(i)
        if side == "right":
            return GroupElement(
                self.cox, _mat_mul(self.matrix, S), _mat_mul(S, self.matrix_inv)
            )
        return GroupElement(
            self.cox, _mat_mul(S, self.matrix), _mat_mul(self.matrix_inv, S)
        )


def _canonical_word(cox, matrix, matrix_inv):
    # Greedy leftmost-smallest-descent extraction: the smallest i with s_i w < w
    # (read off w^{-1}(alpha_i) <= 0, i.e. column i of the inverse matrix).
    n = cox.n
    ident = _identity(n)
    refls = _reflections(cox)
    word = []
    M, Minv = matrix, matrix_inv
    while M != ident:
        for i in range(n):
            if all(Minv[r][i] <= 0 for r in range(n)):
                word.append(i + 1)
                S = refls[i]
                M = _mat_mul(S, M)
                Minv = _mat_mul(Minv, S)
                break
        else:  # not a group element matrix
            raise CoxeterError("matrix has no descent but is not the identity")
    return tuple(word)


def identity_element(cox):
    ident = _identity(cox.n)
    return GroupElement(cox, ident, ident)


def generator_element(cox, i):
    cox.check_word((i,))
    S = cox.reflection(i)
    return GroupElement(cox, S, S)


def element_from_word(cox, word):
    """The group element equal to the product of the listed simple reflections."""
    word = cox.check_word(word)
    n = cox.n
    M = _identity(n)
    Minv = M
    for letter in word:
        S = cox.reflection(letter)
        M = _mat_mul(M, S)
        Minv = _mat_mul(S, Minv)
    return GroupElement(cox, M, Minv)


def multiply(u, v):
    if u.cox != v.cox:
        raise CoxeterError("elements from different Coxeter groups")
    return GroupElement(
        u.cox,
        _mat_mul(u.matrix, v.matrix),
        _mat_mul(v.matrix_inv, u.matrix_inv),
    )


def right_descent(w, i):
    """True iff l(w s_i) < l(w); sign of the root-lattice column w(alpha_i)."""
    w.cox.check_word((i,))
    col = i - 1
    return all(w.matrix[r][col] <= 0 for r in range(w.cox.n))


def left_descent(w, i):
    w.cox.check_word((i,))
    col = i - 1
    return all(w.matrix_inv[r][col] <= 0 for r in range(w.cox.n))


def canonical_word(w):
    return w.word


def is_reduced(cox, word):
    word = cox.check_word(word)
    return element_from_word(cox, word).length == len(word)


def elements_up_to_length(cox, bound):
    """All group elements of length <= bound (breadth-first; finite even in
    infinite groups)."""
    frontier = [identity_element(cox)]
    seen = {frontier[0]}
    out = [frontier[0]]
    for _ in range(bound):
        nxt = []
        for w in frontier:
            for i in cox.generators:
                if not right_descent(w, i):
                    ws = w.times_gen(i)
                    if ws not in seen:
                        seen.add(ws)
                        nxt.append(ws)
        out.extend(nxt)
        frontier = nxt
    return out

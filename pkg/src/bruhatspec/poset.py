"""Finite labeled posets: construction, Hasse reduction, products, unions,
upper sets, constrained isomorphism search, exports, and the pushout square
relating an interval [1, wbar*a] to copies of [1, wbar]."""

import json


class PosetError(ValueError):
    pass


class LabeledPoset:
    """Finite poset over opaque string labels.

    Internally elements are dense indices 0..n-1; `up[i]` is the frozenset of
    indices j with i <= j (including i itself).  `rank` is optional; when
    present every cover edge must raise it by exactly 1.
    """

    __slots__ = ("labels", "up", "hasse", "rank", "_index")

    def __init__(self, labels, up, hasse, rank=None):
        self.labels = tuple(labels)
        self.up = tuple(up)
        self.hasse = tuple(hasse)
        self.rank = dict(rank) if rank is not None else None
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise PosetError("duplicate labels")
        if self.rank is not None:
            for a, b in self.hasse:
                if self.rank[b] != self.rank[a] + 1:
                    raise PosetError("cover edge %r->%r not rank-increasing by 1"
                                     % (self.labels[a], self.labels[b]))

    def __len__(self):
        return len(self.labels)

    def index(self, label):
        return self._index[label]

    def leq(self, a, b):
        """Compare by label."""
        return self._index[b] in self.up[self._index[a]]

    def leq_idx(self, i, j):
        return j in self.up[i]

    def down_idx(self, j):
        return frozenset(i for i in range(len(self.labels)) if j in self.up[i])

    def rank_profile(self):
        if self.rank is None:
            raise PosetError("poset has no rank function")
        top = max(self.rank.values(), default=0)
        prof = [0] * (top + 1)
        for i in range(len(self.labels)):
            prof[self.rank[i]] += 1
        return tuple(prof)

    def relabel(self, mapping):
        """New poset with labels passed through `mapping` (callable or dict)."""
        get = mapping.get if isinstance(mapping, dict) else None
        if get is not None:
            new = [get(l, l) for l in self.labels]
        else:
            new = [mapping(l) for l in self.labels]
        return LabeledPoset(new, self.up, self.hasse, self.rank)


def build(elements, relations, rank=None):
    """Poset from labels and generating relations (pairs of labels, a <= b).

    Computes the reflexive-transitive closure, rejects cycles, and derives
    Hasse edges by transitive reduction.
    """
    labels = list(elements)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise PosetError("duplicate labels")
    n = len(labels)
    adj = [set() for _ in range(n)]
    for a, b in relations:
        adj[index[a]].add(index[b])
    # Floyd-Warshall style closure is fine at these sizes (n < 100)
    up = [set(a) | {i} for i, a in enumerate(adj)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set()
            for j in up[i]:
                extra |= up[j]
            if not extra <= up[i]:
                up[i] |= extra
                changed = True
    for i in range(n):
        for j in up[i]:
            if i != j and i in up[j]:
                raise PosetError("cycle through %r and %r" % (labels[i], labels[j]))
    return _from_up(labels, [frozenset(u) for u in up], rank)


def _from_up(labels, up, rank=None):
    n = len(labels)
    hasse = []
    for i in range(n):
        for j in up[i]:
            if j == i:
                continue
            # j covers i iff nothing sits strictly between
            if not any(k != i and k != j and k in up[i] and j in up[k]
                       for k in range(n)):
                hasse.append((i, j))
    hasse.sort()
    return LabeledPoset(labels, up, hasse, rank)


def product(P, Q):
    """Componentwise order on pairs; labels formatted '(p,q)'."""
    labels = []
    pairs = []
    for i, lp in enumerate(P.labels):
        for j, lq in enumerate(Q.labels):
            labels.append("(%s,%s)" % (lp, lq))
            pairs.append((i, j))
    n = len(labels)
    up = []
    for a in range(n):
        i, j = pairs[a]
        members = set()
        for b in range(n):
            k, l = pairs[b]
            if P.leq_idx(i, k) and Q.leq_idx(j, l):
                members.add(b)
        up.append(frozenset(members))
    rank = None
    if P.rank is not None and Q.rank is not None:
        rank = {a: P.rank[pairs[a][0]] + Q.rank[pairs[a][1]] for a in range(n)}
    return _from_up(labels, up, rank)


def disjoint_union(P, Q):
    """Side-by-side union, no cross relations.  Colliding labels from Q get a
    deterministic ' (2)' suffix."""
    labels = list(P.labels)
    taken = set(labels)
    qlabels = []
    for l in Q.labels:
        nl = l
        while nl in taken:
            nl = nl + " (2)"
        taken.add(nl)
        qlabels.append(nl)
    off = len(P.labels)
    up = [frozenset(u) for u in P.up]
    up += [frozenset(off + j for j in u) for u in Q.up]
    rank = None
    if P.rank is not None and Q.rank is not None:
        rank = dict(P.rank)
        for j, r in Q.rank.items():
            rank[off + j] = r
    return _from_up(labels + qlabels, up, rank)


def two_chain():
    return build(["0", "1"], [("0", "1")], rank={0: 0, 1: 1})


def singleton(label="*"):
    return build([label], [], rank={0: 0})


def induced(P, labels):
    """Subposet on the given labels with the restricted order (no rank)."""
    keep = sorted({P.index(l) for l in labels})
    pos = {i: k for k, i in enumerate(keep)}
    up = [frozenset(pos[j] for j in P.up[i] if j in pos) for i in keep]
    return _from_up([P.labels[i] for i in keep], up)


def is_upper_set(P, labels):
    """True iff the labeled subset is closed under going up."""
    idx = {P.index(l) for l in labels}
    return all(j in idx for i in idx for j in P.up[i])


class PosetMap:
    """Map between posets with recomputed structural flags."""

    __slots__ = ("source", "target", "assignment",
                 "order_preserving", "injective", "surjective", "is_isomorphism")

    def __init__(self, source, target, assignment):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        missing = set(source.labels) - set(self.assignment)
        if missing:
            raise PosetError("map not total; missing %r" % (sorted(missing)[:3],))
        for v in self.assignment.values():
            target.index(v)  # raises on unknown target label
        self.order_preserving = all(
            target.leq(self.assignment[source.labels[i]],
                       self.assignment[source.labels[j]])
            for i in range(len(source)) for j in source.up[i]
        )
        image = set(self.assignment.values())
        self.injective = len(image) == len(source)
        self.surjective = len(image) == len(target)
        iso = self.injective and self.surjective and self.order_preserving
        if iso:
            inv = {v: k for k, v in self.assignment.items()}
            iso = all(
                source.leq(inv[target.labels[i]], inv[target.labels[j]])
                for i in range(len(target)) for j in target.up[i]
            )
        self.is_isomorphism = iso

    def __call__(self, label):
        return self.assignment[label]

    def compose(self, other):
        """self after other (other first)."""
        return PosetMap(other.source, self.target,
                        {k: self.assignment[v] for k, v in other.assignment.items()})

    def inverse(self):
        if not (self.injective and self.surjective):
            raise PosetError("map is not bijective")
        return PosetMap(self.target, self.source,
                        {v: k for k, v in self.assignment.items()})


def _signature(P, i, block_of):
    down = P.down_idx(i)
    up = P.up[i]
    covers_up = sum(1 for (a, b) in P.hasse if a == i)
    covers_dn = sum(1 for (a, b) in P.hasse if b == i)
    return (block_of.get(i, -1), len(down), len(up), covers_dn, covers_up)


def find_isomorphism(P, Q, constraints=()):
    """Isomorphism P -> Q mapping each constraint block onto its partner block,
    or None.  Deterministic: elements assigned in a fixed order, candidates
    tried in label-lexicographic order."""
    n = len(P)
    if n != len(Q):
        return None
    pblock, qblock = {}, {}
    for b, (ps, qs) in enumerate(constraints):
        ps_idx = {P.index(l) for l in ps}
        qs_idx = {Q.index(l) for l in qs}
        if len(ps_idx) != len(qs_idx):
            return None
        for i in ps_idx:
            if pblock.setdefault(i, b) != b:
                raise PosetError("constraint blocks overlap in source")
        for j in qs_idx:
            if qblock.setdefault(j, b) != b:
                raise PosetError("constraint blocks overlap in target")
    psig = {i: _signature(P, i, pblock) for i in range(n)}
    qsig = {j: _signature(Q, j, qblock) for j in range(n)}
    from collections import Counter
    if Counter(psig.values()) != Counter(qsig.values()):
        return None
    # assign elements ordered by candidate-set scarcity proxy: |down| then label
    order = sorted(range(n), key=lambda i: (psig[i][1], P.labels[i]))
    cands = {i: sorted((j for j in range(n) if qsig[j] == psig[i]),
                       key=lambda j: Q.labels[j]) for i in range(n)}
    assign = {}
    used = set()

    def ok(i, j):
        for i2, j2 in assign.items():
            if P.leq_idx(i, i2) != Q.leq_idx(j, j2):
                return False
            if P.leq_idx(i2, i) != Q.leq_idx(j2, j):
                return False
        return True

    def rec(pos):
        if pos == n:
            return True
        i = order[pos]
        for j in cands[i]:
            if j in used or not ok(i, j):
                continue
            assign[i] = j
            used.add(j)
            if rec(pos + 1):
                return True
            del assign[i]
            used.discard(j)
        return False

    if not rec(0):
        return None
    return PosetMap(P, Q, {P.labels[i]: Q.labels[j] for i, j in assign.items()})


def export(P, fmt):
    """Render to 'json' (schema with dense ids) or 'dot' (rank-layered)."""
    if fmt == "json":
        elems = [{"id": i, "label": P.labels[i],
                  "rank": P.rank[i] if P.rank is not None else None}
                 for i in range(len(P))]
        return json.dumps({"elements": elems,
                           "hasse": [list(e) for e in sorted(P.hasse)]},
                          indent=2, sort_keys=True)
    if fmt == "dot":
        lines = ["digraph poset {", "  rankdir=BT;",
                 '  node [shape=box, fontsize=10];']
        for i, lab in enumerate(P.labels):
            lines.append('  n%d [label="%s"];' % (i, lab.replace('"', r'\"')))
        if P.rank is not None:
            layers = {}
            for i in range(len(P)):
                layers.setdefault(P.rank[i], []).append(i)
            for r in sorted(layers):
                lines.append("  { rank=same; %s }"
                             % " ".join("n%d;" % i for i in layers[r]))
        for a, b in sorted(P.hasse):
            lines.append("  n%d -> n%d;" % (a, b))
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise PosetError("unknown export format %r" % (fmt,))


def pushout_square(m, wbar, a):
    """Instance check of the pushout square for [1, wbar*a].

    Builds W3 | (W2 x 2), (W2|W3) x 2, [1,wbar], [1,wbar*a] and the maps
    nu1, nu2, top, inclusion; verifies the bijectivity/order-preservation
    claims, commutativity, and that the inverse of top is order-preserving
    on each descent class.  Returns a report dict.
    """
    from . import bruhat as br
    from . import coxeter as cx

    part = br.partition(m, wbar, a)
    wl = br.word_label
    Pw = part.interval_wbar.to_poset()
    Pwa = part.interval_wbara.to_poset()
    w2 = sorted(wl(w) for w in part.W2)
    w3 = sorted(wl(w) for w in part.W3)
    by_label = {wl(w): w for w in part.interval_wbara.elements}

    A = disjoint_union(induced(Pw, w3), product(induced(Pw, w2), two_chain()))
    B = product(induced(Pw, w2 + w3), two_chain())

    def times_a(label):
        return wl(by_label[label].times_gen(a))

    # nu1: identity on W3; (w,0) -> w; (w,1) -> w*a
    def unpair(label):
        base, eps = label[1:-1].rsplit(",", 1)
        return base, eps
    n1 = {}
    n2 = {}
    for l in A.labels:
        if l in set(w3):
            n1[l] = l
            n2[l] = "(%s,0)" % l
        else:
            base, eps = unpair(l)
            n1[l] = base if eps == "0" else times_a(base)
            n2[l] = l
    nu1 = PosetMap(A, Pw, n1)
    nu2 = PosetMap(A, B, n2)
    t = {}
    for l in B.labels:
        base, eps = unpair(l)
        t[l] = base if eps == "0" else times_a(base)
    top = PosetMap(B, Pwa, t)
    incl = PosetMap(Pw, Pwa, {l: l for l in Pw.labels})

    square = all(top(nu2(l)) == incl(nu1(l)) for l in A.labels)
    tinv = {v: k for k, v in t.items()}
    restr_ok = True
    for u in Pwa.labels:
        for v in Pwa.labels:
            if u == v or not Pwa.leq(u, v):
                continue
            if cx.right_descent(by_label[u], a) == cx.right_descent(by_label[v], a):
                if not B.leq(tinv[u], tinv[v]):
                    restr_ok = False
    checks = {
        "nu1_bijective_op": nu1.injective and nu1.surjective and nu1.order_preserving,
        "nu2_injective_op": nu2.injective and nu2.order_preserving,
        "top_bijective_op": top.injective and top.surjective and top.order_preserving,
        "square_commutes": square,
        "top_inverse_restrictions_op": restr_ok,
    }
    checks["ok"] = all(checks.values())
    checks["sizes"] = {"A": len(A), "B": len(B),
                       "interval_wbar": len(Pw), "interval_wbara": len(Pwa)}
    return checks


def from_json(text):
    d = json.loads(text)
    labels = [None] * len(d["elements"])
    rank = {}
    has_rank = True
    for e in d["elements"]:
        labels[e["id"]] = e["label"]
        if e.get("rank") is None:
            has_rank = False
        else:
            rank[e["id"]] = e["rank"]
    rels = [(labels[a], labels[b]) for a, b in d["hasse"]]
    return build(labels, rels, rank=rank if has_rank else None)

"""Cayley-graph experiments: balls, almost-convexity profiles, cone types.

Groups are given by a multiplication on hashable normal forms (integer
tuples), so the word metric comes from plain BFS.  Cone types are
approximated at finite depth: the portion of a sphere element's shadow
within k steps, compared up to rooted labeled-graph isomorphism.
"""

from collections import deque
from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms import isomorphism

DEFAULT_CAP = 10 ** 6


class CayleyError(ValueError):
    pass


@dataclass
class GroupSpec:
    name: str
    identity: tuple
    generators: dict            # gen name -> element
    mul: callable
    inv: callable
    gen_inverse: dict = field(default_factory=dict)  # gen name -> inverse name

    def __post_init__(self):
        if not self.gen_inverse:
            by_elem = {e: s for s, e in self.generators.items()}
            for s, e in self.generators.items():
                self.gen_inverse[s] = by_elem[self.inv(e)]


# --- built-in groups -------------------------------------------------

def _z_mul(a, b):
    return (a[0] + b[0],)


def _z3_mul(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _heis_mul(a, b):
    # (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])


def _mat_pow(s):
    # powers of ((2,1),(1,1)); inverse is ((1,-1),(-1,2))
    m = (1, 0, 0, 1)
    step = (2, 1, 1, 1) if s >= 0 else (1, -1, -1, 2)
    for _ in range(abs(s)):
        a, b, c, d = m
        p, q, r, t = step
        m = (a * p + b * r, a * q + b * t, c * p + d * r, c * q + d * t)
    return m


def _sol_mul(x, y):
    # (v, s)(v', s') = (v + M^s v', s + s')
    v1, v2, s = x
    w1, w2, sp = y
    a, b, c, d = _mat_pow(s)
    return (v1 + a * w1 + b * w2, v2 + c * w1 + d * w2, s + sp)


def _sol_inv(x):
    v1, v2, s = x
    a, b, c, d = _mat_pow(-s)
    return (-(a * v1 + b * v2), -(c * v1 + d * v2), -s)


def make_group(name: str) -> GroupSpec:
    if name == "Z":
        inv = lambda e: (-e[0],)
        gens = {"a": (1,), "A": (-1,)}
        return GroupSpec("Z", (0,), gens, _z_mul, inv)
    if name == "Z3":
        inv = lambda e: (-e[0], -e[1], -e[2])
        gens = {"x": (1, 0, 0), "X": (-1, 0, 0),
                "y": (0, 1, 0), "Y": (0, -1, 0),
                "z": (0, 0, 1), "Z": (0, 0, -1)}
        return GroupSpec("Z3", (0, 0, 0), gens, _z3_mul, inv)
    if name == "heis":
        inv = lambda e: (-e[0], -e[1], -e[2] + e[0] * e[1])
        gens = {"x": (1, 0, 0), "X": (-1, 0, 0),
                "y": (0, 1, 0), "Y": (0, -1, 0)}
        return GroupSpec("heis", (0, 0, 0), gens, _heis_mul, inv)
    if name == "sol":
        gens = {"a": (1, 0, 0), "A": (-1, 0, 0),
                "b": (0, 1, 0), "B": (0, -1, 0),
                "t": (0, 0, 1), "T": (0, 0, -1)}
        return GroupSpec("sol", (0, 0, 0), gens, _sol_mul, _sol_inv)
    raise CayleyError(f"unknown group: {name!r} "
                      "(available: Z, Z3, heis, sol)")


# --- balls -----------------------------------------------------------

@dataclass
class BallData:
    group: GroupSpec
    radius: int
    length: dict                # element -> word length
    elements: list              # BFS order: by (length, element)

    def sphere(self, k):
        return [e for e in self.elements if self.length[e] == k]

    def ball_size(self, k):
        return sum(1 for e in self.elements if self.length[e] <= k)

    def neighbors(self, e):
        g = self.group
        out = []
        for s in sorted(g.generators):
            w = g.mul(e, g.generators[s])
            if w in self.length:
                out.append((s, w))
        return out


def ball(g: GroupSpec, n: int, cap=DEFAULT_CAP) -> BallData:
    length = {g.identity: 0}
    frontier = [g.identity]
    elements = [g.identity]
    for depth in range(1, n + 1):
        nxt = set()
        for e in frontier:
            for s in g.generators:
                w = g.mul(e, g.generators[s])
                if w not in length:
                    nxt.add(w)
        for w in sorted(nxt):
            length[w] = depth
        if len(length) > cap:
            raise CayleyError(f"ball exceeds element cap {cap}")
        frontier = sorted(nxt)
        elements.extend(frontier)
    return BallData(g, n, length, elements)


# --- almost convexity ------------------------------------------------

def _dist_within(ball_data: BallData, n: int, src, dst):
    """Shortest path from src to dst using only elements of B(n)."""
    if src == dst:
        return 0
    length = ball_data.length
    seen = {src: 0}
    q = deque([src])
    while q:
        e = q.popleft()
        d = seen[e] + 1
        for _s, w in ball_data.neighbors(e):
            if length[w] > n or w in seen:
                continue
            if w == dst:
                return d
            seen[w] = d
            q.append(w)
    return None  # disconnected within B(n)


def ac_profile(g: GroupSpec, n_max: int, m: int = 2, cap=DEFAULT_CAP):
    """K(m, n) for n = 2..n_max.

    K(m, n) is the max over pairs of sphere-n elements at word distance
    <= m of their distance inside B(n); when no such pairs exist the bound
    m is vacuously attained and reported.
    """
    bd = ball(g, n_max + 1, cap)  # +1 so paths of length m between
    length = bd.length            # sphere elements are enumerable
    table = {}
    for n in range(2, n_max + 1):
        sphere = set(bd.sphere(n))
        best = m
        for v in sorted(sphere):
            # partners within word distance m (m == 2 supported exactly;
            # larger m walks products of up to m generators)
            partners = set()
            stack = [(v, 0)]
            while stack:
                e, d = stack.pop()
                if d == m:
                    continue
                for _s, w in bd.neighbors(e):
                    if w in sphere and w > v:
                        partners.add(w)
                    if length[w] <= n + 1:
                        stack.append((w, d + 1))
            for w in sorted(partners):
                # cheap midpoint check: common neighbor inside B(n)
                halves = {bd.group.mul(v, e2)
                          for e2 in bd.group.generators.values()}
                mid = any(u in length and length[u] <= n
                          and any(bd.group.mul(u, e2) == w
                                  for e2 in bd.group.generators.values())
                          for u in halves)
                if mid:
                    d_in = 2
                else:
                    d_in = _dist_within(bd, n, v, w)
                if d_in is None:
                    table[n] = None
                    break
                best = max(best, d_in)
            if table.get(n, 0) is None:
                break
        else:
            table[n] = best
    return table


# --- cone types ------------------------------------------------------

def _shadow_graph(bd: BallData, small: BallData, v, k):
    """Depth-k shadow portion around v as a rooted labeled graph.

    Nodes are elements w with d(v, w) <= k lying on a geodesic from the
    identity through v (|w| = |v| + d(v, w)); edges are generator moves
    inside the node set, labeled by unordered generator pairs; the graph
    is cut to what is reachable from v within k shadow steps.
    """
    g = bd.group
    lv = bd.length[v]
    nodes = {}
    for u, du in small.length.items():
        w = g.mul(v, u)
        lw = bd.length.get(w)
        if lw is not None and lw == lv + du:
            nodes[w] = du
    G = nx.Graph()
    for w in nodes:
        G.add_node(w, root=(w == v))
    for w in nodes:
        for s, x in bd.neighbors(w):
            if x in nodes:
                lab = frozenset((s, g.gen_inverse[s]))
                G.add_edge(w, x, label=lab)
    keep = {v}
    q = deque([(v, 0)])
    while q:
        e, d = q.popleft()
        if d == k:
            continue
        for x in G.neighbors(e):
            if x not in keep:
                keep.add(x)
                q.append((x, d + 1))
    return G.subgraph(keep).copy()


def _graph_fingerprint(G):
    prof = []
    for w in G.nodes:
        labs = sorted(tuple(sorted(G.edges[w, x]["label"]))
                      for x in G.neighbors(w))
        prof.append((G.nodes[w]["root"], tuple(labs)))
    return tuple(sorted(prof))


def _rooted_iso(G1, G2):
    gm = isomorphism.GraphMatcher(
        G1, G2,
        node_match=lambda a, b: a["root"] == b["root"],
        edge_match=lambda a, b: a["label"] == b["label"])
    return gm.is_isomorphic()


@dataclass
class ConeTypeReport:
    group: str
    radius: int
    depth: int
    class_count: int
    class_sizes: list
    representatives: list


def cone_type_count(g: GroupSpec, n: int, k: int,
                    cap=DEFAULT_CAP) -> ConeTypeReport:
    bd = ball(g, n + k, cap)
    small = ball(g, k, cap)
    classes = []  # (fingerprint, graph, rep, size)
    for v in bd.sphere(n):
        G = _shadow_graph(bd, small, v, k)
        fp = _graph_fingerprint(G)
        for cls in classes:
            if cls[0] == fp and _rooted_iso(cls[1], G):
                cls[3] += 1
                break
        else:
            classes.append([fp, G, v, 1])
    classes.sort(key=lambda c: (-c[3], str(c[2])))
    return ConeTypeReport(g.name, n, k, len(classes),
                          [c[3] for c in classes],
                          [c[2] for c in classes])

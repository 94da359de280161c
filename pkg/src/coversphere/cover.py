"""Universal-cover balls built from one polyhedron and a face pairing.

B(1) is a single copy of the polyhedron.  Each expansion attaches a new
cell to every still-open boundary face and then folds: whenever the cells
around a cover edge reach that edge's cycle length, the two open faces
flanking it are glued to each other.  The boundary of the resulting cell
complex is returned as a Tiling whose edge statuses record how close each
boundary edge is to being surrounded (loaded = one cell short, fragile =
two short).
"""

from __future__ import annotations

from collections import deque

from .gluing import GluingSpec
from .tiling import Tiling, face_spec


class CoverError(ValueError):
    pass


class _UnionFind:
    """Union-find over arbitrary hashable keys with member tracking."""

    def __init__(self):
        self.parent = {}
        self.members = {}

    def find(self, x):
        p = self.parent
        if x not in p:
            p[x] = x
            self.members[x] = [x]
            return x
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if len(self.members[ra]) < len(self.members[rb]):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.members[ra].extend(self.members.pop(rb))
        return ra

    def size(self, x):
        return len(self.members[self.find(x)])


class CoverState:
    def __init__(self, spec: GluingSpec):
        self.spec = spec
        self.face_names = list(spec.faces)
        self.face_index = {n: i for i, n in enumerate(self.face_names)}
        self.F = len(self.face_names)
        # polyhedron edge -> the two faces containing it
        self.flank = {}
        for e in spec.edges():
            self.flank[e] = [fn for fn, _ in spec.face_of_edge(e)]
        self.face_edges = {}
        for fn, f in spec.faces.items():
            n = len(f.vertices)
            self.face_edges[fn] = [
                frozenset((f.vertices[i], f.vertices[(i + 1) % n]))
                for i in range(n)]
        self.num_cells = 1
        self.slot_partner = {}          # slot -> slot, both directions
        self.verts = _UnionFind()       # keys (cell, vertex name)
        self.edges = _UnionFind()       # keys (cell, frozenset edge)
        self.stage = 1

    # -- slot helpers ---------------------------------------------------

    def slot(self, cell, fname):
        return cell * self.F + self.face_index[fname]

    def slot_face(self, s):
        return divmod(s, self.F)[0], self.face_names[s % self.F]

    def is_open(self, s):
        return s not in self.slot_partner

    def open_slots(self):
        return [s for s in range(self.num_cells * self.F) if self.is_open(s)]

    # -- gluing ---------------------------------------------------------

    def _cycle_length(self, edge_root):
        cell, pe = self.edges.members[edge_root][0]
        return self.spec.edge_cycle[pe]

    def _glue(self, s1, s2, work):
        """Identify slot s1's face with slot s2's face via the pairing."""
        c1, f1 = self.slot_face(s1)
        c2, f2 = self.slot_face(s2)
        target, vmap = self.spec.pairings[f1]
        if target != f2:
            raise CoverError(
                "folding mismatch: faces %s and %s meet along the boundary "
                "but are not paired" % (f1, f2))
        self.slot_partner[s1] = s2
        self.slot_partner[s2] = s1
        for u in self.spec.faces[f1].vertices:
            self.verts.union((c1, u), (c2, vmap[u]))
        for pe in self.face_edges[f1]:
            img = frozenset(vmap[u] for u in pe)
            root = self.edges.union((c1, pe), (c2, img))
            L = self._cycle_length(root)
            if self.edges.size(root) > L:
                raise CoverError(
                    "edge incidence %d exceeds cycle length %d"
                    % (self.edges.size(root), L))
            work.append(root)

    def _open_flanking_slots(self, edge_root):
        out = set()
        for cell, pe in self.edges.members[edge_root]:
            for fn in self.flank[pe]:
                s = self.slot(cell, fn)
                if self.is_open(s):
                    out.add(s)
        return sorted(out)

    def _fold_fixpoint(self, work):
        while work:
            root = self.edges.find(work.popleft())
            if self.edges.size(root) != self._cycle_length(root):
                continue
            slots = self._open_flanking_slots(root)
            if not slots:
                continue
            if len(slots) != 2:
                raise CoverError(
                    "folding mismatch: saturated edge flanked by %d open "
                    "faces" % len(slots))
            s1, s2 = slots
            c1, f1 = self.slot_face(s1)
            c2, f2 = self.slot_face(s2)
            # sanity: the shared edge's endpoints must already agree under
            # the pairing, otherwise the identification is ill-defined
            _, vmap = self.spec.pairings[f1]
            for cell, pe in self.edges.members[root]:
                if cell == c1 and pe in self.face_edges[f1]:
                    for u in pe:
                        a = self.verts.find((c1, u))
                        b = self.verts.find((c2, vmap[u]))
                        if a != b:
                            raise CoverError(
                                "folding mismatch: inconsistent edge "
                                "endpoints at fold of %s/%s" % (f1, f2))
                    break
            self._glue(s1, s2, work)
            work.append(root)

    def expand(self):
        """Attach one layer of cells: B(n) -> B(n+1)."""
        work = deque()
        for s in self.open_slots():
            if not self.is_open(s):
                continue
            c, fname = self.slot_face(s)
            target, _ = self.spec.pairings[fname]
            c2 = self.num_cells
            self.num_cells += 1
            for u in self.spec.faces[target].vertices:
                self.verts.find((c2, u))
            for pe in self.face_edges[target]:
                self.edges.find((c2, pe))
            self._glue(s, self.slot(c2, target), work)
            self._fold_fixpoint(work)
        self.stage += 1
        return self

    # -- boundary extraction ---------------------------------------------

    def boundary_sphere(self) -> Tiling:
        specs = []
        status = {}
        for s in sorted(self.open_slots()):
            cell, fname = self.slot_face(s)
            f = self.spec.faces[fname]
            vs = [self.verts.find((cell, u)) for u in f.vertices]
            es = []
            for pe in self.face_edges[fname]:
                root = self.edges.find((cell, pe))
                es.append(root)
                k = self.edges.size(root)
                L = self._cycle_length(root)
                if k == L - 1:
                    status[root] = "loaded"
                elif k == L - 2:
                    status[root] = "fragile"
                else:
                    status[root] = "plain"
            specs.append(face_spec(f.label, vs, es))
        return Tiling(specs, stage=self.stage, edge_status=status)


def build_cover(spec: GluingSpec, stages: int) -> CoverState:
    state = CoverState(spec)
    for _ in range(stages - 1):
        state.expand()
    return state


def sphere_series(spec: GluingSpec, stages: int):
    """Boundary tilings S(1) .. S(stages)."""
    state = CoverState(spec)
    out = [state.boundary_sphere()]
    for _ in range(stages - 1):
        state.expand()
        out.append(state.boundary_sphere())
    return out

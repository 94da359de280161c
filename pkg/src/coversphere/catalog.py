"""Built-in rule catalog: named rules with their starting tilings.

Each entry bundles a rule, a geometry tag, the stage-1 tiling it acts on,
and (when one exists) the name of the gluing spec whose universal-cover
boundary spheres serve as an independent oracle for the rule's output.
"""

from dataclasses import dataclass
from importlib import resources

from .cover import build_cover
from .gluing import GluingSpec, load_gluing_spec
from .rules import Rule, load_rule_file
from .tiling import Tiling, face_spec


class CatalogError(KeyError):
    pass


@dataclass
class RuleCatalogEntry:
    name: str
    geometry: str
    rule: Rule
    initial: Tiling
    companion: str | None = None

    @property
    def modes(self):
        out = []
        if self.rule.subdivision is not None:
            out.append("subdivision")
        if self.rule.replacement is not None:
            out.append("replacement")
        return tuple(out)


def _data_path(fname):
    return resources.files("coversphere.data") / fname


def load_spec(name: str) -> GluingSpec:
    """Load a bundled gluing spec by name (cube, prism12, utn, s2)."""
    path = _data_path(name + ".glue")
    if not path.is_file():
        raise CatalogError(f"unknown gluing spec: {name!r}")
    return load_gluing_spec(path)


def _initial_from_spec(name):
    return build_cover(load_spec(name), 1).boundary_sphere()


def _tetrahedron():
    faces = [
        face_spec("t", ["a", "b", "c"]),
        face_spec("t", ["a", "c", "d"]),
        face_spec("t", ["a", "d", "b"]),
        face_spec("t", ["b", "d", "c"]),
    ]
    return Tiling(faces, stage=1)


_CATALOG = None


def _build():
    def rule(name):
        return load_rule_file(_data_path(name + ".json"))

    nxs1_rule = rule("nxs1")
    entries = [
        RuleCatalogEntry("barycentric", "demo", rule("barycentric"),
                         _tetrahedron()),
        RuleCatalogEntry("torus3", "E3", rule("torus3"),
                         _initial_from_spec("cube"), "cube"),
        RuleCatalogEntry("nxs1", "H2xR", nxs1_rule,
                         _initial_from_spec("prism12"), "prism12"),
        # same combinatorial rule, different cover adjacency
        RuleCatalogEntry("sl2r", "SL2R", nxs1_rule,
                         _initial_from_spec("utn"), "utn"),
        RuleCatalogEntry("s2xr", "S2xR", rule("s2xr"),
                         _initial_from_spec("s2"), "s2"),
        RuleCatalogEntry("s3", "S3", rule("s3"), Tiling([], stage=1)),
    ]
    return {e.name: e for e in entries}


def get_rule(name: str) -> RuleCatalogEntry:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build()
    try:
        return _CATALOG[name]
    except KeyError:
        known = ", ".join(sorted(_CATALOG))
        raise CatalogError(
            f"unknown rule: {name!r} (available: {known})") from None


def list_rules():
    """Deterministic (name, geometry, modes) listing of the catalog."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build()
    return [(e.name, e.geometry, e.modes)
            for e in sorted(_CATALOG.values(), key=lambda e: e.name)]

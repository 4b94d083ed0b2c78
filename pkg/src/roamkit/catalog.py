"""Pinned example groups.

Each entry records what the checks are expected to report for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import (GroupPresentation, ProductGroup, SubgroupSpec, cyclic_subgroup,
                           format_group, presentation)


@dataclass
class CatalogEntry:
    key: str
    group: object                   # GroupPresentation or ProductGroup
    subgroup: SubgroupSpec | None
    peripherals: list = field(default_factory=list)
    expected: dict = field(default_factory=dict)

    def as_tuple(self):
        return self.group, self.subgroup, self.peripherals

    def text(self) -> str:
        """Group-file text (plain presentations only)."""
        if not isinstance(self.group, GroupPresentation):
            raise ValueError(f"{self.key} is a product and has no single group file")
        return format_group(self.group, self.subgroup, self.peripherals)


def _f2():
    return presentation(["a", "b"])


def _build(key: str) -> CatalogEntry:
    if key == "F2":
        return CatalogEntry(key, _f2(), None, [], {"delta": "0 at every radius (tree)"})
    if key == "F2-cyclic":
        p = _f2()
        return CatalogEntry(key, p, cyclic_subgroup(p, "a"), [], {
            "malnormal": "count 1 for every s outside H",
            "roaming": "h_k = a^(3k) with s = t = b",
        })
    if key == "Z":
        return CatalogEntry(key, presentation(["a"]), None, [], {"delta": "0"})
    if key == "Z2":
        p = presentation(["x", "y"], ["xyXY"])
        return CatalogEntry(key, p, cyclic_subgroup(p, "x"), [], {
            "delta": "grows with the radius",
            "malnormal": "growing (y x^n y^-1 = x^n)",
        })
    if key == "surface2":
        p = presentation(["a", "b", "c", "d"], ["abABcdCD"])
        return CatalogEntry(key, p, cyclic_subgroup(p, "a"), [], {"word problem": "Dehn's algorithm"})
    if key == "F2-coned-a":
        p = _f2()
        H = cyclic_subgroup(p, "a")
        return CatalogEntry(key, p, H, [H], {
            "delta": "1",
            "fineness": "2 loops of length 3 through (e, [H])",
            "roaming": "strong form on B_12 with s = t = b",
        })
    if key == "F2xF2":
        p = _f2()
        H = cyclic_subgroup(p, "a")
        return CatalogEntry(key, ProductGroup(((p, H), (p, H))), None, [], {
            "product": "both factors pass with s = t = (b, b)",
        })
    raise KeyError(f"unknown catalog key {key!r}; known: {', '.join(KEYS)}")


KEYS = ("F2", "F2-cyclic", "Z", "Z2", "surface2", "F2-coned-a", "F2xF2")


def entry(key: str) -> CatalogEntry:
    return _build(key)


def catalog(key: str):
    """(group, subgroup, peripherals) for a catalog key."""
    return _build(key).as_tuple()

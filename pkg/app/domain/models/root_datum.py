"""Based root data, parabolic subsets and upper-set lattices."""

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.core.utils import format_levi

Vector = Tuple[int, ...]


class ParabolicSubset(BaseModel):
    """A subset J of the simple roots, stored in preset order."""

    model_config = ConfigDict(frozen=True)

    labels: Tuple[str, ...] = ()

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def __iter__(self):  # type: ignore[override]
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __le__(self, other: "ParabolicSubset") -> bool:
        return set(self.labels) <= set(other.labels)

    def __lt__(self, other: "ParabolicSubset") -> bool:
        return set(self.labels) < set(other.labels)

    def key(self) -> str:
        return "+".join(self.labels) if self.labels else "empty"

    def __str__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


class RootDatumPreset(BaseModel):
    """
    A based root datum of a small split group together with preset tables.

    `pairings[i][j]` is the pairing of the i-th simple coroot with the j-th simple
    root. `roots` and `coroots` are coordinate vectors in the character and
    cocharacter lattices, which are identified with Z^rank by the standard pairing.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    p: int
    k0: int = 1
    rank: int
    simple_roots: Tuple[str, ...]
    roots: Dict[str, Vector]
    coroots: Dict[str, Vector]
    pairings: Tuple[Tuple[int, ...], ...]
    default_c: int = -1
    c_overrides: Dict[str, int] = Field(default_factory=dict)
    omega_action: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    central_seeds: Dict[str, Vector] = Field(default_factory=dict)

    def subset(self, labels: Iterable[str]) -> ParabolicSubset:
        chosen = set(labels)
        return ParabolicSubset(labels=tuple(a for a in self.simple_roots if a in chosen))

    @property
    def delta(self) -> ParabolicSubset:
        return ParabolicSubset(labels=self.simple_roots)

    def all_subsets(self) -> List[ParabolicSubset]:
        """Every J in Δ, ordered by size then preset order."""
        result = []
        for size in range(len(self.simple_roots) + 1):
            for combo in combinations(self.simple_roots, size):
                result.append(ParabolicSubset(labels=combo))
        return result

    def pairing(self, coroot_label: str, root_label: str) -> int:
        i = self.simple_roots.index(coroot_label)
        j = self.simple_roots.index(root_label)
        return self.pairings[i][j]

    def c_s(self, generator_label: str) -> int:
        return self.c_overrides.get(generator_label, self.default_c)

    def levi(self, J: ParabolicSubset) -> "RootDatumPreset":
        """The sub-datum of the Levi attached to J; the lattice is unchanged."""
        index = [self.simple_roots.index(a) for a in J.labels]
        return RootDatumPreset(
            name=f"{self.name}[{format_levi(J.labels, self.simple_roots)}]",
            p=self.p,
            k0=self.k0,
            rank=self.rank,
            simple_roots=J.labels,
            roots={a: self.roots[a] for a in J.labels},
            coroots={a: self.coroots[a] for a in J.labels},
            pairings=tuple(tuple(self.pairings[i][j] for j in index) for i in index),
            default_c=self.default_c,
            c_overrides=dict(self.c_overrides),
        )


class UpperSetLattice(BaseModel):
    """
    All upper sets of the power set of a finite ground set.

    A subset of the ground set is a bitmask over `ground`; an upper set is a
    frozenset of such bitmasks.
    """

    model_config = ConfigDict(frozen=True)

    ground: Tuple[str, ...]
    elements: Tuple[FrozenSet[int], ...]

    def subset_mask(self, labels: Iterable[str]) -> int:
        chosen = set(labels)
        return sum(1 << i for i, x in enumerate(self.ground) if x in chosen)

    def is_closed(self) -> bool:
        present = set(self.elements)
        return all(a | b in present and a & b in present for a in present for b in present)

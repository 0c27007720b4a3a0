"""Root systems of presets, opposition, Levi sub-data and upper-set lattices."""

import logging
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Set, Tuple

from app.core.config import settings
from app.domain.errors import PresetError, SizeLimitError, ValidationError
from app.domain.interfaces import IPresetRepository
from app.domain.models.root_datum import ParabolicSubset, RootDatumPreset, UpperSetLattice
from app.domain.models.weyl import Matrix, identity_matrix, inverse_matrix, matrix_product

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def dot(a: Iterable[int], b: Iterable[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


class Root(NamedTuple):
    """A root with its coordinates over Δ, character vector and coroot vector."""

    coords: Vector
    char: Vector
    coroot: Vector

    @property
    def positive(self) -> bool:
        return all(c >= 0 for c in self.coords)

    @property
    def height(self) -> int:
        return sum(self.coords)


class RootSystem:
    """
    The finite root system Φ of a preset, generated from Δ by simple reflections.

    Finite Weyl group elements are integer matrices acting on cocharacter
    columns; w sends a character vector a to (w⁻¹)ᵀ a.
    """

    def __init__(self, preset: RootDatumPreset):
        self.preset = preset
        self.rank = preset.rank
        self.simple = preset.simple_roots
        self.roots: List[Root] = []
        self.by_char: Dict[Vector, Root] = {}
        self._close()
        self.positive = [r for r in self.roots if r.positive]

    def _close(self) -> None:
        n = len(self.simple)
        queue = [
            Root(
                tuple(int(i == j) for j in range(n)),
                tuple(self.preset.roots[a]),
                tuple(self.preset.coroots[a]),
            )
            for i, a in enumerate(self.simple)
        ]
        queue += [Root(tuple(-c for c in r.coords), _neg(r.char), _neg(r.coroot)) for r in queue]
        while queue:
            root = queue.pop()
            if root.char in self.by_char:
                continue
            if len(self.by_char) > 200:
                raise PresetError("Root system does not close; check the pairings", self.preset.name)
            self.by_char[root.char] = root
            self.roots.append(root)
            for j, label in enumerate(self.simple):
                queue.append(self._reflect_root(root, j, label))
        self.roots.sort(key=lambda r: (not r.positive, r.height, r.coords))

    def _reflect_root(self, root: Root, j: int, label: str) -> Root:
        a_j = self.preset.roots[label]
        c_j = self.preset.coroots[label]
        k = dot(c_j, root.char)
        m = dot(root.coroot, a_j)
        coords = tuple(c - k * int(i == j) for i, c in enumerate(root.coords))
        char = tuple(a - k * b for a, b in zip(root.char, a_j))
        coroot = tuple(a - m * b for a, b in zip(root.coroot, c_j))
        return Root(coords, char, coroot)

    def is_positive(self, char: Vector) -> bool:
        return self.by_char[tuple(char)].positive

    def simple_root(self, label: str) -> Root:
        return self.by_char[tuple(self.preset.roots[label])]

    def label_of_simple(self, char: Vector) -> Optional[str]:
        for label in self.simple:
            if tuple(self.preset.roots[label]) == tuple(char):
                return label
        return None

    def supported_on(self, root: Root, J: Iterable[str]) -> bool:
        chosen = set(J)
        return all(c == 0 or self.simple[i] in chosen for i, c in enumerate(root.coords))

    def reflection(self, root: Root) -> Matrix:
        """s_α on cocharacters: λ -> λ - <λ, α> α∨."""
        return tuple(
            tuple(int(i == j) - root.coroot[i] * root.char[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def simple_reflection(self, label: str) -> Matrix:
        return self.reflection(self.simple_root(label))

    @staticmethod
    def act_on_char_inverse(w: Matrix, char: Vector) -> Vector:
        """Character vector of w⁻¹α, i.e. wᵀ a."""
        n = len(char)
        return tuple(sum(w[m][k] * char[m] for m in range(n)) for k in range(n))

    def act_on_char(self, w: Matrix, char: Vector) -> Vector:
        """Character vector of wα."""
        return self.act_on_char_inverse(inverse_matrix(w), char)

    def finite_group(self, J: Iterable[str]) -> List[Matrix]:
        """All elements of W_{0,J}, identity first, in breadth-first order."""
        gens = [self.simple_reflection(a) for a in J]
        start = identity_matrix(self.rank)
        seen = {start}
        order = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    y = matrix_product(s, w)
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        nxt.append(y)
            frontier = nxt
        return order

    def inversions(self, w: Matrix, J: Iterable[str]) -> int:
        """Number of α in Φ_J⁺ with w⁻¹α negative; the length in W_{0,J}."""
        labels = list(J)
        return sum(
            1
            for r in self.positive
            if self.supported_on(r, labels) and not self.is_positive(self.act_on_char_inverse(w, r.char))
        )


def _neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


class RootDataService:
    """
    Based root data for preset groups.

    Responsibilities:
    - Load presets through the preset repository
    - Opposition involution J -> w_K(-J) inside an ambient Levi K
    - Levi sub-data
    - Upper-set lattices of power sets
    """

    def __init__(
        self,
        preset_repo: IPresetRepository,
        max_upper_set_ground: int = settings.MAX_UPPER_SET_GROUND,
    ):
        self.preset_repo = preset_repo
        self.max_upper_set_ground = max_upper_set_ground
        self._root_systems: Dict[str, RootSystem] = {}

    def load_preset(self, name: str) -> RootDatumPreset:
        """
        Load a preset by name or by path to a `.preset` file.

        Raises:
            NotFoundError: unknown preset
            PresetError: malformed or inconsistent preset
        """
        if name.endswith(".preset"):
            preset = self.preset_repo.load_path(name)
        else:
            preset = self.preset_repo.get_by_name(name)
        logger.info(f"Preset {preset.name}: rank {preset.rank}, Δ = {list(preset.simple_roots)}")
        return preset

    def root_system(self, preset: RootDatumPreset) -> RootSystem:
        if preset.name not in self._root_systems:
            self._root_systems[preset.name] = RootSystem(preset)
        return self._root_systems[preset.name]

    def subset(self, preset: RootDatumPreset, labels: Iterable[str]) -> ParabolicSubset:
        labels = list(labels)
        unknown = [a for a in labels if a not in preset.simple_roots]
        if unknown:
            raise ValidationError(f"{unknown} are not simple roots of {preset.name}")
        return preset.subset(labels)

    def opposition(
        self,
        preset: RootDatumPreset,
        J: ParabolicSubset,
        ambient: Optional[ParabolicSubset] = None,
    ) -> ParabolicSubset:
        """Δ_{P^op} = w_K(-J), with w_K the longest element of W_{0,K}."""
        K = ambient if ambient is not None else preset.delta
        if not J <= K:
            raise ValidationError(f"{J} is not contained in {K}")
        roots = self.root_system(preset)
        longest = max(roots.finite_group(K.labels), key=lambda w: roots.inversions(w, K.labels))
        image = []
        for label in J.labels:
            moved = roots.act_on_char(longest, roots.simple_root(label).char)
            opposite = roots.label_of_simple(_neg(moved))
            if opposite is None:
                raise PresetError(f"-w_K({label}) is not simple", preset.name)
            image.append(opposite)
        return preset.subset(image)

    def levis(self, preset: RootDatumPreset) -> Dict[ParabolicSubset, RootDatumPreset]:
        return {J: preset.levi(J) for J in preset.all_subsets()}

    def upper_sets(self, ground: Iterable[str]) -> UpperSetLattice:
        """
        Every upper set of the power set of `ground`.

        Raises:
            SizeLimitError: more than the configured number of ground elements
        """
        ground = tuple(ground)
        n = len(ground)
        if n > self.max_upper_set_ground:
            raise SizeLimitError(
                f"Upper sets over {n} elements exceed the bound", limit=self.max_upper_set_ground
            )
        # largest subsets first, so supersets are decided before their subsets
        masks = sorted(range(1 << n), key=lambda m: (-bin(m).count("1"), m))
        found: List[FrozenSet[int]] = []

        def extend(index: int, chosen: Set[int]) -> None:
            if index == len(masks):
                found.append(frozenset(chosen))
                return
            mask = masks[index]
            extend(index + 1, chosen)
            supers = [mask | (1 << i) for i in range(n) if not mask >> i & 1]
            if all(s in chosen for s in supers):
                chosen.add(mask)
                extend(index + 1, chosen)
                chosen.remove(mask)

        extend(0, set())
        found.sort(key=lambda q: (len(q), sorted(q)))
        return UpperSetLattice(ground=ground, elements=tuple(found))

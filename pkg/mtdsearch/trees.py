"""Game trees given explicitly or generated from a seed.

The classes in this module describe abstract game trees that do not correspond to
an actual board game. They are used to test the search algorithms on small,
hand-made examples and on large ensembles of random trees.

.. autosummary::
   :nosignatures:

   ExplicitTree
   PearlTree
   SynthTreeConfig
   SyntheticTree
   random_configs
   value_correlation
"""

from __future__ import annotations

import logging
import math
import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, replace
from typing import Any

import numpy as np
from scipy import stats

from .games import VALUE_INF, GameBase, GameState, Move, Side, minimax_value
from .tools.hashing import mix_keys, uniform_float, uniform_int

_logger = logging.getLogger(__name__)
""":class:`logging.Logger`: Logger instance."""


NestedTree = int | Sequence["NestedTree"] | tuple[str, Any]
"""type: nested description of a tree (see :meth:`ExplicitTree.from_nested`)"""


class TreeNode(GameState):
    """A node of an :class:`ExplicitTree`, identified by its index."""

    __slots__ = ["index"]

    def __init__(self, side: Side, ply: int, index: int):
        super().__init__(side, ply)
        self.index = index

    def __eq__(self, other):
        if not isinstance(other, TreeNode):
            return NotImplemented
        return self.index == other.index and self.side == other.side

    def __hash__(self):
        return hash((self.index, self.side))

    def __repr__(self):
        return f"TreeNode(index={self.index}, side={self.side.name}, ply={self.ply})"


class ExplicitTree(GameBase):
    """A game tree whose nodes and leaf values are listed explicitly.

    Interior nodes evaluate to a static value (zero by default), which is only
    relevant when searches stop before reaching the leaves.
    """

    name = "explicit"

    def __init__(
        self,
        labels: Sequence[str],
        children: Sequence[Sequence[int]],
        values: Sequence[int],
        *,
        root_side: Side = Side.MAX,
    ):
        """
        Args:
            labels (list of str):
                Unique labels of all nodes, where node 0 is the root
            children (list of lists):
                The indices of the children of each node in static order
            values (list of int):
                The static evaluation of each node
            root_side (:class:`~mtdsearch.games.Side`):
                The player to move at the root
        """
        if not len(labels) == len(children) == len(values):
            raise ValueError("Labels, children, and values must have equal length")
        if len(set(labels)) != len(labels):
            raise ValueError("Node labels must be unique")
        for value in values:
            if not -VALUE_INF < value < VALUE_INF:
                raise ValueError(f"Value {value} exceeds the value range")
        self.labels = list(labels)
        self.children_index = [tuple(c) for c in children]
        self.values = [int(v) for v in values]
        self.root_side = Side(root_side)
        self._index = {label: i for i, label in enumerate(self.labels)}

    @classmethod
    def from_nested(
        cls, tree: NestedTree, *, root_side: Side = Side.MAX, **kwargs
    ) -> ExplicitTree:
        r"""Create a tree from a nested description.

        A leaf is given by its integer value and an interior node by the list of its
        children. Either can be wrapped in a tuple `(label, node)` to set the label;
        unlabeled nodes are named by the dot-separated ordinals of their path.

        Example:
            A MAX node with two MIN children, each having two leaves:

            .. code-block:: python

                tree = ExplicitTree.from_nested([[3, 9], ("x", [4, 1])])

        Args:
            tree:
                The nested description of the tree
            root_side (:class:`~mtdsearch.games.Side`):
                The player to move at the root
            \**kwargs:
                Additional arguments passed to the constructor

        Returns:
            :class:`ExplicitTree`: The tree
        """
        labels: list[str] = []
        children: list[list[int]] = []
        values: list[int] = []

        def add(node: NestedTree, path: tuple[int, ...]) -> int:
            if isinstance(node, tuple):
                label, node = node
            else:
                label = ".".join(str(i) for i in path) or "root"
            index = len(labels)
            labels.append(str(label))
            children.append([])
            if isinstance(node, (int, np.integer)):
                values.append(int(node))
            else:
                values.append(0)
                for i, child in enumerate(node):
                    children[index].append(add(child, (*path, i)))
            return index

        add(tree, ())
        return cls(labels, children, values, root_side=root_side, **kwargs)

    def negated(self, *, mirror: bool = False) -> ExplicitTree:
        """Return the tree with negated values and swapped players.

        Args:
            mirror (bool):
                Whether the static order of all moves is reversed, too

        Returns:
            :class:`ExplicitTree`: A tree whose minimax value is the negative of
            the value of this tree
        """
        if mirror:
            children = [tuple(reversed(c)) for c in self.children_index]
        else:
            children = list(self.children_index)
        return ExplicitTree(
            self.labels,
            children,
            [-v for v in self.values],
            root_side=self.root_side.opponent,
        )

    def __repr__(self):
        return f"{self.__class__.__name__}(nodes={len(self.labels)})"

    def initial_state(self) -> TreeNode:
        return TreeNode(self.root_side, 0, 0)

    def node(self, label: str) -> TreeNode:
        """Return the state of the node with the given label.

        Args:
            label (str):
                The label of the node

        Returns:
            :class:`TreeNode`: The node with correct side to move and ply
        """
        target = self._index[label]
        # walk down from the root to determine the ply
        stack = [self.initial_state()]
        while stack:
            state = stack.pop()
            if state.index == target:
                return state
            for _, child in self.children(state):
                stack.append(child)
        raise KeyError(label)

    def iter_nodes(self) -> Iterator[TreeNode]:
        """Iterate over all nodes in depth-first, left-to-right order."""
        stack = [self.initial_state()]
        while stack:
            state = stack.pop()
            yield state
            stack.extend(child for _, child in reversed(self.children(state)))

    def legal_moves(self, state: TreeNode) -> list[Move]:  # type: ignore
        return [Move(i, c) for i, c in enumerate(self.children_index[state.index])]

    def _make_child(self, state: TreeNode, move: Move) -> TreeNode:  # type: ignore
        return TreeNode(state.side.opponent, state.ply + 1, move.content)

    def evaluate(self, state: TreeNode) -> int:  # type: ignore
        return self.values[state.index]

    def state_key(self, state: TreeNode) -> int:  # type: ignore
        return mix_keys(len(self.labels), state.index)

    def label(self, state: TreeNode) -> str:  # type: ignore
        return self.labels[state.index]

    def value_bounds(self, state: GameState) -> tuple[int, int]:
        return min(self.values), max(self.values)


class PearlTree(ExplicitTree):
    """The worked example tree with nodes labeled `a` to `u` in visiting order.

    The tree has depth 4 and minimax value 35. The single leaf `u` below node `r` is
    never reached by the best-first algorithms, so its value can be chosen freely.
    """

    name = "pearl"

    def __init__(self, u_value: int = 0):
        """
        Args:
            u_value (int):
                The value of the leaf `u`, which does not affect the minimax value
        """
        tree = (
            "a",
            [
                ("b", [("c", [("d", [("e", 41), ("n", 5)]), ("f", [("g", 12)])])]),
                (
                    "h",
                    [
                        ("i", [("j", [("k", 34)]), ("l", [("m", 36), ("o", 35)])]),
                        ("p", [("q", [("s", 50), ("t", 36)]), ("r", [("u", u_value)])]),
                    ],
                ),
            ],
        )
        template = ExplicitTree.from_nested(tree)
        super().__init__(template.labels, template.children_index, template.values)
        self.u_value = u_value

    def __repr__(self):
        return f"{self.__class__.__name__}(u_value={self.u_value})"

    def parse_position(self, line: str) -> TreeNode:
        return self.node(line.strip())


BranchingSpec = int | tuple[int, int]


@dataclass(frozen=True)
class SynthTreeConfig:
    """Parameters determining a synthetic game tree.

    Two equal configurations always generate bit-identical trees.
    """

    seed: int
    """int: 64-bit seed from which all node keys and values are derived"""
    branching: BranchingSpec = 2
    """int or tuple: fixed branching factor or inclusive range `(min, max)`"""
    depth: int = 4
    """int: depth of all leaves"""
    value_range: tuple[int, int] = (-100, 100)
    """tuple: inclusive range of all evaluations"""
    correlation: float = 0.0
    """float: strength of the interdependence of parent and child values"""
    transposition_density: float = 0.0
    """float: probability that a child aliases an existing node"""

    def __post_init__(self):
        if isinstance(self.branching, (tuple, list)):
            low, high = (int(b) for b in self.branching)
            if not 1 <= low <= high:
                raise ValueError(f"Invalid branching range {self.branching}")
            object.__setattr__(self, "branching", (low, high) if low < high else low)
        elif self.branching < 1:
            raise ValueError("Branching factor must be positive")
        if self.depth < 1:
            raise ValueError("Depth must be positive")
        low, high = self.value_range
        if not -VALUE_INF < low <= high < VALUE_INF:
            raise ValueError(f"Invalid value range {self.value_range}")
        if not 0 <= self.correlation <= 1:
            raise ValueError("Correlation must be in [0, 1]")
        if not 0 <= self.transposition_density <= 1:
            raise ValueError("Transposition density must be in [0, 1]")
        object.__setattr__(self, "seed", int(self.seed) & ((1 << 64) - 1))

    @property
    def branching_range(self) -> tuple[int, int]:
        """tuple: smallest and largest branching factor"""
        if isinstance(self.branching, tuple):
            return self.branching
        return self.branching, self.branching

    @classmethod
    def from_line(cls, line: str) -> SynthTreeConfig:
        """Parse a configuration in the position file format.

        The format is `seed=<u64> w=<int|min..max> d=<int> corr=<float> tp=<float>`,
        where `corr` and `tp` are optional. The value range can be given by the
        optional token `v=<min..max>`.

        Args:
            line (str):
                The line to parse

        Returns:
            :class:`SynthTreeConfig`: The configuration
        """
        from .tools.misc import parse_int_range

        fields: dict[str, str] = {}
        for token in line.split():
            match = re.fullmatch(r"(\w+)=(\S+)", token)
            if match is None:
                raise ValueError(f"Malformed token `{token}`")
            fields[match.group(1)] = match.group(2)

        unknown = set(fields) - {"seed", "w", "d", "corr", "tp", "v"}
        if unknown:
            raise ValueError(f"Unknown fields {sorted(unknown)}")
        for required in ["seed", "w", "d"]:
            if required not in fields:
                raise ValueError(f"Missing field `{required}`")

        kwargs: dict[str, Any] = {
            "seed": int(fields["seed"], 0),
            "branching": parse_int_range(fields["w"]),
            "depth": int(fields["d"]),
            "correlation": float(fields.get("corr", 0)),
            "transposition_density": float(fields.get("tp", 0)),
        }
        if "v" in fields:
            value_range = parse_int_range(fields["v"])
            if isinstance(value_range, int):
                value_range = (value_range, value_range)
            kwargs["value_range"] = value_range
        return cls(**kwargs)

    def to_line(self) -> str:
        """Return the configuration in the position file format."""
        low, high = self.branching_range
        w = str(low) if low == high else f"{low}..{high}"
        line = (
            f"seed={self.seed} w={w} d={self.depth} corr={self.correlation:g} "
            f"tp={self.transposition_density:g}"
        )
        if self.value_range != (-100, 100):
            line += f" v={self.value_range[0]}..{self.value_range[1]}"
        return line

    def storage_bound(self, kind: str = "max") -> int:
        """Return the number of leaves of a solution tree of a uniform tree.

        Args:
            kind (str):
                Either `max` for max solution trees (:math:`w^{\\lceil d/2 \\rceil}`)
                or `min` for min solution trees (:math:`w^{\\lfloor d/2 \\rfloor}`)

        Returns:
            int: The number of leaves using the largest branching factor
        """
        w = self.branching_range[1]
        if kind == "max":
            return w ** math.ceil(self.depth / 2)
        elif kind == "min":
            return w ** (self.depth // 2)
        raise ValueError(f"Unknown solution tree `{kind}`")


class SynthNode(GameState):
    """A node of a synthetic tree.

    Nodes are created lazily and memoize their children, so a tree is only
    materialized as far as it is searched. Nodes reached by a transposition are the
    very same objects, so equal keys imply identical subtrees.
    """

    __slots__ = ["_children", "config", "draw", "index", "key", "parent", "path"]

    def __init__(
        self,
        config: SynthTreeConfig,
        key: int,
        draw: int,
        *,
        parent: SynthNode | None = None,
        index: int = 0,
    ):
        if parent is None:
            super().__init__(Side.MAX, 0)
            self.path: tuple[int, ...] = ()
        else:
            super().__init__(parent.side.opponent, parent.ply + 1)
            self.path = (*parent.path, index)
        self.config = config
        self.key = key
        self.draw = draw
        self.parent = parent
        self.index = index
        self._children: list[SynthNode] | None = None

    def __repr__(self):
        return f"SynthNode(path={self.path}, draw={self.draw})"


# tags separating the different uses of node keys
_TAG_ROOT = 0x5EED
_TAG_BRANCH = 0xB2A4C4
_TAG_DRAW = 0xD2A3
_TAG_ALIAS = 0xA11A5


class SyntheticTree(GameBase):
    """Seeded random game trees with tunable properties of real game trees.

    A node at ply `d` (the depth of the configuration) is a leaf. Every node carries
    an integer `draw`, which is its static evaluation. The draw of a child mixes the
    draw of its parent with an independent uniform variate, where the weight of the
    parent is given by the correlation of the configuration.

    Transpositions are introduced by aliasing: Child `i` of a node `N` is, with
    probability given by the transposition density, replaced by child `i` of the left
    sibling of `N`. If `N` has no left sibling (or that sibling has too few
    children), the child is replaced by its own left sibling, i.e., child `i - 1` of
    `N`. The first child of a first child is never aliased.

    The states of this game carry their configuration, so a single instance handles
    trees of all configurations.
    """

    name = "synth"

    def __init__(self, config: SynthTreeConfig | None = None):
        """
        Args:
            config (:class:`SynthTreeConfig`, optional):
                The configuration of the tree returned by :meth:`initial_state`
        """
        self.config = config

    def __repr__(self):
        return f"{self.__class__.__name__}(config={self.config})"

    @staticmethod
    def root(config: SynthTreeConfig) -> SynthNode:
        """Create the root node of the tree described by a configuration."""
        key = mix_keys(config.seed, _TAG_ROOT)
        low, high = config.value_range
        return SynthNode(config, key, uniform_int(mix_keys(key, _TAG_DRAW), low, high))

    def initial_state(self) -> SynthNode:
        if self.config is None:
            raise ValueError("Synthetic tree requires a configuration")
        return self.root(self.config)

    def _new_child(self, node: SynthNode, i: int) -> SynthNode:
        """Create a child that is not aliased."""
        config = node.config
        key = mix_keys(node.key, i)
        low, high = config.value_range
        noise = uniform_int(mix_keys(key, _TAG_DRAW), low, high)
        c = config.correlation
        draw = int(round(c * node.draw + (1 - c) * noise))
        return SynthNode(config, key, min(max(draw, low), high), parent=node, index=i)

    def _children(self, node: SynthNode) -> list[SynthNode]:
        """Return the (memoized) children of a node."""
        if node._children is not None:
            return node._children

        config = node.config
        if node.ply >= config.depth:
            node._children = []
            return node._children

        low, high = config.branching_range
        if low == high:
            count = low
        else:
            count = uniform_int(mix_keys(node.key, _TAG_BRANCH), low, high)

        # the left sibling of this node provides transposition targets
        sibling: SynthNode | None = None
        if node.parent is not None and node.index > 0:
            sibling = self._children(node.parent)[node.index - 1]

        children: list[SynthNode] = []
        p = config.transposition_density
        for i in range(count):
            alias = p > 0 and uniform_float(mix_keys(node.key, i, _TAG_ALIAS)) < p
            if alias and sibling is not None and i < len(self._children(sibling)):
                children.append(self._children(sibling)[i])
            elif alias and i > 0:
                children.append(children[i - 1])
            else:
                children.append(self._new_child(node, i))
        node._children = children
        return children

    def is_aliasable(self, node: SynthNode, i: int) -> bool:
        """Determine whether child `i` of a node could be aliased."""
        if node.parent is not None and node.index > 0:
            sibling = self._children(node.parent)[node.index - 1]
            if i < len(self._children(sibling)):
                return True
        return i > 0

    def legal_moves(self, state: SynthNode) -> list[Move]:  # type: ignore
        return [Move(i, child) for i, child in enumerate(self._children(state))]

    def _make_child(self, state: SynthNode, move: Move) -> SynthNode:  # type: ignore
        return move.content  # type: ignore

    def evaluate(self, state: SynthNode) -> int:  # type: ignore
        return state.draw

    def state_key(self, state: SynthNode) -> int:  # type: ignore
        return state.key

    def label(self, state: SynthNode) -> str:  # type: ignore
        return ".".join(str(i) for i in state.path) or "root"

    def value_bounds(self, state: GameState) -> tuple[int, int]:
        return state.config.value_range  # type: ignore

    def parse_position(self, line: str) -> SynthNode:
        return self.root(SynthTreeConfig.from_line(line))

    def alias_statistics(self, state: SynthNode) -> tuple[int, int]:
        """Count aliased children in the tree below a node.

        Args:
            state (:class:`SynthNode`):
                The root of the enumerated (sub)tree

        Returns:
            tuple: The number of child slots that could be aliased and the number
            of slots that actually alias an earlier node
        """
        eligible, aliased = 0, 0
        seen: set[int] = set()
        stack = [state]
        while stack:
            node = stack.pop()
            if node.key in seen:
                continue
            seen.add(node.key)
            for i, child in enumerate(self._children(node)):
                if self.is_aliasable(node, i):
                    eligible += 1
                    if child.parent is not node or child.index != i:
                        aliased += 1
                stack.append(child)
        return eligible, aliased


def random_configs(
    seed: int,
    count: int,
    *,
    branching: BranchingSpec = (2, 4),
    depth: int | tuple[int, int] = (2, 6),
    fixed_branching: bool = False,
    **kwargs,
) -> list[SynthTreeConfig]:
    r"""Create a reproducible ensemble of tree configurations.

    Args:
        seed (int):
            Seed of the ensemble
        count (int):
            Number of configurations
        branching (int or tuple):
            The branching factor or the inclusive range from which it is chosen
        depth (int or tuple):
            The depth or the inclusive range from which it is chosen
        fixed_branching (bool):
            If `True`, each tree uses a single branching factor drawn from the range.
            Otherwise, the range is passed on, so the branching varies within trees.
        \**kwargs:
            Further fields of :class:`SynthTreeConfig`

    Returns:
        list of :class:`SynthTreeConfig`: The configurations
    """
    rng = np.random.default_rng(seed)
    depth_range = (depth, depth) if isinstance(depth, int) else depth
    configs = []
    for _ in range(count):
        tree_seed = int(rng.integers(0, 1 << 62))
        tree_depth = int(rng.integers(depth_range[0], depth_range[1] + 1))
        tree_branching: BranchingSpec = branching
        if fixed_branching and isinstance(branching, tuple):
            tree_branching = int(rng.integers(branching[0], branching[1] + 1))
        configs.append(
            SynthTreeConfig(
                seed=tree_seed, branching=tree_branching, depth=tree_depth, **kwargs
            )
        )
    return configs


def value_correlation(
    config: SynthTreeConfig, count: int = 100, *, shallow: int = 1, deep: int = 3
) -> float:
    """Estimate the correlation of search results at two different depths.

    The function generates `count` trees that differ from `config` only in their
    seed and correlates the minimax values of the roots obtained with the two
    search horizons.

    Args:
        config (:class:`SynthTreeConfig`):
            The template configuration
        count (int):
            The number of trees
        shallow (int):
            The shallow search horizon
        deep (int):
            The deep search horizon, which must not exceed the depth of the trees

    Returns:
        float: The Pearson correlation coefficient
    """
    if deep > config.depth:
        raise ValueError("Deep horizon exceeds the depth of the trees")
    game = SyntheticTree()
    shallow_values, deep_values = [], []
    for i in range(count):
        root = game.root(replace(config, seed=mix_keys(config.seed, i)))
        shallow_values.append(minimax_value(game, root, shallow))
        deep_values.append(minimax_value(game, root, deep))
    if np.ptp(shallow_values) == 0 or np.ptp(deep_values) == 0:
        return 0.0
    result = stats.pearsonr(shallow_values, deep_values)
    _logger.info("Correlation of depth %d and %d: %g", shallow, deep, result[0])
    return float(result[0])

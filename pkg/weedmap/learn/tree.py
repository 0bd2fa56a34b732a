# tree.py
# MIT License 2026
from math import log2, sqrt
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from weedmap.exceptions import InvalidHyperparameter

FeatureCount = Union[str, int, float]

# leaves have no feature
LEAF = -1


class TreeNodes(object):
    """A binary decision tree, stored as flat node arrays.

    Node 0 is the root. Internal nodes send a row to their left child when its value for
    `feature` is lower or equal to `threshold`, and to their right child otherwise.

    Args:
      * feature: Tested feature of every node, `LEAF` for leaves.
      * threshold: Split threshold of every node (unused for leaves).
      * left: Left child of every node (-1 for leaves).
      * right: Right child of every node (-1 for leaves).
      * value: Output vector of every node, e.g., a class distribution.
    """

    def __init__(self, feature: np.ndarray, threshold: np.ndarray, left: np.ndarray, right: np.ndarray, value: np.ndarray):
        super(TreeNodes, self).__init__()
        self._feature = np.asarray(feature, dtype=np.int64)
        self._threshold = np.asarray(threshold, dtype=np.float64)
        self._left = np.asarray(left, dtype=np.int64)
        self._right = np.asarray(right, dtype=np.int64)
        self._value = np.asarray(value, dtype=np.float64).reshape(len(self._feature), -1)

    @property
    def n_nodes(self) -> int:
        return len(self._feature)

    @property
    def n_leaves(self) -> int:
        return int(np.count_nonzero(self._feature == LEAF))

    @property
    def value(self) -> np.ndarray:
        return self._value

    def depth(self) -> int:
        """Length of the longest root-to-leaf path"""
        depths = np.zeros(self.n_nodes, dtype=np.int64)
        for node in range(self.n_nodes):
            if self._feature[node] != LEAF:
                depths[self._left[node]] = depths[node] + 1
                depths[self._right[node]] = depths[node] + 1
        return int(depths.max())

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Get the leaf reached by every row of a feature matrix"""
        nodes = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            features = self._feature[nodes]
            pending = np.flatnonzero(features != LEAF)
            if len(pending) == 0:
                return nodes
            current = nodes[pending]
            go_left = X[pending, features[pending]] <= self._threshold[current]
            nodes[pending] = np.where(go_left, self._left[current], self._right[current])

    def predict_value(self, X: np.ndarray) -> np.ndarray:
        """Get the leaf output of every row of a feature matrix"""
        return self._value[self.apply(X)]

    def to_state(self) -> Dict[str, list]:
        return {
            "feature": self._feature.tolist(),
            "threshold": self._threshold.tolist(),
            "left": self._left.tolist(),
            "right": self._right.tolist(),
            "value": self._value.tolist()
        }

    @staticmethod
    def from_state(state: Dict[str, list]) -> "TreeNodes":
        return TreeNodes(state["feature"], state["threshold"], state["left"], state["right"], state["value"])


class _NodeList(object):
    """Growable node storage used while a tree is built"""

    def __init__(self, n_outputs: int):
        super(_NodeList, self).__init__()
        self._n_outputs = n_outputs
        self._feature: List[int] = list()
        self._threshold: List[float] = list()
        self._left: List[int] = list()
        self._right: List[int] = list()
        self._value: List[np.ndarray] = list()

    def __len__(self) -> int:
        return len(self._feature)

    def add(self) -> int:
        self._feature.append(LEAF)
        self._threshold.append(0.0)
        self._left.append(-1)
        self._right.append(-1)
        self._value.append(np.zeros(self._n_outputs))
        return len(self._feature) - 1

    def split(self, node: int, feature: int, threshold: float) -> Tuple[int, int]:
        left = self.add()
        right = self.add()
        self._feature[node] = int(feature)
        self._threshold[node] = float(threshold)
        self._left[node] = left
        self._right[node] = right
        return left, right

    def set_value(self, node: int, value: np.ndarray) -> None:
        self._value[node] = np.asarray(value, dtype=np.float64).reshape(self._n_outputs)

    def build(self) -> TreeNodes:
        return TreeNodes(np.array(self._feature), np.array(self._threshold), np.array(self._left), np.array(self._right), np.vstack(self._value))


def resolve_feature_count(spec: FeatureCount, n_features: int) -> int:
    """Resolve a number of features to draw per split.

    Args:
      * spec: "sqrt", "log2", "all", a positive integer, or a fraction in (0, 1].
      * n_features: Total number of features.

    Returns: A number of features in [1, n_features].

    Throws: `InvalidHyperparameter` if the value is not understood.

    Example:
      >>> resolve_feature_count("sqrt", 518)
      22
    """
    if isinstance(spec, str):
        if spec == "sqrt":
            return max(1, int(sqrt(n_features)))
        elif spec == "log2":
            return max(1, int(log2(n_features))) if n_features > 1 else 1
        elif spec == "all":
            return n_features
        raise InvalidHyperparameter(f"Unknown number of features per split: '{spec}'")
    if isinstance(spec, bool):
        raise InvalidHyperparameter(f"Invalid number of features per split: {spec}")
    if isinstance(spec, int):
        if spec < 1:
            raise InvalidHyperparameter(f"The number of features per split must be positive, got {spec}")
        return min(spec, n_features)
    if isinstance(spec, float) and 0 < spec <= 1:
        return max(1, int(spec * n_features))
    raise InvalidHyperparameter(f"Invalid number of features per split: {spec}")


def _best_gini_split(X: np.ndarray, onehot: np.ndarray, features: np.ndarray, min_leaf: int) -> Optional[Tuple[int, float]]:
    """Find the split of lowest weighted Gini impurity among a set of features.

    Minimizing the weighted impurity of the children amounts to maximizing
    sum(left_counts^2) / n_left + sum(right_counts^2) / n_right.
    """
    n = X.shape[0]
    values = X[:, features]
    order = np.argsort(values, axis=0, kind="stable")
    sorted_values = np.take_along_axis(values, order, axis=0)
    cumulated = np.cumsum(onehot[order], axis=0)
    left_counts = cumulated[:-1]
    right_counts = cumulated[-1] - left_counts
    n_left = np.arange(1, n, dtype=np.float64)[:, None]
    n_right = n - n_left
    score = np.sum(left_counts ** 2, axis=2) / n_left + np.sum(right_counts ** 2, axis=2) / n_right
    valid = (sorted_values[1:] > sorted_values[:-1]) & (n_left >= min_leaf) & (n_right >= min_leaf)
    score = np.where(valid, score, -np.inf)
    best = int(np.argmax(score))
    position, column = divmod(best, len(features))
    if not np.isfinite(score[position, column]):
        return None
    low, high = sorted_values[position, column], sorted_values[position + 1, column]
    threshold = low + (high - low) / 2
    # the midpoint of two consecutive floats may round up to the upper one
    if threshold >= high:
        threshold = low
    return int(features[column]), float(threshold)


def grow_classification_tree(X: np.ndarray, y: np.ndarray, n_classes: int, max_depth: Optional[int], min_leaf: int, max_features: int, rng: np.random.Generator) -> TreeNodes:
    """Grow a CART classification tree using Gini impurity.

    At every node, `max_features` features are drawn without replacement and the best split
    among them is selected. When none of them separates the rows, the remaining features are
    drawn in turn until a valid split is found. Impure nodes are split as long as a valid split
    exists, the depth allows it and both children keep `min_leaf` rows.

    Args:
      * X: Feature matrix.
      * y: Class ordinals of the rows.
      * n_classes: Number of classes.
      * max_depth: Maximum depth of the tree, None for unlimited.
      * min_leaf: Minimum number of rows in a leaf.
      * max_features: Number of features drawn per node.
      * rng: Random generator used to draw features.

    Returns: The tree, whose leaf values are class distributions.
    """
    n_features = X.shape[1]
    onehot = np.zeros((len(y), n_classes), dtype=np.float64)
    onehot[np.arange(len(y)), y] = 1.0
    nodes = _NodeList(n_classes)
    stack = [(nodes.add(), np.arange(len(y)), 0)]
    while len(stack) > 0:
        node, rows, depth = stack.pop()
        counts = onehot[rows].sum(axis=0)
        nodes.set_value(node, counts / len(rows))
        if (max_depth is not None and depth >= max_depth) or len(rows) < 2 * min_leaf or np.count_nonzero(counts) <= 1:
            continue
        order = rng.permutation(n_features)
        split = None
        for start in range(0, n_features, max_features):
            split = _best_gini_split(X[rows], onehot[rows], order[start:start + max_features], min_leaf)
            if split is not None:
                break
        if split is None:
            continue
        feature, threshold = split
        go_left = X[rows, feature] <= threshold
        left, right = nodes.split(node, feature, threshold)
        stack.append((right, rows[~go_left], depth + 1))
        stack.append((left, rows[go_left], depth + 1))
    return nodes.build()


def compute_bin_edges(X: np.ndarray, max_bins: int) -> List[np.ndarray]:
    """Compute quantile bin edges of every feature.

    The last edge of a feature is its maximum, so every training value falls in a bin.

    Returns: Sorted, unique upper edges of the bins of every feature.
    """
    quantiles = np.linspace(0, 1, max_bins + 1)[1:]
    table = np.quantile(X, quantiles, axis=0)
    return [np.unique(table[:, j]) for j in range(X.shape[1])]


def bin_matrix(X: np.ndarray, edges: Sequence[np.ndarray]) -> np.ndarray:
    """Encode a feature matrix as bin codes, where `code <= b` if and only if `x <= edges[b]`"""
    codes = np.empty(X.shape, dtype=np.int64)
    for j, feature_edges in enumerate(edges):
        codes[:, j] = np.searchsorted(feature_edges, X[:, j], side="left")
    return codes


def grow_histogram_tree(codes: np.ndarray, edges: Sequence[np.ndarray], target: np.ndarray, max_depth: int, min_leaf: int, features: np.ndarray) -> TreeNodes:
    """Grow a least-squares regression tree level by level, using binned features.

    All the nodes of one level are scanned at once through histograms of the target over
    (node, feature, bin). A node is split on the bin boundary of highest variance reduction;
    it becomes a leaf when no split reduces the squared error. Leaves predict the mean target
    of their rows.

    Args:
      * codes: Bin codes of the training rows, see `bin_matrix`.
      * edges: Bin edges of every feature, see `compute_bin_edges`.
      * target: Regression target of the rows.
      * max_depth: Maximum depth of the tree.
      * min_leaf: Minimum number of rows in a leaf.
      * features: Features the tree may split on.

    Returns: The tree, with raw feature thresholds.
    """
    n = len(target)
    n_bins = max(len(e) for e in edges)
    candidate_codes = codes[:, features]
    n_candidates = len(features)
    nodes = _NodeList(1)
    node_of_row = np.full(n, nodes.add(), dtype=np.int64)
    frontier = [0]
    for depth in range(max_depth):
        if len(frontier) == 0:
            break
        slot_of_node = np.full(len(nodes), -1, dtype=np.int64)
        slot_of_node[frontier] = np.arange(len(frontier))
        active = np.flatnonzero(slot_of_node[node_of_row] >= 0)
        slots = slot_of_node[node_of_row[active]]
        cells = (slots[:, None] * n_candidates + np.arange(n_candidates)[None, :]) * n_bins + candidate_codes[active]
        size = len(frontier) * n_candidates * n_bins
        shape = (len(frontier), n_candidates, n_bins)
        counts = np.bincount(cells.ravel(), minlength=size).reshape(shape).astype(np.float64)
        sums = np.bincount(cells.ravel(), weights=np.repeat(target[active], n_candidates), minlength=size).reshape(shape)
        left_n = np.cumsum(counts, axis=2)
        left_s = np.cumsum(sums, axis=2)
        total_n = left_n[:, :, -1:]
        total_s = left_s[:, :, -1:]
        right_n = total_n - left_n
        right_s = total_s - left_s
        valid = (left_n >= min_leaf) & (right_n >= min_leaf)
        with np.errstate(divide="ignore", invalid="ignore"):
            gain = left_s ** 2 / left_n + right_s ** 2 / right_n - total_s ** 2 / total_n
        gain = np.where(valid, gain, -np.inf).reshape(len(frontier), -1)
        next_frontier = list()
        for slot, node in enumerate(frontier):
            best = int(np.argmax(gain[slot]))
            if not gain[slot, best] > 1e-12:
                continue
            column, bin_index = divmod(best, n_bins)
            feature = int(features[column])
            left, right = nodes.split(node, feature, edges[feature][bin_index])
            rows = active[slots == slot]
            go_left = codes[rows, feature] <= bin_index
            node_of_row[rows[go_left]] = left
            node_of_row[rows[~go_left]] = right
            next_frontier += [left, right]
        frontier = next_frontier
    sizes = np.bincount(node_of_row)
    totals = np.bincount(node_of_row, weights=target)
    for node in np.flatnonzero(sizes):
        nodes.set_value(int(node), totals[node] / sizes[node])
    return nodes.build()

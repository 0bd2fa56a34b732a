# registry.py
# MIT License 2026
from importlib import import_module
from itertools import product
from typing import Any, Callable, Dict, List, Mapping, Sequence

from weedmap.exceptions import ConfigError, UnknownModelKind
from weedmap.learn.learner import Hyperparams, Learner

LearnerFactory = Callable[[Hyperparams], Learner]


def builtin_learners() -> Dict[str, LearnerFactory]:
    """Load the built-in learners: random forest, gradient boosting and k-nearest neighbors.

    Returns: The built-in learners, registered in a dict by model kind.
    """
    data = [
        # random forest of CART trees
        {
            'name': 'rf',
            'path': 'weedmap.learn.forest',
            'learner': 'RandomForest',
            'required': []
        },
        # softmax gradient-boosted trees
        {
            'name': 'gbt',
            'path': 'weedmap.learn.boosting',
            'learner': 'GradientBoosting',
            'required': []
        },
        # brute-force k-nearest neighbors
        {
            'name': 'knn',
            'path': 'weedmap.learn.knn',
            'learner': 'KNearestNeighbors',
            'required': []
        }
    ]
    return {item['name']: import_learner(item['name'], item['path'], item['learner'], item['required']) for item in data}


def import_learner(name: str, module_path: str, class_name: str, required_params: Sequence[str]) -> LearnerFactory:
    """Load a learner, possibly defined by the user, and get a factory function to build it.

    Args:
      * name: Model kind of the learner.
      * module_path: Path to the python module which contains the learner implementation.
      * class_name: Name of the class that implements the learner. It must be a subclass of :class:`weedmap.learn.learner.Learner`.
      * required_params: List of hyperparameters that must be given explicitly.

    Returns:
      A factory function that builds an untrained learner from a set of hyperparameters.

    Example:
      >>> factory = import_learner("forest", "weedmap.learn.forest", "RandomForest", ["n_trees"])
      >>> learner = factory({"n_trees": 10})
    """
    # factory used to build new learners
    def __factory(params: Hyperparams) -> Learner:
        # load module dynamically
        try:
            module = import_module(module_path)
        except ImportError as error:
            raise ConfigError(f"Cannot import module {module_path} of learner {name}: {error}")
        if not hasattr(module, class_name):
            raise ConfigError(f"Learner class {class_name} not found in module {module_path}")
        learner = getattr(module, class_name)
        if not (isinstance(learner, type) and issubclass(learner, Learner)):
            raise ConfigError(f"{module_path}.{class_name} is not a subclass of Learner")
        # check that all required params are present
        for key in required_params:
            if key not in params:
                raise ConfigError(f"Missing required hyperparameters for learner {name}. Expected to see {list(required_params)}")
        return learner.from_config(params)
    return __factory


def load_learners(declarations: Sequence[Mapping[str, Any]] = ()) -> Dict[str, LearnerFactory]:
    """Get the built-in learners, extended with custom learners declared in a configuration.

    Each declaration must have the properties "name", "path", "learner" and "required".
    """
    learners = builtin_learners()
    for item in declarations:
        if 'name' not in item or 'path' not in item or 'learner' not in item or 'required' not in item:
            raise ConfigError('Invalid learner declared. Each custom learner must be declared with properties "name", "path", "learner" and "required"')
        learners[item['name']] = import_learner(item['name'], item['path'], item['learner'], item['required'])
    return learners


def get_learner_factory(kind: str, learners: Mapping[str, LearnerFactory] = None) -> LearnerFactory:
    """Get the factory of a model kind, case-insensitive.

    Throws: `UnknownModelKind` if no learner is registered under this kind.
    """
    learners = builtin_learners() if learners is None else learners
    key = str(kind).lower()
    if key not in learners:
        raise UnknownModelKind(f"Unknown model kind '{kind}', expected one of {sorted(learners)}")
    return learners[key]


def expand_grid(options: Mapping[str, Sequence[Any]]) -> List[Hyperparams]:
    """Expand a mapping of candidate values into the list of all their combinations.

    The last key varies fastest.

    Example:
      >>> expand_grid({"k": [3, 5], "distance": ["euclidean", "manhattan"]})
      [{'k': 3, 'distance': 'euclidean'}, {'k': 3, 'distance': 'manhattan'}, {'k': 5, 'distance': 'euclidean'}, {'k': 5, 'distance': 'manhattan'}]
    """
    keys = list(options.keys())
    return [dict(zip(keys, values)) for values in product(*(options[k] for k in keys))]


DEFAULT_GRIDS: Dict[str, List[Hyperparams]] = {
    "rf": expand_grid({"n_trees": [100, 300, 500], "max_depth": [8, None]}),
    "gbt": expand_grid({"n_rounds": [100, 300], "learning_rate": [0.05, 0.1], "max_depth": [3, 5]}),
    "knn": expand_grid({"k": [3, 5, 7, 11], "distance": ["euclidean", "manhattan"]})
}


def default_grid(kind: str) -> List[Hyperparams]:
    """Get the default hyperparameter grid of a model kind (a single default candidate for custom learners)"""
    return [dict(hp) for hp in DEFAULT_GRIDS.get(str(kind).lower(), [dict()])]

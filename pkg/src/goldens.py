import json
import logging
import os
import re

from src import config
from src.utils import GoldenMismatchError

logger = logging.getLogger(__name__)


def params_slug(params: dict) -> str:
    """Stable file name for a parameter dict, e.g. {'r': 2, 'op': 'phi'} -> 'op-phi_r-2'."""
    if not params:
        return "default"
    parts = []
    for key in sorted(params):
        value = re.sub(r'[^A-Za-z0-9.\-]+', '', str(params[key]).replace('^', 'p'))
        parts.append(f"{key}-{value}")
    return "_".join(parts)


class GoldenStore:
    """JSON reports stored as <root>/p<P>/<verb>/<slug>.json"""

    def __init__(self, root=None):
        self.root = root or config.goldens_dir()

    def path(self, p, verb, params):
        return os.path.join(self.root, f"p{p}", verb, f"{params_slug(params)}.json")

    # --- Persistence Methods ---

    def load(self, p, verb, params):
        """Loads a golden report, or None when no file exists."""
        path = self.path(p, verb, params)
        if not os.path.exists(path):
            logger.debug("no golden at %s", path)
            return None
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)

    def save(self, p, verb, params, report):
        """Saves a report as the golden for (p, verb, params)."""
        path = self.path(p, verb, params)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(report, f, indent=2, sort_keys=True, ensure_ascii=False)
            f.write("\n")
        logger.info("wrote golden %s", path)
        return path

    # --- Comparison ---

    def compare(self, p, verb, params, report):
        """
        Keys (dotted paths) where `report` differs from the golden.  Only keys
        present in the golden are compared; a missing golden compares equal.
        """
        golden = self.load(p, verb, params)
        if golden is None:
            return []
        return _differences(golden, json.loads(json.dumps(report)), "")

    def check(self, p, verb, params, report):
        differences = self.compare(p, verb, params, report)
        if differences:
            raise GoldenMismatchError(
                f"{self.path(p, verb, params)} differs at: {', '.join(differences)}")


def _differences(golden, actual, prefix):
    if isinstance(golden, dict):
        if not isinstance(actual, dict):
            return [prefix or "."]
        found = []
        for key, value in golden.items():
            where = f"{prefix}.{key}" if prefix else key
            if key not in actual:
                found.append(where)
            else:
                found.extend(_differences(value, actual[key], where))
        return found
    if isinstance(golden, list):
        if not isinstance(actual, list) or len(actual) != len(golden):
            return [prefix or "."]
        found = []
        for i, (g, a) in enumerate(zip(golden, actual)):
            found.extend(_differences(g, a, f"{prefix}[{i}]"))
        return found
    return [] if golden == actual else [prefix or "."]

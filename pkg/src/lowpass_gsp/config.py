"""Experiment configuration: JSON parsing, schema validation and graph sources."""
import copy
import hashlib
import json
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import ConfigError, ValidationError
from .filters import filter_from_dict
from .graph import BlockModel, erdos_renyi_sample, sbm_ppm_sample
from .io import read_adjacency_csv

TASK_BLOCKS = ("ratio", "sampling", "communities", "learning", "interpolation", "anomaly")


def load_schema():
    return json.loads(resources.files(__package__).joinpath("config.schema.json").read_text())


def _pointer(path):
    return "/" + "/".join(str(p) for p in path)


@dataclass
class ExperimentConfig:
    seed: int
    graph: dict = None
    filter: dict = None
    m: int = None
    sigma: float = None
    ratio: dict = None
    sampling: dict = None
    communities: dict = None
    learning: dict = None
    interpolation: dict = None
    anomaly: dict = None
    base_dir: Path = field(default=None, compare=False, repr=False)

    @classmethod
    def from_dict(cls, d, base_dir=None):
        validate(d)
        d = copy.deepcopy(d)
        return cls(**d, base_dir=Path(base_dir) if base_dir else None)

    @classmethod
    def from_json(cls, path):
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
        return cls.from_dict(d, base_dir=path.parent)

    def to_dict(self):
        out = {}
        for f in fields(self):
            if f.name == "base_dir":
                continue
            value = getattr(self, f.name)
            if value is not None:
                out[f.name] = copy.deepcopy(value)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def sha256(self):
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()

    def require(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ConfigError(f"config is missing required block(s): {', '.join('/' + n for n in missing)}")

    def filter_spec(self):
        self.require("filter")
        return filter_from_dict(self.filter)

    def resolve(self, path):
        p = Path(path)
        if not p.is_absolute() and self.base_dir is not None:
            p = self.base_dir / p
        return p

    def build_graph(self):
        """Return ``(graph, membership)``; membership is None unless block-model generated."""
        self.require("graph")
        g = self.graph
        if "file" in g:
            path = self.resolve(g["file"])
            if not path.exists():
                raise ConfigError(f"/graph/file: {path} does not exist")
            return read_adjacency_csv(path), None
        if g["generator"] == "sbm":
            try:
                model = BlockModel(g["n"], g["k"], g["a"], g["b"])
            except ValidationError as exc:
                raise ConfigError(f"/graph: {exc}") from exc
            return sbm_ppm_sample(model, self.seed), model.membership
        return erdos_renyi_sample(g["n"], g["p"], self.seed), None


def validate(d):
    """Validate a raw config dict against the published schema."""
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(d), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ConfigError(f"{_pointer(err.absolute_path)}: {err.message}")

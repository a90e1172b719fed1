"""Run configuration: INI file plus command-line overrides (flags win)."""
from __future__ import annotations

import configparser
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Mapping

from .encodings import EncodingName
from .lattice import Boundary, Lattice

ENCODING_ALIASES = {
    "jw": EncodingName.JW,
    "vc": EncodingName.VC,
    "dk": EncodingName.DK,
    "gse": EncodingName.GSE,
    "kw": EncodingName.KW_DUAL,
    "jw-aug": EncodingName.JW_AUGMENTED,
    "ancilla3": EncodingName.SINGLE_ANCILLA_3EDGE,
    "toric4": EncodingName.TORIC_4EDGE,
    "ratio3to2": EncodingName.RATIO_3TO2,
    "ratio2to1": EncodingName.RATIO_2TO1,
}
STRATEGIES = ("line", "plaquette", "petal", "petal-baseline")
FORMATS = ("qasm", "json")
VERIFY_LEVELS = ("algebra", "tableau", "dense")
DEPTH_MODES = ("native", "cx")


class ConfigError(ValueError):
    pass


def parse_encoding(text: str) -> EncodingName | str:
    """Alias, enum value (case-insensitive) or the literal ``all``."""
    key = text.strip().lower()
    if key == "all":
        return "all"
    if key in ENCODING_ALIASES:
        return ENCODING_ALIASES[key]
    for e in EncodingName:
        if e.value.lower() == key:
            return e
    raise ConfigError(f"unknown encoding {text!r}; choose from {', '.join(ENCODING_ALIASES)} or all")


def parse_lattice(text: str) -> tuple[int, int]:
    """``WxH`` or a bare chain length ``N`` (same as ``Nx1``)."""
    t = text.strip().lower()
    try:
        if "x" in t:
            w, h = t.split("x")
            dims = int(w), int(h)
        else:
            dims = int(t), 1
    except ValueError:
        raise ConfigError(f"lattice must look like WxH or N, got {text!r}") from None
    if min(dims) < 1:
        raise ConfigError(f"lattice dimensions must be positive, got {text!r}")
    return dims


@dataclass
class RunConfig:
    lattice: str = "4x4"
    bc: str = "open"
    encoding: str = "vc"
    strategy: str | None = None        # None: plaquette for DK, line otherwise
    dt: float = 0.1
    steps: int = 1
    j: float = 1.0
    out: str | None = None
    format: str | None = None         # compile: json; bench: text table
    depth_mode: str = "cx"
    verify: str = "algebra"
    encoding_file: str | None = None

    def check(self) -> "RunConfig":
        parse_lattice(self.lattice)
        if self.bc not in ("open", "periodic"):
            raise ConfigError(f"bc must be open or periodic, got {self.bc!r}")
        parse_encoding(self.encoding)
        if self.strategy is not None and self.strategy not in STRATEGIES:
            raise ConfigError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.depth_mode not in DEPTH_MODES:
            raise ConfigError(f"depth-mode must be one of {DEPTH_MODES}, got {self.depth_mode!r}")
        if self.verify not in VERIFY_LEVELS:
            raise ConfigError(f"verify must be one of {VERIFY_LEVELS}, got {self.verify!r}")
        if self.steps < 1:
            raise ConfigError("steps must be >= 1")
        return self

    @property
    def encoding_name(self) -> EncodingName | str:
        return parse_encoding(self.encoding)

    def build_lattice(self) -> Lattice:
        w, h = parse_lattice(self.lattice)
        try:
            return Lattice(w, h, Boundary(self.bc))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def strategy_for(self, name: EncodingName) -> str:
        if self.strategy:
            return self.strategy
        return "plaquette" if name == EncodingName.DK else "line"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, value: str) -> Any:
    kind = _TYPES[key]
    try:
        if kind == "float":
            return float(value)
        if kind == "int":
            return int(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {value!r}") from None
    return value


def load_config(path: str | Path | None, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    """Read ``[run]`` from an INI file, then apply non-``None`` overrides."""
    values: dict[str, Any] = {}
    if path is not None:
        parser = configparser.ConfigParser()
        try:
            with open(path) as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except configparser.Error as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from None
        if parser.has_section("run"):
            for key, value in parser.items("run"):
                key = key.replace("-", "_")
                if key not in _TYPES:
                    raise ConfigError(f"unknown config key {key!r}")
                values[key] = _coerce(key, value)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return RunConfig(**values).check()

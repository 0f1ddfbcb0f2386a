# src/verbs/common.py
from dataclasses import dataclass, field
from typing import Any

from src import config
from src.ffield import FieldSpec, field_make
from src.torus import PadicCharacter
from src.utils import InvalidParameterError, parse_character, parse_coefficients

BANNER = "=" * 60


@dataclass(frozen=True)
class RunConfig:
    """Everything a verb needs; built by the command line."""
    verb: str
    p: int
    k: int = config.DEFAULT_EXT_DEGREE
    params: dict[str, Any] = field(default_factory=dict)
    fmt: str = config.DEFAULT_FORMAT
    seed: int = config.DEFAULT_SEED
    depth: int | None = None

    def field_spec(self) -> FieldSpec:
        return field_make(self.p, self.k)


def parse_field_element(spec: FieldSpec, text: str):
    return spec.element(parse_coefficients(text))


def parse_padic_character(spec: FieldSpec, text: str) -> PadicCharacter:
    coeffs, e = parse_character(text)
    lam = spec.element(coeffs)
    if lam == 0:
        raise InvalidParameterError(f"chi(p) must be nonzero: {text}")
    return PadicCharacter(spec, int(lam), e)


def check(name: str, ok: bool, detail: str = "") -> dict:
    return {"name": name, "ok": bool(ok), "detail": detail}


def report(config_: RunConfig, result, lines=(), checks=()) -> dict:
    return {
        "verb": config_.verb,
        "p": config_.p,
        "k": config_.k,
        "params": dict(config_.params),
        "result": result,
        "lines": list(lines),
        "checks": list(checks),
    }

# src/verbs/satake.py
from src.gl2ind import hecke_poly
from src.satake import satake, satake_units
from src.utils import InvalidParameterError, parse_hecke_polynomial
from src.verbs.common import RunConfig, report
from src.weights import Weight


def run_satake(config: RunConfig) -> dict:
    """S^degree(q(Phi)) on a weight, as a Laurent operator in X."""
    spec = config.field_spec()
    r = int(config.params.get("r", 0))
    e = int(config.params.get("e", 0))
    degree = int(config.params.get("degree", 0))
    if degree not in (0, 1):
        raise InvalidParameterError(f"--degree must be 0 or 1, got {degree}")
    op_text = config.params.get("op", "phi")
    weight = Weight(r, e, spec)
    endo = hecke_poly(weight, parse_hecke_polynomial(op_text))
    operator = satake(endo, weight, degree, config.depth)
    units = satake_units(weight, degree)

    lines = [
        f"→ weight: {weight.label()} over {spec.label()}",
        f"→ target: ind_ZK_T^T(ω^{units.e1} ⊠ ω^{units.e2})",
        f"→ S^{degree}({op_text}) = {operator!r}",
    ]
    return report(config, operator.to_json(), lines)

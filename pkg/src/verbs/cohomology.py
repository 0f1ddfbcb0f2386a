# src/verbs/cohomology.py
import galois

from src.cohomology import character_module, cocycle_oracle, h0, h1, hecke
from src.ffield import matrix_to_json
from src.padic import GMatrix
from src.torus import PadicCharacter, TorusCharacter
from src.utils import InvalidParameterError, parse_weight
from src.verbs.common import RunConfig, check, parse_padic_character, report
from src.weights import Weight, weight_module


def _module(config: RunConfig, spec):
    if config.params.get("weight"):
        r, e = parse_weight(config.params["weight"])
        return weight_module(Weight(r, e, spec)), False
    chis = [parse_padic_character(spec, text) for text in config.params.get("chi", ())]
    if len(chis) == 1:
        chis.append(PadicCharacter.trivial(spec))
    if len(chis) != 2:
        raise InvalidParameterError("cohomology needs --weight r,e or --chi (once or twice)")
    return character_module(TorusCharacter(*chis)), True


def run_cohomology(config: RunConfig) -> dict:
    """H^0, H^1 of K_U with their Hecke actions, checked against the cocycle oracle."""
    spec = config.field_spec()
    p = spec.p
    module, has_p_action = _module(config, spec)
    dims = [h0(module).shape[1], h1(module).dim]
    oracle = cocycle_oracle(module)

    g0 = int(galois.GF(p).primitive_element)
    elements = {f"diag({g0},1)": GMatrix.diag(p, g0, 1), f"diag(1,{g0})": GMatrix.diag(p, 1, g0)}
    if has_p_action:
        elements[f"diag({p},1)"] = GMatrix.diag(p, p, 1)
        elements[f"diag({p},{p})"] = GMatrix.scalar(p, p)
    matrices = {
        name: {str(degree): matrix_to_json(spec, hecke(m, module, degree)) for degree in (0, 1)}
        for name, m in elements.items()
    }

    result = {"module": module.label, "dims": dims, "oracle": [oracle.h0_dim, oracle.h1_dim],
              "oracle_exponent": oracle.m, "hecke": matrices}
    lines = [f"→ module: {module.label} over {spec.label()} (level {module.level})",
             f"→ dim H^0 = {dims[0]}, dim H^1 = {dims[1]}"]
    for name, by_degree in matrices.items():
        lines.append(f"→ {name}: H^0 {by_degree['0']}  H^1 {by_degree['1']}")
    checks = [check("oracle dimensions", dims == [oracle.h0_dim, oracle.h1_dim],
                    f"Z/{p}^{oracle.m}: {oracle.h0_dim}, {oracle.h1_dim}")]
    return report(config, result, lines, checks)

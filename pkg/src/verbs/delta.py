# src/verbs/delta.py
from src.cohomology import delta_character, delta_from_cohomology
from src.padic import GMatrix
from src.torus import PadicCharacter, TorusCharacter
from src.verbs.common import RunConfig, check, report


def delta_generators(p: int) -> dict[str, GMatrix]:
    elements = {}
    for u in range(1, p):
        elements[f"diag({u},1)"] = GMatrix.diag(p, u, 1)
        elements[f"diag(1,{u})"] = GMatrix.diag(p, 1, u)
    elements[f"diag({p},1)"] = GMatrix.diag(p, p, 1)
    elements[f"diag(1,{p})"] = GMatrix.diag(p, 1, p)
    return elements


def run_delta(config: RunConfig) -> dict:
    """delta_B from the Hecke action on H^1(K_U, 1), compared with omega ⊠ omega^-1."""
    spec = config.field_spec()
    omega = PadicCharacter.omega(spec)
    expected = TorusCharacter(omega, omega.inverse())
    values, checks = {}, []
    for name, m in delta_generators(spec.p).items():
        value = delta_from_cohomology(m, spec)
        values[name] = spec.to_json(value)
        checks.append(check(name, value == expected(m), f"{spec.to_json(value)}"))
    character = delta_character(spec)
    checks.append(check("character", character == expected, character.label()))
    lines = [f"→ δ({name}) = {value}" for name, value in values.items()]
    lines.append(f"→ δ = {character.label()}")
    return report(config, {"values": values, "character": character.to_json()}, lines, checks)

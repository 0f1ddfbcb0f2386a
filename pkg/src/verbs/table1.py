# src/verbs/table1.py
from src.ffield import field_embed
from src.jacquet import (IrreducibleLabel, JacquetResult, RepresentationType,
                         jacquet_of_presentation, table1, table1_rows, validate_presentation)
from src.torus import ZERO, PadicCharacter, TorusCharacter
from src.utils import InvalidParameterError
from src.verbs.common import (RunConfig, check, parse_field_element, parse_padic_character,
                              report)


def closed_form(label: IrreducibleLabel) -> JacquetResult:
    """The known answer for each row, used to check the computed one."""
    if label.kind is RepresentationType.PRINCIPAL:
        omega = PadicCharacter.omega(label.chi1.field)
        return JacquetResult(TorusCharacter(label.chi1, label.chi2),
                             TorusCharacter(label.chi2 * omega, label.chi1 * omega.inverse()))
    chi = label.chi
    omega = PadicCharacter.omega(chi.field)
    if label.kind is RepresentationType.CHARACTER:
        return JacquetResult(TorusCharacter(chi, chi), ZERO)
    if label.kind is RepresentationType.SPECIAL:
        return JacquetResult(ZERO, TorusCharacter(chi * omega, chi * omega.inverse()))
    return JacquetResult(ZERO, ZERO)


def presentation_closed_form(r: int, lam, chi: PadicCharacter) -> JacquetResult:
    spec = chi.field
    if lam == 0:
        return JacquetResult(ZERO, ZERO)
    mu = PadicCharacter(spec, int(lam), 0)
    omega = PadicCharacter.omega(spec)
    L0 = TorusCharacter(mu.inverse(), mu * PadicCharacter.omega(spec, r))
    L1 = TorusCharacter(mu * PadicCharacter.omega(spec, r + 1), mu.inverse() * omega.inverse())
    return JacquetResult(L0, L1).twist(chi)


def embedded(result: JacquetResult, computed: JacquetResult) -> JacquetResult:
    """Move an expected result into the (possibly extended) field of a computed one."""
    target = next((c.chi1.field for c in (computed.L0, computed.L1) if c is not ZERO), None)

    def move(c):
        if c is ZERO or target is None or c.chi1.field == target:
            return c
        embed = field_embed(c.chi1.field, target)
        return TorusCharacter(c.chi1.embed(embed, target), c.chi2.embed(embed, target))

    return JacquetResult(move(result.L0), move(result.L1))


def _labels(config: RunConfig, spec):
    kind = config.params.get("type")
    chis = [parse_padic_character(spec, text) for text in config.params.get("chi", ())]
    if kind is None:
        raise InvalidParameterError("table1 needs --all, --type or --lambda")
    if kind == "principal":
        if len(chis) != 2:
            raise InvalidParameterError("principal series needs --chi twice (chi1 then chi2)")
        return [IrreducibleLabel.principal(*chis)]
    chi = chis[0] if chis else PadicCharacter.trivial(spec)
    if kind == "character":
        return [IrreducibleLabel.character(chi)]
    if kind == "special":
        return [IrreducibleLabel.special(chi)]
    if kind == "supersingular":
        return [IrreducibleLabel.supersingular(int(config.params.get("r", 0)), chi)]
    raise InvalidParameterError(f"unknown --type {kind}")


def _row(kind: str, label: str, result: JacquetResult) -> dict:
    return {"type": kind, "V": label, **result.to_json()}


def run_table1(config: RunConfig) -> dict:
    """Rows of L^-1(U, V) and L^0(U, V) for irreducible V."""
    spec = config.field_spec()
    rows, checks = [], []

    if config.params.get("lambda") is not None:
        r = int(config.params.get("r", 0))
        lam = parse_field_element(spec, config.params["lambda"])
        chis = [parse_padic_character(spec, text) for text in config.params.get("chi", ())]
        chi = chis[0] if chis else PadicCharacter.trivial(spec)
        validate_presentation(r, lam, spec)
        computed = jacquet_of_presentation(r, lam, chi)
        name = f"V({r}, {spec.to_json(lam)}, {chi.label()})"
        rows.append((RepresentationType.SUPERSINGULAR.value if lam == 0 else "presentation", name, computed))
        expected = presentation_closed_form(r, lam, chi)
        checks.append(check(name, computed == expected))
    else:
        if config.params.get("all"):
            pairs = table1_rows(spec)
        else:
            pairs = [(label, table1(label)) for label in _labels(config, spec)]
        for label, computed in pairs:
            expected = embedded(closed_form(label), computed)
            rows.append((label.kind.value, label.label(), computed))
            checks.append(check(label.label(), computed == expected))

    lines = [f"{'type':<14} {'V':<28} {'L^-1(U,V)':<24} L^0(U,V)", "-" * 60]
    for kind, name, result in rows:
        lines.append(f"{kind:<14} {name:<28} {result.L1.label():<24} {result.L0.label()}")
    return report(config, {"rows": [_row(*row) for row in rows]}, lines, checks)

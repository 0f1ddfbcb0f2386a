# src/verbs/verify.py
"""
The acceptance suite: every identity is recomputed from first principles and
reported as a named check.  Reports listed in GOLDEN_CASES are also compared
with (or written to) the golden store.
"""
import logging
import random
from fractions import Fraction

import numpy as np

from src import config as defaults
from src.cohomology import (character_module, cocycle_oracle, cores, h0, h1, hecke,
                            transfer_oracle, trivial_module)
from src.ffield import field_make, mat_rank
from src.gl2ind import hecke_poly, phi_power
from src.goldens import GoldenStore
from src.jacquet import (IrreducibleLabel, jacquet_of_presentation, special_series_via_les,
                         table1)
from src.padic import GMatrix
from src.satake import (double_coset_partition, h0_coordinates, hecke_b, mu, mu_domain,
                        mu_projection, orbit_sum, positive_translate, satake, satake_units,
                        unwind)
from src.torus import HeckeLaurent, PadicCharacter, TorusCharacter, TorusUnits
from src.utils import ModpSatakeError
from src.verbs.common import RunConfig, check, report
from src.verbs.delta import run_delta
from src.verbs.table1 import closed_form, embedded, presentation_closed_form
from src.weights import Weight, action_matrix, weight_module

logger = logging.getLogger(__name__)

# (p, verb, params) whose reports are pinned by golden files
GOLDEN_CASES = [
    (3, "satake", {"r": 1, "op": "phi", "degree": 0}),
    (5, "satake", {"r": 2, "op": "phi", "degree": 0}),
    (5, "satake", {"r": 2, "op": "phi", "degree": 1}),
    (3, "table1", {"all": True}),
    (5, "table1", {"all": True}),
]


def check_satake_of_phi(p: int) -> list[dict]:
    spec = field_make(p)
    checks = []
    for r in range(p):
        weight = Weight(r, 0, spec)
        phi = phi_power(weight, 1)
        s0, s1 = satake(phi, weight, 0), satake(phi, weight, 1)
        checks.append(check(f"p={p} r={r} S^0(Φ) = X", s0 == HeckeLaurent.monomial(spec, 1), repr(s0)))
        checks.append(check(f"p={p} r={r} S^1(Φ) = X^-1", s1 == HeckeLaurent.monomial(spec, -1), repr(s1)))
        checks.append(check(f"p={p} r={r} target characters",
                            satake_units(weight, 0) == TorusUnits(p, 0, r)
                            and satake_units(weight, 1) == TorusUnits(p, r + 1, -1)))
        checks.append(check(f"p={p} r={r} depth+1 stable",
                            satake(phi, weight, 0, 2) == s0 and satake(phi, weight, 1, 2) == s1))
    return checks


def check_multiplicativity(p: int, rng: random.Random) -> list[dict]:
    spec = field_make(p)
    checks = []
    for r in range(p):
        weight = Weight(r, 0, spec)
        for degree in (0, 1):
            base = satake(phi_power(weight, 1), weight, degree)
            for n in (2, 3):
                image = satake(phi_power(weight, n), weight, degree)
                checks.append(check(f"p={p} r={r} S^{degree}(Φ^{n}) = S^{degree}(Φ)^{n}", image == base ** n))
    weight = Weight(rng.randrange(p), 0, spec)
    for _ in range(2):
        q1 = hecke_poly(weight, {n: rng.randrange(p) for n in range(3)})
        q2 = hecke_poly(weight, {n: rng.randrange(p) for n in range(3)})
        for degree in (0, 1):
            lhs = satake(q1 * q2, weight, degree)
            rhs = satake(q1, weight, degree) * satake(q2, weight, degree)
            checks.append(check(f"p={p} S^{degree}(q1 q2) = S^{degree}(q1) S^{degree}(q2)", lhs == rhs))
    return checks


def character_samples(spec) -> list[PadicCharacter]:
    p = spec.p
    samples = [PadicCharacter.trivial(spec), PadicCharacter.omega(spec)]
    if p > 2:
        samples.append(PadicCharacter(spec, p - 1, 1))
    if p > 3:
        samples.append(PadicCharacter(spec, 2, 1))
    return samples


def check_table(p: int, rng: random.Random) -> list[dict]:
    spec = field_make(p)
    checks = []
    chis = character_samples(spec)
    for chi in chis:
        for label in (IrreducibleLabel.character(chi), IrreducibleLabel.special(chi)):
            result = table1(label)
            checks.append(check(f"p={p} {label.label()}", result == closed_form(label)))
        for r in range(p):
            label = IrreducibleLabel.supersingular(r, chi)
            checks.append(check(f"p={p} {label.label()} vanishes", table1(label) == closed_form(label)))
            for lam in range(1, p):
                if r in (0, p - 1) and lam in (1, p - 1):
                    continue
                computed = jacquet_of_presentation(r, lam, chi)
                checks.append(check(f"p={p} V({r}, {lam}, {chi.label()})",
                                    computed == presentation_closed_form(r, spec(lam), chi)))
    for lam1 in range(1, p):
        for e2 in range(p - 1):
            chi1 = PadicCharacter(spec, lam1, 0)
            chi2 = PadicCharacter(spec, rng.randrange(1, p), e2)
            if chi1 == chi2:
                continue
            label = IrreducibleLabel.principal(chi1, chi2)
            computed = table1(label)
            checks.append(check(f"p={p} {label.label()}", computed == embedded(closed_form(label), computed)))
    large = field_make(p, 2)
    gf = large.GF
    for _ in range(defaults.EXTENSION_SAMPLES):
        lam = gf.Random(low=1, seed=rng.randrange(2 ** 31))
        r = rng.randrange(p)
        chi = PadicCharacter(large, rng.randrange(1, large.order), rng.randrange(p - 1))
        if r in (0, p - 1) and (lam == large(1) or lam == large(-1)):
            continue
        computed = jacquet_of_presentation(r, lam, chi)
        checks.append(check(f"p={p} V({r}, {large.to_json(lam)}, {chi.label()}) over GF({p}^2)",
                            computed == presentation_closed_form(r, lam, chi)))
    return checks


def check_special_series(p: int) -> list[dict]:
    spec = field_make(p)
    checks = []
    for lam in range(1, p):
        for e in range(p - 1):
            chi = PadicCharacter(spec, lam, e)
            label = IrreducibleLabel.special(chi)
            checks.append(check(f"p={p} LES for {label.label()}",
                                special_series_via_les(chi) == closed_form(label)))
    return checks


def check_cohomology(p: int) -> list[dict]:
    spec = field_make(p)
    checks = []
    modules = [weight_module(Weight(r, e, spec)) for r in range(p) for e in range(max(p - 1, 1))]
    for chi in character_samples(spec):
        modules.append(character_module(TorusCharacter(chi, PadicCharacter.trivial(spec))))
    for module in modules:
        oracle = cocycle_oracle(module)
        dims = (h0(module).shape[1], h1(module).dim)
        checks.append(check(f"p={p} {module.label} oracle dims", dims == (oracle.h0_dim, oracle.h1_dim)))
    trivial = trivial_module(spec)
    checks.append(check(f"p={p} dim H^1(K_U, 1) = 1", h1(trivial).dim == 1))
    for a in (1, 2):
        for module in (trivial, weight_module(Weight(p - 1, 0, spec))):
            closed = cores(module, a, 1)
            checks.append(check(f"p={p} cores index p^{a} on {module.label} matches transfer oracle",
                                np.array_equal(closed, transfer_oracle(module, a))))
        checks.append(check(f"p={p} top cores index p^{a} is an isomorphism",
                            mat_rank(cores(trivial, a, 1)) == 1))
    z, unit = GMatrix.diag(p, p, 1), GMatrix.diag(p, p - 1, 1)
    omega = PadicCharacter.omega(spec)
    for module in (trivial, character_module(TorusCharacter(omega, PadicCharacter.trivial(spec)))):
        for degree in (0, 1):
            composite = hecke(z @ unit, module, degree)
            product = hecke(z, module, degree) @ hecke(unit, module, degree)
            checks.append(check(f"p={p} {module.label} Hecke action multiplicative in degree {degree}",
                                np.array_equal(composite, product)))
    return checks


def _random_borel(p: int, rng: random.Random, spread: int = 2) -> GMatrix:
    units = [u for u in range(1, p * p) if u % p]
    a, b = rng.randint(-spread, spread), rng.randint(-spread, spread)
    x = Fraction(rng.randrange(p ** 2), p ** rng.randint(0, spread))
    return GMatrix(p, Fraction(p) ** a * rng.choice(units), x, 0, Fraction(p) ** b * rng.choice(units))


def _random_positive(p: int, rng: random.Random) -> GMatrix:
    s = rng.randint(0, 2)
    t = rng.randint(-1, 1)
    units = list(range(1, p))
    return GMatrix.diag(p, Fraction(p) ** (s + t) * rng.choice(units), Fraction(p) ** t * rng.choice(units))


def check_mu_rules(p: int, rng: random.Random, samples: int = 20) -> list[dict]:
    spec = field_make(p)
    counts = {"identity on P+": 0, "independence": 0, "unit": 0, "composition": 0, "equivariance": 0}
    for _ in range(samples):
        weight = Weight(rng.randrange(p), rng.randrange(max(p - 1, 1)), spec)
        g = _random_borel(p, rng)
        D = mu_domain(g, weight)
        m, m2 = _random_positive(p, rng), _random_positive(p, rng)
        identity = spec.GF.Identity(weight.dim)
        plus = GMatrix.diag(p, Fraction(p) ** rng.randint(0, 2), 1) @ GMatrix.unipotent(p, rng.randrange(p))
        counts["identity on P+"] += np.array_equal(mu_projection(m, plus, weight), identity)
        shift = GMatrix.diag(p, Fraction(p) ** rng.randint(0, 2), 1)
        other = mu(g, weight, shift @ positive_translate(g))
        counts["independence"] += np.array_equal(mu(g, weight) @ D, other @ D)
        counts["unit"] += np.array_equal(mu_projection(GMatrix.identity(p), g, weight) @ D, D)
        composite = mu_projection(m @ m2, g, weight) @ D
        counts["composition"] += np.array_equal(composite,
                                                mu_projection(m, m2 @ g, weight) @ mu_projection(m2, g, weight) @ D)
        u = GMatrix.unipotent(p, rng.randrange(p ** 2))
        h = GMatrix(p, rng.randrange(1, p), rng.randrange(p ** 2), 0, rng.randrange(1, p))
        A = action_matrix(weight, h)
        lhs = mu_projection(m, u @ g @ h, weight) @ mu_domain(u @ g @ h, weight)
        rhs = np.linalg.inv(A) @ mu_projection(m, g, weight) @ A @ mu_domain(u @ g @ h, weight)
        counts["equivariance"] += np.array_equal(lhs, rhs)
    return [check(f"p={p} μ rule: {rule}", passed == samples, f"{passed}/{samples}")
            for rule, passed in counts.items()]


def check_unwinding(p: int = 3, window: int = 2, max_r: int = 2) -> list[dict]:
    spec = field_make(p)
    checks = []
    partition = double_coset_partition(p, window)
    checks.append(check(f"p={p} K_U\\P+/K_B ↔ M+/K_T", all(n == 1 for n in partition.values()),
                        f"{len(partition)} classes"))
    positives = [GMatrix.diag(p, p, 1), GMatrix.scalar(p, p), GMatrix.diag(p, 2 % p or 1, 1)]
    for r in range(min(max_r, p - 1) + 1):
        weight = Weight(r, 0, spec)
        w0 = h0(weight_module(weight))[:, 0]
        images = {}
        for a in range(-window, window + 1):
            for b in range(-window, a + 1):
                x = orbit_sum(GMatrix.diag(p, Fraction(p) ** a, Fraction(p) ** b), w0, weight)
                images[(a, b)] = h0_coordinates(unwind(x))
        bijective = all(list(coords) == [key] and np.count_nonzero(coords[key]) for key, coords in images.items())
        checks.append(check(f"p={p} r={r} unwind bijective on P+ window {window}", bijective))

        hecke_ok, equivariant_ok = True, True
        for a in range(-1, 2):
            for b in range(-1, 2):
                for u0 in range(p):
                    g = GMatrix(p, Fraction(p) ** a, u0 * Fraction(p) ** min(a, b, 0), 0, Fraction(p) ** b)
                    domain = mu_domain(g, weight)
                    for j in range(domain.shape[1]):
                        w = domain[:, j]
                        x = orbit_sum(g, w, weight)
                        for m in positives:
                            lhs = hecke_b(m, x)
                            hecke_ok &= lhs == orbit_sum(m @ g, mu_projection(m, g, weight) @ w, weight)
                            equivariant_ok &= unwind(lhs) == unwind(x).translate(m)
        checks.append(check(f"p={p} r={r} m⋆[K_U g, w] = [K_U mg, μ(w)]", hecke_ok))
        checks.append(check(f"p={p} r={r} unwind is M+-equivariant", equivariant_ok))
    return checks


def _golden_checks(store: GoldenStore, update: bool) -> list[dict]:
    from src.verbs import all_verbs
    checks = []
    for p, verb, params in GOLDEN_CASES:
        produced = all_verbs[verb](RunConfig(verb=verb, p=p, params=dict(params)))["result"]
        if update:
            path = store.save(p, verb, params, produced)
            checks.append(check(f"golden {verb} p={p} written", True, path))
            continue
        if store.load(p, verb, params) is None:
            checks.append(check(f"golden {verb} p={p} missing", False, store.path(p, verb, params)))
            continue
        differences = store.compare(p, verb, params, produced)
        checks.append(check(f"golden {verb} p={p} {params}", not differences, ", ".join(differences)))
    return checks


def run_verify(config: RunConfig) -> dict:
    """Run every acceptance check for the requested primes."""
    primes = tuple(config.params.get("primes") or defaults.VERIFY_PRIMES)
    for p in primes:
        field_make(p)
    rng = random.Random(config.seed)
    sections = {}

    def section(name, producer):
        try:
            sections[name] = producer()
        except ModpSatakeError as error:
            logger.exception("verify section %s failed", name)
            sections[name] = [check(name, False, str(error))]

    section("satake of phi", lambda: [c for p in primes for c in check_satake_of_phi(p)])
    section("multiplicativity",
            lambda: [c for p in primes if p <= 5 for c in check_multiplicativity(p, rng)])
    section("table1", lambda: [c for p in primes if p in defaults.TABLE1_PRIMES for c in check_table(p, rng)])
    section("special series",
            lambda: [c for p in primes if p in defaults.TABLE1_PRIMES for c in check_special_series(p)])
    section("delta", lambda: [c for p in primes if p in (3, 5)
                              for c in run_delta(RunConfig(verb="delta", p=p))["checks"]])
    section("cohomology", lambda: [c for p in primes if p <= 5 for c in check_cohomology(p)])
    section("mu calculus", lambda: [c for p in primes if p in (3, 5) for c in check_mu_rules(p, rng)])
    section("unwinding", lambda: check_unwinding() if 3 in primes else [])
    section("goldens", lambda: _golden_checks(GoldenStore(), bool(config.params.get("update_goldens"))))

    checks = [c for name in sections for c in sections[name]]
    summary = {name: sum(c["ok"] for c in items) for name, items in sections.items()}
    totals = {name: len(items) for name, items in sections.items()}
    lines = [f"→ {name}: {summary[name]}/{totals[name]} passed" for name in sections]
    result = {"primes": list(primes), "passed": summary, "total": totals}
    return report(config, result, lines, checks)

"""
The `verify` suites: exact sweeps over bounded generators and seeded random
elements, each returning a VerificationReport.
"""
import random
import time
from typing import Callable, Dict, List, Optional

from src.deformation import build_sdr, collapse_to_uass
from src.dg.differential import d_generator, differential
from src.dg.element import Element
from src.dg.labels import generators
from src.dg.morphism import is_dg_morphism, psi_ch, resolution_map
from src.dg.normalize import ambient_operad, compose, generator, identity
from src.dg.sampling import label_pool, random_composite, random_composites
from src.dg.subsets import subset_circ
from src.errors import AmbientError
from src.grpd_operad import (
    generation_closure,
    generation_rows,
    pushout_square_object_check,
    uinfA_generators,
)
from src.reports import Check, RunConfig, VerificationReport
from src.set_operad.associative import (
    MU,
    UNIT,
    AssOperad,
    UnitalAssOperad,
)
from src.set_operad.coproduct import FreeOperad, Generator
from src.set_operad.corks import (
    ObjectVariant,
    UinfAObjects,
    UObjects,
    coproduct_cross_check,
)
from src.set_operad.endomorphism import (
    FiniteEndOperad,
    associative_tables,
    binary,
    constant,
    monoid_census,
    unit_transfer_check,
)
from src.set_operad.harness import check_axioms
from src.utils import Ambient, Logging, Suite, sign

logger = Logging.get_console_logger()

MAX_WITNESSES = 20


def _check(name: str, instances: int, failures: List[str]) -> Check:
    return Check.from_failures(name, instances, failures[:MAX_WITNESSES])


def _report(suite: Suite, run: RunConfig, **fields) -> VerificationReport:
    return VerificationReport(
        suite=str(suite), **run.stamp(), **fields
    ).finalize()


### CHAIN LEVEL ###


def d_squared_suite(run: RunConfig, max_weight: int) -> VerificationReport:
    """
    d(d(x)) = 0 on every generator with n + |S| <= max_weight and on
    random composites; d lowers degree by one and keeps the arity.
    """
    ambient = run.ambient
    labels = list(generators(max_weight))
    squared, degree = [], []
    for label in labels:
        boundary = d_generator(label, ambient)
        if differential(boundary):
            squared.append(str(label))
        if boundary and boundary.degrees() != [label.degree - 1]:
            degree.append(str(label))
        if boundary.arity != label.arity:
            degree.append(f"{label} (arity)")

    pool = label_pool(ambient, max_weight)
    samples = random_composites(run.seed, run.random_composites, ambient, pool)
    composite_failures = [
        str(x) for x in samples if differential(differential(x))
    ]

    rng = random.Random(run.seed)
    cardinality = []
    for _ in range(run.random_pairs):
        p, q = rng.randint(1, 6), rng.randint(1, 6)
        S1 = [k for k in range(1, p + 1) if rng.random() < 0.4]
        if len(S1) == p:
            S1 = S1[:-1]
        S2 = [k for k in range(1, q + 1) if rng.random() < 0.4]
        i = rng.randint(1, p - len(S1))
        _, result = subset_circ(S1, p, i, S2, q)
        if len(result) != len(S1) + len(S2) or not set(result) <= set(
            range(1, p + q)
        ):
            cardinality.append(f"{S1} o_{i} {S2}")

    logger.info(
        f"d^2 on {len(labels)} generators and {len(samples)} composites."
    )
    checks = [
        _check("d2_generators", len(labels), squared),
        _check("d2_composites", len(samples), composite_failures),
        _check("degree_drop", len(labels), degree),
        _check("subset_circ_cardinality", run.random_pairs, cardinality),
        presentation_check(ambient),
    ]
    return _report(Suite.D2, run, checks=checks)


def presentation_check(ambient: Ambient) -> Check:
    """
    The relations of Ass (and uAss) hold in the normal form, and u is
    refused without them.
    """
    failures = []
    left = compose(generator(MU, ambient), 1, generator(MU, ambient))
    right = compose(generator(MU, ambient), 2, generator(MU, ambient))
    if left != right:
        failures.append("mu o_1 mu != mu o_2 mu")

    instances = 1
    if Ambient(ambient) == Ambient.UINF_UA:
        for slot in (1, 2):
            instances += 1
            value = compose(
                generator(MU, ambient), slot, generator(UNIT, ambient)
            )
            if value != identity(ambient):
                failures.append(f"mu o_{slot} u = {value}")
    else:
        instances += 1
        try:
            generator(UNIT, ambient)
            failures.append("u accepted without the unit relations")
        except AmbientError:
            pass

    return _check("presentation", instances, failures)


def _pair_sample(rng, ambient, pool, min_arity: int = 1) -> Element:
    x = random_composite(rng, ambient, pool, max_labels=2)
    while x.arity < min_arity:
        x = random_composite(rng, ambient, pool, max_labels=2)
    return x


def derivation_suite(run: RunConfig, max_weight: int) -> VerificationReport:
    """
    Derivation law of d, exchange and vertical associativity, unit laws,
    idempotent normal form and the standard DG-morphisms.
    """
    ambient = run.ambient
    rng = random.Random(run.seed)
    pool = label_pool(ambient, max_weight)
    unit = identity(ambient)

    derivation = []
    for _ in range(run.random_pairs):
        x = _pair_sample(rng, ambient, pool)
        y = random_composite(rng, ambient, pool, max_labels=2)
        i = rng.randint(1, x.arity)
        left = differential(compose(x, i, y))
        right = compose(differential(x), i, y) + compose(
            x, i, differential(y)
        ).scale(sign(x.degree))
        if left != right:
            derivation.append(f"x={x} i={i} y={y}")

    exchange, vertical, units, canonical = [], [], [], []
    operad = ambient_operad(ambient)
    for _ in range(run.random_triples):
        a = _pair_sample(rng, ambient, pool, min_arity=2)
        b = _pair_sample(rng, ambient, pool)
        c = random_composite(rng, ambient, pool, max_labels=2)
        i = rng.randint(2, a.arity)
        j = rng.randint(1, i - 1)
        left = compose(compose(a, i, b), j, c)
        right = compose(compose(a, j, c), i + c.arity - 1, b).scale(
            sign(b.degree * c.degree)
        )
        if left != right:
            exchange.append(f"a={a} i={i} b={b} j={j} c={c}")

        k = rng.randint(1, b.arity)
        left = compose(compose(a, i, b), i + k - 1, c)
        right = compose(a, i, compose(b, k, c))
        if left != right:
            vertical.append(f"a={a} i={i} b={b} j={k} c={c}")

        if compose(unit, 1, a) != a or compose(a, i, unit) != a:
            units.append(str(a))
        for tree in a.trees():
            if operad.normalize(tree) != tree:
                canonical.append(str(a))

    checks = [
        _check("derivation_law", run.random_pairs, derivation),
        _check("exchange", run.random_triples, exchange),
        _check("vertical", run.random_triples, vertical),
        _check("unit_laws", run.random_triples, units),
        _check("normal_form_idempotent", run.random_triples, canonical),
    ]

    resolution_bound = min(max_weight, 6)
    resolution = resolution_map(ambient)
    dg_check = is_dg_morphism(resolution, generators(resolution_bound))
    checks.append(dg_check)
    if Ambient(ambient) == Ambient.UINF_A:
        checks.append(is_dg_morphism(psi_ch(), generators(max_weight)))

    return _report(Suite.DERIVATION, run, checks=checks)


def gordo_suite(run: RunConfig, m: int) -> VerificationReport:
    """
    The retractions of levels m, ..., 1 and their composite onto uAss.
    """
    if Ambient(run.ambient) != Ambient.UINF_UA:
        raise AmbientError("The retractions live in the unital ambient.")

    sdrs = {}
    checks: List[Check] = []
    rows = []
    for level in range(m, 0, -1):
        sdr = build_sdr(
            level, run.max_n, samples=run.homotopy_samples, seed=run.seed
        )
        sdrs[level] = sdr
        for check in sdr.checks:
            checks.append(
                check.model_copy(update={"name": f"m{level}_{check.name}"})
            )
        if level == m:
            rows = sdr.rows
    checks.append(collapse_to_uass(m, run.max_n, sdrs))

    return _report(Suite.GORDO, run, checks=checks, sdr=rows)


### SET LEVEL ###


def axioms_suite(run: RunConfig) -> VerificationReport:
    operads = [
        (AssOperad(run.max_arity), run.max_arity),
        (UnitalAssOperad(run.max_arity), run.max_arity),
        (UinfAObjects(run.max_corks), run.max_arity),
        (UObjects(run.max_corks), run.max_arity),
        (FreeOperad([Generator("a", 2), Generator("e", 0)], 2), 2),
    ]
    operads += [
        (FiniteEndOperad(size), 2) for size in range(1, run.max_size + 1)
    ]

    checks = []
    for operad, max_arity in operads:
        report = check_axioms(
            operad, max_arity, run.axiom_element_bound, run.seed
        )
        for check in report.checks:
            checks.append(
                check.model_copy(
                    update={"name": f"{operad.name}:{check.name}"}
                )
            )
    for variant in ObjectVariant:
        checks.append(
            coproduct_cross_check(variant, run.max_arity, run.max_corks)
        )
    return _report(Suite.AXIOMS, run, checks=checks)


def census_suite(run: RunConfig, size: int) -> VerificationReport:
    """
    Unit uniqueness on the carrier, and the unit transfer argument replayed
    in End(X) on every associative unital operation with every candidate
    right unit.
    """
    census = monoid_census(size)
    operad = FiniteEndOperad(size)
    instances, failures = 0, []
    for table in associative_tables(size):
        f_mu = binary(size, table)
        carrier = range(size)
        left_units = [
            e for e in carrier if all(table[e][x] == x for x in carrier)
        ]
        right_units = [
            e for e in carrier if all(table[x][e] == x for x in carrier)
        ]
        for e in left_units:
            for other in right_units:
                instances += 1
                f_u, g_u = constant(size, e), constant(size, other)
                if not unit_transfer_check(operad, f_mu, f_u, g_u):
                    failures.append(f"{f_mu} with units {e}, {other}")

    checks = [_check("unit_transfer", instances, failures)]
    return _report(Suite.CENSUS, run, checks=checks, census=census)


def generation_suite(run: RunConfig) -> VerificationReport:
    objects, morphisms = uinfA_generators()
    state = generation_closure(
        objects, morphisms, run.max_arity, run.max_corks
    )
    rows, missing = generation_rows(state)
    checks = [
        _check("objects_reached", sum(r.objects for r in rows), missing),
        _check(
            "morphisms_reached",
            sum(r.morphism_pairs for r in rows),
            [
                f"arity {r.arity}, {r.corks} corks"
                for r in rows
                if r.reached_pairs != r.morphism_pairs
            ],
        ),
    ]
    return _report(
        Suite.GENERATION, run, checks=checks, generation=rows, missing=missing
    )


def pushout_suite(run: RunConfig) -> VerificationReport:
    checks = pushout_square_object_check(run.max_arity, run.max_corks)
    return _report(Suite.PUSHOUT, run, checks=checks)


def run_suite(
    suite: Suite,
    run: RunConfig,
    max_weight: Optional[int] = None,
    m: int = 1,
    size: Optional[int] = None,
) -> VerificationReport:
    weight = max_weight or run.max_weight
    runners: Dict[Suite, Callable[[], VerificationReport]] = {
        Suite.D2: lambda: d_squared_suite(run, weight),
        Suite.DERIVATION: lambda: derivation_suite(run, weight),
        Suite.AXIOMS: lambda: axioms_suite(run),
        Suite.GORDO: lambda: gordo_suite(run, m),
        Suite.CENSUS: lambda: census_suite(run, size or run.max_size),
        Suite.GENERATION: lambda: generation_suite(run),
        Suite.PUSHOUT: lambda: pushout_suite(run),
    }

    start = time.perf_counter()
    report = runners[Suite(suite)]()
    logger.info(
        f"Suite {suite} finished in {time.perf_counter() - start:.1f}s, "
        f"passed={report.passed}."
    )
    return report


from src.dg.differential import (
    check_filtration,
    d_generator,
    differential,
    in_filtration,
)
from src.dg.element import Element
from src.dg.labels import (
    MU,
    UNIT,
    MuCorolla,
    Nu,
    generators,
    label_from_json,
    label_to_json,
    level_generators,
    parse_label,
)
from src.dg.morphism import (
    OperadMorphism,
    identity_morphism,
    is_dg_morphism,
    psi_ch,
    resolution_map,
)
from src.dg.normalize import (
    ambient_operad,
    compose,
    generator,
    identity,
    parse_element,
)
from src.dg.sampling import label_pool, random_composite, random_pair
from src.dg.subsets import boundaries, complement, shift, split, subset_circ
from src.errors import (
    AmbientError,
    ArityError,
    CanonicalFormError,
    DegreeError,
    FiltrationError,
    ParseError,
    TruncationError,
)
from src.reports import RunConfig
from src.tree import parse_tree
from src.utils import Ambient, get_fixtures_dir, sign
from src.verification import d_squared_suite, derivation_suite
from hypothesis import given, settings, strategies as st
from collections import Counter
import json
import random
import re
import pytest

### TEST PARAMS ###

UA = Ambient.UINF_UA
A = Ambient.UINF_A
AMBIENTS = [UA, A]
SWEEP_WEIGHT = 6


def read_hand_values():
    path = get_fixtures_dir() / "d" / "hand_values.txt"
    rows = []
    for line in path.read_text().splitlines():
        if line and not line.startswith("#"):
            rows.append(tuple(line.split("\t")))
    return rows


def signed_terms(text: str) -> Counter:
    """
    The terms of an operadic sum with their signs, ignoring term order.
    """
    pieces = re.split(r" ([+-]) ", text.strip())
    first = pieces[0]
    terms = [("-", first[1:]) if first.startswith("-") else ("+", first)]
    terms += zip(pieces[1::2], pieces[2::2])
    return Counter(terms)


def canonical(text: str, ambient: Ambient = UA) -> Element:
    """
    A single canonical tree in bracket form, coefficient one.
    """
    return Element.basis(parse_tree(text, parse_label), ambient)


@pytest.fixture
def small_run() -> RunConfig:
    """
    Sweep settings small enough for the unit tests.
    """
    return RunConfig(
        seed=7,
        random_composites=40,
        random_pairs=40,
        random_triples=40,
    )


### LABELS ###


def test_nu_grading():
    nu = Nu(3, (1, 3))

    assert nu.arity == 1
    assert nu.degree == 3
    assert nu.level == 2
    assert str(nu) == "nu(3,{1,3})"
    assert Nu.of(3, {3, 1}) == nu


@pytest.mark.parametrize("n, S", [(0, (1,)), (2, ()), (2, (3,)), (3, (2, 1))])
def test_nu_rejects_bad_subsets(n: int, S: tuple):
    with pytest.raises(ArityError):
        Nu(n, S)


def test_parse_label():
    assert parse_label("mu") == MU
    assert parse_label("mu^2") == MuCorolla(3)
    assert parse_label("u") == UNIT
    assert parse_label("nu(2, {1})") == Nu(2, (1,))
    for text in ("x", "nu(2,{3})", "mu^0"):
        with pytest.raises(ParseError):
            parse_label(text)


def test_label_json():
    for label in (MU, UNIT, Nu(4, (2, 3))):
        assert label_from_json(label_to_json(label)) == label
    assert label_to_json(Nu(2, (1,))) == {"kind": "nu", "n": 2, "S": [1]}
    with pytest.raises(ParseError):
        label_from_json({"kind": "lambda"})


def test_generator_lists():
    assert [str(nu) for nu in generators(4)] == [
        "nu(1,{1})",
        "nu(2,{1})",
        "nu(2,{2})",
        "nu(2,{1,2})",
        "nu(3,{1})",
        "nu(3,{2})",
        "nu(3,{3})",
    ]
    assert len(list(level_generators(2, 3))) == 4
    assert all(nu.level == 2 for nu in level_generators(2, 5))


### SUBSETS ###


def test_subset_circ_interior_slot():
    assert subset_circ([2], 3, 2, [1], 2) == (2, (2, 3))


def test_subset_circ_first_slot():
    # the slot lies below every element of S1, so r = 1
    assert subset_circ([3], 3, 1, [2], 2) == (1, (2, 4))


def test_subset_circ_slot_out_of_range():
    with pytest.raises(ArityError):
        subset_circ([1, 2], 2, 1, [1], 1)
    with pytest.raises(ArityError):
        subset_circ([1], 3, 3, [1], 1)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_subset_circ_cardinality(data):
    p = data.draw(st.integers(min_value=1, max_value=7))
    q = data.draw(st.integers(min_value=1, max_value=7))
    S1 = data.draw(st.sets(st.integers(1, p), max_size=p - 1))
    S2 = data.draw(st.sets(st.integers(1, q)))
    i = data.draw(st.integers(1, p - len(S1)))
    _, result = subset_circ(S1, p, i, S2, q)

    assert len(result) == len(S1) + len(S2)
    assert set(result) <= set(range(1, p + q))
    assert list(result) == sorted(result)


def test_subset_helpers():
    assert shift([1, 3], 2) == (3, 5)
    assert complement([2], 4) == (1, 3, 4)
    assert boundaries((2, 5), 6) == (0, 2, 5, 7)
    assert split((2, 5, 6), 2) == (frozenset({2}), frozenset({5, 6}))


### NORMAL FORM AND COMPOSITION ###


@pytest.mark.parametrize("ambient", AMBIENTS)
def test_mu_over_mu_flattens(ambient: Ambient):
    mu = generator(MU, ambient)

    assert compose(mu, 1, mu) == generator(MuCorolla(3), ambient)
    assert compose(mu, 2, mu) == compose(mu, 1, mu)
    assert str(compose(mu, 1, mu)) == "mu^2"


def test_unit_relations():
    mu = generator(MU, UA)
    u = generator(UNIT, UA)

    assert compose(mu, 1, u) == identity(UA)
    assert compose(mu, 2, u) == identity(UA)
    assert str(identity(UA)) == "id"
    with pytest.raises(AmbientError):
        generator(UNIT, A)


def test_nu_composed_with_unit_is_padded():
    value = compose(generator(Nu(2, (1,)), UA), 1, generator(UNIT, UA))

    assert value == canonical("id[nu(2,{1})[u[]]]")
    assert str(value) == "nu(2,{1}) o_1 u"


def test_generator_canonical_forms():
    assert generator(Nu(1, (1,)), UA) == canonical("id[nu(1,{1})[]]")
    assert generator(Nu(3, (3,)), UA) == canonical("id[nu(3,{3})[*,*]]")
    assert generator(MU, A) == canonical("mu[*,*]", A)


@pytest.mark.parametrize("ambient", AMBIENTS)
def test_identity_is_two_sided_unit(ambient: Ambient):
    x = compose(generator(Nu(3, (2,)), ambient), 1, generator(MU, ambient))

    assert compose(identity(ambient), 1, x) == x
    for i in range(1, x.arity + 1):
        assert compose(x, i, identity(ambient)) == x


def test_exchange_sign_on_odd_elements():
    mu = generator(MU, UA)
    b = generator(Nu(2, (1,)), UA)
    c = generator(Nu(2, (2,)), UA)
    both = canonical("mu[nu(2,{2})[*],nu(2,{1})[*]]")

    left = compose(compose(mu, 2, b), 1, c)
    right = compose(compose(mu, 1, c), 2, b)

    assert left == -both
    assert right == both
    assert left == right.scale(sign(b.degree * c.degree))


def test_compose_errors():
    mu = generator(MU, UA)

    with pytest.raises(ArityError):
        compose(mu, 3, mu)
    with pytest.raises(AmbientError):
        compose(mu, 1, generator(MU, A))


def test_normal_form_is_idempotent():
    rng = random.Random(3)
    pool = label_pool(UA, 5)
    operad = ambient_operad(UA)
    for _ in range(50):
        x = random_composite(rng, UA, pool)
        for tree in x.trees():
            assert operad.normalize(tree) == tree


### ELEMENTS ###


def test_element_arithmetic():
    x = generator(Nu(2, (1,)), UA)
    y = d_generator(Nu(2, (1,)), UA)

    assert (x - x).is_zero()
    assert x - x == 0
    assert (3 * x).coefficient(x.trees()[0]) == 3
    assert -(-x) == x
    assert (x + y).degrees() == [0, 1]
    assert set((x + y).by_degree()) == {0, 1}
    with pytest.raises(ArityError):
        (x + y).degree
    with pytest.raises(ArityError):
        x + generator(MU, UA)
    with pytest.raises(AmbientError):
        x + generator(Nu(2, (1,)), A)


def test_element_json():
    x = d_generator(Nu(3, (1,)), UA)
    data = x.to_json()

    assert isinstance(data, list)
    assert list(data[0]) == ["coeff", "tree"]
    assert data[0]["coeff"] == "1"
    assert Element.from_json(data, UA) == x
    assert parse_element(x.to_json_string(), UA) == x
    assert Element.from_json([], UA, arity=2) == Element.zero(2, UA)


def test_element_json_errors():
    unit = '[{"coeff":"1","tree":{"label":{"kind":"u"},"children":[]}}]'
    raw_nu = (
        '[{"coeff":"1","tree":{"label":{"kind":"nu","n":2,"S":[1]},'
        '"children":["*"]}}]'
    )

    with pytest.raises(AmbientError):
        parse_element(unit, A)
    with pytest.raises(CanonicalFormError):
        parse_element(raw_nu, UA)
    with pytest.raises(ParseError):
        parse_element('[{"arity": 1}]', UA)
    with pytest.raises(ParseError):
        Element.from_json({"terms": []}, UA)
    with pytest.raises(ParseError):
        Element.from_json([], UA)


def test_parse_element():
    assert parse_element("mu[*,mu[*,*]]", UA) == generator(MuCorolla(3), UA)
    assert parse_element("mu[*,u[]]", UA) == identity(UA)
    assert parse_element("2*mu[*,*] - mu[*,*]", UA) == generator(MU, UA)
    assert parse_element("|", UA) == identity(UA)
    for text in ("mu[*,*] +", "mu[*,*] + - mu[*,*]", "mu[*"):
        with pytest.raises(ParseError):
            parse_element(text, UA)
    with pytest.raises(AmbientError):
        parse_element("mu[*,u[]]", A)
    with pytest.raises(ArityError):
        parse_element("mu[*]", UA)


### DIFFERENTIAL ###


@pytest.mark.parametrize("label, expected", read_hand_values())
def test_d_hand_values(label: str, expected: str):
    value = str(d_generator(parse_label(label), UA))

    assert signed_terms(value) == signed_terms(expected)


def test_hand_values_cover_weight_six():
    labels = {parse_label(label) for label, _ in read_hand_values()}

    assert set(generators(6)) <= labels


def test_d_json_matches_fixture():
    golden = get_fixtures_dir() / "d" / "nu_4_23.json"
    value = d_generator(Nu(4, (2, 3)), UA)

    assert value.to_json() == json.loads(golden.read_text())
    assert Element.from_json(value.to_json(), UA) == value


def test_d_generator_returns_a_fresh_element():
    label = Nu(3, (1,))
    first = d_generator(label, UA)
    first.accumulate(d_generator(label, UA))

    assert first == 2 * d_generator(label, UA)
    assert differential(generator(label, UA)) == d_generator(label, UA)


def test_morphism_images_are_not_shared():
    phi = identity_morphism(UA)
    value = phi.image(Nu(2, (1,)))
    value.accumulate(value.copy())

    assert phi.image(Nu(2, (1,))) == generator(Nu(2, (1,)), UA)
    assert phi(generator(Nu(2, (1,)), UA)) == generator(Nu(2, (1,)), UA)


def test_d_nu_two_in_ass_ambient():
    assert str(d_generator(Nu(2, (1,)), A)) == "mu o_1 nu(1,{1}) - id"


def test_d_of_unit_needs_the_unit():
    with pytest.raises(AmbientError):
        d_generator(UNIT, A)


def test_differential_extends_d_generator():
    for nu in generators(5):
        assert differential(generator(nu, UA)) == d_generator(nu, UA)
    assert differential(generator(MuCorolla(4), UA)) == 0
    assert differential(identity(UA)) == 0


@pytest.mark.parametrize("ambient", AMBIENTS)
def test_d_squared_on_generators(ambient: Ambient):
    for nu in generators(SWEEP_WEIGHT):
        boundary = d_generator(nu, ambient)
        assert differential(boundary) == 0, str(nu)
        assert boundary.arity == nu.arity
        if boundary:
            assert boundary.degree == nu.degree - 1


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.sampled_from(AMBIENTS))
def test_derivation_law(seed: int, ambient: Ambient):
    rng = random.Random(seed)
    x, i, y = random_pair(rng, ambient, label_pool(ambient, 5))

    left = differential(compose(x, i, y))
    right = compose(differential(x), i, y) + compose(
        x, i, differential(y)
    ).scale(sign(x.degree))

    assert left == right


@pytest.mark.parametrize("ambient", AMBIENTS)
def test_d_squared_suite(small_run: RunConfig, ambient: Ambient):
    run = small_run.model_copy(update={"ambient": ambient})
    report = d_squared_suite(run, 5)

    assert report.passed, [c for c in report.checks if not c.passed]
    assert [check.name for check in report.checks] == [
        "d2_generators",
        "d2_composites",
        "degree_drop",
        "subset_circ_cardinality",
        "presentation",
    ]


@pytest.mark.parametrize("ambient", AMBIENTS)
def test_derivation_suite(small_run: RunConfig, ambient: Ambient):
    run = small_run.model_copy(update={"ambient": ambient})
    report = derivation_suite(run, 5)

    assert report.passed, [c for c in report.checks if not c.passed]


def test_filtration():
    nu = generator(Nu(1, (1,)), UA)

    assert in_filtration(generator(MU, UA), 0)
    assert in_filtration(generator(UNIT, UA), 0)
    assert not in_filtration(nu, 0)
    assert in_filtration(nu, 1)
    with pytest.raises(FiltrationError):
        check_filtration(generator(Nu(3, (1, 2)), UA), 1)


### MORPHISMS ###


def test_resolution_map_values():
    phi = resolution_map()

    assert phi.image(Nu(1, (1,))) == generator(UNIT, UA)
    assert phi.image(Nu(2, (1,))) == 0
    assert phi(d_generator(Nu(2, (1,)), UA)) == 0
    assert phi(generator(MU, UA)) == generator(MU, UA)


@pytest.mark.parametrize("ambient", AMBIENTS)
def test_resolution_map_commutes_with_d(ambient: Ambient):
    check = is_dg_morphism(resolution_map(ambient), generators(5))

    assert check.passed, check.failures
    assert check.instances == len(list(generators(5)))


def test_psi_commutes_with_d():
    psi = psi_ch()
    x = compose(generator(Nu(3, (2,)), A), 2, generator(Nu(2, (1,)), A))

    assert is_dg_morphism(psi, generators(5)).passed
    assert psi(x).ambient == UA
    assert str(psi(x)) == str(x)


def test_identity_morphism():
    one = identity_morphism(UA)
    x = compose(generator(Nu(3, (2,)), UA), 1, generator(UNIT, UA))

    assert one(x) == x
    assert one(identity(UA)) == identity(UA)


def test_morphism_value_checks():
    wrong_arity = OperadMorphism.from_table(
        {Nu(1, (1,)): generator(Nu(2, (1,)), UA)}, UA, UA
    )
    partial = OperadMorphism.from_table(
        {MU: generator(MU, UA)}, UA, UA, fallback_identity=False
    )

    with pytest.raises(DegreeError):
        wrong_arity.image(Nu(1, (1,)))
    with pytest.raises(TruncationError):
        partial.image(Nu(2, (1,)))
    with pytest.raises(AmbientError):
        partial(generator(MU, A))

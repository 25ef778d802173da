from src.deformation import (
    RelativeDerivation,
    augmentation,
    build_sdr,
    check_homotopy,
    collapse_to_uass,
    deform,
    gordo_h,
    homotopy_residual,
    level_base,
)
from src.dg.differential import differential
from src.dg.element import Element
from src.dg.labels import MU, UNIT, Nu
from src.dg.morphism import (
    OperadMorphism,
    base_labels,
    identity_morphism,
    resolution_map,
)
from src.dg.normalize import compose, generator
from src.errors import (
    DegreeError,
    FiltrationError,
    HypothesisError,
    TruncationError,
)
from src.utils import Ambient, get_fixtures_dir
import json
import pytest

### TEST PARAMS ###

UA = Ambient.UINF_UA
NU_1 = Nu(1, (1,))


@pytest.fixture
def one() -> OperadMorphism:
    """
    The identity of u-infinity uA.
    """
    return identity_morphism(UA)


@pytest.fixture
def level_one(one: OperadMorphism):
    """
    (f, h) deforming the identity along the level-one homotopy.
    """
    return deform(
        one, lambda nu: gordo_h(nu, 1), lambda nu: nu.n, level_base(1)
    )


def zero_hbar(label) -> Element:
    return Element.zero(label.arity, UA)


### THE HOMOTOPY ON GENERATORS ###


def test_gordo_h_values():
    assert str(gordo_h(NU_1)) == "-nu(2,{2}) o_1 u"
    assert str(gordo_h(Nu(2, (2,)))) == "nu(3,{3}) o_2 u"
    assert gordo_h(Nu(2, (1,))).degrees() == [2]


def test_gordo_h_rejects_other_levels():
    with pytest.raises(FiltrationError):
        gordo_h(Nu(2, (1, 2)), 1)
    with pytest.raises(FiltrationError):
        gordo_h(NU_1, 2)


def test_boundary_of_first_homotopy():
    expected = generator(UNIT, UA) - generator(NU_1, UA)

    assert differential(gordo_h(NU_1)) == expected


### DEFORMING A MORPHISM ###


def test_deformed_values(level_one):
    f, _ = level_one

    assert f.image(NU_1) == generator(UNIT, UA)
    assert f.image(Nu(2, (1,))) == 0
    assert f.image(Nu(2, (2,))) == 0
    assert f.image(MU) == generator(MU, UA)


def test_homotopy_equation_on_generators(level_one, one: OperadMorphism):
    f, h = level_one
    for nu in (NU_1, Nu(2, (1,)), Nu(2, (2,)), Nu(3, (2,))):
        residual = homotopy_residual(f, one, h, generator(nu, UA))
        assert residual.is_zero(), f"{nu}: {residual}"


def test_relative_derivation_law(level_one):
    f, h = level_one
    x = generator(Nu(2, (1,)), UA)
    y = generator(NU_1, UA)

    expected = compose(h.on_label(Nu(2, (1,))), 1, y) - compose(
        f.image(Nu(2, (1,))), 1, h.on_label(NU_1)
    )
    assert h(compose(x, 1, y)) == expected
    assert h(compose(x, 1, y)) == compose(gordo_h(Nu(2, (1,))), 1, y)


def test_relative_derivation_vanishes_on_base(level_one):
    _, h = level_one

    assert h(generator(MU, UA)) == 0
    assert h(generator(UNIT, UA)) == 0


def test_zero_hbar_keeps_g(one: OperadMorphism):
    f, h = deform(one, zero_hbar, lambda nu: nu.n)

    for nu in (NU_1, Nu(2, (1,)), Nu(3, (2,))):
        assert f.image(nu) == generator(nu, UA)
    assert h(generator(Nu(3, (2,)), UA)) == 0


def test_deform_needs_decreasing_rank(one: OperadMorphism):
    f, _ = deform(one, gordo_h, lambda nu: 0)

    with pytest.raises(FiltrationError):
        f.image(Nu(2, (1,)))


def test_homotopy_control_fails_without_deformation(one: OperadMorphism):
    h = RelativeDerivation(one, one, gordo_h)
    checks = check_homotopy(one, one, h, [NU_1])

    assert not checks[0].passed
    assert checks[0].instances == 1
    assert checks[1].instances == 0


### HYPOTHESES ###


def test_f_and_g_must_agree_on_base(one: OperadMorphism):
    doubled = OperadMorphism.from_table(
        {MU: generator(MU, UA).scale(2)}, UA, UA
    )

    with pytest.raises(HypothesisError):
        RelativeDerivation(doubled, one, gordo_h)


def test_hbar_degree_is_checked(one: OperadMorphism):
    h = RelativeDerivation(one, one, lambda nu: generator(nu, UA))

    with pytest.raises(DegreeError):
        h.on_label(NU_1)


def test_hbar_must_be_defined(one: OperadMorphism):
    h = RelativeDerivation(one, one, lambda nu: None)

    with pytest.raises(TruncationError):
        h(generator(NU_1, UA))


### RETRACTIONS ###


def test_first_retraction():
    sdr = build_sdr(1, 3, samples=20, seed=5)
    values = {row.generator: row.f_value for row in sdr.rows}

    assert len(sdr.rows) == 6
    assert sdr.passed, [c for c in sdr.checks if not c.passed]
    assert values["nu(1,{1})"] == "u"
    assert values["nu(2,{1})"] == "0"
    assert values["nu(2,{2})"] == "0"


def test_first_retraction_matches_fixture():
    golden = get_fixtures_dir() / "sdr" / "m1_n3.json"
    sdr = build_sdr(1, 3, samples=0)

    assert [row.model_dump() for row in sdr.rows] == json.loads(
        golden.read_text()
    )


def test_first_retraction_to_arity_four():
    sdr = build_sdr(1, 4, samples=20, seed=3)
    values = {row.generator: row.f_value for row in sdr.rows}

    assert sdr.passed, [c for c in sdr.checks if not c.passed]
    assert len(values) == 10
    assert values.pop("nu(1,{1})") == "u"
    assert set(values.values()) == {"0"}
    assert all(row.commutes_with_d for row in sdr.rows)


def test_second_retraction():
    sdr = build_sdr(2, 3, samples=10)

    assert [row.generator for row in sdr.rows] == [
        "nu(2,{1,2})",
        "nu(3,{1,2})",
        "nu(3,{1,3})",
        "nu(3,{2,3})",
    ]
    assert sdr.passed, [c for c in sdr.checks if not c.passed]


def test_retraction_level_must_be_positive():
    with pytest.raises(FiltrationError):
        build_sdr(0, 3)


def test_augmentation():
    phi = resolution_map()
    for label in (MU, UNIT, NU_1, Nu(2, (1,)), Nu(3, (1, 2))):
        assert augmentation(label) == phi.image(label)
    assert augmentation(NU_1) == generator(UNIT, UA)
    assert augmentation(Nu(2, (2,))) == 0


def test_collapse_to_uass():
    check = collapse_to_uass(2, 3)

    assert check.passed, check.failures
    assert check.instances > 0


@pytest.mark.slow
@pytest.mark.parametrize("m, rows", [(1, 21), (2, 35), (3, 35)])
def test_retractions_up_to_arity_six(m: int, rows: int):
    sdr = build_sdr(m, 6, samples=20, seed=m)

    assert len(sdr.rows) == rows
    assert sdr.passed, [c for c in sdr.checks if not c.passed]
    assert all(row.in_lower_level for row in sdr.rows)


@pytest.mark.slow
def test_collapse_to_uass_from_level_three():
    check = collapse_to_uass(3, 6)

    assert check.passed, check.failures
    assert check.instances == len(base_labels(UA)) + 21 + 35 + 35

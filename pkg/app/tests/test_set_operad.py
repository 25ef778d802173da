from src.errors import (
    AmbientError,
    ArityError,
    CanonicalFormError,
    CarrierTooLarge,
    HypothesisError,
    ParseError,
)
from src.set_operad import (
    IDENTITY,
    MU,
    UNIT,
    AssOperad,
    CoproductOperad,
    CorollaWithCorks,
    FreeOperad,
    Generator,
    MuCorolla,
    ObjectVariant,
    Slot,
    UinfAObjects,
    UnitalAssOperad,
    UObjects,
    ass_normal_form,
    check_axioms,
    coproduct_compose,
    coproduct_cross_check,
    monoid_census,
    parse_corolla,
    unit_transfer_check,
)
from src.set_operad.corks import white_unit
from src.set_operad.endomorphism import (
    FiniteEndOperad,
    associative_tables,
    binary,
    constant,
    replay_unit_transfer,
)
from src.tree import LEAF, Tree, Vertex, corolla, graft, to_text
import pytest

### TEST PARAMS ###

ELEMENT_BOUND = 60
A = Generator("a", 2)
B = Generator("b", 2)


### ASSOCIATIVE OPERADS ###


def test_ass_composition_is_arity_arithmetic():
    ass = AssOperad()

    assert ass.compose(MU, 1, MU) == MuCorolla(3)
    assert ass.compose(MU, 2, MU) == MuCorolla(3)
    assert ass.compose(MuCorolla(3), 2, MU) == MuCorolla(4)
    assert ass.compose(MU, 1, IDENTITY) == MU
    assert list(ass.elements(0)) == []


def test_unit_only_in_uass():
    uass = UnitalAssOperad()

    assert uass.compose(MU, 1, UNIT) == IDENTITY
    assert uass.compose(MU, 2, UNIT) == IDENTITY
    assert uass.compose(MuCorolla(3), 3, UNIT) == MU
    assert list(uass.elements(0)) == [UNIT]
    with pytest.raises(AmbientError):
        AssOperad().compose(MU, 2, UNIT)


def test_slot_out_of_range():
    with pytest.raises(ArityError):
        AssOperad().compose(MU, 3, MU)
    with pytest.raises(ArityError):
        MuCorolla(1)


def test_ass_normal_form():
    assert ass_normal_form(graft(corolla(2), 1, corolla(2))) == MuCorolla(3)
    assert ass_normal_form(graft(corolla(2), 2, corolla(2))) == MuCorolla(3)
    assert ass_normal_form(corolla(4)) == MuCorolla(4)
    with pytest.raises(ArityError):
        ass_normal_form(graft(corolla(2), 1, corolla(1)))


### COPRODUCTS ###


@pytest.fixture
def coproduct() -> CoproductOperad:
    """
    uAss with two free binary generators a and b.
    """
    return CoproductOperad(UnitalAssOperad(), [A, B])


def test_coproduct_inclusion_is_functorial(coproduct: CoproductOperad):
    mu = coproduct.include(MU)

    assert coproduct_compose(coproduct, mu, 1, mu) == coproduct.include(
        MuCorolla(3)
    )


def test_coproduct_pads_generators(coproduct: CoproductOperad):
    a, b = coproduct.generator(A), coproduct.generator(B)
    value = coproduct_compose(coproduct, a, 1, b)

    assert to_text(a) == "id[a[*,*]]"
    assert to_text(value) == "id[a[id[b[*,*]],*]]"
    assert coproduct.normalize(value) == value


def test_coproduct_refuses_raw_input(coproduct: CoproductOperad):
    raw = Tree(Vertex((LEAF, LEAF), A))

    with pytest.raises(CanonicalFormError):
        coproduct_compose(coproduct, raw, 1, coproduct.generator(B))


@pytest.mark.parametrize(
    "operad, max_arity",
    [
        (AssOperad(4), 3),
        (UnitalAssOperad(4), 3),
        (UinfAObjects(2), 3),
        (UObjects(2), 3),
        (FreeOperad([Generator("a", 2), Generator("e", 0)], 2), 2),
        (FiniteEndOperad(2), 2),
    ],
)
def test_axioms_hold(operad, max_arity: int):
    report = check_axioms(operad, max_arity, ELEMENT_BOUND)

    assert report.passed, [c for c in report.checks if not c.passed]
    assert not report.vacuous
    assert all(check.instances > 0 for check in report.checks)


def test_axioms_report_sampling():
    report = check_axioms(FiniteEndOperad(3), 2, 10, seed=1)

    assert report.passed
    assert not report.exhaustive


### CORKS ###


def test_parse_corolla():
    x = parse_corolla("mu^2(id,u,u)")

    assert x.slots == (Slot.LEAF, Slot.CORK, Slot.CORK)
    assert x.arity == 1
    assert x.cork_count == 2
    assert x.variant == ObjectVariant.UINF_A
    assert str(x) == "mu^2(id,u,u)"
    assert parse_corolla("mu(u',id)").variant == ObjectVariant.U
    assert str(parse_corolla("|")) == "|"


@pytest.mark.parametrize("text", ["mu(id)", "mu(id,x)", "nu(id,id)"])
def test_parse_corolla_errors(text: str):
    with pytest.raises(ParseError):
        parse_corolla(text)


def test_white_unit_is_never_a_cork():
    with pytest.raises(ArityError):
        CorollaWithCorks((Slot.LEAF, Slot.WHITE), ObjectVariant.U)
    with pytest.raises(ArityError):
        CorollaWithCorks((Slot.WHITE,), ObjectVariant.UINF_A)


def test_uinfA_objects_cork_replaces_leaf():
    operad = UinfAObjects()
    mu = parse_corolla("mu(id,id)")
    u = parse_corolla("u")

    assert str(operad.compose(mu, 1, u)) == "mu(u,id)"
    assert str(operad.compose(mu, 2, u)) == "mu(id,u)"
    assert operad.compose(parse_corolla("mu(u,id)"), 1, u).arity == 0
    assert operad.compose(mu, 2, mu) == parse_corolla("mu^2(id,id,id)")


def test_U_objects_unit_removes_slot():
    operad = UObjects()
    mu = parse_corolla("mu(id,id)", ObjectVariant.U)
    u = white_unit()

    assert operad.compose(mu, 1, u) == operad.identity
    assert operad.compose(mu, 2, u) == operad.identity
    assert str(operad.compose(parse_corolla("mu(id,u')"), 1, u)) == "u'"
    assert str(operad.compose(parse_corolla("mu(u',id)"), 1, u)) == "u'"
    assert operad.compose(operad.identity, 1, u) == u
    assert str(operad.compose(mu, 1, parse_corolla("u'"))) == "mu(u',id)"


def test_worked_compositions():
    uinfA, U = UinfAObjects(), UObjects()

    assert uinfA.compose(
        parse_corolla("mu^2(id,u,id)"), 2, parse_corolla("u")
    ) == parse_corolla("mu^2(id,u,u)")
    assert U.compose(
        parse_corolla("mu^4(id,u',u',id,id)"), 2, white_unit()
    ) == parse_corolla("mu^3(id,u',u',id)")


@pytest.mark.parametrize("variant", list(ObjectVariant))
def test_corolla_rules_match_coproduct(variant: ObjectVariant):
    check = coproduct_cross_check(variant, 3, 2)

    assert check.passed, check.failures[:3]
    assert check.instances > 0


def test_objects_component_sizes():
    operad = UinfAObjects(3)
    count = sum(len(list(operad.elements(n))) for n in range(5))

    assert count == 124
    assert [str(x) for x in operad.elements(0)] == [
        "u",
        "mu(u,u)",
        "mu^2(u,u,u)",
    ]
    assert list(UObjects(1).elements(0))[0] == white_unit()


### END(X) AND THE CENSUS ###


@pytest.mark.parametrize(
    "size, associative, unital",
    [(1, 1, 1), (2, 8, 4), (3, 113, 33)],
)
def test_monoid_census(size: int, associative: int, unital: int):
    census = monoid_census(size)

    assert census.associative_count == associative
    assert census.unital_count == unital
    assert census.max_units_per_op == 1
    assert census.all_operations_checked
    assert census.passed


def test_census_bounds():
    with pytest.raises(CarrierTooLarge):
        monoid_census(5)
    with pytest.raises(CarrierTooLarge):
        monoid_census(0)


def test_associative_tables():
    tables = list(associative_tables(2))

    assert len(tables) == 8
    assert [[0, 0], [0, 0]] in tables
    assert [[0, 1], [1, 0]] in tables
    assert [[1, 0], [0, 0]] not in tables


def test_end_composition():
    operad = FiniteEndOperad(2)
    xor = binary(2, [[0, 1], [1, 0]])

    assert operad.compose(xor, 1, constant(2, 0)) == operad.identity
    assert operad.compose(xor, 2, constant(2, 1)).table == (1, 0)
    assert operad.compose(xor, 1, xor).arity == 3
    with pytest.raises(ArityError):
        FiniteEndOperad(0)


def test_unit_transfer():
    operad = FiniteEndOperad(2)
    xor = binary(2, [[0, 1], [1, 0]])
    zero = constant(2, 0)

    assert unit_transfer_check(operad, xor, zero, zero)
    replay = replay_unit_transfer(operad, xor, zero, zero)
    assert replay.first_chain == "f0[0]"
    assert replay.exchange_holds


def test_unit_transfer_hypotheses():
    operad = FiniteEndOperad(2)
    xor = binary(2, [[0, 1], [1, 0]])

    with pytest.raises(HypothesisError):
        unit_transfer_check(operad, xor, constant(2, 0), constant(2, 1))
    with pytest.raises(ArityError):
        unit_transfer_check(
            operad, operad.identity, constant(2, 0), constant(2, 0)
        )

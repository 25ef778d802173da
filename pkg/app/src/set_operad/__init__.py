"""
Operads in Set.
"""
from src.set_operad.associative import (
    IDENTITY,
    MU,
    UNIT,
    AssOperad,
    Identity,
    MuCorolla,
    Unit,
    UnitalAssOperad,
    ass_normal_form,
    associative_label,
    uass_compose,
)
from src.set_operad.base import SetOperad
from src.set_operad.coproduct import (
    CoproductOperad,
    Cork,
    FreeOperad,
    Generator,
    coproduct_compose,
)
from src.set_operad.corks import (
    CorollaWithCorks,
    ObjectVariant,
    Slot,
    UinfAObjects,
    UObjects,
    U_objects_compose,
    coproduct_cross_check,
    parse_corolla,
    uinfA_objects_compose,
)
from src.set_operad.endomorphism import (
    FiniteEndOperad,
    monoid_census,
    unit_transfer_check,
)
from src.set_operad.harness import check_axioms

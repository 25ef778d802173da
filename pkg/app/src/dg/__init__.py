"""
Chain-level u-infinity operads over the integers.
"""
from src.dg.differential import d_generator, differential, in_filtration
from src.dg.element import Element, element_to_text, tree_to_operadic
from src.dg.labels import GradedLabel, Nu, parse_label
from src.dg.morphism import (
    OperadMorphism,
    evaluate_morphism,
    identity_morphism,
    is_dg_morphism,
    psi_ch,
    resolution_map,
)
from src.dg.normalize import compose, generator, identity, normalize
from src.dg.subsets import subset_circ

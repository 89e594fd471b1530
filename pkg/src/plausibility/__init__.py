"""Plausibility models for multi-agent belief: bisimulation, model checking and translations."""
from .bisim import (BisimReport, EquivRelation, bisimilar, brute_force_largest, check_autobisimulation,
                    contract, derived_relation, distinguishing_formula, equivalence_closure,
                    largest_autobisimulation, normal_relation, normalize)
from .formula import (And, Atom, Bot, CondBelief, DegBelief, Formula, Implies, Know, Not, Or, SafeBelief,
                      Top, classify, modal_depth, parse, to_text)
from .model import (PlausibilityModel, Violation, disjoint_union, dump_model, epistemic_class,
                    find_isomorphism, load_model, min_set, set_leq, validate)
from .semantics import (Evaluator, LayerDecomposition, demey_counting_formula, extension, satisfies,
                        spheres, valid_on_model)
from .translate import (cond_to_degrees, cond_to_safe, expand_knowledge, global_degrees, layer_index)

__all__ = [
    "And", "Atom", "BisimReport", "Bot", "CondBelief", "DegBelief", "EquivRelation", "Evaluator",
    "Formula", "Implies", "Know", "LayerDecomposition", "Not", "Or", "PlausibilityModel", "SafeBelief",
    "Top", "Violation", "bisimilar", "brute_force_largest", "check_autobisimulation", "classify",
    "cond_to_degrees", "cond_to_safe", "contract", "demey_counting_formula", "derived_relation",
    "disjoint_union", "distinguishing_formula", "dump_model", "epistemic_class", "equivalence_closure",
    "expand_knowledge", "extension", "find_isomorphism", "global_degrees", "largest_autobisimulation",
    "layer_index", "load_model", "min_set", "modal_depth", "normal_relation", "normalize", "parse",
    "satisfies", "set_leq", "spheres", "to_text", "valid_on_model", "validate",
]

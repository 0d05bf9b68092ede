"""Partially ordered strict semifields and their order-theoretic machinery."""

from .analysis import (EQUAL_ONE, GEQ_ONE, INCONCLUSIVE, LEQ_ONE, archimedean_witness,
                       check_add_compatibility, check_mult_compatibility, check_semifield_axioms,
                       direct_order, evaluate_to_real, geometric_order_decide, inf_sum_geom_check,
                       inversion_antimonotone_check, pair_counterexample_suite)
from .base import Order, SemifieldInstance
from .instances import Pairs, QPlus, RPlusApprox, Tropical
from .posscalars import (PositiveScalars, PosScalar, dominates, pos_scalar, pos_scalar_leq, ps_add,
                         ps_inv, ps_mul, sup_add_check, sup_bounded, value_leq,
                         witness_for_value)
from .sequences import (DECREASING, INCREASING, MonotoneSequence, constant, explicit,
                        inf_decreasing, seq_add, seq_inv, seq_mul, seq_scale, seq_shift,
                        sup_increasing)

INSTANCES = {
    "qplus": QPlus,
    "rplus": RPlusApprox,
    "tropical": Tropical,
    "pairs": Pairs,
    "posscalars": PositiveScalars,
}


def instance(name: str, **kwargs) -> SemifieldInstance:
    try:
        return INSTANCES[name](**kwargs)
    except KeyError:
        raise ValueError(f"unknown semifield instance {name!r}") from None


__all__ = [
    "EQUAL_ONE", "GEQ_ONE", "INCONCLUSIVE", "LEQ_ONE", "INSTANCES", "instance",
    "Order", "SemifieldInstance", "Pairs", "QPlus", "RPlusApprox", "Tropical",
    "PositiveScalars", "PosScalar", "dominates", "pos_scalar", "pos_scalar_leq", "ps_add",
    "ps_inv", "ps_mul", "sup_add_check", "sup_bounded", "value_leq", "witness_for_value",
    "DECREASING", "INCREASING", "MonotoneSequence", "constant", "explicit", "inf_decreasing",
    "seq_add", "seq_inv", "seq_mul", "seq_scale", "seq_shift", "sup_increasing",
    "archimedean_witness", "check_add_compatibility", "check_mult_compatibility",
    "check_semifield_axioms", "direct_order", "evaluate_to_real", "geometric_order_decide",
    "inf_sum_geom_check", "inversion_antimonotone_check", "pair_counterexample_suite",
]

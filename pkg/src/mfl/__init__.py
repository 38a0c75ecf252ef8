"""Exact combinatorics and linear algebra of the T-face contractions and flips
of the pseudostable moduli spaces M^ps_{g,n}."""
from .boundary import (EMPTY, IRR, IRR_TYPE, BridgeClass, HyperbolicPair, PairType,
                       TypeSet, adm_closure, canonicalize, compare_typesets,
                       divisorial_part, enumerate_classes, full_typeset, is_admissible,
                       minimal_subsets, parse_typeset)
from .criteria import (TriState, Verdict, flip_verdict, full_report, hk_model,
                       is_fT_small, is_fTplus_iso, picard_number_report,
                       q_factorial_MT, q_factorial_MTplus, q_gorenstein_MT,
                       q_gorenstein_MTplus, tplus_compatible)
from .divisors import (BAR, PS, ULCI, DivisorClass, named_class, parse_divisor,
                       presentation, pullback_upsilon, space_t, space_tplus)
from .errors import *  # noqa: F401,F403
from .faces import face_lattice, face_of, independence_report, t_compatible
from .pairing import (pair_bridge, pair_bridge_upstairs, pair_tacnodal, parse_curve,
                      rosary_weight)

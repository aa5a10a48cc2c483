"""Characters of principal subspaces of level-k standard modules for affine sl(3)."""
from .characters import (
    CharSpec,
    Family,
    UnsupportedFamily,
    char_i1_i2,
    char_of,
    char_of_weight,
    georgiev_char,
    shift_char_lambda1,
    shift_char_lambda2,
)
from .dsl import eval_identity, parse_identity
from .oracle import exactness_check, principal_dims
from .qseries import Envelope, Series, inv_pochhammer, required_q_order
from .recursions import IdentityID, residual, verify_all
from .rootdata import AffineHW, Weight, charge_offsets, conformal_weight, pairing

__all__ = [
    "AffineHW", "CharSpec", "Envelope", "Family", "IdentityID", "Series",
    "UnsupportedFamily", "Weight", "char_i1_i2", "char_of", "char_of_weight", "charge_offsets",
    "conformal_weight", "eval_identity", "exactness_check", "georgiev_char",
    "inv_pochhammer", "pairing", "parse_identity", "principal_dims",
    "required_q_order", "residual", "shift_char_lambda1", "shift_char_lambda2",
    "verify_all",
]

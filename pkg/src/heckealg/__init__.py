"""Exact-arithmetic Hecke algebras of discrete Hecke pairs.

Double-coset decompositions, the counting functions L and R, the relative
modular function, convolution with both involutions, truncated regular
representations on l2(H\\G), and core/reduction of pairs.
"""

from .cosets import (
    CommResult,
    DoubleCosetDecomp,
    commensurator_test,
    coset_eq,
    coset_key,
    delta,
    double_coset_decompose,
    l_value,
    r_value,
)
from .errors import (
    BadParameter,
    BallTooSmall,
    BudgetExceeded,
    Diverged,
    HeckeError,
    KindMismatch,
    NoCanonicalizer,
    NotFinite,
    ParseError,
    UnknownName,
    ValidationError,
)
from .groups import (
    AxBGroup,
    FiniteGroup,
    FreeGroup,
    Group,
    Mat2Group,
    SemidirectGroup,
    Subgroup,
    subgroup_check,
)
from .hecke import (
    HeckeElement,
    Verdict,
    is_self_inverse_class,
    chi,
    convolve,
    identity_element,
    involution_flat,
    involution_sharp,
    is_gelfand,
    is_locally_commutative,
    is_relatively_unimodular,
    l1_norm,
    structure_constants,
    sup_l_sample,
)
from .pairs import Budget, Pair, default_budget
from .reduction import (
    CoreResult,
    check_reduction_isomorphism,
    core_bound,
    core_finite,
    reduce_finite,
)
from .regrep import (
    CosetBall,
    L2Vector,
    RepMatrix,
    act,
    adjoint_check,
    build_ball,
    check_l1_bound,
    full_ball,
    lambda_matrix,
    operator_norm_estimate,
)
from .scalars import CQ, NormValue

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

"""Secure symmetrical multilevel diversity coding over small finite fields."""

from .coset import CosetCodeSpec, decode as coset_decode, encode as coset_encode, keygen
from .errors import (
    BudgetExceededError,
    DecodeFailureError,
    FieldMismatchError,
    InfeasibleCornerError,
    InsufficientSharesError,
    ParameterError,
    RegionViolationError,
    RowBudgetError,
    ShareFormatError,
    SingularMatrixError,
    SmdcError,
)
from .fields import FieldElement, FieldSpec, binary8_field, prime_field, solve_linear, vandermonde
from .randomness import (
    RandomSymbolSource,
    SequenceSymbolSource,
    SystemSymbolSource,
    as_symbol_source,
)
from .multilevel import (
    SmdcParams,
    SmdcShareBundle,
    decode as smdc_decode,
    encode as smdc_encode,
    plan,
    rate_of,
)
from .region import (
    InequalitySystem,
    LinExpr,
    corner_points,
    min_sum_rate,
    region,
    smdc_min_sum_rate,
    superposition_region,
    violated_subsets,
)
from .shareio import ShareFile, join_files, read_share, split_files, write_share
from .single_level import (
    SsdcParams,
    SsdcShareBundle,
    decode_bundle,
    encode_at_rate,
    encode_symmetric,
    rate_layout,
    symmetric_layout,
)
from .verify import (
    VerifierBudget,
    check_perfect_secrecy,
    check_prop2_inequality,
    check_reconstruction,
    code_for_layout,
    code_for_multilevel,
    conditional_entropy,
    enumerate_joint,
    verification_report,
)
from .wiretap import WiretapNetwork, achievable_secrecy_rate, admissible_by_separation

__all__ = [
    "BudgetExceededError",
    "CosetCodeSpec",
    "DecodeFailureError",
    "FieldElement",
    "FieldMismatchError",
    "FieldSpec",
    "InequalitySystem",
    "InfeasibleCornerError",
    "InsufficientSharesError",
    "LinExpr",
    "ParameterError",
    "RandomSymbolSource",
    "RegionViolationError",
    "RowBudgetError",
    "SequenceSymbolSource",
    "ShareFile",
    "ShareFormatError",
    "SingularMatrixError",
    "SmdcError",
    "SmdcParams",
    "SmdcShareBundle",
    "SsdcParams",
    "SsdcShareBundle",
    "SystemSymbolSource",
    "VerifierBudget",
    "WiretapNetwork",
    "achievable_secrecy_rate",
    "admissible_by_separation",
    "as_symbol_source",
    "binary8_field",
    "check_perfect_secrecy",
    "check_prop2_inequality",
    "check_reconstruction",
    "code_for_layout",
    "code_for_multilevel",
    "conditional_entropy",
    "corner_points",
    "coset_decode",
    "coset_encode",
    "decode_bundle",
    "encode_at_rate",
    "encode_symmetric",
    "enumerate_joint",
    "join_files",
    "keygen",
    "min_sum_rate",
    "plan",
    "prime_field",
    "rate_layout",
    "rate_of",
    "read_share",
    "region",
    "smdc_decode",
    "smdc_encode",
    "smdc_min_sum_rate",
    "solve_linear",
    "split_files",
    "superposition_region",
    "symmetric_layout",
    "vandermonde",
    "verification_report",
    "violated_subsets",
    "write_share",
]

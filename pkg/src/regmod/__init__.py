"""Exact classification of finitely presented modules over atomic regular algebras."""

from .boolean_core import (
    AtomSet,
    Idempotent,
    PartitionOfUnity,
    complement,
    disjointify,
    join,
    meet,
    restrict_partition,
    sup_family,
)
from .classification import (
    EliminationTrace,
    FinitelyDimensionalReport,
    IsoMap,
    IsoPiece,
    Passport,
    PassportEntry,
    PiecewiseBasis,
    PivotStep,
    atom_rank,
    build_isomorphism,
    extract_basis,
    finitely_dimensional_report,
    is_strictly_homogeneous,
    iso_check,
    kappa,
    passport,
    piecewise_basis,
    regular_eliminate,
)
from .errors import (
    ContextMismatchError,
    LengthMismatchError,
    NotFaithfulError,
    NotInModuleError,
    NotMinorantError,
    ParseError,
    PassportMismatchError,
    RankMismatchError,
    RegmodError,
    ValidationError,
    ZeroIdempotentError,
)
from .fields import Field, PrimeField, RationalField, Scalar, is_prime
from .module_file import ModuleFile, parse_module_file, render_module_file
from .module_space import (
    GeneratorSet,
    IndependenceResult,
    MembershipResult,
    ModuleVector,
    combine,
    full_support_element,
    independence_test,
    membership,
    mix_vectors,
    reassemble,
    split_product,
    support_vector,
)
from .oracle import RankProfile, atom_rank_profile, oracle_passport, oracle_verify_iso
from .regular_algebra import (
    AlgebraElement,
    StepForm,
    StepTerm,
    arith,
    inversion,
    mix_scalars,
    step_form,
    support,
)
from .rng import SplitMix64

__version__ = "0.1.0"

__all__ = [
    "AtomSet", "Idempotent", "PartitionOfUnity", "meet", "join", "complement",
    "sup_family", "restrict_partition", "disjointify",
    "Field", "PrimeField", "RationalField", "Scalar", "is_prime",
    "AlgebraElement", "StepForm", "StepTerm", "arith", "inversion", "support",
    "step_form", "mix_scalars",
    "ModuleVector", "GeneratorSet", "MembershipResult", "IndependenceResult",
    "support_vector", "mix_vectors", "combine", "membership",
    "independence_test", "full_support_element", "split_product", "reassemble",
    "Passport", "PassportEntry", "PiecewiseBasis", "IsoMap", "IsoPiece",
    "PivotStep", "EliminationTrace", "FinitelyDimensionalReport",
    "regular_eliminate", "passport", "atom_rank", "kappa",
    "is_strictly_homogeneous", "extract_basis", "piecewise_basis", "iso_check",
    "build_isomorphism", "finitely_dimensional_report",
    "RankProfile", "atom_rank_profile", "oracle_passport", "oracle_verify_iso",
    "ModuleFile", "parse_module_file", "render_module_file",
    "SplitMix64",
    "RegmodError", "ContextMismatchError", "LengthMismatchError",
    "NotMinorantError", "ZeroIdempotentError", "NotFaithfulError",
    "NotInModuleError", "RankMismatchError", "PassportMismatchError",
    "ParseError", "ValidationError",
    "__version__",
]

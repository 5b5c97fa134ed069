"""Finite complete rewriting systems for finite regular semigroups.

The package splits into layers: ``words`` and ``systems`` handle plain string
rewriting (presentations and budgeted normalization), ``orders`` carries the
termination comparators, ``confluence`` turns critical pairs plus ball-scale
order evidence into a completeness verdict, ``tables`` works on concrete
multiplication tables (Green's relations, subgroups, principal factors), and
``construct`` builds certified systems for zero adjunctions, matrix
semigroups over groups, ideal extensions, and whole regular semigroups.

The names re-exported here are the stable surface; everything else is
implementation detail.
"""

from fcrs.confluence import (
    COMPLETE,
    NOT_LOCALLY_CONFLUENT,
    UNDECIDED,
    CertificationResult,
    certify,
    check_local_confluence,
    critical_pairs,
)
from fcrs.construct import (
    CertificateSpec,
    ConstructionOutput,
    adjoin_zero,
    derive_glue,
    ideal_extension,
    parse_construction,
    parse_construction_file,
    rees_simple,
    rees_zero,
    regular_pipeline,
    reverify,
    serialize_construction,
)
from fcrs.errors import BudgetExhausted, ConstructionError, FcrsError, InputError
from fcrs.orders import (
    length_compare,
    multiset_greater,
    verify_decrease_on_ball,
)
from fcrs.systems import (
    RewriteSystem,
    enumerate_irreducibles,
    is_irreducible,
    make_system,
    normalize,
    parse_presentation,
    parse_presentation_file,
    serialize_presentation,
)
from fcrs.tables import (
    FiniteSemigroup,
    cayley_fcrs,
    green_classes,
    is_regular,
    load_cayley_file,
    make_rees_datum,
    make_semigroup,
)
from fcrs.words import format_word, parse_word

__all__ = [
    "COMPLETE",
    "NOT_LOCALLY_CONFLUENT",
    "UNDECIDED",
    "BudgetExhausted",
    "CertificateSpec",
    "CertificationResult",
    "ConstructionError",
    "ConstructionOutput",
    "FcrsError",
    "FiniteSemigroup",
    "InputError",
    "RewriteSystem",
    "adjoin_zero",
    "cayley_fcrs",
    "certify",
    "check_local_confluence",
    "critical_pairs",
    "derive_glue",
    "enumerate_irreducibles",
    "format_word",
    "green_classes",
    "ideal_extension",
    "is_irreducible",
    "is_regular",
    "length_compare",
    "load_cayley_file",
    "make_rees_datum",
    "make_semigroup",
    "make_system",
    "multiset_greater",
    "normalize",
    "parse_construction",
    "parse_construction_file",
    "parse_presentation",
    "parse_presentation_file",
    "parse_word",
    "rees_simple",
    "rees_zero",
    "regular_pipeline",
    "reverify",
    "serialize_construction",
    "serialize_presentation",
    "verify_decrease_on_ball",
]

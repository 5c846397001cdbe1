"""Binomial point-line configurations and their decompositions at hyperplanes."""

from .core import (
    BinomialSignature,
    ConfigurationType,
    IncidenceError,
    IncidenceStructure,
    binomial_signature,
    build,
    configuration_type,
    dual,
    is_partial_linear_space,
    line_size,
    lines_through,
    point_rank,
    points_on,
    signature_of,
    structurally_equal,
)
from .glue import (
    Decomposition,
    DecompositionError,
    GluingError,
    GluingMap,
    classify_gluings,
    decompose,
    enumerate_gluings,
    glue,
    validate_gluing,
    verify_duality,
)
from .hyperplane import (
    HyperplaneView,
    deep_lines,
    enumerate_hyperplanes,
    extract_infinity,
    hyperplane_is_configuration,
    is_hyperplane,
    is_subspace,
    reduct,
    restriction,
)
from .iso import are_isomorphic, canonical_form, classify, find_isomorphism

__version__ = "0.1.0"

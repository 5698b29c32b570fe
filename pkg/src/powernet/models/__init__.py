"""Data models for PowerNet."""

from powernet.models.documents import LayerDocument, MultiPolyDocument, NetDocument, TermDocument
from powernet.models.network import (
    MAX_POWER,
    MIN_POWER,
    AffineLayer,
    FloatArray,
    NetStats,
    PowerNet,
    check_power,
)
from powernet.models.polynomials import (
    IndexSetKind,
    MultiIndex,
    MultiIndexSet,
    MultiPoly,
    PolyCoeffs,
)
from powernet.models.schemes import (
    BaseSDigits,
    LambdaCoeffs,
    NodeKind,
    NodeScheme,
    Strategy,
    XnYKernel,
)
from powernet.models.spectral import (
    ConditionRow,
    DecayModel,
    ErrorReport,
    LegendreExpansion,
    QuadratureRule,
    SweepResult,
    SweepRow,
)

__all__ = [
    "AffineLayer",
    "BaseSDigits",
    "ConditionRow",
    "DecayModel",
    "ErrorReport",
    "FloatArray",
    "IndexSetKind",
    "LambdaCoeffs",
    "LayerDocument",
    "MAX_POWER",
    "MIN_POWER",
    "MultiIndex",
    "MultiIndexSet",
    "MultiPoly",
    "MultiPolyDocument",
    "NetDocument",
    "NetStats",
    "NodeKind",
    "NodeScheme",
    "PolyCoeffs",
    "PowerNet",
    "QuadratureRule",
    "Strategy",
    "SweepResult",
    "SweepRow",
    "TermDocument",
    "XnYKernel",
    "check_power",
]

"""Exact single- and multi-layer QAOA cost expectations with a statevector oracle."""
from .errors import (
    CapExceeded,
    DuplicateEdge,
    EdgeNotInHypergraph,
    ExactQaoaError,
    FamilyTooLarge,
    ImaginaryResidue,
    InvalidEdge,
    NonUnitWeights,
    NotAnEdge,
    NotASimpleGraph,
    SchemaError,
    TooManyPoints,
    TooManyQubits,
)
from .hypergraph import (
    NeighborhoodDecomposition,
    SubhypergraphFamily,
    WeightedHypergraph,
    coset_family,
    count_even_by_size,
    even_subhypergraph_basis,
    neighborhoods,
)
from .params import GmParams, IsingWeights, MixerAxes, PmParams, ProductStateParams
from .pm import Variant, variant_axes
from .problems import (
    IsingProblem,
    MaxCutInstance,
    MisInstance,
    maxcut_to_ising,
    mis_to_ising,
    qubo_to_ising,
)

__version__ = "0.1.0"

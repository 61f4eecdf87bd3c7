"""MIMO graph convolutions: spectral filters, localized layers and checks."""

from ._mimogc import (
    Graph,
    InvalidArgument,
    LmgcLayer,
    NumericError,
    ParseError,
    SpectralBasis,
    eigendecompose_symmetric,
    erdos_renyi,
    format_edge_list,
    gcn_layer,
    graph_fourier,
    independence_trial,
    injectivity_trial,
    inverse_fourier,
    is_connected,
    laplacian,
    layer_from_json,
    lmgc_layer,
    load_layer,
    methods,
    mimo_gc,
    mimo_gc_oracle,
    mimo_gc_pairwise,
    mimo_polynomial,
    multiplicity_gap,
    normalized_adjacency,
    parse_edge_list,
    polynomial_weights,
    run_universality,
    spectral_basis,
    universality_weights,
)

__version__ = "0.1.0"

"""Generalized spectral clustering for directed and undirected graphs."""
from .errors import *  # noqa: F401,F403
from .graph import (
    Digraph,
    TransitionMatrix,
    from_adjacency,
    read_edgelist,
    symmetrize,
    teleport_mix,
    transition_matrix,
    write_edgelist,
)
from .measure import (
    VertexMeasure,
    outflow_measure,
    power_measure,
    power_measure_path,
    stationary_distribution,
)
from .energy import (
    CrossoverSweep,
    ToyModelParams,
    cut_measure,
    dirichlet_energy,
    energy_crossover_sweep,
    indicator,
    internal_frontier,
    normalized_dirichlet,
    partition_energy,
    theoretical_alpha,
    vertex_set,
)
from .laplacian import (
    GeneralizedLaplacian,
    classical_directed_laplacians,
    generalized_laplacian,
    generalized_rw_laplacian,
    normalized_generalized_laplacian,
)
from .spectral import SpectralEmbedding, sign_normalize, smallest_eigenpairs
from .metrics import CH_SENTINEL, ari, calinski_harabasz, contingency_table, nmi
from .data import PointCloud, default_k, knn_digraph, load_csv, standardize, toy_unbalanced, write_csv
from .cluster import (
    METHODS,
    GridEntry,
    GridResult,
    Partition,
    Selection,
    di_sim,
    dsc_plus,
    grid_search,
    gsc_run,
    kmeans,
    measure_partition,
    sc_sym,
)

__version__ = "0.1.0"

"""Site percolation on the square lattice: external-boundary cycles, the
cluster decomposition with guaranteed brackets, walk-counting bounds and
Monte Carlo cross-checks."""
from .cluster import (Cluster, Cycle, Labeling, boundary, cluster_of, external_boundary,
                      interior, label_clusters)
from .errors import (CapExceeded, CycleTouchesFrame, CycleValidation, FrameContact,
                     InteriorTooLarge, InvalidConcentration, NotAdjacent, OutOfWindow,
                     PercolationError)
from .lattice import (SiteConfiguration, StepType, Vertex, Window, phi_neighbors,
                      phibar_neighbors, sample_configuration, step_type)
from .montecarlo import (SimEstimate, crossing_probability, estimate_b_gamma_frequency,
                         estimate_origin_stats, estimate_threshold, sweep)
from .series import (SeriesBracket, finite_cluster_probability_bracket, p_gamma,
                     p_gamma_upper, partial_sum, tail_bound, threshold_upper_bound)
from .walks import (CycleCensus, TransferVector, cycle_count_bound, enumerate_cycles,
                    growth_rate, successor_candidates, transfer_step, walk_count_bound,
                    walk_counts)

__version__ = "0.1.0"

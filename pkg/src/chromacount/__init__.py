"""chromacount: distributional diagnostics for monochromatic subgraph counts."""

from .diagnostics import BoundKernels, Thresholds, Verdict, bound_kernels, report, verdict
from .errors import (
    CapabilityError,
    ChromacountError,
    DegenerateVarianceError,
    GraphFormatError,
    UsageError,
)
from .forms import (
    MultilinearForm,
    boolean_influence,
    build_form,
    indicator_poly,
    monochromatic_count,
    variance,
    variance_from_index,
)
from .graphs import (
    FamilySpec,
    Graph,
    book_graph,
    complete_graph,
    cycle_graph,
    disjoint_triangles,
    disjoint_union,
    erdos_renyi,
    exbad_B,
    exbad_P,
    exbad_S,
    exbad_full,
    generate_family,
    load_edge_list,
    path_graph,
    pyramid_stack,
    save_edge_list,
    star_graph,
    windmill_graph,
)
from .moments import (
    JoinCensus,
    MomentReport,
    SixthMomentEstimate,
    exact_moments_bruteforce,
    exact_moments_kernel,
    exbad_moment_table,
    fourth_central_moment_by_pie,
    good_join_census,
    pair_expectation,
    pie4,
    pie4_printed,
    triangle_fourth_closed_form,
    triangle_fourth_gaussian_closed_form,
    triangle_sixth_asymptotic,
)
from .patterns import (
    InfluenceIndex,
    Pattern,
    automorphisms,
    edge_pattern,
    enumerate_copies,
    influential_sets,
    parse_pattern,
    triangle_pattern,
)
from .simulate import (
    ExactDistribution,
    SampleRun,
    empirical_dkol,
    exact_distribution,
    normal_cdf,
    sample_T,
)
from .spectral import (
    MixtureComponent,
    PartialColoringDecomposition,
    Spectrum,
    TriangleForm,
    decompose,
    gaussian_fourth_from_spectrum,
    mixture_limit,
    triangle_spectrum,
)

__version__ = "0.1.0"

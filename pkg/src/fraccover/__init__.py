"""Box-counting dimension of planar fractals, cover-area scaling checks and
optimal-cover shape synthesis."""

__version__ = "0.1.0"

from .cover_count import (  # noqa: E402
    OccupancyGrid,
    ScaleEntry,
    ScaleSeries,
    build_scale_series,
    count_boxes,
    rasterize,
)
from .errors import (  # noqa: E402
    DegenerateInputError,
    DomainError,
    FracCoverError,
    InsufficientDataError,
    ReportError,
    ResourceLimitError,
)
from .fractal_gen import (  # noqa: E402
    PointSet,
    generate_cantor_dust,
    generate_fbm_graph,
    generate_filled_square,
    generate_koch,
    generate_segment,
    generate_sierpinski,
)
from .optimal_cover import (  # noqa: E402
    CoverShape,
    OptimalCoverPlan,
    check_phi_scaling,
    compose_cover_area,
    optimal_count,
    optimal_set_area,
    shape_area_numeric,
    shape_profile,
)
from .scaling_law import (  # noqa: E402
    DimensionEstimate,
    ScalingResidualReport,
    TrimPolicy,
    estimate_dimension,
    trim_scale_regime,
    verify_area_scaling,
)

"""Link-budget, data-rate and power analysis of refractive-surface antennas."""

__version__ = "0.1.0"

from .geometry import (  # noqa: E402
    ArrayGeometry,
    FeedModel,
    Scene,
    SurfaceGeometry,
    UePlacement,
    default_scene,
    element_positions,
    ue_position,
)
from .em_model import (  # noqa: E402
    PhaseMask,
    SnrReport,
    cauchy_snr_bound,
    exact_rate_pa,
    exact_snr_rrs,
    feed_gain,
    incident_signal,
    snr_with_phases,
    ue_channel,
)
from .rates import (  # noqa: E402
    FarFieldThresholds,
    RateResult,
    farfield_thresholds,
    rate_pa_farfield,
    rate_pa_quadrature,
    rate_rrs_lower,
    rate_rrs_lower_farfield,
    rate_rrs_quadrature,
    rate_rrs_upper,
)
from .power import (  # noqa: E402
    CrossoverReport,
    PowerModel,
    crossover_rates,
    element_power_ratio,
    g_closed,
    g_numeric,
    power_pa,
    power_rrs,
    verdict,
)

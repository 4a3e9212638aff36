"""Outage analysis of wireless-powered relay networks under
energy-threshold multi-relay selection: analytic chains, bounds,
threshold search and a Monte Carlo simulator."""

from etmrs._core import (  # noqa: F401
    AlphaExceedsCapacity,
    BatterySpec,
    ConfigError,
    FlowConservationResult,
    NakagamiLink,
    NetworkScenario,
    OutageReport,
    RadioParams,
    RayleighLink,
    RelayConfig,
    RelayEnergyPolicy,
    SearchSpaceTooLarge,
    SimReport,
    SingularSystem,
    StationaryDistribution,
    SubsetTerm,
    ThresholdSearchResult,
    TooManyRelays,
    __version__,
    decode_failure_prob,
    nakagami_cdf,
    nakagami_pdf,
    path_loss_gain,
    search_full,
    search_heuristic,
    search_iid,
    simulate,
    stationary_distribution,
    system_outage,
    system_outage_iid,
    upper_bound_outage,
)

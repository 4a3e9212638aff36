// Python bindings for the main operations: channel statistics, battery
// chains, outage analysis, bounds, threshold search and the Monte Carlo
// simulator.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "etmrs/bounds.hpp"
#include "etmrs/errors.hpp"
#include "etmrs/optimizer.hpp"
#include "etmrs/simulator.hpp"

namespace py = pybind11;
using namespace etmrs;

namespace {

NetworkScenario make_scenario(const std::vector<RelayConfig>& relays, const RadioParams& radio,
                              const BatterySpec& spec) {
    return NetworkScenario{relays, radio, spec};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Outage analysis of wireless-powered relay networks with "
              "energy-threshold multi-relay selection";

    py::register_exception<AlphaExceedsCapacity>(m, "AlphaExceedsCapacity");
    py::register_exception<TooManyRelays>(m, "TooManyRelays");
    py::register_exception<SearchSpaceTooLarge>(m, "SearchSpaceTooLarge");
    py::register_exception<SingularSystem>(m, "SingularSystem");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<NakagamiLink>(m, "NakagamiLink")
        .def(py::init<double, double>(), py::arg("m"), py::arg("lam"))
        .def_readonly("m", &NakagamiLink::m)
        .def_readonly("lam", &NakagamiLink::lambda)
        .def_readonly("b", &NakagamiLink::b);

    py::class_<RayleighLink>(m, "RayleighLink")
        .def(py::init<double>(), py::arg("lam"))
        .def_readonly("lam", &RayleighLink::lambda)
        .def_readonly("sigma", &RayleighLink::sigma);

    py::class_<RadioParams>(m, "RadioParams")
        .def(py::init<double, double, double, double>(), py::arg("source_power"),
             py::arg("noise_power"), py::arg("rate"), py::arg("eta"))
        .def_readonly("source_power", &RadioParams::source_power)
        .def_readonly("noise_power", &RadioParams::noise_power)
        .def_readonly("rate", &RadioParams::rate)
        .def_readonly("eta", &RadioParams::eta)
        .def_readonly("snr_threshold", &RadioParams::snr_threshold);

    py::class_<BatterySpec>(m, "BatterySpec")
        .def(py::init<double, int, double>(), py::arg("capacity"), py::arg("levels"),
             py::arg("alpha_raw"))
        .def_property_readonly("capacity", &BatterySpec::capacity)
        .def_property_readonly("levels", &BatterySpec::levels)
        .def_property_readonly("alpha_index", &BatterySpec::alpha_index)
        .def("level_energy", &BatterySpec::level_energy)
        .def("step", &BatterySpec::step)
        .def("alpha", &BatterySpec::alpha);

    py::class_<RelayEnergyPolicy>(m, "RelayEnergyPolicy")
        .def_static("from_beta_index", &RelayEnergyPolicy::from_beta_index, py::arg("spec"),
                    py::arg("beta_index"))
        .def_static("from_threshold", &RelayEnergyPolicy::from_threshold, py::arg("spec"),
                    py::arg("chi_raw"))
        .def_readonly("beta_index", &RelayEnergyPolicy::beta_index)
        .def_readonly("chi_index", &RelayEnergyPolicy::chi_index)
        .def("beta", &RelayEnergyPolicy::beta)
        .def("chi", &RelayEnergyPolicy::chi);

    py::class_<RelayConfig>(m, "RelayConfig")
        .def(py::init<NakagamiLink, RayleighLink, RelayEnergyPolicy>(), py::arg("sr"),
             py::arg("rd"), py::arg("policy"))
        .def_readonly("sr", &RelayConfig::sr)
        .def_readonly("rd", &RelayConfig::rd)
        .def_readwrite("policy", &RelayConfig::policy);

    py::class_<NetworkScenario>(m, "NetworkScenario")
        .def(py::init(&make_scenario), py::arg("relays"), py::arg("radio"), py::arg("spec"))
        .def_readonly("relays", &NetworkScenario::relays)
        .def_readonly("radio", &NetworkScenario::radio)
        .def_readonly("spec", &NetworkScenario::spec)
        .def_property_readonly("relay_count", &NetworkScenario::relay_count);

    py::class_<StationaryDistribution>(m, "StationaryDistribution")
        .def_readonly("pi", &StationaryDistribution::pi)
        .def("sum", &StationaryDistribution::sum);

    py::class_<SubsetTerm>(m, "SubsetTerm")
        .def_readonly("mask", &SubsetTerm::mask)
        .def_readonly("probability", &SubsetTerm::probability)
        .def_readonly("conditional_outage", &SubsetTerm::conditional_outage);

    py::class_<OutageReport>(m, "OutageReport")
        .def_readonly("p_out", &OutageReport::p_out)
        .def_readonly("p_empty", &OutageReport::p_empty)
        .def_readonly("per_subset", &OutageReport::per_subset)
        .def("probability_total", &OutageReport::probability_total);

    py::class_<FlowConservationResult>(m, "FlowConservationResult")
        .def_readonly("q", &FlowConservationResult::q)
        .def_readonly("p_eh", &FlowConservationResult::p_eh)
        .def_readonly("p_out_ub", &FlowConservationResult::p_out_ub);

    py::class_<ThresholdSearchResult>(m, "ThresholdSearchResult")
        .def_readonly("best_policies", &ThresholdSearchResult::best_policies)
        .def_readonly("best_outage", &ThresholdSearchResult::best_outage)
        .def_readonly("evaluations", &ThresholdSearchResult::evaluations)
        .def_readonly("best_z", &ThresholdSearchResult::best_z);

    py::class_<SimReport>(m, "SimReport")
        .def_readonly("outage_rate", &SimReport::outage_rate)
        .def_readonly("outage_ci95", &SimReport::outage_ci95)
        .def_readonly("empty_set_rate", &SimReport::empty_set_rate)
        .def_readonly("blocks", &SimReport::blocks)
        .def_readonly("if_mode_rate", &SimReport::if_mode_rate)
        .def_readonly("level_occupancy", &SimReport::level_occupancy)
        .def_readonly("subset_frequency", &SimReport::subset_frequency);

    m.def("nakagami_cdf", &nakagami_cdf, py::arg("link"), py::arg("x"));
    m.def("nakagami_pdf", &nakagami_pdf, py::arg("link"), py::arg("x"));
    m.def("path_loss_gain", &path_loss_gain, py::arg("d"), py::arg("omega"));
    m.def("decode_failure_prob", &decode_failure_prob, py::arg("link"), py::arg("radio"));

    m.def(
        "stationary_distribution",
        [](const NakagamiLink& link, const RadioParams& radio, const BatterySpec& spec,
           const RelayEnergyPolicy& policy) {
            return stationary_distribution(build_transition_matrix(link, radio, spec, policy));
        },
        py::arg("link"), py::arg("radio"), py::arg("spec"), py::arg("policy"),
        "Stationary battery distribution of one relay's chain");

    m.def(
        "system_outage",
        [](const NetworkScenario& scenario) {
            return system_outage(scenario, solve_stationaries(scenario));
        },
        py::arg("scenario"), py::call_guard<py::gil_scoped_release>(),
        "Analytic system outage probability (general path)");
    m.def("system_outage_iid", &system_outage_iid, py::arg("relay_count"), py::arg("shared"),
          py::arg("radio"), py::arg("spec"), py::arg("pi"));
    m.def("upper_bound_outage", &upper_bound_outage, py::arg("scenario"),
          py::call_guard<py::gil_scoped_release>());
    m.def("search_iid", &search_iid, py::arg("relay_count"), py::arg("shared"), py::arg("radio"),
          py::arg("spec"), py::call_guard<py::gil_scoped_release>());
    m.def("search_full", &search_full, py::arg("scenario"),
          py::call_guard<py::gil_scoped_release>());
    m.def("search_heuristic", &search_heuristic, py::arg("scenario"),
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "simulate",
        [](const NetworkScenario& scenario, std::uint64_t blocks, std::uint64_t seed,
           const std::string& battery_mode, std::uint64_t warmup, int threads) {
            SimConfig cfg;
            cfg.blocks = blocks;
            cfg.seed = seed;
            cfg.warmup = warmup;
            cfg.threads = threads;
            if (battery_mode == "discrete")
                cfg.battery_mode = BatteryMode::discrete;
            else if (battery_mode == "continuous")
                cfg.battery_mode = BatteryMode::continuous;
            else
                throw ConfigError("battery_mode must be 'discrete' or 'continuous'");
            return simulate(scenario, cfg);
        },
        py::arg("scenario"), py::arg("blocks") = 1'000'000, py::arg("seed") = 1,
        py::arg("battery_mode") = "discrete", py::arg("warmup") = 10'000, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Block-level Monte Carlo of the full protocol");

    m.attr("__version__") = "0.1.0";
}

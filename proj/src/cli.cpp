#include "locpovm/cli.hpp"

#include <fstream>
#include <iostream>
#include <numbers>

#include "locpovm/config.hpp"
#include "locpovm/covariance.hpp"
#include "locpovm/errors.hpp"
#include "locpovm/localization.hpp"
#include "locpovm/parallel.hpp"
#include "locpovm/table.hpp"
#include "locpovm/version.hpp"

namespace locpovm {

namespace {

BasisPtr parse_model(Config& cfg) {
    LatticeSpec spec;
    spec.sites = cfg.get_int("model.N");
    spec.spacing = cfg.get_double("model.a", 1.0);
    spec.mass = cfg.get_double("model.m", 1.0);
    const std::string disp = cfg.get_string("model.dispersion", "continuum");
    if (disp == "continuum")
        spec.dispersion = Dispersion::Continuum;
    else if (disp == "lattice")
        spec.dispersion = Dispersion::Lattice;
    else
        throw ConfigError("model.dispersion must be continuum or lattice");
    return build_mode_basis(spec);
}

SingleParticleState parse_state(Config& cfg, const BasisPtr& basis) {
    const double L = basis->spec().length();
    const bool packet = !cfg.keys_under("state.packet").empty();
    const bool mode = cfg.has("state.mode.index");
    const bool amplitudes = cfg.has("state.amplitudes");
    const bool random = cfg.has("state.random.seed");
    if (int(packet) + int(mode) + int(amplitudes) + int(random) != 1)
        throw ConfigError(
            "state must specify exactly one of state.packet.*, state.mode.index, "
            "state.amplitudes, state.random.seed");
    if (packet) {
        const double center = cfg.get_double("state.packet.center", L / 2.0);
        const double width = cfg.get_double("state.packet.width", L / 8.0);
        const double kbar = cfg.get_double("state.packet.mean_momentum", 0.0);
        return make_wave_packet(basis, center, width, kbar);
    }
    if (mode) {
        const int n = cfg.get_int("state.mode.index");
        const int nlo = -((basis->size() - 1) / 2);
        const int idx = n - nlo;
        if (idx < 0 || idx >= basis->size())
            throw ConfigError("state.mode.index out of range for model.N");
        return make_mode_state(basis, idx);
    }
    if (amplitudes) {
        const auto flat = cfg.get_double_list("state.amplitudes");
        if (static_cast<int>(flat.size()) != 2 * basis->size())
            throw ConfigError(
                "state.amplitudes must hold 2N reals (re, im interleaved)");
        Eigen::VectorXcd c(basis->size());
        for (int n = 0; n < basis->size(); ++n)
            c[n] = cd(flat[2 * n], flat[2 * n + 1]);
        return make_state(basis, std::move(c));
    }
    return make_random_state(basis, cfg.get_u64("state.random.seed", 0));
}

Chart parse_chart(Config& cfg) {
    const std::string kind = cfg.get_string("chart.kind", "identity");
    if (kind == "identity") return identity_chart(2);
    if (kind == "dilation") return dilation_chart(cfg.get_double("chart.lambda"));
    if (kind == "rindler") return rindler_chart(cfg.get_double("chart.alpha"));
    if (kind == "custom") {
        std::map<std::string, double> params;
        for (const std::string& name : cfg.keys_under("chart.params"))
            params[name] = cfg.get_double("chart.params." + name);
        return custom_chart(
            {cfg.get_string("chart.forward.t"), cfg.get_string("chart.forward.x")},
            {cfg.get_string("chart.inverse.t"), cfg.get_string("chart.inverse.x")},
            params);
    }
    throw ConfigError("chart.kind must be identity, dilation, rindler, or custom");
}

std::vector<QueryInterval> parse_intervals(Config& cfg, double L) {
    if (!cfg.has("eval.intervals")) {
        std::vector<QueryInterval> octants;
        std::string echo;
        for (int i = 0; i < 8; ++i) {
            octants.push_back({i * L / 8.0, (i + 1) * L / 8.0});
            if (i) echo += ";";
            echo += format_double(octants.back().lo) + ":" +
                    format_double(octants.back().hi);
        }
        cfg.note_effective("eval.intervals", echo);
        return octants;
    }
    const std::string text = cfg.get_string("eval.intervals");
    std::vector<QueryInterval> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t semi = text.find(';', pos);
        const std::string item =
            text.substr(pos, semi == std::string::npos ? semi : semi - pos);
        const size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("eval.intervals entries must look like lo:hi");
        try {
            out.push_back({std::stod(item.substr(0, colon)),
                           std::stod(item.substr(colon + 1))});
        } catch (const std::exception&) {
            throw ConfigError("eval.intervals has a non-numeric endpoint");
        }
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (out.empty()) throw ConfigError("eval.intervals is empty");
    return out;
}

struct Invocation {
    std::string command;
    std::string config_path;
    std::string out_path;  // empty: fall back to output.path, then stdout
};

Invocation parse_args(int argc, const char* const* argv) {
    static const char* usage =
        "usage: locpovm <localize|current|discrepancy|covariance|scan> "
        "--config <path> [--out <path>]";
    if (argc < 2) throw ConfigError(usage);
    Invocation inv;
    inv.command = argv[1];
    const bool known = inv.command == "localize" || inv.command == "current" ||
                       inv.command == "discrepancy" || inv.command == "covariance" ||
                       inv.command == "scan";
    if (!known) throw ConfigError(std::string("unknown subcommand '") +
                                  argv[1] + "'\n" + usage);
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        if ((arg == "--config" || arg == "--out") && i + 1 < argc) {
            (arg == "--config" ? inv.config_path : inv.out_path) = argv[++i];
        } else {
            throw ConfigError("unexpected argument '" + arg + "'\n" + usage);
        }
    }
    if (inv.config_path.empty()) throw ConfigError(usage);
    return inv;
}

using Flags = std::vector<std::pair<std::string, std::string>>;

ResultTable cmd_localize(Config& cfg, Flags& flags) {
    (void)flags;
    const BasisPtr basis = parse_model(cfg);
    const SingleParticleState state = parse_state(cfg, basis);
    const auto times = cfg.get_double_list("eval.times", "0");
    cfg.reject_unconsumed();

    std::vector<LocalizationField> fields(times.size());
    parallel_for(static_cast<int>(times.size()),
                 [&](int i) { fields[i] = localization_density(state, times[i]); });

    ResultTable table;
    table.columns = {"t", "x", "Pi"};
    for (size_t i = 0; i < times.size(); ++i)
        for (size_t j = 0; j < fields[i].values.size(); ++j)
            table.rows.push_back({times[i], fields[i].grid[j], fields[i].values[j]});
    return table;
}

ResultTable cmd_current(Config& cfg, Flags& flags) {
    const BasisPtr basis = parse_model(cfg);
    const SingleParticleState state = parse_state(cfg, basis);
    const auto times = cfg.get_double_list("eval.times", "0");
    cfg.reject_unconsumed();

    struct Row {
        LocalizationField j0, j1, res;
    };
    std::vector<Row> per_time(times.size());
    parallel_for(static_cast<int>(times.size()), [&](int i) {
        auto [j0, j1] = localization_current(state, times[i]);
        per_time[i] = {std::move(j0), std::move(j1),
                       continuity_residual(state, times[i]).residual};
    });
    if (basis->spec().dispersion == Dispersion::Lattice)
        flags.push_back({"continuity_contract", "waived"});

    ResultTable table;
    table.columns = {"t", "x", "J0", "J1", "continuity_residual"};
    for (size_t i = 0; i < times.size(); ++i)
        for (size_t j = 0; j < per_time[i].j0.values.size(); ++j)
            table.rows.push_back({times[i], per_time[i].j0.grid[j],
                                  per_time[i].j0.values[j], per_time[i].j1.values[j],
                                  per_time[i].res.values[j]});
    return table;
}

ResultTable cmd_discrepancy(Config& cfg, Flags& flags) {
    const BasisPtr basis = parse_model(cfg);
    const SingleParticleState state = parse_state(cfg, basis);
    const Chart chart = parse_chart(cfg);
    cfg.reject_unconsumed();

    const FoliationScenario scenario = build_scenario(chart);
    if (scenario.non_inertial) flags.push_back({"foliation", "non-inertial"});
    const DiscrepancyReport rep = discrepancy_field(state, scenario);

    ResultTable table;
    table.columns = {"x",         "naive",      "linear",      "discrepancy",
                     "term_phi2", "term_piphi", "term_dphiphi"};
    for (size_t j = 0; j < rep.discrepancy.values.size(); ++j)
        table.rows.push_back({rep.discrepancy.grid[j], rep.naive_form.values[j],
                              rep.linear_form.values[j], rep.discrepancy.values[j],
                              rep.term_phi2.values[j], rep.term_piphi.values[j],
                              rep.term_dphiphi.values[j]});
    return table;
}

ResultTable cmd_covariance(Config& cfg, Flags& flags) {
    const BasisPtr basis = parse_model(cfg);
    const SingleParticleState state = parse_state(cfg, basis);
    const Chart chart = parse_chart(cfg);
    const auto intervals = parse_intervals(cfg, basis->spec().length());
    cfg.reject_unconsumed();

    const FoliationScenario scenario = build_scenario(chart);
    if (scenario.non_inertial) flags.push_back({"foliation", "non-inertial"});

    std::vector<CovarianceRow> rows(intervals.size());
    parallel_for(static_cast<int>(intervals.size()), [&](int i) {
        rows[i] = covariance_check(state, scenario, intervals[i]);
    });

    ResultTable table;
    table.columns = {"interval_lo", "interval_hi", "prob_cartesian", "prob_naive",
                     "prob_modified", "dev_naive", "dev_modified"};
    for (const CovarianceRow& r : rows)
        table.rows.push_back({r.lo, r.hi, r.prob_cartesian, r.prob_naive,
                              r.prob_modified, r.dev_naive, r.dev_modified});
    return table;
}

ResultTable cmd_scan(Config& cfg, Flags& flags) {
    const BasisPtr basis = parse_model(cfg);
    const SingleParticleState state = parse_state(cfg, basis);
    const std::string family_name = cfg.get_string("scan.family");
    ChartFamily family;
    if (family_name == "dilation")
        family = ChartFamily::Dilation;
    else if (family_name == "rindler")
        family = ChartFamily::Rindler;
    else
        throw ConfigError("scan.family must be dilation or rindler");
    const auto values = cfg.get_double_list("scan.values");
    cfg.reject_unconsumed();

    const auto rows = metric_condition_scan(family, values, state);
    bool any_non_inertial = false;
    for (const ScanRow& r : rows) any_non_inertial = any_non_inertial || r.non_inertial;
    if (any_non_inertial) flags.push_back({"foliation", "non-inertial"});

    ResultTable table;
    table.columns = {"parameter", "max_abs_discrepancy", "max_dev_modified"};
    for (const ScanRow& r : rows)
        table.rows.push_back({r.parameter, r.max_abs_discrepancy, r.max_dev_modified});
    return table;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    try {
        const Invocation inv = parse_args(argc, argv);
        Config cfg = Config::parse_file(inv.config_path);

        const std::string cfg_out = cfg.get_string("output.path", "");
        const std::string out_path = inv.out_path.empty() ? cfg_out : inv.out_path;
        const std::string format = cfg.get_string("output.format", "csv");
        if (format != "csv" && format != "json")
            throw ConfigError("output.format must be csv or json");

        Flags flags;
        ResultTable table;
        if (inv.command == "localize")
            table = cmd_localize(cfg, flags);
        else if (inv.command == "current")
            table = cmd_current(cfg, flags);
        else if (inv.command == "discrepancy")
            table = cmd_discrepancy(cfg, flags);
        else if (inv.command == "covariance")
            table = cmd_covariance(cfg, flags);
        else
            table = cmd_scan(cfg, flags);

        table.metadata.push_back({"locpovm", kVersion});
        table.metadata.push_back({"command", inv.command});
        for (const auto& f : flags) table.metadata.push_back(f);
        table.metadata.push_back(
            {"tolerances",
             "hermiticity=1e-10 normalization=1e-10 positivity_floor=-1e-12 "
             "covariance=1e-6"});
        for (const auto& [key, value] : cfg.effective())
            table.metadata.push_back({"config." + key, value});
        table.config_raw = cfg.raw();

        const std::string payload = format == "csv" ? to_csv(table) : to_json(table);
        if (out_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
            out << payload;
            if (!out) throw ComputeError("failed writing output file");
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace locpovm

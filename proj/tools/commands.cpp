#include "commands.hpp"

#include "wristml/csv.hpp"
#include "wristml/error.hpp"
#include "wristml/fann_io.hpp"
#include "wristml/features.hpp"
#include "wristml/fixed_point.hpp"
#include "wristml/harvest.hpp"
#include "wristml/network.hpp"
#include "wristml/perf_model.hpp"
#include "wristml/pipeline.hpp"
#include "wristml/synth.hpp"
#include "wristml/train.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace wristml::cli {
namespace {

using json = nlohmann::ordered_json;

struct Globals {
    std::uint64_t seed = 42;
    bool json = false;
};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string g6(double v) { return fmt("%.6g", v); }

using Row = std::vector<std::string>;

void print_aligned(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& r : rows)
            width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const Row& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c)
                out << "  ";
            // first column left-aligned, numbers right-aligned
            if (c == 0)
                out << std::left << std::setw(static_cast<int>(width[c])) << r[c];
            else
                out << std::right << std::setw(static_cast<int>(width[c])) << r[c];
        }
        out << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (auto w : width)
        total += w;
    out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& r : rows)
        line(r);
    out << std::right;
}

void print_csv(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
    auto line = [&](const Row& r) {
        for (std::size_t c = 0; c < r.size(); ++c)
            out << (c ? "," : "") << r[c];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

NetworkModel network_by_name(const std::string& name) {
    if (name == "A" || name == "a")
        return build_network_a();
    if (name == "B" || name == "b")
        return build_network_b();
    throw ConfigError("unknown network '" + name + "' (available: A, B)");
}

perf::PerfModel load_perf_model(const std::string& profiles_path) {
    if (profiles_path.empty())
        return perf::PerfModel::builtin();
    return perf::load_profile_document(read_text_file(profiles_path)).model();
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
}

// ---------------------------------------------------------------- features

struct FeaturesArgs {
    std::string ecg, gsr, out;
    WindowConfig window;
};

void cmd_features(const FeaturesArgs& a, const Globals& g, std::ostream& out) {
    const SampledSignal ecg = csv::read_ecg(read_text_file(a.ecg));
    const GsrTrace gsr = csv::read_gsr(read_text_file(a.gsr));
    const auto windows = extract_window_features(ecg, gsr, a.window);
    if (g.json) {
        json rows = json::array();
        for (const auto& w : windows)
            rows.push_back({{"start_s", w.start_s},
                            {"rmssd_ms", w.features.rmssd_ms},
                            {"sdsd_ms", w.features.sdsd_ms},
                            {"nn50", w.features.nn50},
                            {"gsrh_uS", w.features.gsrh_us},
                            {"gsrl_s", w.features.gsrl_s}});
        write_or_print(a.out, json{{"windows", rows}}.dump(2) + "\n", out);
        return;
    }
    std::vector<FeatureVector> rows;
    for (const auto& w : windows)
        rows.push_back(w.features);
    write_or_print(a.out, csv::write_features(rows), out);
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::string features, model;
    bool fixed = false;
    int frac_bits = 16;
};

void cmd_classify(const ClassifyArgs& a, const Globals& g, std::ostream& out) {
    const std::string text = read_text_file(a.model);
    std::optional<NetworkModel> float_net;
    std::optional<FixedPointNet> fixed_net;
    if (detect_model_kind(text) == ModelKind::fixed) {
        fixed_net = load_fann_fixed(text);
        float_net = dequantize(*fixed_net);
    } else {
        float_net = load_fann(text);
        if (a.fixed)
            fixed_net = quantize(*float_net, QFormat(a.frac_bits));
    }
    const bool use_fixed = a.fixed || detect_model_kind(text) == ModelKind::fixed;
    if (float_net->input_size() != kFeatureNames.size())
        throw ShapeError("model expects " + std::to_string(float_net->input_size()) + " inputs; feature rows have " +
                         std::to_string(kFeatureNames.size()));

    const auto rows = csv::read_features(read_text_file(a.features)).features;

    json jrows = json::array();
    std::vector<Row> table;
    double max_disc = 0.0;
    std::size_t disagreements = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Classification fc = classify(*float_net, rows[r]);
        Classification c = fc;
        if (use_fixed) {
            c = classify_fixed(*fixed_net, rows[r]);
            for (std::size_t k = 0; k < c.outputs.size(); ++k)
                max_disc = std::max(max_disc, std::fabs(c.outputs[k] - fc.outputs[k]));
            disagreements += c.label != fc.label ? 1 : 0;
        }
        Row row{std::to_string(r), std::to_string(c.label), fmt("%.6f", c.margin)};
        json jr{{"row", r}, {"label", c.label}, {"margin", c.margin}, {"outputs", c.outputs}};
        for (double y : c.outputs)
            row.push_back(fmt("%.6f", y));
        if (use_fixed) {
            row.push_back(std::to_string(fc.label));
            jr["float_label"] = fc.label;
            jr["float_outputs"] = fc.outputs;
        }
        table.push_back(std::move(row));
        jrows.push_back(std::move(jr));
    }

    if (g.json) {
        json doc{{"mode", use_fixed ? "fixed" : "float"}, {"rows", jrows}};
        if (use_fixed) {
            doc["frac_bits"] = fixed_net->format().frac_bits();
            doc["max_abs_discrepancy"] = max_disc;
            doc["label_disagreements"] = disagreements;
        }
        out << doc.dump(2) << '\n';
        return;
    }
    Row header{"row", "label", "margin"};
    for (std::size_t k = 0; k < float_net->output_size(); ++k)
        header.push_back("y" + std::to_string(k));
    if (use_fixed)
        header.push_back("float_label");
    print_csv(out, header, table);
    if (use_fixed)
        out << "# max_abs_discrepancy=" << fmt("%.3e", max_disc) << " label_disagreements=" << disagreements << '\n';
}

// ---------------------------------------------------------------- train

struct TrainArgs {
    std::string data, out, network = "A", hidden;
    std::size_t epochs = 2000;
    double learning_rate = 0.05;
    double init_range = 0.5;
};

std::vector<std::size_t> parse_sizes(const std::string& s) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const auto v = std::stoul(item, &pos);
            if (pos != item.size() || v == 0)
                throw std::invalid_argument(item);
            sizes.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("invalid layer size '" + item + "' in --hidden");
        }
    }
    return sizes;
}

void cmd_train(const TrainArgs& a, const Globals& g, std::ostream& out) {
    NetworkModel net = network_by_name(a.network);
    if (!a.hidden.empty()) {
        std::vector<std::size_t> sizes{kFeatureNames.size()};
        for (auto s : parse_sizes(a.hidden))
            sizes.push_back(s);
        sizes.push_back(3);
        net = NetworkModel(tanh_topology(sizes));
    }
    net = randomize_weights(net, g.seed, a.init_range);

    std::vector<double> history;
    if (!a.data.empty()) {
        const auto labeled = csv::read_features(read_text_file(a.data));
        if (labeled.labels.empty())
            throw ShapeError("training data needs a 'label' column");
        if (net.input_size() != kFeatureNames.size())
            throw ShapeError("network expects " + std::to_string(net.input_size()) + " inputs; feature rows have " +
                             std::to_string(kFeatureNames.size()));
        const InputNormalization norm = fit_normalization(labeled.features);
        net.set_normalization(norm);
        const Dataset data = make_dataset(labeled.features, labeled.labels, net.output_size(), norm);
        TrainResult result = train(net, data, {a.epochs, a.learning_rate});
        net = std::move(result.model);
        history = std::move(result.loss_history);
    }
    write_text_file(a.out, save_fann(net));

    if (g.json) {
        json doc{{"model", a.out}, {"layers", json::array()}, {"weights", net.weight_count()}, {"seed", g.seed}};
        for (const auto& l : net.layers())
            doc["layers"].push_back(l.size);
        if (!history.empty()) {
            doc["epochs"] = a.epochs;
            doc["initial_mse"] = history.front();
            doc["final_mse"] = history.back();
        }
        out << doc.dump(2) << '\n';
        return;
    }
    out << "wrote " << a.out << " (" << net.weight_count() << " weights, seed " << g.seed << ")\n";
    if (!history.empty())
        out << "mse " << fmt("%.6f", history.front()) << " -> " << fmt("%.6f", history.back()) << " after " << a.epochs
            << " epochs\n";
}

// ---------------------------------------------------------------- quantize

struct QuantizeArgs {
    std::string model, out;
    int frac_bits = 16;
};

void cmd_quantize(const QuantizeArgs& a, const Globals& g, std::ostream& out) {
    const NetworkModel net = load_fann(read_text_file(a.model));
    const FixedPointNet q = quantize(net, QFormat(a.frac_bits));
    double max_err = 0.0;
    const NetworkModel back = dequantize(q);
    const auto fw = net.flat_weights();
    const auto bw = back.flat_weights();
    for (std::size_t i = 0; i < fw.size(); ++i)
        if (q.format().representable(fw[i]))
            max_err = std::max(max_err, std::fabs(fw[i] - bw[i]));
    write_text_file(a.out, save_fann_fixed(q));
    if (g.json) {
        out << json{{"model", a.out},
                    {"frac_bits", a.frac_bits},
                    {"weights", net.weight_count()},
                    {"saturated_weights", q.saturated_weights()},
                    {"max_abs_error", max_err}}
                   .dump(2)
            << '\n';
        return;
    }
    out << "wrote " << a.out << " (Q" << 31 - a.frac_bits << "." << a.frac_bits << ", " << net.weight_count()
        << " weights, " << q.saturated_weights() << " saturated, max |error| " << fmt("%.3e", max_err) << ")\n";
}

// ---------------------------------------------------------------- footprint

struct FootprintArgs {
    std::vector<std::string> networks;
    std::string model;
};

void cmd_footprint(const FootprintArgs& a, const Globals& g, std::ostream& out) {
    std::vector<std::pair<std::string, NetworkModel>> nets;
    if (!a.model.empty())
        nets.emplace_back(a.model, load_fann(read_text_file(a.model)));
    for (const auto& n : a.networks)
        nets.emplace_back(n, network_by_name(n));
    if (nets.empty()) {
        nets.emplace_back("A", build_network_a());
        nets.emplace_back("B", build_network_b());
    }
    json jrows = json::array();
    std::vector<Row> rows;
    for (const auto& [name, net] : nets) {
        const FootprintReport f = footprint(net);
        rows.push_back({name, std::to_string(net.layer_count()), std::to_string(net.neuron_count()),
                        std::to_string(net.weight_count()), std::to_string(f.neuron_bytes), std::to_string(f.weight_bytes),
                        std::to_string(f.layer_bytes), std::to_string(f.total_bytes), fmt("%.1f", f.total_bytes / 1000.0)});
        jrows.push_back({{"network", name},
                         {"layers", net.layer_count()},
                         {"neurons", net.neuron_count()},
                         {"weights", net.weight_count()},
                         {"neuron_bytes", f.neuron_bytes},
                         {"weight_bytes", f.weight_bytes},
                         {"layer_bytes", f.layer_bytes},
                         {"total_bytes", f.total_bytes}});
    }
    if (g.json) {
        out << json{{"networks", jrows}}.dump(2) << '\n';
        return;
    }
    print_aligned(out, {"network", "layers", "neurons", "weights", "neuron_B", "weight_B", "layer_B", "total_B", "total_kB"},
                  rows);
}

// ---------------------------------------------------------------- report

struct ReportArgs {
    std::vector<std::string> networks;
    std::vector<std::string> platforms;
    std::string model, profiles;
    std::size_t weights = 0;
    bool all = false;
    bool csv = false;
};

void cmd_report(const ReportArgs& a, const Globals& g, std::ostream& out) {
    const perf::PerfModel model = load_perf_model(a.profiles);

    std::vector<std::pair<std::string, std::size_t>> nets;
    if (!a.model.empty())
        nets.emplace_back(a.model, load_fann(read_text_file(a.model)).weight_count());
    if (a.weights > 0)
        nets.emplace_back("W=" + std::to_string(a.weights), a.weights);
    for (const auto& n : a.networks) {
        if (n == "A" || n == "a")
            nets.emplace_back("A", model.calibration().weights_a);
        else if (n == "B" || n == "b")
            nets.emplace_back("B", model.calibration().weights_b);
        else
            throw ConfigError("unknown network '" + n + "' (available: A, B)");
    }
    if (nets.empty() || a.all) {
        if (a.all)
            nets.clear();
        nets.emplace_back("A", model.calibration().weights_a);
        nets.emplace_back("B", model.calibration().weights_b);
    }
    std::vector<std::string> platforms = a.platforms;
    if (platforms.empty() || a.all)
        platforms = model.calibration().platform_names();
    for (const auto& p : platforms)
        model.profile(p);

    std::vector<Row> rows;
    json jrows = json::array();
    for (const auto& [label, weights] : nets) {
        for (const auto& p : platforms) {
            const perf::Prediction pr = model.predict(weights, p);
            const double power = model.profile(p).power_at(weights);
            rows.push_back({p, label, std::to_string(weights), std::to_string(pr.cycles), g6(pr.seconds * 1e6),
                            g6(pr.joules * 1e6), fmt("%.2f", power * 1e3)});
            jrows.push_back({{"platform", p},
                             {"network", label},
                             {"weights", weights},
                             {"cycles", pr.cycles},
                             {"time_us", pr.seconds * 1e6},
                             {"energy_uJ", pr.joules * 1e6},
                             {"power_mW", power * 1e3}});
        }
    }

    // Speedups and detection energy are only meaningful against the reference target.
    const bool has_reference =
        std::find(platforms.begin(), platforms.end(), "cortex_m4") != platforms.end();
    std::vector<Row> speed_rows, detect_rows;
    json jspeed = json::array(), jdetect = json::array();
    for (const auto& p : platforms) {
        if (has_reference && p != "cortex_m4") {
            const double sa = model.speedup("cortex_m4", p, perf::NetworkId::a);
            const double sb = model.speedup("cortex_m4", p, perf::NetworkId::b);
            speed_rows.push_back({p, fmt("%.2f", sa), fmt("%.2f", sb)});
            jspeed.push_back({{"platform", p}, {"network_a", sa}, {"network_b", sb}});
        }
        const perf::DetectionEnergy d = model.detection_energy(p);
        detect_rows.push_back({p, g6(d.acquisition_j * 1e6), g6(d.feature_j * 1e6), g6(d.classify_j * 1e6),
                               g6(d.total_j * 1e6)});
        jdetect.push_back({{"platform", p},
                           {"acquisition_uJ", d.acquisition_j * 1e6},
                           {"feature_uJ", d.feature_j * 1e6},
                           {"classify_uJ", d.classify_j * 1e6},
                           {"total_uJ", d.total_j * 1e6}});
    }

    if (g.json) {
        json doc{{"rows", jrows}, {"detection_energy", jdetect}};
        if (has_reference)
            doc["speedup_vs_cortex_m4"] = jspeed;
        doc["fixed_vs_float_speedup"] = perf::fixed_vs_float_speedup();
        out << doc.dump(2) << '\n';
        return;
    }
    const Row header{"platform", "network", "weights", "cycles", "time_us", "energy_uJ", "power_mW"};
    if (a.csv) {
        print_csv(out, header, rows);
        return;
    }
    print_aligned(out, header, rows);
    if (!speed_rows.empty()) {
        out << "\nspeedup vs cortex_m4 (cycles)\n";
        print_aligned(out, {"platform", "network_A", "network_B"}, speed_rows);
    }
    out << "\nenergy per detection (uJ)\n";
    print_aligned(out, {"platform", "acquisition", "features", "classify", "total"}, detect_rows);
    out << "\nfixed vs float cycles (network A): " << perf::kFloatCyclesNetworkA << " / " << perf::kFixedCyclesNetworkA
        << " = " << fmt("%.2f", perf::fixed_vs_float_speedup()) << "x\n";
}

// ---------------------------------------------------------------- budget

struct BudgetArgs {
    std::string scenario = "indoor-day", platform = "ri5cy_multi8", profiles, soc_csv;
    std::size_t days = 0;
    std::optional<double> rate;
    std::optional<double> teg_hours;
    double initial_soc = 0.5;
    std::size_t soc_every = 1;
};

harvest::HarvestScenario resolve_scenario(const BudgetArgs& a) {
    if (a.teg_hours) {
        if (a.scenario != "indoor-day")
            throw ConfigError("--teg-hours only applies to the indoor-day scenario");
        return harvest::indoor_day(*a.teg_hours);
    }
    if (std::filesystem::is_regular_file(a.scenario))
        return harvest::load_scenario(read_text_file(a.scenario));
    return harvest::builtin_scenario(a.scenario);
}

void cmd_budget(const BudgetArgs& a, const Globals& g, std::ostream& out) {
    const harvest::HarvestScenario scenario = resolve_scenario(a);
    const perf::PerfModel model = load_perf_model(a.profiles);
    const perf::DetectionEnergy det = model.detection_energy(a.platform);
    const harvest::SustainabilityReport rep = harvest::sustainable_rate(scenario, det.total_j);

    json doc{{"scenario", scenario.name},
             {"platform", a.platform},
             {"daily_intake_J", rep.daily_intake_j},
             {"detection_energy_uJ", rep.detection_energy_j * 1e6},
             {"max_detections_per_day", rep.max_detections_per_day},
             {"max_detections_per_minute", rep.max_detections_per_minute},
             {"whole_detections_per_minute", std::floor(rep.max_detections_per_minute)}};

    std::ostringstream text;
    text << "scenario                 " << scenario.name << "\n"
         << "platform                 " << a.platform << "\n"
         << "daily intake             " << fmt("%.4f", rep.daily_intake_j) << " J\n"
         << "energy per detection     " << fmt("%.1f", rep.detection_energy_j * 1e6) << " uJ\n"
         << "sustainable detections   " << rep.max_detections_per_day << " per day\n"
         << "                         " << fmt("%.2f", rep.max_detections_per_minute) << " per minute ("
         << fmt("%.0f", std::floor(rep.max_detections_per_minute)) << " whole)\n";

    if (a.days > 0 || a.rate || !a.soc_csv.empty()) {
        harvest::SocOptions opt;
        opt.days = std::max<std::size_t>(a.days, 1);
        opt.detections_per_minute = a.rate.value_or(rep.max_detections_per_minute);
        opt.detection_energy_j = det.total_j;
        opt.record_timeline = !a.soc_csv.empty();
        const harvest::BatteryState battery = harvest::BatteryState::lipo_120mah(a.initial_soc);
        const harvest::SocResult sim = harvest::simulate_soc(scenario, battery, opt);
        const double drift = sim.final_charge_j - sim.initial_charge_j;

        doc["simulation"] = {{"days", opt.days},
                             {"detections_per_minute", opt.detections_per_minute},
                             {"capacity_J", battery.capacity_j},
                             {"initial_charge_J", sim.initial_charge_j},
                             {"final_charge_J", sim.final_charge_j},
                             {"min_charge_J", sim.min_charge_j},
                             {"max_charge_J", sim.max_charge_j},
                             {"drift_J", drift},
                             {"intake_J", sim.total_intake_j},
                             {"load_J", sim.total_load_j},
                             {"overflow_J", sim.overflow_j},
                             {"shortfall_J", sim.shortfall_j},
                             {"brownout", sim.brownout},
                             {"end_of_day_charge_J", sim.end_of_day_charge_j}};
        if (sim.first_brownout_s)
            doc["simulation"]["first_brownout_s"] = *sim.first_brownout_s;

        text << "\nsimulated " << opt.days << " day(s) at " << fmt("%.3f", opt.detections_per_minute)
             << " detections/min, battery " << fmt("%.1f", battery.capacity_j) << " J\n"
             << "charge                   " << fmt("%.4f", sim.initial_charge_j) << " -> "
             << fmt("%.4f", sim.final_charge_j) << " J (drift " << fmt("%+.4f", drift) << " J)\n"
             << "min / max charge         " << fmt("%.4f", sim.min_charge_j) << " / " << fmt("%.4f", sim.max_charge_j)
             << " J\n"
             << "brownout                 " << (sim.brownout ? "yes" : "no");
        if (sim.first_brownout_s)
            text << " (first at " << fmt("%.0f", *sim.first_brownout_s) << " s, day "
                 << static_cast<std::size_t>(*sim.first_brownout_s / harvest::kSecondsPerDay) + 1 << ")";
        text << "\n";

        if (!a.soc_csv.empty()) {
            std::string csv_text = "t_s,charge_j\n";
            csv_text += "0," + csv::format_number(sim.initial_charge_j) + "\n";
            const std::size_t every = std::max<std::size_t>(a.soc_every, 1);
            for (std::size_t i = every - 1; i < sim.t_s.size(); i += every)
                csv_text += csv::format_number(sim.t_s[i]) + "," + csv::format_number(sim.charge_j[i]) + "\n";
            write_text_file(a.soc_csv, csv_text);
        }
    }

    if (g.json)
        out << doc.dump(2) << '\n';
    else
        out << text.str();
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
    std::string ecg_out = "ecg.csv", gsr_out = "gsr.csv";
    synth::EcgOptions ecg;
    synth::GsrOptions gsr;
};

void cmd_synth(SynthArgs a, const Globals& g, std::ostream& out) {
    a.gsr.duration_s = a.ecg.duration_s;
    const auto ecg = synth::ecg(a.ecg, g.seed);
    const auto gsr = synth::gsr(a.gsr, g.seed + 1);
    write_text_file(a.ecg_out, csv::write_ecg(ecg.signal));
    write_text_file(a.gsr_out, csv::write_gsr(gsr));
    if (g.json) {
        out << json{{"ecg", a.ecg_out}, {"gsr", a.gsr_out}, {"beats", ecg.beat_times_s.size()}, {"seed", g.seed}}.dump(2)
            << '\n';
        return;
    }
    out << "wrote " << a.ecg_out << " (" << ecg.signal.values.size() << " samples, " << ecg.beat_times_s.size()
        << " beats) and " << a.gsr_out << " (" << gsr.conductance_us.size() << " samples)\n";
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e))
        return kParseError;
    if (dynamic_cast<const ShapeError*>(&e))
        return kShapeError;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const CalibrationError*>(&e))
        return kConfigError;
    return kDataError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wearable stress-detection pipeline: features, MLP inference, performance and energy budget"};
    app.name("wristml");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Seed for weight initialization and synthetic data");
    app.add_flag("--json", g.json, "Machine-readable JSON output");

    FeaturesArgs fa;
    auto* features = app.add_subcommand("features", "Windowed HRV + GSR features from ECG and GSR CSV files");
    features->add_option("--ecg", fa.ecg, "time_s,ecg CSV")->required();
    features->add_option("--gsr", fa.gsr, "time_s,gsr_uS CSV")->required();
    features->add_option("--window", fa.window.window_length_s, "Window length in seconds")->capture_default_str();
    features->add_option("--overlap", fa.window.overlap, "Window overlap fraction in [0, 1)")->capture_default_str();
    features->add_option("--gsr-threshold", fa.window.gsr_threshold_us, "Minimum GSR rise in uS")->capture_default_str();
    features->add_option("-o,--out", fa.out, "Output file (default stdout)");

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Classify feature rows with a model file");
    classify_cmd->add_option("--features", ca.features, "Feature CSV")->required();
    classify_cmd->add_option("--model", ca.model, "Float or fixed-point model file")->required();
    classify_cmd->add_flag("--fixed", ca.fixed, "Use the fixed-point path and report the float discrepancy");
    classify_cmd->add_option("--frac-bits", ca.frac_bits, "Fractional bits when quantizing a float model")
        ->capture_default_str();

    TrainArgs ta;
    auto* train_cmd = app.add_subcommand("train", "Initialize and train an MLP on labelled feature rows");
    train_cmd->add_option("--data", ta.data, "Feature CSV with a trailing label column (omit to only initialize)");
    train_cmd->add_option("--network", ta.network, "Topology: A or B")->capture_default_str();
    train_cmd->add_option("--hidden", ta.hidden, "Hidden layer sizes, e.g. 50,50 (5 inputs, 3 outputs)");
    train_cmd->add_option("--epochs", ta.epochs, "Gradient-descent epochs")->capture_default_str();
    train_cmd->add_option("--lr", ta.learning_rate, "Learning rate")->capture_default_str();
    train_cmd->add_option("--init-range", ta.init_range, "Initial weights drawn from [-r, r]")->capture_default_str();
    train_cmd->add_option("-o,--out", ta.out, "Model file to write")->required();

    QuantizeArgs qa;
    auto* quantize_cmd = app.add_subcommand("quantize", "Convert a float model to fixed point");
    quantize_cmd->add_option("--model", qa.model, "Float model file")->required();
    quantize_cmd->add_option("--frac-bits", qa.frac_bits, "Fractional bits of the 32-bit format")->capture_default_str();
    quantize_cmd->add_option("-o,--out", qa.out, "Fixed-point model file to write")->required();

    ReportArgs ra;
    auto* report = app.add_subcommand("report", "Predicted cycles, time and energy per platform");
    report->add_option("--network", ra.networks, "A and/or B");
    report->add_option("--weights", ra.weights, "Arbitrary weight count");
    report->add_option("--model", ra.model, "Model file whose weight count to use");
    report->add_option("--platform", ra.platforms, "Platform name(s)");
    report->add_flag("--all", ra.all, "Both calibration networks on every platform");
    report->add_flag("--csv", ra.csv, "CSV instead of an aligned table");
    report->add_option("--profiles", ra.profiles, "Platform profile document (YAML)");

    BudgetArgs ba;
    auto* budget = app.add_subcommand("budget", "Self-sustainable detection rate and battery simulation");
    budget->add_option("--scenario", ba.scenario, "Built-in scenario name or scenario YAML file")->capture_default_str();
    budget->add_option("--platform", ba.platform, "Platform running the classifier")->capture_default_str();
    budget->add_option("--profiles", ba.profiles, "Platform profile document (YAML)");
    budget->add_option("--days", ba.days, "Simulate the battery for this many days");
    budget->add_option("--rate", ba.rate, "Detections per minute for the simulation (default: sustainable rate)");
    budget->add_option("--teg-hours", ba.teg_hours, "Hours of TEG harvesting in indoor-day (default 24)");
    budget->add_option("--initial-soc", ba.initial_soc, "Initial state of charge in [0, 1]")->capture_default_str();
    budget->add_option("--soc-csv", ba.soc_csv, "Write the t_s,charge_j timeline here");
    budget->add_option("--soc-every", ba.soc_every, "Keep every n-th step in the timeline")->capture_default_str();

    FootprintArgs fpa;
    auto* fp = app.add_subcommand("footprint", "Estimated on-device memory footprint");
    fp->add_option("--network", fpa.networks, "A and/or B");
    fp->add_option("--model", fpa.model, "Model file");

    SynthArgs sa;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic ECG + GSR recording");
    synth_cmd->add_option("--ecg-out", sa.ecg_out, "ECG CSV path")->capture_default_str();
    synth_cmd->add_option("--gsr-out", sa.gsr_out, "GSR CSV path")->capture_default_str();
    synth_cmd->add_option("--duration", sa.ecg.duration_s, "Seconds")->capture_default_str();
    synth_cmd->add_option("--ecg-rate", sa.ecg.sample_rate_hz, "ECG sample rate in Hz")->capture_default_str();
    synth_cmd->add_option("--mean-rr", sa.ecg.mean_rr_ms, "Mean RR interval in ms")->capture_default_str();
    synth_cmd->add_option("--rr-jitter", sa.ecg.rr_jitter_ms, "Uniform RR jitter in ms")->capture_default_str();
    synth_cmd->add_option("--gsr-rate", sa.gsr.sample_rate_hz, "GSR sample rate in Hz")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (features->parsed())
            cmd_features(fa, g, out);
        else if (classify_cmd->parsed())
            cmd_classify(ca, g, out);
        else if (train_cmd->parsed())
            cmd_train(ta, g, out);
        else if (quantize_cmd->parsed())
            cmd_quantize(qa, g, out);
        else if (report->parsed())
            cmd_report(ra, g, out);
        else if (budget->parsed())
            cmd_budget(ba, g, out);
        else if (fp->parsed())
            cmd_footprint(fpa, g, out);
        else if (synth_cmd->parsed())
            cmd_synth(sa, g, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kOk;
}

}  // namespace wristml::cli

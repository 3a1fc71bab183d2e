#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xtmon/atomic_file.hpp"
#include "xtmon/binning.hpp"
#include "xtmon/config.hpp"
#include "xtmon/errors.hpp"
#include "xtmon/extract.hpp"
#include "xtmon/measurement_io.hpp"
#include "xtmon/report.hpp"
#include "xtmon/rosc.hpp"
#include "xtmon/transim.hpp"
#include "xtmon/units.hpp"
#include "xtmon/validation.hpp"
#include "xtmon/waveform_io.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kValidation = 3, kNumeric = 4, kIo = 5, kChecksFailed = 6 };

int verbosity = 0;
std::string parsing_file;  // named in parse error messages

void info(const std::string& msg) {
    if (verbosity > 0)
        std::cerr << msg << "\n";
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        xtmon::write_file_atomic(path, text);
        info("wrote " + path);
    }
}

template <typename F>
auto parse_file(const std::string& path, F&& parse) {
    const std::string text = xtmon::read_file(path);
    parsing_file = path;
    auto result = parse(text);
    parsing_file.clear();
    return result;
}

xtmon::ConfigFile load_config(const std::string& path) {
    auto cfg = parse_file(path, [](const std::string& t) { return xtmon::parse_config(t); });
    for (const auto& w : cfg.warnings)
        std::cerr << "warning: " << path << ": " << w << "\n";
    return cfg;
}

std::vector<xtmon::MeasurementRecord> load_measurements(const std::string& path) {
    auto records = parse_file(path, [](const std::string& t) { return xtmon::parse_measurements(t); });
    info("read " + std::to_string(records.size()) + " records from " + path);
    return records;
}

std::vector<xtmon::MeasurementRecord> filter_geometry(std::vector<xtmon::MeasurementRecord> records,
                                                      const std::string& geometry) {
    if (geometry.empty())
        return records;
    std::vector<xtmon::MeasurementRecord> out;
    for (auto& r : records) {
        if (r.geometry == geometry)
            out.push_back(std::move(r));
    }
    if (out.empty())
        throw xtmon::ValidationError("no records for geometry '" + geometry + "'");
    return out;
}

xtmon::ReportFormat format_from(const std::string& name) {
    const auto f = xtmon::parse_report_format(name);
    if (!f)
        throw CLI::ValidationError("--format", "must be text, csv or json");
    return *f;
}

const xtmon::GeometryBinding& binding_for(const xtmon::ConfigFile& cfg, const std::string& geometry) {
    const auto it = cfg.geometries.find(geometry);
    if (it == cfg.geometries.end())
        throw xtmon::ValidationError("config has no geometry '" + geometry + "'");
    return it->second;
}

// Extraction runs per geometry so each group picks up its own RoConfig.
std::vector<xtmon::ExtractionResult> extract_records(const std::vector<xtmon::MeasurementRecord>& records,
                                                     const xtmon::ConfigFile& cfg) {
    xtmon::ExtractionOptions opts;
    opts.rsw_mode = cfg.rsw_mode;
    std::vector<xtmon::ExtractionResult> results;
    for (const auto& [key, group] : xtmon::group_records(records)) {
        info("extracting die '" + key.first + "' geometry " + key.second);
        results.push_back(xtmon::extract_all(group, cfg.ro_for(key.second), opts));
    }
    return results;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interconnect crosstalk monitor: ring-oscillator parasitic extraction and RC crosstalk models"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", verbosity, "Progress messages on stderr (repeat for more)");

    std::string input;
    std::string output;
    std::string config_path;
    std::string format_name = "text";
    std::string geometry;

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Forward model: oracle waveforms or synthetic measurements");
    simulate->require_subcommand(1);

    auto* sim_wave = simulate->add_subcommand("waveform", "Step response of the three-line RC network to CSV");
    std::string mode_name = "quiet";
    int segments = 1;
    double r_ohm = 0.0;
    double c_ff = 0.0;
    double cc_ff = -1.0;
    double v_dd = 0.0;
    double dt = 0.0;
    double t_end = 0.0;
    std::string svg_path;
    sim_wave->add_option("-c,--config", config_path, "Config file supplying the line for --geometry");
    sim_wave->add_option("-g,--geometry", geometry, "Geometry whose line binding to use");
    sim_wave->add_option("--r-ohm", r_ohm, "Line resistance in ohm (overrides config)");
    sim_wave->add_option("--c-ff", c_ff, "Line ground capacitance in fF (overrides config)");
    sim_wave->add_option("--cc-ff", cc_ff, "Coupling capacitance in fF (overrides config)");
    sim_wave->add_option("--vdd", v_dd, "Supply voltage in V (overrides config)");
    sim_wave->add_option("-m,--mode", mode_name, "in-phase, out-of-phase or quiet")->capture_default_str();
    sim_wave->add_option("-s,--segments", segments, "Segments per line (1 = lumped)")->capture_default_str();
    sim_wave->add_option("--dt", dt, "Time step in s (default: min time constant / 50)");
    sim_wave->add_option("--t-end", t_end, "End time in s (default: 30 x max time constant)");
    sim_wave->add_option("-o,--output", output, "CSV output path (default stdout)");
    sim_wave->add_option("--svg", svg_path, "Also write an SVG plot here");

    auto* sim_meas = simulate->add_subcommand("measurements", "Synthetic RO measurements from a config truth");
    double noise = -1.0;
    long long seed = -1;
    std::string die;
    sim_meas->add_option("-c,--config", config_path, "Config file")->required();
    sim_meas->add_option("-g,--geometry", geometry, "Geometry whose truth binding to use")->required();
    sim_meas->add_option("--noise", noise, "Relative noise sigma (default from config)");
    sim_meas->add_option("--seed", seed, "RNG seed (default from config)");
    sim_meas->add_option("--die", die, "Die label for the records");
    sim_meas->add_option("-o,--output", output, "Measurement file output path (default stdout)");

    // extract
    auto* extract = app.add_subcommand("extract", "Extract parasitics from measurements and compare to spec");
    extract->add_option("-i,--input", input, "Measurement file")->required();
    extract->add_option("-c,--config", config_path, "Config file")->required();
    extract->add_option("-g,--geometry", geometry, "Only this geometry");
    extract->add_option("-f,--format", format_name, "text, csv or json")->capture_default_str();
    extract->add_option("-o,--output", output, "Output path (default stdout)");

    // validate
    auto* validate = app.add_subcommand("validate", "Closed forms vs network simulation suite");
    xtmon::ValidationOptions vopts;
    validate->add_option("-c,--config", config_path, "Config file (v_dd, threshold, oracle segments)");
    validate->add_option("--seed", vopts.seed, "RNG seed")->capture_default_str();
    validate->add_option("--draws", vopts.waveform_draws, "Random lines for the waveform check")
        ->capture_default_str();
    validate->add_option("--ordering-draws", vopts.ordering_draws, "Random lines for the ordering check")
        ->capture_default_str();
    validate->add_option("--segments", vopts.scaling_segments, "Segments of the distributed line")
        ->capture_default_str();
    validate->add_option("--ratios", vopts.scaling_coupling_ratios, "Cc/C values for the scaling sweep")
        ->capture_default_str();
    validate->add_option("-f,--format", format_name, "text, csv or json")->capture_default_str();
    validate->add_option("-o,--output", output, "Output path (default stdout)");

    // report
    auto* report = app.add_subcommand("report", "Spec comparison from saved results or measurements");
    std::string results_path;
    auto* results_opt = report->add_option("-r,--results", results_path, "JSON report written by extract");
    auto* input_opt = report->add_option("-i,--input", input, "Measurement file");
    results_opt->excludes(input_opt);
    report->add_option("-c,--config", config_path, "Config file (required with --input)");
    report->add_option("-f,--format", format_name, "text, csv or json")->capture_default_str();
    report->add_option("-o,--output", output, "Output path (default stdout)");

    // binning
    auto* binning = app.add_subcommand("binning", "Per-die clock binning from multi-die measurements");
    binning->add_option("-i,--input", input, "Measurement file with a die column")->required();
    binning->add_option("-c,--config", config_path, "Config file")->required();
    binning->add_option("-g,--geometry", geometry, "Geometry used as the delay monitor")->required();
    binning->add_option("-f,--format", format_name, "text, csv or json")->capture_default_str();
    binning->add_option("-o,--output", output, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*sim_wave) {
            std::optional<xtmon::LineRC> line;
            double supply = 0.9;
            if (!config_path.empty()) {
                const auto cfg = load_config(config_path);
                supply = cfg.ro.v_dd;
                if (!geometry.empty())
                    line = binding_for(cfg, geometry).line;
            }
            if (v_dd > 0.0)
                supply = v_dd;
            const double r = r_ohm > 0.0 ? r_ohm : (line ? line->r : 0.0);
            const double c = c_ff > 0.0 ? c_ff * xtmon::units::fF : (line ? line->c : 0.0);
            const double cc = cc_ff >= 0.0 ? cc_ff * xtmon::units::fF : (line ? line->c_c : -1.0);
            if (r <= 0.0 || c <= 0.0 || cc < 0.0)
                throw CLI::ValidationError("simulate waveform",
                                           "need --r-ohm, --c-ff and --cc-ff, or --config with a --geometry line binding");
            const auto mode = xtmon::parse_mode(mode_name);
            if (!mode)
                throw CLI::ValidationError("--mode", "must be in-phase, out-of-phase or quiet");

            const xtmon::LineRC rc(r, c, cc, supply);
            const auto net = xtmon::build_network(rc, segments);
            const double step = dt > 0.0 ? dt : xtmon::default_time_step(net);
            const double stop = t_end > 0.0 ? t_end : xtmon::default_end_time(net);
            info("simulating " + std::to_string(net.node_count()) + " nodes, " +
                 std::to_string(static_cast<long long>(stop / step)) + " steps");
            const auto waves = xtmon::simulate_step(net, xtmon::DrivePattern::for_mode(*mode, supply), step, stop);
            emit(output, xtmon::waveforms_to_csv(waves));
            if (!svg_path.empty()) {
                const std::string title = std::string(xtmon::to_string(*mode)) + " step, " +
                                          std::to_string(segments) + " segment(s)";
                xtmon::write_file_atomic(svg_path, xtmon::waveforms_to_svg(waves, title));
                info("wrote " + svg_path);
            }
        } else if (*sim_meas) {
            const auto cfg = load_config(config_path);
            const auto& binding = binding_for(cfg, geometry);
            if (!binding.truth)
                throw xtmon::ValidationError("geometry '" + geometry + "' has no truth binding");
            xtmon::SynthesisOptions opts;
            opts.noise_sigma = noise >= 0.0 ? noise : cfg.noise_sigma;
            opts.seed = seed >= 0 ? static_cast<std::uint64_t>(seed) : cfg.seed;
            opts.die = die;
            const auto records = xtmon::synthesize_measurements(*binding.truth, cfg.ro_for(geometry), opts);
            emit(output, xtmon::format_measurements(records));
        } else if (*extract) {
            const auto format = format_from(format_name);
            const auto cfg = load_config(config_path);
            const auto records = filter_geometry(load_measurements(input), geometry);
            const auto results = extract_records(records, cfg);
            emit(output, xtmon::emit_report(xtmon::make_report(results, cfg.spec_table()), format));
        } else if (*validate) {
            const auto format = format_from(format_name);
            if (!config_path.empty()) {
                const auto cfg = load_config(config_path);
                vopts.v_dd = cfg.ro.v_dd;
                vopts.threshold_fraction = cfg.threshold_fraction;
                if (validate->count("--segments") == 0)
                    vopts.scaling_segments = cfg.oracle_segments;
            }
            info("running validation suite");
            const auto result = xtmon::run_validation(vopts);
            emit(output, xtmon::emit_validation(result, format));
            if (!result.passed())
                return kChecksFailed;
        } else if (*report) {
            const auto format = format_from(format_name);
            std::vector<xtmon::ReportEntry> entries;
            if (!results_path.empty()) {
                entries = parse_file(results_path, [](const std::string& t) { return xtmon::parse_report_json(t); });
                if (!config_path.empty()) {
                    std::vector<xtmon::ExtractionResult> results;
                    for (const auto& e : entries)
                        results.push_back(e.result);
                    entries = xtmon::make_report(results, load_config(config_path).spec_table());
                }
            } else if (!input.empty()) {
                if (config_path.empty())
                    throw CLI::ValidationError("report", "--input needs --config");
                const auto cfg = load_config(config_path);
                entries = xtmon::make_report(extract_records(load_measurements(input), cfg), cfg.spec_table());
            } else {
                throw CLI::ValidationError("report", "give --results or --input");
            }
            emit(output, xtmon::emit_report(entries, format));
        } else if (*binning) {
            const auto format = format_from(format_name);
            const auto cfg = load_config(config_path);
            const auto records = filter_geometry(load_measurements(input), geometry);
            emit(output, xtmon::emit_binning(xtmon::monitor_binning(extract_records(records, cfg)), format));
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const xtmon::ParseError& e) {
        std::cerr << "parse error: " << (parsing_file.empty() ? "" : parsing_file + ": ") << e.what() << "\n";
        return kParse;
    } catch (const xtmon::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const xtmon::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const xtmon::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}

#include "xtmon/config.hpp"

#include <cmath>
#include <initializer_list>

#include <json.hpp>

#include "xtmon/errors.hpp"
#include "xtmon/units.hpp"

namespace xtmon {

namespace {

using nlohmann::json;

std::string join(std::initializer_list<const char*> names) {
    std::string out;
    for (const char* n : names) {
        if (!out.empty())
            out += ", ";
        out += n;
    }
    return out;
}

void warn_unknown(const json& object, std::initializer_list<const char*> known, const std::string& where,
                  std::vector<std::string>& warnings) {
    for (const auto& [key, value] : object.items()) {
        bool found = false;
        for (const char* k : known)
            found = found || key == k;
        if (!found)
            warnings.push_back("unknown key '" + key + "' in " + where + " (known keys: " + join(known) + ")");
    }
}

const json& require_object(const json& parent, const char* key, const std::string& where) {
    const auto it = parent.find(key);
    if (it == parent.end())
        throw ValidationError(std::string("missing required key '") + key + "' in " + where);
    if (!it->is_object())
        throw ValidationError(std::string("'") + key + "' in " + where + " must be an object");
    return *it;
}

double number(const json& parent, const char* key, const std::string& where) {
    const auto it = parent.find(key);
    if (it == parent.end())
        throw ValidationError(std::string("missing required key '") + key + "' in " + where);
    if (!it->is_number())
        throw ValidationError(std::string("'") + key + "' in " + where + " must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v))
        throw ValidationError(std::string("'") + key + "' in " + where + " must be finite");
    return v;
}

double positive(const json& parent, const char* key, const std::string& where) {
    const double v = number(parent, key, where);
    if (!(v > 0.0))
        throw ValidationError(std::string("'") + key + "' in " + where + " must be positive, got " + std::to_string(v));
    return v;
}

double non_negative(const json& parent, const char* key, const std::string& where) {
    const double v = number(parent, key, where);
    if (v < 0.0)
        throw ValidationError(std::string("'") + key + "' in " + where + " must be >= 0, got " + std::to_string(v));
    return v;
}

int integer(const json& parent, const char* key, const std::string& where, int minimum) {
    const auto it = parent.find(key);
    if (it == parent.end())
        throw ValidationError(std::string("missing required key '") + key + "' in " + where);
    if (!it->is_number_integer())
        throw ValidationError(std::string("'") + key + "' in " + where + " must be an integer");
    const auto v = it->get<long long>();
    if (v < minimum || v > 1'000'000'000)
        throw ValidationError(std::string("'") + key + "' in " + where + " must be >= " + std::to_string(minimum) +
                              ", got " + std::to_string(v));
    return static_cast<int>(v);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

SpecTable ConfigFile::spec_table() const {
    SpecTable table;
    for (const auto& [name, binding] : geometries) {
        if (binding.spec)
            table.emplace(name, *binding.spec);
    }
    return table;
}

RoConfig ConfigFile::ro_for(const std::string& geometry) const {
    RoConfig cfg = ro;
    cfg.geometry = geometry;
    return cfg;
}

ConfigFile parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        throw ParseError(line, column, std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ParseError(1, 1, "config must be a JSON object");

    ConfigFile cfg;
    const std::string top = "config";
    warn_unknown(root,
                 {"n", "m", "v_dd", "rsw_mode", "threshold_fraction", "oracle_segments", "noise_sigma", "seed",
                  "geometries"},
                 top, cfg.warnings);

    cfg.ro.n = integer(root, "n", top, 3);
    cfg.ro.m = integer(root, "m", top, 1);
    cfg.ro.v_dd = positive(root, "v_dd", top);
    cfg.ro.validate();

    if (root.contains("rsw_mode")) {
        const json& v = root["rsw_mode"];
        const auto mode = v.is_string() ? parse_rsw_mode(v.get<std::string>()) : std::nullopt;
        if (!mode)
            throw ValidationError("'rsw_mode' must be \"in-phase\" or \"quiet\"");
        cfg.rsw_mode = *mode;
    }
    if (root.contains("threshold_fraction")) {
        cfg.threshold_fraction = positive(root, "threshold_fraction", top);
        if (!(cfg.threshold_fraction < 1.0))
            throw ValidationError("'threshold_fraction' must lie in (0, 1)");
    }
    if (root.contains("oracle_segments"))
        cfg.oracle_segments = integer(root, "oracle_segments", top, 1);
    if (root.contains("noise_sigma"))
        cfg.noise_sigma = non_negative(root, "noise_sigma", top);
    if (root.contains("seed"))
        cfg.seed = static_cast<std::uint64_t>(integer(root, "seed", top, 0));

    if (root.contains("geometries")) {
        const json& geos = require_object(root, "geometries", top);
        for (const auto& [name, g] : geos.items()) {
            const std::string where = "geometries." + name;
            if (!g.is_object())
                throw ValidationError(where + " must be an object");
            warn_unknown(g, {"line", "spec", "truth"}, where, cfg.warnings);
            GeometryBinding binding;
            if (g.contains("line")) {
                const json& l = require_object(g, "line", where);
                const std::string lw = where + ".line";
                warn_unknown(l, {"r_ohm", "c_fF", "c_c_fF"}, lw, cfg.warnings);
                binding.line = LineRC(positive(l, "r_ohm", lw), positive(l, "c_fF", lw) * units::fF,
                                      non_negative(l, "c_c_fF", lw) * units::fF, cfg.ro.v_dd);
            }
            if (g.contains("spec")) {
                const json& s = require_object(g, "spec", where);
                const std::string sw = where + ".spec";
                warn_unknown(s, {"c_total_fF", "c_gate_fF", "c_int_fF", "c_c_fF", "r_sw_ohm"}, sw, cfg.warnings);
                binding.spec = SpecEntry{positive(s, "c_total_fF", sw) * units::fF,
                                         positive(s, "c_gate_fF", sw) * units::fF,
                                         positive(s, "c_int_fF", sw) * units::fF,
                                         positive(s, "c_c_fF", sw) * units::fF, positive(s, "r_sw_ohm", sw)};
            }
            if (g.contains("truth")) {
                const json& t = require_object(g, "truth", where);
                const std::string tw = where + ".truth";
                warn_unknown(t, {"r_sw_ohm", "c_gate_fF", "c_int_fF", "c_c_fF"}, tw, cfg.warnings);
                binding.truth = ParasiticTruth{positive(t, "r_sw_ohm", tw), positive(t, "c_gate_fF", tw) * units::fF,
                                               positive(t, "c_int_fF", tw) * units::fF,
                                               non_negative(t, "c_c_fF", tw) * units::fF};
            }
            cfg.geometries.emplace(name, std::move(binding));
        }
    }
    return cfg;
}

}  // namespace xtmon

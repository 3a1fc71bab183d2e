#include "xtmon/measurement_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "xtmon/errors.hpp"
#include "xtmon/units.hpp"

namespace xtmon {

namespace {

constexpr std::string_view kFormatTag = "xtmon-measurements/1";

struct Field {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<Field> split_fields(std::string_view line) {
    std::vector<Field> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string_view raw = line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                                                         : comma - start);
        std::size_t lead = 0;
        while (lead < raw.size() && (raw[lead] == ' ' || raw[lead] == '\t'))
            ++lead;
        out.push_back({trim(raw), start + lead + 1});
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::optional<double> time_unit(std::string_view u) {
    if (u == "s")
        return 1.0;
    if (u == "ms")
        return 1e-3;
    if (u == "us")
        return units::us;
    if (u == "ns")
        return units::ns;
    if (u == "ps")
        return units::ps;
    return std::nullopt;
}

std::optional<double> current_unit(std::string_view u) {
    if (u == "A")
        return 1.0;
    if (u == "mA")
        return units::mA;
    if (u == "uA")
        return units::uA;
    if (u == "nA")
        return 1e-9;
    return std::nullopt;
}

struct Units {
    double time = 0.0;
    double current = 0.0;
};

Units parse_units(std::string_view spec, std::size_t line_no, std::size_t column) {
    Units u;
    bool have_time = false;
    bool have_current = false;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        while (pos < spec.size() && (spec[pos] == ' ' || spec[pos] == '\t'))
            ++pos;
        if (pos >= spec.size())
            break;
        std::size_t end = pos;
        while (end < spec.size() && spec[end] != ' ' && spec[end] != '\t')
            ++end;
        const std::string_view token = spec.substr(pos, end - pos);
        const std::size_t col = column + pos;
        const std::size_t eq = token.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, col, "units entry '" + std::string(token) + "' must look like name=unit");
        const std::string_view key = token.substr(0, eq);
        const std::string_view value = token.substr(eq + 1);
        if (key == "t_osc") {
            const auto f = time_unit(value);
            if (!f)
                throw ParseError(line_no, col + eq + 1,
                                 "unit mismatch: t_osc unit '" + std::string(value) + "' is not one of s, ms, us, ns, ps");
            u.time = *f;
            have_time = true;
        } else if (key == "current") {
            const auto f = current_unit(value);
            if (!f)
                throw ParseError(line_no, col + eq + 1,
                                 "unit mismatch: current unit '" + std::string(value) + "' is not one of A, mA, uA, nA");
            u.current = *f;
            have_current = true;
        } else {
            throw ParseError(line_no, col, "unknown units key '" + std::string(key) + "' (expected t_osc, current)");
        }
        pos = end;
    }
    if (!have_time || !have_current)
        throw ParseError(line_no, column, "units directive must declare both t_osc and current");
    return u;
}

double parse_number(const Field& f, std::size_t line_no, std::string_view name) {
    double value = 0.0;
    const char* first = f.text.data();
    const char* last = first + f.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (f.text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value))
        throw ParseError(line_no, f.column, std::string(name) + ": '" + std::string(f.text) + "' is not a number");
    return value;
}

}  // namespace

std::vector<MeasurementRecord> parse_measurements(std::string_view text) {
    std::optional<Units> units;
    bool have_format = false;
    std::map<std::string, std::size_t> columns;
    bool have_header = false;
    std::vector<MeasurementRecord> records;
    std::set<std::tuple<std::string, std::string, Fanout, CrosstalkMode>> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty())
            continue;

        if (line.front() == '#') {
            std::string_view body = line.substr(1);
            std::size_t col = raw.find('#') + 2;
            while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) {
                body.remove_prefix(1);
                ++col;
            }
            const std::size_t colon = body.find(':');
            if (colon == std::string_view::npos)
                continue;
            const std::string_view key = trim(body.substr(0, colon));
            std::string_view value = body.substr(colon + 1);
            std::size_t value_col = col + colon + 1;
            while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) {
                value.remove_prefix(1);
                ++value_col;
            }
            value = trim(value);
            if (key == "format" || key == "units") {
                if (have_header)
                    throw ParseError(line_no, col, "'" + std::string(key) + "' directive must precede the column header");
                if (key == "format") {
                    if (value != kFormatTag)
                        throw ParseError(line_no, value_col,
                                         "unsupported format '" + std::string(value) + "', expected " +
                                             std::string(kFormatTag));
                    have_format = true;
                } else {
                    units = parse_units(value, line_no, value_col);
                }
            }
            continue;
        }

        const std::vector<Field> fields = split_fields(raw.substr(0, raw.size()));

        if (!have_header) {
            if (!have_format)
                throw ParseError(line_no, 1, "missing '# format: " + std::string(kFormatTag) + "' directive");
            if (!units)
                throw ParseError(line_no, 1, "units must be declared with a '# units:' directive");
            static const std::set<std::string> known{"die", "geometry", "fanout", "mode",
                                                     "t_osc", "i_eff", "i_dda", "i_ddq"};
            for (std::size_t i = 0; i < fields.size(); ++i) {
                const std::string name(fields[i].text);
                if (!known.count(name))
                    throw ParseError(line_no, fields[i].column, "unknown column '" + name + "'");
                if (!columns.emplace(name, i).second)
                    throw ParseError(line_no, fields[i].column, "duplicate column '" + name + "'");
            }
            for (const char* req : {"geometry", "fanout", "mode", "t_osc"}) {
                if (!columns.count(req))
                    throw ParseError(line_no, 1, std::string("missing required column '") + req + "'");
            }
            const bool supply = columns.count("i_dda") && columns.count("i_ddq");
            if (!columns.count("i_eff") && !supply)
                throw ParseError(line_no, 1, "need an i_eff column or both i_dda and i_ddq");
            if (columns.count("i_dda") != columns.count("i_ddq"))
                throw ParseError(line_no, 1, "i_dda and i_ddq columns must appear together");
            have_header = true;
            continue;
        }

        if (fields.size() != columns.size())
            throw ParseError(line_no, fields.back().column,
                             "expected " + std::to_string(columns.size()) + " fields, found " +
                                 std::to_string(fields.size()));

        auto field = [&](const char* name) -> std::optional<Field> {
            const auto it = columns.find(name);
            if (it == columns.end())
                return std::nullopt;
            return fields[it->second];
        };

        MeasurementRecord r;
        if (const auto die = field("die"))
            r.die = std::string(die->text);

        const Field geometry = *field("geometry");
        if (geometry.text.empty())
            throw ParseError(line_no, geometry.column, "geometry label is empty");
        r.geometry = std::string(geometry.text);

        const Field fanout = *field("fanout");
        const auto fo = parse_fanout(fanout.text);
        if (!fo)
            throw ParseError(line_no, fanout.column, "unknown fanout '" + std::string(fanout.text) + "' (valid: FO1, FO2)");
        r.fanout = *fo;

        const Field mode = *field("mode");
        const auto md = parse_mode(mode.text);
        if (!md)
            throw ParseError(line_no, mode.column,
                             "unknown mode '" + std::string(mode.text) + "' (valid: in-phase, out-of-phase, quiet)");
        r.mode = *md;

        const Field t_osc = *field("t_osc");
        r.t_osc = parse_number(t_osc, line_no, "t_osc") * units->time;
        if (!(r.t_osc > 0.0))
            throw ParseError(line_no, t_osc.column, "t_osc must be positive");

        const auto i_eff = field("i_eff");
        const auto i_dda = field("i_dda");
        const auto i_ddq = field("i_ddq");
        const bool has_eff = i_eff && !i_eff->text.empty();
        const bool has_dda = i_dda && !i_dda->text.empty();
        const bool has_ddq = i_ddq && !i_ddq->text.empty();
        if (has_dda != has_ddq)
            throw ParseError(line_no, (has_dda ? i_ddq : i_dda)->column, "i_dda and i_ddq must be given together");
        if (has_dda) {
            const double dda = parse_number(*i_dda, line_no, "i_dda") * units->current;
            const double ddq = parse_number(*i_ddq, line_no, "i_ddq") * units->current;
            if (ddq < 0.0 || dda < ddq)
                throw ParseError(line_no, i_ddq->column, "need 0 <= i_ddq <= i_dda");
            r.i_dda = dda;
            r.i_ddq = ddq;
            r.i_eff = dda - ddq;
            if (has_eff) {
                const double given = parse_number(*i_eff, line_no, "i_eff") * units->current;
                if (std::abs(given - r.i_eff) > 1e-9 * std::max(std::abs(given), std::abs(dda)))
                    throw ParseError(line_no, i_eff->column, "i_eff does not equal i_dda - i_ddq");
            }
        } else if (has_eff) {
            r.i_eff = parse_number(*i_eff, line_no, "i_eff") * units->current;
        } else {
            throw ParseError(line_no, i_eff ? i_eff->column : 1, "row has neither i_eff nor i_dda/i_ddq");
        }
        if (!(r.i_eff > 0.0))
            throw ParseError(line_no, i_eff && has_eff ? i_eff->column : 1, "i_eff must be positive");

        if (!seen.emplace(r.die, r.geometry, r.fanout, r.mode).second)
            throw ParseError(line_no, 1,
                             "duplicate row for die '" + r.die + "', " + r.geometry + " " +
                                 std::string(to_string(r.fanout)) + " " + std::string(to_string(r.mode)));
        records.push_back(std::move(r));
    }

    if (!have_header)
        throw ParseError(line_no, 1, "no column header found");
    return records;
}

std::string format_measurements(const std::vector<MeasurementRecord>& records) {
    bool supply = false;
    for (const auto& r : records)
        supply = supply || r.i_dda.has_value();

    std::string out;
    out += "# format: ";
    out += kFormatTag;
    out += "\n# units: t_osc=ns current=uA\n";
    out += supply ? "die,geometry,fanout,mode,t_osc,i_eff,i_dda,i_ddq\n" : "die,geometry,fanout,mode,t_osc,i_eff\n";

    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const auto& r : records) {
        out += r.die + "," + r.geometry + "," + std::string(to_string(r.fanout)) + "," +
               std::string(to_string(r.mode)) + "," + num(r.t_osc / units::ns) + ",";
        if (r.i_dda) {
            out += "," + num(*r.i_dda / units::uA) + "," + num(*r.i_ddq / units::uA);
        } else {
            out += num(r.i_eff / units::uA);
            if (supply)
                out += ",,";
        }
        out += "\n";
    }
    return out;
}

}  // namespace xtmon

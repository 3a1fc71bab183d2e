#include "xtmon/waveform_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "xtmon/errors.hpp"
#include "xtmon/units.hpp"

namespace xtmon {

namespace {

void check_set(const std::vector<Waveform>& waves) {
    if (waves.empty())
        throw ValidationError("no waveforms to write");
    for (const auto& w : waves) {
        if (w.values.empty())
            throw ValidationError("waveform '" + w.label + "' is empty");
        if (std::abs(w.dt - waves.front().dt) > 1e-12 * waves.front().dt)
            throw ValidationError("waveforms do not share a time step");
    }
}

std::size_t longest(const std::vector<Waveform>& waves) {
    std::size_t n = 0;
    for (const auto& w : waves)
        n = std::max(n, w.values.size());
    return n;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string waveforms_to_csv(const std::vector<Waveform>& waves) {
    check_set(waves);
    std::string out = "time_s";
    for (const auto& w : waves)
        out += "," + w.label;
    out += "\n";
    char buf[40];
    const std::size_t n = longest(waves);
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%.10g", waves.front().time(i));
        out += buf;
        for (const auto& w : waves) {
            std::snprintf(buf, sizeof buf, ",%.10g", w.values[std::min(i, w.values.size() - 1)]);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

std::string waveforms_to_svg(const std::vector<Waveform>& waves, const std::string& title) {
    check_set(waves);
    constexpr double width = 640.0;
    constexpr double height = 400.0;
    constexpr double margin = 50.0;
    constexpr std::size_t max_points = 1000;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

    const std::size_t n = longest(waves);
    const double t_end = std::max(waves.front().time(n - 1), waves.front().dt);
    double v_min = 0.0;
    double v_max = 0.0;
    for (const auto& w : waves) {
        const auto [lo, hi] = std::minmax_element(w.values.begin(), w.values.end());
        v_min = std::min(v_min, *lo);
        v_max = std::max(v_max, *hi);
    }
    if (v_max - v_min < 1e-12)
        v_max = v_min + 1.0;

    auto x = [&](double t) { return margin + (width - 2 * margin) * t / t_end; };
    auto y = [&](double v) { return height - margin - (height - 2 * margin) * (v - v_min) / (v_max - v_min); };

    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                  width, height, width, height);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">", margin);
    out += buf + escape_xml(title) + "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M%g %g V%g H%g\" fill=\"none\" stroke=\"black\"/>\n", margin, margin, height - margin,
                  width - margin);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
                  "%.4g ps</text>\n",
                  width - margin, height - margin + 20, t_end / units::ps);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">%.3g V</text>\n"
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">%.3g V</text>\n",
                  margin - 4, y(v_max) + 4, v_max, margin - 4, y(v_min) + 4, v_min);
    out += buf;

    const std::size_t stride = std::max<std::size_t>(1, n / max_points);
    for (std::size_t k = 0; k < waves.size(); ++k) {
        const Waveform& w = waves[k];
        const char* color = colors[k % (sizeof colors / sizeof colors[0])];
        std::snprintf(buf, sizeof buf, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"", color);
        out += buf;
        for (std::size_t i = 0; i < w.values.size(); i += stride) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", x(w.time(i)), y(w.values[i]));
            out += buf;
        }
        const std::size_t last = w.values.size() - 1;
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", x(w.time(last)), y(w.values[last]));
        out += buf;
        out += "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\" fill=\"%s\">", width - margin + 6,
                      margin + 16.0 * static_cast<double>(k), color);
        out += buf + escape_xml(w.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace xtmon

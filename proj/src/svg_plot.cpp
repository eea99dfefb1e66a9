#include "graphtrack/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace graphtrack {

namespace {
const char* kPalette[] = {"#1f6fb4", "#d1495b", "#3a8f5f", "#8a5fb4", "#c98a28", "#4a4a4a"};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// nice tick positions covering [lo, hi]
std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * step; v += step)
        ticks.push_back(v);
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    for (int p = static_cast<int>(std::floor(lo)); p <= static_cast<int>(std::ceil(hi)); ++p)
        if (p >= lo - 1e-9 && p <= hi + 1e-9) ticks.push_back(p);
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

std::string log_label(double p) {
    std::ostringstream os;
    os << "1e" << static_cast<int>(std::lround(p));
    return os.str();
}
}  // namespace

std::string render_svg_lineplot(const std::vector<PlotSeries>& series,
                                const PlotOptions& opt) {
    if (series.empty()) throw std::invalid_argument("render_svg_lineplot: no series");

    const double ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("render_svg_lineplot: x/y length mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double y = s.y[i];
            if (!std::isfinite(s.x[i]) || !std::isfinite(y)) continue;
            if (opt.log_y && !(y > 0.0)) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            const double yv = opt.log_y ? std::log10(y) : y;
            ymin = std::min(ymin, yv);
            ymax = std::max(ymax, yv);
        }
    }
    if (!(xmax >= xmin)) throw std::invalid_argument("render_svg_lineplot: no finite points");
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double ypad = 0.04 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) {
        const double yv = opt.log_y ? std::log10(y) : y;
        return mt + (ymax - yv) / (ymax - ymin) * ph;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
        << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << " "
        << opt.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << opt.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << opt.title << "</text>\n";

    // axes + ticks
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double t : linear_ticks(xmin, xmax)) {
        const double px = sx(t);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << mt << "\" x2=\"" << num(px)
            << "\" y2=\"" << mt + ph << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << num(px) << "\" y=\"" << mt + ph + 16
            << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
    const auto yticks = opt.log_y ? log_ticks(ymin, ymax) : linear_ticks(ymin, ymax);
    for (double t : yticks) {
        const double py = mt + (ymax - t) / (ymax - ymin) * ph;
        svg << "<line x1=\"" << ml << "\" y1=\"" << num(py) << "\" x2=\"" << ml + pw
            << "\" y2=\"" << num(py) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << ml - 6 << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\">" << (opt.log_y ? log_label(t) : num(t))
            << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 10
        << "\" text-anchor=\"middle\" font-size=\"13\">" << opt.x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << mt + ph / 2 << ")\">" << opt.y_label << "</text>\n";
    svg << "</g>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";

    if (opt.vline && *opt.vline >= xmin && *opt.vline <= xmax) {
        const double px = sx(*opt.vline);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << mt << "\" x2=\"" << num(px)
            << "\" y2=\"" << mt + ph
            << "\" stroke=\"#999\" stroke-dasharray=\"5,4\" stroke-width=\"1.5\"/>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            const double y = series[s].y[i];
            if (!std::isfinite(y) || (opt.log_y && !(y > 0.0))) continue;
            svg << num(sx(series[s].x[i])) << ',' << num(sy(y)) << ' ';
        }
        svg << "\"/>\n";
        const double lx = ml + pw - 150, ly = mt + 18 + 18 * static_cast<double>(s);
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << num(lx + 24) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg_lineplot(const std::filesystem::path& path,
                        const std::vector<PlotSeries>& series, const PlotOptions& opt) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << render_svg_lineplot(series, opt);
}

}  // namespace graphtrack

/*
 * Minimal SVG line-plot emitter. Plots are a pure function of the plotted
 * series (no timestamps), so a result CSV always regenerates the same image.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace graphtrack {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "t";
    std::string y_label;
    bool log_y = false;
    std::optional<double> vline;  // event-time marker
    int width = 860;
    int height = 520;
};

std::string render_svg_lineplot(const std::vector<PlotSeries>& series,
                                const PlotOptions& opt);

void write_svg_lineplot(const std::filesystem::path& path,
                        const std::vector<PlotSeries>& series, const PlotOptions& opt);

}  // namespace graphtrack

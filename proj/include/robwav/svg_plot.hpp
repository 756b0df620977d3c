// Minimal static SVG line/point plots, laid out as a grid of panels.
#pragma once

#include <string>
#include <vector>

namespace robwav {

enum class SeriesStyle { line, dashed, dots, stems };

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    SeriesStyle style = SeriesStyle::line;
    std::string color = "#1f4e79";
    std::string label;
};

struct Panel {
    std::string title;
    std::vector<Series> series;
    bool log_x = false;
    bool log_y = false;
    std::string x_label;
    std::string y_label;
};

/// Renders panels row-major into `columns` columns. Output depends only on
/// the inputs (fixed-precision coordinates).
std::string render_svg(const std::vector<Panel>& panels, int columns = 1, double panel_width = 480.0,
                       double panel_height = 320.0);

}  // namespace robwav

#include "robwav/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace robwav {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        if (!std::isfinite(v))
            return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish()
    {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        } else if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        } else {
            const double pad = 0.04 * (hi - lo);
            lo -= pad;
            hi += pad;
        }
    }
};

void render_panel(std::ostringstream& out, const Panel& panel, double x0, double y0, double w, double h)
{
    constexpr double left = 56.0, right = 12.0, top = 26.0, bottom = 36.0;
    const double pw = w - left - right;
    const double ph = h - top - bottom;

    auto tx = [&](double v) { return panel.log_x ? (v > 0.0 ? std::log10(v) : std::nan("")) : v; };
    auto ty = [&](double v) { return panel.log_y ? (v > 0.0 ? std::log10(v) : std::nan("")) : v; };

    Range rx, ry;
    for (const auto& s : panel.series) {
        for (double v : s.x)
            rx.add(tx(v));
        for (double v : s.y)
            ry.add(ty(v));
        if (s.style == SeriesStyle::stems)
            ry.add(0.0);
    }
    rx.finish();
    ry.finish();

    auto px = [&](double v) { return x0 + left + (tx(v) - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto py = [&](double v) { return y0 + top + (1.0 - (ty(v) - ry.lo) / (ry.hi - ry.lo)) * ph; };

    out << "<g>\n";
    out << "<rect x=\"" << fmt(x0 + left) << "\" y=\"" << fmt(y0 + top) << "\" width=\"" << fmt(pw)
        << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#888\"/>\n";
    out << "<text x=\"" << fmt(x0 + left + pw / 2) << "\" y=\"" << fmt(y0 + 17)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(panel.title) << "</text>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        const double sx = x0 + left + pw * i / 4.0;
        const double sy = y0 + top + ph * (1.0 - i / 4.0);
        out << "<text x=\"" << fmt(sx) << "\" y=\"" << fmt(y0 + top + ph + 14)
            << "\" text-anchor=\"middle\" font-size=\"10\">"
            << tick_label(panel.log_x ? std::pow(10.0, fx) : fx) << "</text>\n";
        out << "<text x=\"" << fmt(x0 + left - 4) << "\" y=\"" << fmt(sy + 3)
            << "\" text-anchor=\"end\" font-size=\"10\">" << tick_label(panel.log_y ? std::pow(10.0, fy) : fy)
            << "</text>\n";
    }
    if (!panel.x_label.empty())
        out << "<text x=\"" << fmt(x0 + left + pw / 2) << "\" y=\"" << fmt(y0 + h - 4)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(panel.x_label) << "</text>\n";
    if (!panel.y_label.empty())
        out << "<text x=\"" << fmt(x0 + 12) << "\" y=\"" << fmt(y0 + top + ph / 2)
            << "\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 " << fmt(x0 + 12) << ' '
            << fmt(y0 + top + ph / 2) << ")\">" << escape(panel.y_label) << "</text>\n";

    double legend_y = y0 + top + 12;
    for (const auto& s : panel.series) {
        const std::size_t count = std::min(s.x.size(), s.y.size());
        switch (s.style) {
        case SeriesStyle::line:
        case SeriesStyle::dashed: {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\"";
            if (s.style == SeriesStyle::dashed)
                out << " stroke-dasharray=\"3,3\"";
            out << " points=\"";
            for (std::size_t i = 0; i < count; ++i) {
                const double a = px(s.x[i]), b = py(s.y[i]);
                if (std::isfinite(a) && std::isfinite(b))
                    out << fmt(a) << ',' << fmt(b) << ' ';
            }
            out << "\"/>\n";
            break;
        }
        case SeriesStyle::dots:
            for (std::size_t i = 0; i < count; ++i) {
                const double a = px(s.x[i]), b = py(s.y[i]);
                if (std::isfinite(a) && std::isfinite(b))
                    out << "<circle cx=\"" << fmt(a) << "\" cy=\"" << fmt(b) << "\" r=\"1.2\" fill=\"" << s.color
                        << "\"/>\n";
            }
            break;
        case SeriesStyle::stems: {
            const double base = py(0.0);
            out << "<path stroke=\"" << s.color << "\" stroke-width=\"0.8\" d=\"";
            for (std::size_t i = 0; i < count; ++i) {
                const double a = px(s.x[i]), b = py(s.y[i]);
                if (std::isfinite(a) && std::isfinite(b))
                    out << 'M' << fmt(a) << ' ' << fmt(base) << 'V' << fmt(b);
            }
            out << "\"/>\n";
            break;
        }
        }
        if (!s.label.empty()) {
            out << "<text x=\"" << fmt(x0 + left + pw - 6) << "\" y=\"" << fmt(legend_y)
                << "\" text-anchor=\"end\" font-size=\"10\" fill=\"" << s.color << "\">" << escape(s.label)
                << "</text>\n";
            legend_y += 12;
        }
    }
    out << "</g>\n";
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels, int columns, double panel_width, double panel_height)
{
    columns = std::max(1, columns);
    const int rows = static_cast<int>((panels.size() + static_cast<std::size_t>(columns) - 1) /
                                      static_cast<std::size_t>(columns));
    const double width = panel_width * columns;
    const double height = panel_height * std::max(rows, 1);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
        << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double x0 = panel_width * static_cast<double>(i % static_cast<std::size_t>(columns));
        const double y0 = panel_height * static_cast<double>(i / static_cast<std::size_t>(columns));
        render_panel(out, panels[i], x0, y0, panel_width, panel_height);
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace robwav

#include "timemap/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "timemap/errors.hpp"

namespace timemap {

namespace {

constexpr double kMarginLeft = 58;
constexpr double kMarginRight = 14;
constexpr double kMarginTop = 34;
constexpr double kMarginBottom = 48;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string decade_label(int k) {
    if (k >= -3 && k <= 3) {
        char buf[16];
        if (k >= 0)
            std::snprintf(buf, sizeof(buf), "%.0f", std::pow(10.0, k));
        else
            std::snprintf(buf, sizeof(buf), "%.*f", -k, std::pow(10.0, k));
        return buf;
    }
    return "1e" + std::to_string(k);
}

struct Frame {
    double width, height;
    Interval x, y;  // log10 ranges

    double px(double lx) const {
        return kMarginLeft + (lx - x.lo) / x.width() * (width - kMarginLeft - kMarginRight);
    }
    double py(double ly) const {
        return height - kMarginBottom -
               (ly - y.lo) / y.width() * (height - kMarginTop - kMarginBottom);
    }
};

void open_document(std::string& svg, int width, int height) {
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" fill=\"white\"/>\n";
}

// Axes frame, title, axis labels and decade ticks (log_ticks) or integer
// ticks on raw log values (heatmap axes).
void draw_frame(std::string& svg, const Frame& f, const PlotSpec& spec,
                const std::string& default_x, const std::string& default_y, bool decade_ticks) {
    const double x0 = kMarginLeft, x1 = f.width - kMarginRight;
    const double y0 = f.height - kMarginBottom, y1 = kMarginTop;
    svg += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y1) + "\" width=\"" + fmt(x1 - x0) +
           "\" height=\"" + fmt(y0 - y1) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    auto tick_label = [&](int k) {
        return decade_ticks ? decade_label(k) : std::to_string(k);
    };
    for (int k = static_cast<int>(std::ceil(f.x.lo)); k <= static_cast<int>(std::floor(f.x.hi));
         ++k) {
        const double px = f.px(k);
        svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(px) +
               "\" y2=\"" + fmt(y0 + 5) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(y0 + 18) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               tick_label(k) + "</text>\n";
    }
    for (int k = static_cast<int>(std::ceil(f.y.lo)); k <= static_cast<int>(std::floor(f.y.hi));
         ++k) {
        const double py = f.py(k);
        svg += "<line x1=\"" + fmt(x0 - 5) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(x0) +
               "\" y2=\"" + fmt(py) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(x0 - 8) + "\" y=\"" + fmt(py + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               tick_label(k) + "</text>\n";
    }

    const std::string xl = spec.x_label.empty() ? default_x : spec.x_label;
    const std::string yl = spec.y_label.empty() ? default_y : spec.y_label;
    svg += "<text x=\"" + fmt((x0 + x1) / 2) + "\" y=\"" + fmt(f.height - 12) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
           xml_escape(xl) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt((y0 + y1) / 2) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 " +
           fmt((y0 + y1) / 2) + ")\">" + xml_escape(yl) + "</text>\n";
    if (!spec.title.empty())
        svg += "<text x=\"" + fmt((x0 + x1) / 2) + "\" y=\"22\" font-family=\"sans-serif\" "
               "font-size=\"15\" text-anchor=\"middle\">" +
               xml_escape(spec.title) + "</text>\n";
}

}  // namespace

const std::vector<std::string>& default_heat_palette() {
    static const std::vector<std::string> palette = {
        "#ff0000", "#ff2400", "#ff4800", "#ff6d00", "#ff9100", "#ffb600",
        "#ffda00", "#ffff00", "#ffff55", "#ffffaa", "#ffffdf"};
    return palette;
}

std::string scatter_svg(const TimeMap& map, const PlotSpec& spec) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(map.points.size());
    for (const auto& p : map.points)
        if (p.t_before > 0 && p.t_after > 0)
            pts.emplace_back(std::log10(p.t_before), std::log10(p.t_after));

    Frame f{static_cast<double>(spec.width), static_cast<double>(spec.height), {0, 1}, {0, 1}};
    if (!pts.empty()) {
        double xlo = pts[0].first, xhi = xlo, ylo = pts[0].second, yhi = ylo;
        for (const auto& [x, y] : pts) {
            xlo = std::min(xlo, x); xhi = std::max(xhi, x);
            ylo = std::min(ylo, y); yhi = std::max(yhi, y);
        }
        const double xpad = xhi > xlo ? 0.05 * (xhi - xlo) : 0.5;
        const double ypad = yhi > ylo ? 0.05 * (yhi - ylo) : 0.5;
        f.x = {xlo - xpad, xhi + xpad};
        f.y = {ylo - ypad, yhi + ypad};
    }

    std::string svg;
    open_document(svg, spec.width, spec.height);
    draw_frame(svg, f, spec, "Time Before Tweet", "Time After Tweet", true);
    for (const auto& [x, y] : pts)
        svg += "<circle cx=\"" + fmt(f.px(x)) + "\" cy=\"" + fmt(f.py(y)) +
               "\" r=\"3\" fill=\"" + spec.point_color + "\"/>\n";
    if (pts.empty())
        svg += "<text x=\"" + fmt(spec.width / 2.0) + "\" y=\"" + fmt(spec.height / 2.0) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
               "fill=\"#888888\">no plottable points</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::string heatmap_svg(const LogGrid& grid, const PlotSpec& spec) {
    const auto& palette = spec.palette.empty() ? default_heat_palette() : spec.palette;
    Frame f{static_cast<double>(spec.width), static_cast<double>(spec.height), grid.x_range,
            grid.y_range};

    double max_mass = 0;
    for (double c : grid.cells) max_mass = std::max(max_mass, c);

    std::string svg;
    open_document(svg, spec.width, spec.height);
    if (max_mass > 0) {
        const double cw = f.x.width() / static_cast<double>(grid.bins_x);
        const double ch = f.y.width() / static_cast<double>(grid.bins_y);
        for (std::size_t iy = 0; iy < grid.bins_y; ++iy) {
            for (std::size_t ix = 0; ix < grid.bins_x; ++ix) {
                const double mass = grid.at(ix, iy);
                if (mass <= 0) continue;
                const double t = mass / max_mass;  // 1 = strongest
                const auto idx = static_cast<std::size_t>(
                    std::lround((1.0 - t) * static_cast<double>(palette.size() - 1)));
                const double x = f.px(f.x.lo + static_cast<double>(ix) * cw);
                const double y = f.py(f.y.lo + static_cast<double>(iy + 1) * ch);
                const double w = f.px(f.x.lo + cw) - f.px(f.x.lo);
                const double h = f.py(f.y.lo) - f.py(f.y.lo + ch);
                svg += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
                       "\" height=\"" + fmt(h) + "\" fill=\"" + palette[idx] + "\"/>\n";
            }
        }
    }
    draw_frame(svg, f, spec, "Log(Time Before Tweets)", "Log(Time After Tweets)", false);
    svg += "</svg>\n";
    return svg;
}

std::string panel(const std::vector<std::string>& documents, std::size_t rows, std::size_t cols,
                  const std::string& banner) {
    if (documents.size() > rows * cols)
        throw LayoutOverflow(std::to_string(documents.size()) + " documents exceed " +
                             std::to_string(rows) + "x" + std::to_string(cols) + " layout");

    auto attr = [](const std::string& doc, const char* name) -> int {
        const auto key = std::string(name) + "=\"";
        const auto pos = doc.find(key);
        return pos == std::string::npos ? 480 : std::atoi(doc.c_str() + pos + key.size());
    };

    int cell_w = 0, cell_h = 0;
    for (const auto& doc : documents) {
        cell_w = std::max(cell_w, attr(doc, "width"));
        cell_h = std::max(cell_h, attr(doc, "height"));
    }
    if (documents.empty()) cell_w = cell_h = 480;
    const int banner_h = banner.empty() ? 0 : 44;
    const int total_w = cell_w * static_cast<int>(cols);
    const int total_h = banner_h + cell_h * static_cast<int>(rows);

    std::string svg;
    open_document(svg, total_w, total_h);
    if (!banner.empty())
        svg += "<text x=\"" + fmt(total_w / 2.0) +
               "\" y=\"28\" font-family=\"sans-serif\" font-size=\"19\" "
               "text-anchor=\"middle\" fill=\"#0000cc\">" +
               xml_escape(banner) + "</text>\n";
    for (std::size_t i = 0; i < documents.size(); ++i) {
        std::string child = documents[i];
        const auto decl_end = child.find("?>\n");
        if (decl_end != std::string::npos) child = child.substr(decl_end + 3);
        const int x = static_cast<int>(i % cols) * cell_w;
        const int y = banner_h + static_cast<int>(i / cols) * cell_h;
        const auto open_tag = child.find("<svg ");
        child.insert(open_tag + 5,
                     "x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" ");
        svg += child;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace timemap

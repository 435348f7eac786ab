#include "hawkes/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "hawkes/csvio.hpp"
#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

constexpr double W = 640.0, H = 420.0;
constexpr double ML = 64.0, MR = 20.0, MT = 36.0, MB = 44.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

std::string esc(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<')
            o += "&lt;";
        else if (c == '>')
            o += "&gt;";
        else if (c == '&')
            o += "&amp;";
        else
            o += c;
    }
    return o;
}

}  // namespace

void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::vector<SvgSeries>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    bool any = false;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
            any = true;
        }
    }
    if (!any) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    const bool logx = xmin > 0.0 && xmax / xmin > 100.0;
    auto tx = [&](double v) { return logx ? std::log10(v) : v; };
    double lo = tx(xmin), hi = tx(xmax);
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double ypad = 0.06 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double v) { return ML + (tx(v) - lo) / (hi - lo) * (W - ML - MR); };
    auto py = [&](double v) { return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open SVG output file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"14\">" << esc(title) << "</text>\n";

    // frame and ticks
    out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR << "\" height=\""
        << H - MT - MB << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        const double yy = py(fy);
        out << "<line x1=\"" << ML << "\" y1=\"" << yy << "\" x2=\"" << W - MR << "\" y2=\"" << yy
            << "\" stroke=\"#eee\"/>\n";
        out << "<text x=\"" << ML - 6 << "\" y=\"" << yy + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << format_double(std::abs(fy) < 1e-300 ? 0.0 : fy) << "</text>\n";
        const double fl = lo + (hi - lo) * i / 4.0;
        const double fx = logx ? std::pow(10.0, fl) : fl;
        const double xx = ML + (fl - lo) / (hi - lo) * (W - ML - MR);
        out << "<text x=\"" << xx << "\" y=\"" << H - MB + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << format_double(fx) << "</text>\n";
    }
    out << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << esc(x_label)
        << "</text>\n";

    int ci = 0;
    double ly = MT + 14.0;
    for (const auto& s : series) {
        const char* col = kColors[ci % 6];
        if (s.x.size() == 1) {
            out << "<circle cx=\"" << px(s.x[0]) << "\" cy=\"" << py(s.y[0])
                << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                out << px(s.x[i]) << "," << py(s.y[i]) << " ";
            }
            out << "\"/>\n";
        }
        out << "<text x=\"" << W - MR - 8 << "\" y=\"" << ly
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << col
            << "\">" << esc(s.name) << "</text>\n";
        ly += 14.0;
        ++ci;
    }
    out << "</svg>\n";
}

}

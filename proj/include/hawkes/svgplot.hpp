#pragma once
#include <string>
#include <vector>

namespace hawkes {

struct SvgSeries {
    std::string name;
    std::vector<double> x, y;
};

// Minimal static line chart (640x420); log-x when the x values span more than
// two decades. Series with a single point are drawn as markers.
void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::vector<SvgSeries>& series);

}

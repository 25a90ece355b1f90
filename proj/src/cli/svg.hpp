#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gts::cli {

struct DensityRow {
    double center = 0.0;
    double empirical = 0.0;
    double gts = 0.0;
    double gbm = 0.0;
};

// Histogram bars with the two model densities drawn as polylines.
void write_density_svg(std::ostream& out, const std::vector<DensityRow>& rows, double bin_width,
                       const std::string& title);

}  // namespace gts::cli

#include "lamhd/grid.hpp"

#include <stdexcept>
#include <string>

namespace lamhd {

void MaterialParams::validate() const {
    if (!(mu > 0.0)) {
        throw std::invalid_argument("MaterialParams: mu must be > 0, got " + std::to_string(mu));
    }
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("MaterialParams: lambda must be > 0, got " + std::to_string(lambda));
    }
    if (!(gamma > 1.0)) {
        throw std::invalid_argument("MaterialParams: gamma must be > 1, got " + std::to_string(gamma));
    }
}

LagrangianGrid LagrangianGrid::make(double y_min, double y_max, std::size_t n_cells) {
    if (n_cells < 2) {
        throw std::invalid_argument("LagrangianGrid: need n_cells >= 2");
    }
    if (!(y_max > y_min)) {
        throw std::invalid_argument("LagrangianGrid: need y_max > y_min");
    }
    LagrangianGrid g;
    g.y_min = y_min;
    g.y_max = y_max;
    g.n_cells = n_cells;
    g.dy = (y_max - y_min) / static_cast<double>(n_cells);
    return g;
}

} // namespace lamhd

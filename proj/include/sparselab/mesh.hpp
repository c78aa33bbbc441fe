#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sparselab {

using cdouble = std::complex<double>;

// Complex samples on the uniform mesh x_i = x0 + i*h, i = 0..count-1.
struct MeshSignal {
    double x0 = 0.0;
    double h = 1.0;
    std::vector<cdouble> values;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return x0 + static_cast<double>(i) * h; }
};

}  // namespace sparselab

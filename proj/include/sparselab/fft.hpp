#pragma once

// Thin FFTW wrapper.  Plans are created once per (size, direction) under a
// lock and executed through the new-array interface, so transforms may run
// concurrently from any number of threads.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sparselab::fft {

using cdouble = std::complex<double>;

// In place, unnormalized:  forward uses e^{-2 pi i jk/n}, backward e^{+2 pi i jk/n}.
void forward(std::span<cdouble> data);
void backward(std::span<cdouble> data);

// Forward transform of real data; returns bins 0..n/2 (the rest follow by
// conjugate symmetry).
std::vector<cdouble> real_forward(std::span<const double> data);

std::size_t next_pow2(std::size_t n);

// Full linear convolution against a fixed kernel, for inputs up to
// `max_input` samples.  The kernel spectrum is computed once.
class Convolver {
public:
    Convolver(std::span<const cdouble> kernel, std::size_t max_input);

    std::size_t kernel_size() const { return kernel_size_; }
    std::size_t max_input() const { return max_input_; }

    // (kernel * input)[q] = sum_j kernel[q - j] input[j],
    // length input.size() + kernel_size() - 1.
    std::vector<cdouble> apply(std::span<const cdouble> input) const;

private:
    std::size_t kernel_size_;
    std::size_t max_input_;
    std::size_t n_;
    std::vector<cdouble> spectrum_;
};

std::vector<cdouble> convolve(std::span<const cdouble> a, std::span<const cdouble> b);

}  // namespace sparselab::fft

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qhet::fft {

// Thin wrappers over FFTW's real transforms (FFTW conventions, unnormalized).
// Planning is serialized internally; execution is thread-safe.

// X_k = sum_j x_j e^{-2πijk/n}, k = 0..n/2.
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

// x_j = sum_k X_k e^{+2πijk/n} with Hermitian-symmetric input of length
// n/2 + 1; caller divides by n for the inverse.
std::vector<double> irfft(const std::vector<std::complex<double>>& spec,
                          size_t n);

}  // namespace qhet::fft

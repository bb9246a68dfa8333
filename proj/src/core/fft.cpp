#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "errors.hpp"

namespace qhet::fft {

namespace {
// FFTW plan creation/destruction is not thread-safe.
std::mutex g_plan_mutex;
}  // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
  const size_t n = x.size();
  if (n < 2) throw LengthError("rfft: need at least 2 samples");
  std::vector<double> in(x);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& spec,
                          size_t n) {
  if (n < 2) throw LengthError("irfft: need at least 2 samples");
  if (spec.size() != n / 2 + 1)
    throw ShapeError("irfft: spectrum length must be n/2 + 1");
  // c2r destroys its input, so work on a copy.
  std::vector<std::complex<double>> in(spec);
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(in.data()),
                                out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace qhet::fft

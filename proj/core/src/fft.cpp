#include "sicfiber/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace sicfiber {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Fft: zero size");
  buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
  if (!buf_) throw std::bad_alloc();
  auto* fb = reinterpret_cast<fftw_complex*>(buf_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), fb, fb, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_dft_1d(static_cast<int>(n), fb, fb, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(buf_);
}

void Fft::forward(std::complex<double>* data) {
  std::memcpy(buf_, data, n_ * sizeof(std::complex<double>));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(data, buf_, n_ * sizeof(std::complex<double>));
}

void Fft::inverse(std::complex<double>* data) {
  std::memcpy(buf_, data, n_ * sizeof(std::complex<double>));
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) data[i] = buf_[i] * scale;
}

void fft_forward(std::vector<std::complex<double>>& v) { Fft(v.size()).forward(v.data()); }

void fft_inverse(std::vector<std::complex<double>>& v) { Fft(v.size()).inverse(v.data()); }

}  // namespace sicfiber

#ifndef SICFIBER_FFT_HPP
#define SICFIBER_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace sicfiber {

/// In-place complex FFT of a fixed size, backed by FFTW. Forward transform
/// is unnormalized; inverse is scaled by 1/n. Plan creation is serialized
/// internally (FFTW planner is not thread-safe); execution is not.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }

  void forward(std::complex<double>* data);
  void inverse(std::complex<double>* data);

 private:
  std::size_t n_;
  void* plan_fwd_;
  void* plan_inv_;
  std::complex<double>* buf_;
};

/// One-shot helpers for code outside hot loops.
void fft_forward(std::vector<std::complex<double>>& v);
void fft_inverse(std::vector<std::complex<double>>& v);

}  // namespace sicfiber

#endif

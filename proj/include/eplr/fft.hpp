#pragma once

#include <complex>
#include <span>
#include <vector>

namespace eplr {

/// In-place forward (sign = -1) or inverse (sign = +1, unnormalized)
/// radix-2 transform; size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& data, int sign);

/// Precomputed arbitrary-length DFT: radix-2 when the length is a power of
/// two, Bluestein's chirp factorization otherwise.
class DftPlan {
 public:
  explicit DftPlan(std::size_t length);

  std::size_t length() const { return length_; }
  /// X_k = sum_n x_n exp(sign 2 pi i n k / L); sign = -1 forward, +1 inverse (unnormalized).
  std::vector<std::complex<double>> execute(std::span<const std::complex<double>> x, int sign) const;

 private:
  struct Chirp {
    std::vector<std::complex<double>> w;         // exp(sign i pi n^2 / L)
    std::vector<std::complex<double>> spectrum;  // FFT of the conjugate chirp kernel
  };
  const Chirp& chirp(int sign) const { return sign < 0 ? forward_ : inverse_; }

  std::size_t length_;
  std::size_t padded_;
  Chirp forward_;
  Chirp inverse_;
  std::vector<std::complex<double>> twiddle_forward_;
  std::vector<std::complex<double>> twiddle_inverse_;
};

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x, int sign = -1);

/// Circular convolution y[z] = sum_n c[(z - n) mod L] v[n] with a fixed
/// first column c, computed as a zero-padded power-of-two linear convolution
/// folded back onto length L; the spectrum of c is computed once.
class CirculantConvolver {
 public:
  explicit CirculantConvolver(std::span<const double> first_column);

  std::size_t length() const { return length_; }
  std::vector<double> apply(std::span<const double> v) const;
  /// Convolves two vectors in one complex transform, reusing `work` as scratch.
  void apply_pair(std::span<const double> v1, std::span<const double> v2, std::span<double> out1,
                  std::span<double> out2, std::vector<std::complex<double>>& work) const;

 private:
  std::size_t length_;
  std::size_t padded_;
  std::vector<std::complex<double>> twiddle_forward_;
  std::vector<std::complex<double>> twiddle_inverse_;
  std::vector<std::complex<double>> spectrum_;
};

std::vector<double> circular_convolve(std::span<const double> first_column, std::span<const double> v);

/// O(L^2) reference.
std::vector<double> circular_convolve_direct(std::span<const double> first_column, std::span<const double> v);

}  // namespace eplr

#include "eplr/fft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "eplr/errors.hpp"

namespace eplr {

namespace {

using cplx = std::complex<double>;

// exp(sign * i pi n^2 / L) with n^2 reduced mod 2L in integers.
std::vector<cplx> chirp_values(std::size_t L, int sign) {
  std::vector<cplx> w(L);
  const unsigned __int128 mod = 2 * static_cast<unsigned __int128>(L);
  for (std::size_t n = 0; n < L; ++n) {
    const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(n) * n % mod);
    const double angle = sign * std::numbers::pi * static_cast<double>(sq) / static_cast<double>(L);
    w[n] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

// exp(sign 2 pi i k / n) for k < n/2.
std::vector<cplx> twiddles(std::size_t n, int sign) {
  std::vector<cplx> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    tw[k] = {std::cos(angle), std::sin(angle)};
  }
  return tw;
}

void fft_with(std::vector<cplx>& a, const std::vector<cplx>& tw) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + half] * tw[k * stride];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

}  // namespace

void fft_pow2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (n == 0 || !std::has_single_bit(n)) throw UsageError("fft_pow2 needs a power-of-two length");
  fft_with(a, twiddles(n, sign));
}

DftPlan::DftPlan(std::size_t length) : length_(length), padded_(0) {
  if (length == 0) throw UsageError("DFT of length 0");
  if (std::has_single_bit(length)) return;
  padded_ = std::bit_ceil(2 * length - 1);
  twiddle_forward_ = twiddles(padded_, -1);
  twiddle_inverse_ = twiddles(padded_, +1);
  for (int sign : {-1, +1}) {
    Chirp& c = sign < 0 ? forward_ : inverse_;
    c.w = chirp_values(length, sign);
    c.spectrum.assign(padded_, 0.0);
    c.spectrum[0] = std::conj(c.w[0]);
    for (std::size_t n = 1; n < length; ++n) c.spectrum[n] = c.spectrum[padded_ - n] = std::conj(c.w[n]);
    fft_with(c.spectrum, twiddle_forward_);
  }
}

std::vector<cplx> DftPlan::execute(std::span<const cplx> x, int sign) const {
  if (x.size() != length_) throw UsageError("DFT input has the wrong length");
  if (padded_ == 0) {
    std::vector<cplx> a(x.begin(), x.end());
    fft_pow2(a, sign);
    return a;
  }
  // nk = (n^2 + k^2 - (k-n)^2) / 2, so X_k = w_k sum_n (x_n w_n) conj(w_{k-n}).
  const Chirp& c = chirp(sign);
  std::vector<cplx> a(padded_, 0.0);
  for (std::size_t n = 0; n < length_; ++n) a[n] = x[n] * c.w[n];
  fft_with(a, twiddle_forward_);
  for (std::size_t i = 0; i < padded_; ++i) a[i] *= c.spectrum[i];
  fft_with(a, twiddle_inverse_);
  std::vector<cplx> out(length_);
  const double inv = 1.0 / static_cast<double>(padded_);
  for (std::size_t k = 0; k < length_; ++k) out[k] = a[k] * inv * c.w[k];
  return out;
}

std::vector<cplx> dft(std::span<const cplx> x, int sign) {
  if (x.empty()) return {};
  return DftPlan(x.size()).execute(x, sign);
}

CirculantConvolver::CirculantConvolver(std::span<const double> first_column)
    : length_(first_column.size()), padded_(std::bit_ceil(std::max<std::size_t>(1, 2 * first_column.size() - 1))) {
  if (length_ == 0) throw UsageError("circulant of length 0");
  twiddle_forward_ = twiddles(padded_, -1);
  twiddle_inverse_ = twiddles(padded_, +1);
  spectrum_.assign(padded_, 0.0);
  std::copy(first_column.begin(), first_column.end(), spectrum_.begin());
  fft_with(spectrum_, twiddle_forward_);
}

std::vector<double> CirculantConvolver::apply(std::span<const double> v) const {
  std::vector<double> out(length_);
  std::vector<cplx> work;
  apply_pair(v, v, out, out, work);
  return out;
}

void CirculantConvolver::apply_pair(std::span<const double> v1, std::span<const double> v2, std::span<double> out1,
                                    std::span<double> out2, std::vector<cplx>& work) const {
  if (v1.size() != length_ || v2.size() != length_ || out1.size() != length_ || out2.size() != length_)
    throw UsageError("vector length does not match the circulant");
  // The kernel is real, so the real and imaginary parts convolve independently.
  work.assign(padded_, 0.0);
  for (std::size_t n = 0; n < length_; ++n) work[n] = {v1[n], v2[n]};
  fft_with(work, twiddle_forward_);
  for (std::size_t i = 0; i < padded_; ++i) work[i] *= spectrum_[i];
  fft_with(work, twiddle_inverse_);
  // The linear convolution has length 2L - 1 <= padded; fold index z + L onto z.
  const double inv = 1.0 / static_cast<double>(padded_);
  for (std::size_t z = 0; z < length_; ++z) {
    const cplx y = z + length_ < padded_ ? work[z] + work[z + length_] : work[z];
    out1[z] = y.real() * inv;
    out2[z] = y.imag() * inv;
  }
}

std::vector<double> circular_convolve(std::span<const double> first_column, std::span<const double> v) {
  return CirculantConvolver(first_column).apply(v);
}

std::vector<double> circular_convolve_direct(std::span<const double> c, std::span<const double> v) {
  const std::size_t L = c.size();
  if (v.size() != L) throw UsageError("vector length does not match the circulant");
  std::vector<double> out(L, 0.0);
  for (std::size_t z = 0; z < L; ++z) {
    long double acc = 0.0L;
    for (std::size_t n = 0; n < L; ++n) acc += static_cast<long double>(c[(z + L - n) % L]) * v[n];
    out[z] = static_cast<double>(acc);
  }
  return out;
}

}  // namespace eplr

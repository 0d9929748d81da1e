#include "deepgcc/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "deepgcc/errors.hpp"

namespace deepgcc {

namespace {

// FFTW planning is not thread-safe; executions on distinct buffers are.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffers {
  int n = 0;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit FftwBuffers(int size) : n(size) {
    real = fftw_alloc_real(static_cast<std::size_t>(n));
    cplx = fftw_alloc_complex(static_cast<std::size_t>(n) / 2 + 1);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fwd = fftw_plan_dft_r2c_1d(n, real, cplx, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(n, cplx, real, FFTW_ESTIMATE);
  }
  ~FftwBuffers() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(cplx);
  }
  FftwBuffers(const FftwBuffers&) = delete;
  FftwBuffers& operator=(const FftwBuffers&) = delete;
};

// One scratch set per thread; re-planned only when the size changes.
thread_local std::unique_ptr<FftwBuffers> tls_buffers;

FftwBuffers& buffers_for(int n) {
  if (!tls_buffers || tls_buffers->n != n) tls_buffers = std::make_unique<FftwBuffers>(n);
  return *tls_buffers;
}

}  // namespace

std::vector<double> blackman_window(int length) {
  if (length < 1) throw ValidationError("window length must be positive");
  std::vector<double> w(static_cast<std::size_t>(length), 1.0);
  if (length == 1) return w;
  const double den = static_cast<double>(length - 1);
  for (int n = 0; n < length; ++n) {
    const double v = 0.42 - 0.5 * std::cos(2.0 * std::numbers::pi * n / den) +
                     0.08 * std::cos(4.0 * std::numbers::pi * n / den);
    w[static_cast<std::size_t>(n)] = std::max(0.0, v);  // endpoints round to ~-1e-17
  }
  return w;
}

FrameSpec FrameSpec::from_ms(double fs, double frame_ms, double overlap) {
  if (!(fs > 0.0) || !(frame_ms > 0.0)) throw ValidationError("frame spec needs positive fs and duration");
  if (!(overlap >= 0.0 && overlap < 1.0)) throw ValidationError("overlap fraction must be in [0, 1)");
  FrameSpec spec;
  int len = static_cast<int>(std::floor(fs * frame_ms / 1000.0 + 1e-9));
  len -= len % 2;  // even length keeps the zero lag centered
  if (len < 2) throw ValidationError("frame shorter than 2 samples");
  spec.frame_length = len;
  spec.hop = std::max(1, static_cast<int>(std::lround(len * (1.0 - overlap))));
  spec.window = blackman_window(len);
  return spec;
}

void FrameSpec::validate() const {
  if (frame_length < 1) throw ValidationError("frame length must be positive");
  if (hop < 1 || hop > frame_length) throw ValidationError("hop must be in (0, frame length]");
  if (static_cast<int>(window.size()) != frame_length)
    throw ValidationError("window length does not match frame length");
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!(window[i] >= 0.0 && window[i] <= 1.0)) throw ValidationError("window values out of [0, 1]");
    if (std::abs(window[i] - window[window.size() - 1 - i]) > 1e-12)
      throw ValidationError("window is not symmetric");
  }
}

FrameSet extract_frames(const std::vector<double>& signal, const FrameSpec& spec) {
  spec.validate();
  FrameSet out;
  const std::size_t n = signal.size();
  const std::size_t len = static_cast<std::size_t>(spec.frame_length);
  if (n < len) {
    out.input_too_short = true;
    return out;
  }
  for (std::size_t start = 0; start + len <= n; start += static_cast<std::size_t>(spec.hop)) {
    std::vector<double> frame(len);
    for (std::size_t i = 0; i < len; ++i) frame[i] = signal[start + i] * spec.window[i];
    out.frames.push_back(std::move(frame));
  }
  return out;
}

std::vector<std::complex<double>> dft(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  auto& buf = buffers_for(n);
  std::copy(x.begin(), x.end(), buf.real);
  fftw_execute(buf.fwd);
  const std::size_t bins = static_cast<std::size_t>(n) / 2 + 1;
  std::vector<std::complex<double>> spectrum(bins);
  for (std::size_t i = 0; i < bins; ++i) spectrum[i] = {buf.cplx[i][0], buf.cplx[i][1]};
  return spectrum;
}

std::vector<double> idft_real(const std::vector<std::complex<double>>& spectrum, int n) {
  if (n <= 0 || spectrum.size() != static_cast<std::size_t>(n) / 2 + 1)
    throw ValidationError("idft: spectrum size does not match n");
  auto& buf = buffers_for(n);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    buf.cplx[i][0] = spectrum[i].real();
    buf.cplx[i][1] = spectrum[i].imag();
  }
  fftw_execute(buf.inv);
  std::vector<double> x(static_cast<std::size_t>(n));
  const double scale = 1.0 / n;
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = buf.real[i] * scale;
  return x;
}

GccFrame gcc_phat(const std::vector<double>& xk, const std::vector<double>& xl, int lag_count,
                  double eps_rel) {
  if (xk.size() != xl.size()) throw ValidationError("gcc_phat: frame lengths differ");
  const int n = static_cast<int>(xk.size());
  if (n == 0) throw ValidationError("gcc_phat: empty frames");
  if (lag_count < 2 || lag_count % 2 != 0) throw ValidationError("gcc_phat: lag count must be even and >= 2");
  if (lag_count > n) throw ValidationError("gcc_phat: lag count exceeds frame length");

  const auto sk = dft(xk);
  const auto sl = dft(xl);
  const std::size_t bins = sk.size();

  std::vector<std::complex<double>> cross(bins);
  double max_mag = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    cross[i] = sk[i] * std::conj(sl[i]);
    max_mag = std::max(max_mag, std::abs(cross[i]));
  }
  const double floor_mag = max_mag > 0.0 ? eps_rel * max_mag : 1.0;
  for (std::size_t i = 0; i < bins; ++i) cross[i] /= std::max(std::abs(cross[i]), floor_mag);

  const auto corr = idft_real(cross, n);

  GccFrame out;
  out.lags.resize(static_cast<std::size_t>(lag_count));
  const int half = lag_count / 2;
  for (int i = 0; i < lag_count; ++i) {
    const int lag = i - half;  // -L/2 .. L/2-1, lag 0 at index L/2
    const int src = ((lag % n) + n) % n;
    out.lags[static_cast<std::size_t>(i)] = corr[static_cast<std::size_t>(src)];
  }
  return out;
}

DelayLikelihood gaussian_target(double delay_s, double fs, int lag_count, double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("gaussian target: sigma must be positive");
  if (lag_count < 2 || lag_count % 2 != 0)
    throw ValidationError("gaussian target: lag count must be even and >= 2");
  const double shift = delay_s * fs;
  const int half = lag_count / 2;
  if (!(std::abs(shift) < half))
    throw ValidationError("gaussian target: delay outside the lag range");
  DelayLikelihood out;
  out.fs = fs;
  out.values.resize(static_cast<std::size_t>(lag_count));
  for (int i = 0; i < lag_count; ++i) {
    const double d = static_cast<double>(i - half) - shift;
    out.values[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
  }
  return out;
}

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

std::vector<double> resample(const std::vector<double>& signal, double from_fs, double to_fs) {
  if (!(from_fs > 0.0) || !(to_fs > 0.0)) throw ValidationError("resample: rates must be positive");
  if (from_fs == to_fs) return signal;
  const std::size_t n_in = signal.size();
  const std::size_t n_out =
      static_cast<std::size_t>(std::llround(static_cast<double>(n_in) * to_fs / from_fs));
  std::vector<double> out(n_out, 0.0);
  if (n_in == 0 || n_out == 0) return out;

  // Blackman-windowed sinc; cutoff at the lower Nyquist when decimating.
  const double ratio = to_fs / from_fs;
  const double cutoff = std::min(1.0, ratio);
  const int half_width = 32;
  const double kernel_span = half_width / cutoff;

  for (std::size_t m = 0; m < n_out; ++m) {
    const double t = static_cast<double>(m) / ratio;  // position in input samples
    const long lo = std::max(0L, static_cast<long>(std::ceil(t - kernel_span)));
    const long hi = std::min(static_cast<long>(n_in) - 1, static_cast<long>(std::floor(t + kernel_span)));
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) {
      const double u = (static_cast<double>(k) - t) * cutoff;  // in cutoff-normalized units
      const double w = 0.42 + 0.5 * std::cos(std::numbers::pi * u / half_width) +
                       0.08 * std::cos(2.0 * std::numbers::pi * u / half_width);
      acc += signal[static_cast<std::size_t>(k)] * cutoff * sinc(u) * w;
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace deepgcc

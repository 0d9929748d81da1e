#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace deepgcc {

// Analysis framing: frame length derived from a duration in ms (rounded down to
// an even sample count), hop from the overlap fraction, Blackman taper.
struct FrameSpec {
  int frame_length = 0;
  int hop = 0;
  std::vector<double> window;

  static FrameSpec from_ms(double fs, double frame_ms = 166.0, double overlap = 0.5);
  void validate() const;
};

std::vector<double> blackman_window(int length);

struct FrameSet {
  std::vector<std::vector<double>> frames;
  bool input_too_short = false;
};

// Windowed frames at [i*hop, i*hop + frame_length); trailing partial frame dropped.
// A too-short signal yields an empty set with the flag raised, not an error.
FrameSet extract_frames(const std::vector<double>& signal, const FrameSpec& spec);

// One cropped GCC-PHAT lag vector: lag 0 at index lags.size()/2,
// covering lags -L/2 .. L/2-1.
struct GccFrame {
  std::vector<double> lags;
  std::pair<int, int> pair{0, 0};
  int frame_index = 0;
  double fs = 0.0;

  int lag_count() const { return static_cast<int>(lags.size()); }
  int center() const { return lag_count() / 2; }
};

// Nonnegative length-L delay likelihood (network target or output).
struct DelayLikelihood {
  std::vector<double> values;
  double fs = 0.0;

  int lag_count() const { return static_cast<int>(values.size()); }
};

// Inverse DFT of the unit-magnitude cross spectrum, rotated so lag 0 sits at
// index L/2, cropped to L lags. eps_rel scales the magnitude floor relative to
// the largest cross-spectral bin.
GccFrame gcc_phat(const std::vector<double>& xk, const std::vector<double>& xl, int lag_count,
                  double eps_rel = 1e-12);

// exp(-(D - delay*fs)^2 / (2 sigma^2)) over lags D = -L/2 .. L/2-1.
DelayLikelihood gaussian_target(double delay_s, double fs, int lag_count, double sigma);

// Windowed-sinc resampling; identical rates return the input unchanged.
std::vector<double> resample(const std::vector<double>& signal, double from_fs, double to_fs);

// Full-size forward/inverse DFT helpers (FFTW-backed, thread-safe).
std::vector<std::complex<double>> dft(const std::vector<double>& x);
std::vector<double> idft_real(const std::vector<std::complex<double>>& spectrum, int n);

}  // namespace deepgcc

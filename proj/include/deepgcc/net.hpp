#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deepgcc/dsp.hpp"

namespace deepgcc {

enum class ResampleKind : std::uint8_t { kHalve = 0, kDouble = 1 };

struct BlockSpec {
  int in_channels = 1;
  int out_channels = 1;
  ResampleKind resample = ResampleKind::kHalve;
};

// Flat [batch][channel][length] activation buffer.
template <typename T>
struct Tensor3 {
  int batch = 0, channels = 0, length = 0;
  std::vector<T> v;

  Tensor3() = default;
  Tensor3(int b, int c, int l)
      : batch(b), channels(c), length(l),
        v(static_cast<std::size_t>(b) * c * l, T(0)) {}

  T* row(int b, int c) {
    return v.data() + (static_cast<std::size_t>(b) * channels + c) * length;
  }
  const T* row(int b, int c) const {
    return v.data() + (static_cast<std::size_t>(b) * channels + c) * length;
  }
  std::size_t size() const { return v.size(); }
};

// Conv(kernel 4, length-preserving) -> pool/upsample(2) -> batchnorm -> ReLU.
template <typename T>
struct ConvBlock {
  BlockSpec spec;
  std::vector<T> w;  // [out][in][4]
  std::vector<T> b;  // [out]
  std::vector<T> bn_scale, bn_shift;     // trainable
  std::vector<T> bn_mean, bn_var;        // running statistics

  std::size_t weight_count() const { return w.size() + b.size(); }
  std::size_t batchnorm_count() const {
    return bn_scale.size() + bn_shift.size() + bn_mean.size() + bn_var.size();
  }
};

enum class NetMode { kTrain, kInfer };

template <typename T>
struct BlockCache;  // per-block activations kept for backprop

template <typename T>
struct TrainContext {
  Tensor3<T> input;
  std::vector<BlockCache<T>> blocks;
};

// Encoder-decoder over 1-D lag vectors. The standard configuration follows the
// channel progression 1-2-8-32-128-32-8-2-1 with halving through the encoder
// and doubling through the decoder.
template <typename T>
class Net {
 public:
  static constexpr int kKernel = 4;
  static constexpr int kPadLeft = 2;
  static constexpr int kPadRight = 1;
  static constexpr double kBnMomentum = 0.99;
  static constexpr double kBnEps = 1e-3;

  Net(int input_length, std::vector<BlockSpec> specs, std::uint64_t seed);

  static std::vector<BlockSpec> standard_blocks();
  static Net standard(int input_length = 400, std::uint64_t seed = 0);

  int input_length() const { return input_length_; }
  int output_length() const { return output_length_; }
  int output_channels() const { return blocks_.back().spec.out_channels; }

  const std::vector<ConvBlock<T>>& blocks() const { return blocks_; }
  std::vector<ConvBlock<T>>& blocks() { return blocks_; }

  std::size_t param_count() const;       // conv + batchnorm incl. running stats
  std::size_t conv_param_count() const;
  std::size_t batchnorm_param_count() const;
  std::size_t trainable_param_count() const;  // w, b, bn scale, bn shift

  // Inference with frozen batchnorm statistics. Appends (length, channels)
  // after every block to shape_trace when given.
  Tensor3<T> infer(const Tensor3<T>& x,
                   std::vector<std::array<int, 2>>* shape_trace = nullptr) const;
  std::vector<T> infer1(std::span<const T> x) const;
  DelayLikelihood infer_frame(const GccFrame& frame) const;

  // Batch-statistics forward; updates running statistics and fills the
  // context consumed by backward().
  Tensor3<T> forward_train(const Tensor3<T>& x, TrainContext<T>& ctx);

  Tensor3<T> forward(const Tensor3<T>& x, NetMode mode);

  // Gradient of the scalar loss wrt every trainable parameter, given
  // dLoss/dOutput. Layout matches trainable parameter order.
  void backward(const TrainContext<T>& ctx, const Tensor3<T>& grad_out,
                std::vector<T>& grad) const;

  void copy_trainable(std::vector<T>& out) const;
  void set_trainable(std::span<const T> in);

  // Full state snapshot (trainable + running statistics), for best-epoch restore.
  std::vector<T> snapshot_state() const;
  void restore_state(std::span<const T> state);

 private:
  int input_length_ = 0;
  int output_length_ = 0;
  std::vector<ConvBlock<T>> blocks_;
};

struct AdamConfig {
  double lr = 1e-4;
  double decay = 1e-8;  // inverse-time lr decay per step
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename T>
struct AdamState {
  AdamConfig cfg;
  std::uint64_t step = 0;
  std::vector<T> m, v;

  AdamState() = default;
  explicit AdamState(std::size_t n, AdamConfig c = {})
      : cfg(c), m(n, T(0)), v(n, T(0)) {}

  double effective_lr() const { return cfg.lr / (1.0 + cfg.decay * static_cast<double>(step)); }
};

template <typename T>
void adam_step(Net<T>& net, std::span<const T> grad, AdamState<T>& state);

double loss_mse(std::span<const float> pred, std::span<const float> target);
double loss_mse(std::span<const double> pred, std::span<const double> target);
double loss_mse(const DelayLikelihood& pred, const DelayLikelihood& target);

// Flat training examples, one lag vector per row.
struct Dataset {
  int lag_count = 0;
  std::vector<float> inputs;
  std::vector<float> targets;

  int size() const;
  void add(std::span<const double> input, std::span<const double> target);
  void add(const GccFrame& frame, const DelayLikelihood& target);
  std::span<const float> input_row(int i) const;
  std::span<const float> target_row(int i) const;
};

struct TrainConfig {
  int batch_size = 100;
  int patience = 50;
  int max_epochs = 500;
  std::uint64_t seed = 0;
  AdamConfig adam{};
};

struct EpochStats {
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainResult {
  std::vector<EpochStats> history;
  int best_epoch = 0;  // 1-based
  double best_val_loss = 0.0;
};

// Minibatch training with per-epoch shuffling, early stopping on validation
// loss, and best-epoch weight restore.
TrainResult train(Net<float>& net, const Dataset& train_set, const Dataset& val_set,
                  const TrainConfig& cfg);

// Versioned binary checkpoint (magic DGCC); optionally carries optimizer state.
void save_checkpoint(const std::string& path, const Net<float>& net,
                     const AdamState<float>* opt = nullptr);
Net<float> load_checkpoint(const std::string& path, AdamState<float>* opt = nullptr);

}  // namespace deepgcc

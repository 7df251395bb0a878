#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "pnc/lattice.hpp"
#include "pnc/sigcode.hpp"

namespace pnc {

struct CoeffDecodeResult {
    std::vector<GaussInt> coeffs;  // first k coefficients of the quantized point
    bool budget_limited = false;
};

// A lattice-partition modulation scheme: pairs the encoder E with the lattice
// quantizer the relay applies to g(y). Codewords are unscaled; the simulator
// scales them to meet the transmit power budget.
class PncScheme {
  public:
    virtual ~PncScheme() = default;

    virtual const FieldSpec& field() const = 0;
    virtual int message_length() const = 0;  // k
    virtual int block_length() const = 0;    // n
    virtual Eigen::VectorXcd encode(const FieldVec& w,
                                    const Eigen::VectorXcd& dither = Eigen::VectorXcd()) const = 0;
    // noise_var: effective per-complex-dimension noise variance seen by the
    // quantizer (0 when unknown); structured decoders may use it for metric
    // biasing.
    virtual CoeffDecodeResult nearest_coeffs(const Eigen::VectorXcd& gy,
                                             double noise_var = 0.0) const = 0;

    // Average/worst-case per-complex-dimension power of the unscaled codebook.
    virtual double mean_symbol_power() const = 0;
    virtual double peak_symbol_power() const = 0;

    double rate_bits_per_dim() const {
        return message_length() * std::log2(static_cast<double>(field().q)) / block_length();
    }
};

// Signal code with TH shaping; quantization via the heap-based stack decoder.
class SignalCodeScheme : public PncScheme {
  public:
    // bias_scale scales the noise-matched Fano bias applied on top of the
    // raw stack options when the caller provides a noise variance.
    explicit SignalCodeScheme(SignalCode code, StackDecodeOptions opts = {}, double bias_scale = 1.0);

    const FieldSpec& field() const override { return code_.field; }
    int message_length() const override { return code_.k; }
    int block_length() const override { return code_.n(); }
    Eigen::VectorXcd encode(const FieldVec& w, const Eigen::VectorXcd& dither) const override;
    CoeffDecodeResult nearest_coeffs(const Eigen::VectorXcd& gy, double noise_var) const override;
    double mean_symbol_power() const override { return mean_power_; }
    double peak_symbol_power() const override { return 0.5 * code_.p * code_.p; }

    const SignalCode& code() const { return code_; }
    const StackDecodeOptions& decoder_options() const { return opts_; }

  private:
    SignalCode code_;
    StackDecodeOptions opts_;
    double bias_scale_;
    double mean_power_ = 0.0;
};

// Uncoded baseline on Z[i]^n / p Z[i]^n: q^2-QAM symbols, symbol-wise
// quantization (the lattice is orthogonal, so rounding is exact).
class QamScheme : public PncScheme {
  public:
    QamScheme(int n, int p);

    const FieldSpec& field() const override { return field_; }
    int message_length() const override { return n_; }
    int block_length() const override { return n_; }
    Eigen::VectorXcd encode(const FieldVec& w, const Eigen::VectorXcd& dither) const override;
    CoeffDecodeResult nearest_coeffs(const Eigen::VectorXcd& gy, double noise_var) const override;
    double mean_symbol_power() const override { return mean_power_; }
    double peak_symbol_power() const override { return peak_power_; }

  private:
    int n_;
    int p_;
    FieldSpec field_;
    double mean_power_ = 0.0;
    double peak_power_ = 0.0;
};

// Small generic partitions quantized by exact sphere search; used by tests
// and toy configurations (fine dimension <= 8).
class ExactLatticeScheme : public PncScheme {
  public:
    explicit ExactLatticeScheme(LatticePartition partition);

    const FieldSpec& field() const override;
    int message_length() const override { return partition_.k; }
    int block_length() const override { return partition_.fine.ambient(); }
    Eigen::VectorXcd encode(const FieldVec& w, const Eigen::VectorXcd& dither) const override;
    CoeffDecodeResult nearest_coeffs(const Eigen::VectorXcd& gy, double noise_var) const override;
    double mean_symbol_power() const override { return mean_power_; }
    double peak_symbol_power() const override { return peak_power_; }

    const LatticePartition& partition() const { return partition_; }

  private:
    LatticePartition partition_;
    double mean_power_ = 0.0;
    double peak_power_ = 0.0;
};

}  // namespace pnc

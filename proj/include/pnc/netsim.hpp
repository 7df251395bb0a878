#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "pnc/cfwd.hpp"
#include "pnc/channel.hpp"
#include "pnc/scheme.hpp"

namespace pnc {

enum class SchemeKind { SignalCode, Qam };

std::string scheme_name(SchemeKind kind);

// The canonical two-transmitter, two-relay network: parameters of the scheme
// under test, the SNR grid, and the Monte Carlo budget.
struct SimConfig {
    int k = 100;
    int p = 3;
    std::vector<std::complex<double>> taps;  // defaults to the f1 = 1.96 e^{i pi/8}, f2 = 0.98^2 e^{i pi/4} code
    std::vector<double> snr_db;              // ascending, nonempty
    int trials = 2000;
    std::uint64_t seed = 1;
    StackDecodeOptions decoder{9, 100'000, 4'000, 0.0, 150'000};
    double bias_scale = 1.0;  // noise-matched Fano bias multiplier for the stack decoder
    bool genie = false;  // bypass relay decoding with ground-truth combinations
    int threads = 0;     // 0: automatic, capped by PNC_THREADS

    SimConfig();
};

void validate_config(const SimConfig& cfg);

std::string config_to_json(const SimConfig& cfg);
SimConfig config_from_json(const std::string& text);

std::unique_ptr<PncScheme> make_scheme(const SimConfig& cfg, SchemeKind kind);

// One Monte Carlo realization.
struct TrialRecord {
    double snr_db = 0.0;
    std::array<Eigen::VectorXcd, 2> h;
    std::array<CoeffVector, 2> a;
    std::array<bool, 2> relay_ok{false, false};
    bool invertible = false;
    bool recovered = false;
};

TrialRecord run_trial(const SimConfig& cfg, const PncScheme& scheme, double snr_db,
                      std::uint64_t trial_seed);

struct CurvePoint {
    double snr_db = 0.0;
    int trials = 0;
    double success_rate = 0.0;
    double throughput = 0.0;  // bits per complex dimension
    double ci95 = 0.0;
};

// Success-weighted sum rate over the configured SNR grid. Per-trial seeds are
// derived from (seed, scheme, snr index, trial index), so results do not
// depend on the worker count.
std::vector<CurvePoint> throughput_curve(const SimConfig& cfg, SchemeKind kind);

// The uncoded q-QAM baseline on Z[i]^n / p Z[i]^n.
std::vector<CurvePoint> baseline_qam(const SimConfig& cfg);

std::string curves_to_csv(
    const std::vector<std::pair<SchemeKind, std::vector<CurvePoint>>>& curves);

}  // namespace pnc

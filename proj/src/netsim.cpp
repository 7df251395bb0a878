#include "pnc/netsim.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "pnc/errors.hpp"

namespace pnc {

using nlohmann::json;

std::string scheme_name(SchemeKind kind) {
    return kind == SchemeKind::SignalCode ? "signal-code" : "qam";
}

SimConfig::SimConfig() {
    taps = {std::polar(1.96, M_PI / 8.0), std::polar(0.98 * 0.98, M_PI / 4.0)};
    for (int db = 0; db <= 30; db += 2) snr_db.push_back(static_cast<double>(db));
}

void validate_config(const SimConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("config: k must be positive");
    if (!is_prime(GaussInt{cfg.p, 0}) || cfg.p % 4 != 3)
        throw std::invalid_argument("config: p must be a rational prime = 3 (mod 4)");
    if (cfg.taps.empty()) throw std::invalid_argument("config: taps must be nonempty");
    if (cfg.snr_db.empty()) throw std::invalid_argument("config: snr grid must be nonempty");
    for (std::size_t i = 1; i < cfg.snr_db.size(); ++i)
        if (cfg.snr_db[i] <= cfg.snr_db[i - 1])
            throw std::invalid_argument("config: snr grid must be strictly ascending");
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be positive");
    if (cfg.decoder.branch_width < 1) throw std::invalid_argument("config: branch width must be positive");
    if (cfg.decoder.max_expansions < 1) throw std::invalid_argument("config: max expansions must be positive");
}

std::string config_to_json(const SimConfig& cfg) {
    json j;
    j["k"] = cfg.k;
    j["p"] = cfg.p;
    json taps = json::array();
    for (const auto& f : cfg.taps) taps.push_back({f.real(), f.imag()});
    j["taps"] = taps;
    j["polar"] = false;
    j["snr_db"] = cfg.snr_db;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["heap_capacity"] = cfg.decoder.heap_capacity;
    j["branch_width"] = cfg.decoder.branch_width;
    j["max_expansions"] = cfg.decoder.max_expansions;
    j["refine_visits"] = cfg.decoder.refine_visits;
    j["bias_scale"] = cfg.bias_scale;
    j["genie"] = cfg.genie;
    j["threads"] = cfg.threads;
    return j.dump(2) + "\n";
}

SimConfig config_from_json(const std::string& text) {
    json j = json::parse(text);
    SimConfig cfg;
    if (j.contains("k")) cfg.k = j.at("k").get<int>();
    if (j.contains("p")) cfg.p = j.at("p").get<int>();
    if (j.contains("taps")) {
        bool polar = j.value("polar", false);
        cfg.taps.clear();
        for (const auto& t : j.at("taps")) {
            double a = t.at(0).get<double>();
            double b = t.at(1).get<double>();
            cfg.taps.push_back(polar ? std::polar(a, b) : std::complex<double>(a, b));
        }
    }
    if (j.contains("snr_db")) cfg.snr_db = j.at("snr_db").get<std::vector<double>>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("heap_capacity")) cfg.decoder.heap_capacity = j.at("heap_capacity").get<std::size_t>();
    if (j.contains("branch_width")) cfg.decoder.branch_width = j.at("branch_width").get<int>();
    if (j.contains("max_expansions")) cfg.decoder.max_expansions = j.at("max_expansions").get<std::size_t>();
    if (j.contains("refine_visits")) cfg.decoder.refine_visits = j.at("refine_visits").get<std::size_t>();
    if (j.contains("bias_scale")) cfg.bias_scale = j.at("bias_scale").get<double>();
    if (j.contains("genie")) cfg.genie = j.at("genie").get<bool>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    validate_config(cfg);
    return cfg;
}

std::unique_ptr<PncScheme> make_scheme(const SimConfig& cfg, SchemeKind kind) {
    validate_config(cfg);
    if (kind == SchemeKind::SignalCode)
        return std::make_unique<SignalCodeScheme>(make_signal_code(cfg.taps, cfg.k, cfg.p), cfg.decoder,
                                                  cfg.bias_scale);
    return std::make_unique<QamScheme>(cfg.k, cfg.p);
}

namespace {

FieldVec draw_message(const std::vector<FieldElem>& alphabet, int k, Rng& rng) {
    FieldVec w;
    w.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t)
        w.push_back(alphabet[static_cast<std::size_t>(rng.next_u64() % alphabet.size())]);
    return w;
}

int resolve_threads(int requested) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    int n = requested > 0 ? requested : hw;
    if (const char* env = std::getenv("PNC_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(1, n);
}

}  // namespace

TrialRecord run_trial(const SimConfig& cfg, const PncScheme& scheme, double snr_db,
                      std::uint64_t trial_seed) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double scale = std::sqrt(snr / scheme.mean_symbol_power());
    Rng rng(trial_seed);
    auto alphabet = field_elements(scheme.field());
    const int k = scheme.message_length();

    std::array<FieldVec, 2> w{draw_message(alphabet, k, rng), draw_message(alphabet, k, rng)};
    std::array<Eigen::VectorXcd, 2> x{scale * scheme.encode(w[0]), scale * scheme.encode(w[1])};

    TransmitOptions mac;
    mac.noise = true;
    mac.max_mean_power = snr * scheme.peak_symbol_power() / scheme.mean_symbol_power();

    TrialRecord rec;
    rec.snr_db = snr_db;
    std::array<FieldVec, 2> decoded;
    for (std::size_t r = 0; r < 2; ++r) {
        rec.h[r] = sample_rayleigh(2, rng);
        ChannelVector ch{rec.h[r], snr};
        CoeffVector a = select_coefficients(ch);
        rec.a[r] = a;
        FieldVec arow = map_coeffs_to_field(a, scheme.field());
        FieldVec truth = arow[0] * w[0] + arow[1] * w[1];

        Eigen::VectorXcd y = transmit({x[0], x[1]}, ch.h, rng, mac);
        if (cfg.genie) {
            decoded[r] = truth;
        } else if (all_zero(arow)) {
            // all coefficients divisible by pi: selection failure, no decode attempt
            decoded[r] = FieldVec(static_cast<std::size_t>(k), field_zero(scheme.field()));
            rec.relay_ok[r] = false;
            continue;
        } else {
            decoded[r] = decode_combination(y, ch, a, scheme).u;
        }
        rec.relay_ok[r] = decoded[r] == truth;
    }

    std::vector<std::vector<FieldElem>> rows(2);
    for (int r = 0; r < 2; ++r) rows[static_cast<std::size_t>(r)] =
        map_coeffs_to_field(rec.a[static_cast<std::size_t>(r)], scheme.field());
    try {
        auto solved = solve_linear(rows, {decoded[0], decoded[1]});
        rec.invertible = true;
        rec.recovered = solved[0] == w[0] && solved[1] == w[1];
    } catch (const singular_error&) {
        rec.invertible = false;
        rec.recovered = false;
    }
    return rec;
}

std::vector<CurvePoint> throughput_curve(const SimConfig& cfg, SchemeKind kind) {
    validate_config(cfg);
    auto scheme = make_scheme(cfg, kind);
    const double bits = 2.0 * scheme->message_length() *
                        std::log2(static_cast<double>(scheme->field().q));
    const double per_dim = bits / scheme->block_length();
    const int nthreads = resolve_threads(cfg.threads);
    const std::uint64_t scheme_id = kind == SchemeKind::SignalCode ? 1 : 2;

    std::vector<CurvePoint> out;
    for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
        std::atomic<int> next{0};
        std::atomic<long> successes{0};
        auto worker = [&] {
            long local = 0;
            while (true) {
                int i = next.fetch_add(1);
                if (i >= cfg.trials) break;
                std::uint64_t seed = derive_seed(cfg.seed, scheme_id, s, static_cast<std::uint64_t>(i));
                TrialRecord rec = run_trial(cfg, *scheme, cfg.snr_db[s], seed);
                if (rec.recovered) ++local;
            }
            successes.fetch_add(local);
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();

        CurvePoint pt;
        pt.snr_db = cfg.snr_db[s];
        pt.trials = cfg.trials;
        pt.success_rate = static_cast<double>(successes.load()) / cfg.trials;
        pt.throughput = pt.success_rate * per_dim;
        pt.ci95 = 1.96 * std::sqrt(pt.success_rate * (1.0 - pt.success_rate) / cfg.trials) * per_dim;
        out.push_back(pt);
    }
    return out;
}

std::vector<CurvePoint> baseline_qam(const SimConfig& cfg) {
    return throughput_curve(cfg, SchemeKind::Qam);
}

std::string curves_to_csv(
    const std::vector<std::pair<SchemeKind, std::vector<CurvePoint>>>& curves) {
    std::string out = "snr_db,scheme,trials,success_rate,throughput_bits_per_dim,ci95\n";
    char buf[256];
    for (const auto& [kind, pts] : curves) {
        for (const auto& pt : pts) {
            std::snprintf(buf, sizeof(buf), "%g,%s,%d,%.6f,%.6f,%.6f\n", pt.snr_db,
                          scheme_name(kind).c_str(), pt.trials, pt.success_rate, pt.throughput,
                          pt.ci95);
            out += buf;
        }
    }
    return out;
}

}  // namespace pnc

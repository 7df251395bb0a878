#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pnc/cfwd.hpp"
#include "pnc/lattice.hpp"
#include "pnc/netsim.hpp"
#include "pnc/snf.hpp"

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json gmatrix_to_json(const pnc::GMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back({m.at(i, j).re, m.at(i, j).im});
        rows.push_back(row);
    }
    return rows;
}

pnc::GMatrix gmatrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("matrix: expected a nonempty array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j.at(0).size());
    pnc::GMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.size()) != cols) throw std::runtime_error("matrix: ragged rows");
        for (int c = 0; c < cols; ++c) {
            const auto& e = row.at(static_cast<std::size_t>(c));
            m.at(i, c) = {e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>()};
        }
    }
    return m;
}

Eigen::MatrixXcd cmatrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("matrix: expected a nonempty array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j.at(0).size());
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.size()) != cols) throw std::runtime_error("matrix: ragged rows");
        for (int c = 0; c < cols; ++c) {
            const auto& e = row.at(static_cast<std::size_t>(c));
            m(i, c) = std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

std::complex<double> parse_complex(std::string s) {
    std::erase(s, ' ');
    if (s.empty()) throw std::runtime_error("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') return {std::stod(s), 0.0};
    s.pop_back();
    // split at the last sign that is neither leading nor an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t pos = s.size(); pos-- > 1;) {
        if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
            split = pos;
            break;
        }
    }
    auto parse_unit = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return std::stod(t);
    };
    if (split == std::string::npos) return {0.0, parse_unit(s)};
    return {std::stod(s.substr(0, split)), parse_unit(s.substr(split))};
}

Eigen::VectorXcd parse_complex_list(const std::string& text) {
    std::vector<std::complex<double>> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(parse_complex(item));
    Eigen::VectorXcd h(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) h(static_cast<Eigen::Index>(i)) = vals[i];
    return h;
}

int cmd_snf(const std::string& in_path) {
    json j = json::parse(slurp(in_path));
    pnc::GMatrix m = gmatrix_from_json(j);
    pnc::SnfResult s = pnc::smith_normal_form(m);
    json out;
    out["P"] = gmatrix_to_json(s.P);
    out["D"] = gmatrix_to_json(s.D);
    out["Q"] = gmatrix_to_json(s.Q);
    json factors = json::array();
    for (const auto& f : s.invariant_factors) factors.push_back({f.re, f.im});
    out["invariant_factors"] = factors;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_analyze_partition(const std::string& in_path) {
    json j = json::parse(slurp(in_path));
    Eigen::MatrixXcd g = cmatrix_from_json(j.at("G"));
    pnc::GMatrix jm = gmatrix_from_json(j.at("J"));
    pnc::LatticePartition p = pnc::build_partition(g, jm);

    json out;
    if (p.index_overflow) out["index"] = nullptr;
    else out["index"] = p.index_value;
    json factors = json::array();
    for (const auto& f : p.snf.invariant_factors) factors.push_back({f.re, f.im});
    out["invariant_factors"] = factors;
    pnc::GaussInt ann = pnc::annihilator(p.snf);
    out["annihilator"] = {ann.re, ann.im};
    pnc::Factorization fact = pnc::factor(ann);
    json jfact;
    jfact["unit"] = {fact.unit.re, fact.unit.im};
    json primes = json::array();
    for (const auto& pp : fact.factors)
        primes.push_back(json{{"prime", {pp.prime.re, pp.prime.im}}, {"exponent", pp.exponent}});
    jfact["factors"] = primes;
    out["annihilator_factorization"] = jfact;
    auto vs = pnc::is_vector_space(p);
    if (vs) out["vector_space"] = json{{"q", vs->q}, {"k", vs->k}};
    else out["vector_space"] = nullptr;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_rate(const std::string& h_text, double snr_db, int expect_l) {
    Eigen::VectorXcd h = parse_complex_list(h_text);
    if (expect_l > 0 && h.size() != expect_l)
        throw std::runtime_error("rate: --h has " + std::to_string(h.size()) + " entries, expected " +
                                 std::to_string(expect_l));
    pnc::ChannelVector ch{h, std::pow(10.0, snr_db / 10.0)};
    pnc::CoeffVector a = pnc::select_coefficients(ch);
    double rate = pnc::computation_rate(ch, a);
    std::string coeffs;
    for (int l = 0; l < a.size(); ++l) {
        if (l) coeffs += ",";
        coeffs += pnc::to_string(a.a[static_cast<std::size_t>(l)]);
    }
    std::printf("a=(%s)\n", coeffs.c_str());
    std::printf("R=%.10g\n", rate);
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path, int trials,
                 std::int64_t seed, const std::string& scheme) {
    pnc::SimConfig cfg;
    if (!config_path.empty()) cfg = pnc::config_from_json(slurp(config_path));
    if (trials > 0) cfg.trials = trials;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    pnc::validate_config(cfg);

    std::vector<std::pair<pnc::SchemeKind, std::vector<pnc::CurvePoint>>> curves;
    if (scheme == "signal-code" || scheme == "both")
        curves.emplace_back(pnc::SchemeKind::SignalCode,
                            pnc::throughput_curve(cfg, pnc::SchemeKind::SignalCode));
    if (scheme == "qam" || scheme == "both")
        curves.emplace_back(pnc::SchemeKind::Qam, pnc::baseline_qam(cfg));

    std::string csv = pnc::curves_to_csv(curves);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << csv;
        std::ofstream side(out_path + ".config.json", std::ios::binary);
        if (!side) throw std::runtime_error("cannot write config sidecar");
        side << pnc::config_to_json(cfg);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physical-layer network coding over Z[i] lattice partitions"};
    app.require_subcommand(1);

    std::string in_path;
    auto* snf = app.add_subcommand("snf", "Smith normal form of a Gaussian-integer matrix (JSON)");
    snf->add_option("--in", in_path, "input file (default: stdin)");

    std::string part_path;
    auto* part = app.add_subcommand("analyze-partition", "index, invariant factors and field structure");
    part->add_option("--in", part_path, "input file (default: stdin)");

    std::string h_text;
    double snr_db = 0.0;
    int expect_l = 0;
    auto* rate = app.add_subcommand("rate", "computation rate and selected coefficients for a channel");
    rate->set_help_flag("--help", "print help");
    rate->add_option("--h", h_text, "channel coefficients, e.g. \"1,0\" or \"0.4+0.3i,1.2\"")->required();
    rate->add_option("--snr-db", snr_db, "SNR in dB")->required();
    rate->add_option("--L", expect_l, "expected number of transmitters (validation only)");

    std::string config_path, out_path, scheme = "both";
    int trials = 0;
    std::int64_t seed = -1;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo relay-network throughput");
    sim->add_option("--config", config_path, "JSON config (defaults: the canonical two-relay network)");
    sim->add_option("--out", out_path, "CSV output path (default: stdout; also writes <out>.config.json)");
    sim->add_option("--trials", trials, "override trial count");
    sim->add_option("--seed", seed, "override master seed");
    sim->add_option("--scheme", scheme, "signal-code | qam | both")
        ->check(CLI::IsMember({"signal-code", "qam", "both"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (snf->parsed()) return cmd_snf(in_path);
        if (part->parsed()) return cmd_analyze_partition(part_path);
        if (rate->parsed()) return cmd_rate(h_text, snr_db, expect_l);
        if (sim->parsed()) return cmd_simulate(config_path, out_path, trials, seed, scheme);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

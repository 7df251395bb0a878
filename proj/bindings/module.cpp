#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pnc/cfwd.hpp"
#include "pnc/lattice.hpp"
#include "pnc/netsim.hpp"
#include "pnc/sigcode.hpp"
#include "pnc/snf.hpp"

namespace py = pybind11;
using namespace pnc;

namespace {

using Pair = std::pair<std::int64_t, std::int64_t>;

GaussInt to_gauss(const Pair& p) { return {p.first, p.second}; }
Pair to_pair(const GaussInt& g) { return {g.re, g.im}; }

std::vector<GaussInt> to_gauss_vec(const std::vector<Pair>& v) {
    std::vector<GaussInt> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(to_gauss(p));
    return out;
}

std::vector<Pair> to_pair_vec(const std::vector<GaussInt>& v) {
    std::vector<Pair> out;
    out.reserve(v.size());
    for (const auto& g : v) out.push_back(to_pair(g));
    return out;
}

GMatrix to_gmatrix(const std::vector<std::vector<Pair>>& rows) {
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    GMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.cols)
            throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < m.cols; ++j)
            m.at(i, j) = to_gauss(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return m;
}

std::vector<std::vector<Pair>> from_gmatrix(const GMatrix& m) {
    std::vector<std::vector<Pair>> rows(static_cast<std::size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) rows[static_cast<std::size_t>(i)].push_back(to_pair(m.at(i, j)));
    return rows;
}

FieldVec to_field_vec(const std::vector<Pair>& v, const FieldSpec& spec) {
    FieldVec w;
    w.reserve(v.size());
    for (const auto& p : v) w.push_back(sigma(to_gauss(p), spec));
    return w;
}

std::vector<Pair> from_field_vec(const FieldVec& w) {
    std::vector<Pair> out;
    out.reserve(w.size());
    for (const auto& e : w) out.push_back(to_pair(e.rep));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "physical-layer network coding over Z[i] lattice partitions";

    py::class_<GaussInt>(m, "GaussInt")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("re"), py::arg("im") = 0)
        .def_readwrite("re", &GaussInt::re)
        .def_readwrite("im", &GaussInt::im)
        .def("__add__", [](const GaussInt& a, const GaussInt& b) { return a + b; })
        .def("__sub__", [](const GaussInt& a, const GaussInt& b) { return a - b; })
        .def("__mul__", [](const GaussInt& a, const GaussInt& b) { return a * b; })
        .def("__neg__", [](const GaussInt& a) { return -a; })
        .def("__eq__", [](const GaussInt& a, const GaussInt& b) { return a == b; })
        .def("conj", &GaussInt::conj)
        .def("__complex__", &GaussInt::to_complex)
        .def("__repr__", [](const GaussInt& g) { return to_string(g); });

    m.def("norm", [](const GaussInt& g) { return norm(g); });
    m.def("divmod", [](const GaussInt& a, const GaussInt& b) {
        auto r = divmod(a, b);
        return py::make_tuple(r.q, r.r);
    });
    m.def("gcd", [](const GaussInt& a, const GaussInt& b) { return gcd(a, b); });
    m.def("is_prime", [](const GaussInt& g) { return is_prime(g); });
    m.def("canonical_associate", [](const GaussInt& g) { return canonical_associate(g); });
    m.def("factor", [](const GaussInt& g) {
        Factorization f = factor(g);
        py::list factors;
        for (const auto& pp : f.factors) factors.append(py::make_tuple(pp.prime, pp.exponent));
        py::dict out;
        out["unit"] = f.unit;
        out["factors"] = factors;
        return out;
    });

    m.def("smith_normal_form", [](const std::vector<std::vector<Pair>>& rows) {
        SnfResult s = smith_normal_form(to_gmatrix(rows));
        py::dict out;
        out["P"] = from_gmatrix(s.P);
        out["D"] = from_gmatrix(s.D);
        out["Q"] = from_gmatrix(s.Q);
        out["invariant_factors"] = to_pair_vec(s.invariant_factors);
        return out;
    });

    py::class_<FieldSpec>(m, "Field")
        .def(py::init([](const GaussInt& pi) { return make_field_spec(pi); }), py::arg("pi"))
        .def_property_readonly("q", [](const FieldSpec& s) { return s.q; })
        .def_property_readonly("pi", [](const FieldSpec& s) { return s.pi; })
        .def("sigma", [](const FieldSpec& s, Pair g) { return to_pair(sigma(to_gauss(g), s).rep); })
        .def("elements",
             [](const FieldSpec& s) {
                 std::vector<Pair> out;
                 for (const auto& e : field_elements(s)) out.push_back(to_pair(e.rep));
                 return out;
             })
        .def("add", [](const FieldSpec& s, Pair x, Pair y) {
            return to_pair((sigma(to_gauss(x), s) + sigma(to_gauss(y), s)).rep);
        })
        .def("mul", [](const FieldSpec& s, Pair x, Pair y) {
            return to_pair((sigma(to_gauss(x), s) * sigma(to_gauss(y), s)).rep);
        })
        .def("neg", [](const FieldSpec& s, Pair x) { return to_pair((-sigma(to_gauss(x), s)).rep); })
        .def("inv", [](const FieldSpec& s, Pair x) { return to_pair(inv(sigma(to_gauss(x), s)).rep); });

    py::class_<LatticePartition>(m, "LatticePartition")
        .def_property_readonly("k", [](const LatticePartition& p) { return p.k; })
        .def_property_readonly("fine_generator", [](const LatticePartition& p) { return p.fine.G; })
        .def_property_readonly("coarse_generator", [](const LatticePartition& p) { return p.coarse.G; })
        .def_property_readonly("field_q",
                               [](const LatticePartition& p) -> py::object {
                                   if (!p.field) return py::none();
                                   return py::cast(p.field->q);
                               })
        .def("index", [](const LatticePartition& p) { return index(p); })
        .def("invariant_factors",
             [](const LatticePartition& p) { return to_pair_vec(p.snf.invariant_factors); })
        .def("is_vector_space",
             [](const LatticePartition& p) -> py::object {
                 auto vs = is_vector_space(p);
                 if (!vs) return py::none();
                 return py::make_tuple(vs->q, vs->k);
             })
        .def("phi",
             [](const LatticePartition& p, const Eigen::VectorXcd& lambda) {
                 return from_field_vec(phi(lambda, p));
             })
        .def("phi_inv",
             [](const LatticePartition& p, const std::vector<Pair>& w) {
                 if (!p.field) throw std::invalid_argument("partition has no field structure");
                 return phi_inv(to_field_vec(w, *p.field), p);
             })
        .def("enumerate_cosets", [](const LatticePartition& p) { return enumerate_cosets(p); });

    m.def("build_partition", [](const Eigen::MatrixXcd& g, const std::vector<std::vector<Pair>>& j) {
        return build_partition(g, to_gmatrix(j));
    });

    m.def("quantize_nearest", [](const Eigen::VectorXcd& x, const Eigen::MatrixXcd& g) {
        QuantizeResult q = quantize_nearest(x, make_lattice(g));
        return py::make_tuple(q.point, to_pair_vec(q.coeffs));
    });

    py::class_<SignalCode>(m, "SignalCode")
        .def(py::init([](std::vector<std::complex<double>> taps, int k, int p) {
                 return make_signal_code(std::move(taps), k, p);
             }),
             py::arg("taps"), py::arg("k"), py::arg("p"))
        .def_property_readonly("k", [](const SignalCode& c) { return c.k; })
        .def_property_readonly("m", &SignalCode::m)
        .def_property_readonly("n", &SignalCode::n)
        .def_property_readonly("p", [](const SignalCode& c) { return c.p; })
        .def("generator", [](const SignalCode& c) { return generator_matrix(c); })
        .def(
            "encode",
            [](const SignalCode& c, const std::vector<Pair>& w) {
                return encode_th(c, to_field_vec(w, c.field));
            },
            py::arg("message"))
        .def(
            "decode",
            [](const SignalCode& c, const Eigen::VectorXcd& y, int branch_width,
               std::size_t max_expansions) {
                StackDecodeOptions opts;
                opts.branch_width = branch_width;
                opts.max_expansions = max_expansions;
                StackDecodeResult r = stack_decode(c, y, opts);
                std::vector<Pair> msg;
                for (const auto& g : r.coeffs) msg.push_back(to_pair(sigma(g, c.field).rep));
                return py::make_tuple(msg, to_pair_vec(r.coeffs), r.budget_limited);
            },
            py::arg("y"), py::arg("branch_width") = 9, py::arg("max_expansions") = 50'000);

    m.def(
        "computation_rate",
        [](const Eigen::VectorXcd& h, const std::vector<Pair>& a, double snr) {
            return computation_rate({h, snr}, {to_gauss_vec(a)});
        },
        py::arg("h"), py::arg("a"), py::arg("snr"));
    m.def(
        "mmse_alpha",
        [](const Eigen::VectorXcd& h, const std::vector<Pair>& a, double snr) {
            return mmse_alpha({h, snr}, {to_gauss_vec(a)});
        },
        py::arg("h"), py::arg("a"), py::arg("snr"));
    m.def(
        "select_coefficients",
        [](const Eigen::VectorXcd& h, double snr) {
            return to_pair_vec(select_coefficients({h, snr}).a);
        },
        py::arg("h"), py::arg("snr"));

    m.def("default_config", [] { return config_to_json(SimConfig{}); });
    m.def(
        "simulate",
        [](const std::string& config_json, const std::string& scheme) {
            SimConfig cfg = config_from_json(config_json);
            py::list rows;
            auto emit = [&](SchemeKind kind, const std::vector<CurvePoint>& pts) {
                for (const auto& pt : pts) {
                    py::dict row;
                    row["snr_db"] = pt.snr_db;
                    row["scheme"] = scheme_name(kind);
                    row["trials"] = pt.trials;
                    row["success_rate"] = pt.success_rate;
                    row["throughput_bits_per_dim"] = pt.throughput;
                    row["ci95"] = pt.ci95;
                    rows.append(row);
                }
            };
            if (scheme == "signal-code" || scheme == "both")
                emit(SchemeKind::SignalCode, throughput_curve(cfg, SchemeKind::SignalCode));
            if (scheme == "qam" || scheme == "both") emit(SchemeKind::Qam, baseline_qam(cfg));
            if (rows.size() == 0) throw std::invalid_argument("unknown scheme: " + scheme);
            return rows;
        },
        py::arg("config_json"), py::arg("scheme") = "both");
}

#include "pnc/sigcode.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace pnc {

SignalCode make_signal_code(std::vector<std::complex<double>> taps, int k, int p) {
    if (taps.empty()) throw std::invalid_argument("SignalCode: at least one tap required");
    if (k < 1) throw std::invalid_argument("SignalCode: message length must be positive");
    if (p < 3 || p % 4 != 3 || !is_rational_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("SignalCode: shaping modulus must be a prime = 3 (mod 4)");
    for (const auto& f : taps)
        if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
            throw std::invalid_argument("SignalCode: taps must be finite");
    SignalCode c;
    c.taps = std::move(taps);
    c.k = k;
    c.p = p;
    c.field = make_field_spec(GaussInt{p, 0});
    return c;
}

Eigen::MatrixXcd generator_matrix(const SignalCode& c) {
    const int m = c.m();
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(c.k, c.k + m);
    for (int i = 0; i < c.k; ++i) {
        g(i, i) = 1.0;
        for (int j = 1; j <= m; ++j) g(i, i + j) = c.taps[static_cast<std::size_t>(j - 1)];
    }
    return g;
}

Eigen::MatrixXcd extended_generator(const SignalCode& c) {
    const int n = c.n();
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        g(i, i) = 1.0;
        for (int j = 1; j <= c.m() && i + j < n; ++j) g(i, i + j) = c.taps[static_cast<std::size_t>(j - 1)];
    }
    return g;
}

Eigen::VectorXcd encode_th(const SignalCode& c, const FieldVec& w, const Eigen::VectorXcd& dither) {
    const int n = c.n();
    const int m = c.m();
    if (static_cast<int>(w.size()) != c.k) throw std::invalid_argument("encode_th: message length mismatch");
    for (const auto& sym : w)
        if (!(sym.spec == c.field)) throw std::invalid_argument("encode_th: message field mismatch");
    if (dither.size() != 0 && dither.size() != n)
        throw std::invalid_argument("encode_th: dither length mismatch");

    const double p = static_cast<double>(c.p);
    std::vector<GaussInt> u(static_cast<std::size_t>(n));
    Eigen::VectorXcd x(n);
    for (int t = 0; t < n; ++t) {
        GaussInt base = t < c.k ? sigma_inv(w[static_cast<std::size_t>(t)]) : GaussInt{0, 0};
        std::complex<double> fb = 0.0;
        for (int j = 1; j <= std::min(m, t); ++j)
            fb += c.taps[static_cast<std::size_t>(j - 1)] * u[static_cast<std::size_t>(t - j)].to_complex();
        std::complex<double> v = dither.size() ? dither(t) : std::complex<double>(0.0);
        std::complex<double> s = base.to_complex() + v + fb;
        auto bre = static_cast<std::int64_t>(-std::floor(s.real() / p + 0.5));
        auto bim = static_cast<std::int64_t>(-std::floor(s.imag() / p + 0.5));
        u[static_cast<std::size_t>(t)] = base + GaussInt{c.p * bre, c.p * bim};
        x(t) = s + std::complex<double>(p * static_cast<double>(bre), p * static_cast<double>(bim));
    }
    return x;
}

namespace {

struct Node {
    double metric;
    std::int32_t parent;
    std::int32_t depth;  // number of decided positions; coeff sits at depth-1
    GaussInt coeff;
};

struct HeapEntry {
    double metric;
    std::int32_t index;
    bool operator>(const HeapEntry& o) const {
        if (metric != o.metric) return metric > o.metric;
        return index > o.index;
    }
};

using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>>;

// branch_width Gaussian integers (times `step`) nearest to target, ordered by
// distance with deterministic tie-break.
void nearest_candidates(std::complex<double> target, int count, std::int64_t step,
                        std::vector<GaussInt>& out) {
    out.clear();
    std::complex<double> scaled = target / static_cast<double>(step);
    std::int64_t cre = static_cast<std::int64_t>(std::llround(scaled.real()));
    std::int64_t cim = static_cast<std::int64_t>(std::llround(scaled.imag()));
    std::int64_t radius = 2;
    while ((2 * radius - 1) * (2 * radius - 1) < static_cast<std::int64_t>(count)) ++radius;
    struct Scored {
        double d2;
        GaussInt g;
    };
    std::vector<Scored> cands;
    cands.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
    for (std::int64_t a = cre - radius; a <= cre + radius; ++a)
        for (std::int64_t b = cim - radius; b <= cim + radius; ++b) {
            GaussInt g{a * step, b * step};
            std::complex<double> d = target - g.to_complex();
            cands.push_back({std::norm(d), g});
        }
    std::sort(cands.begin(), cands.end(), [](const Scored& x, const Scored& y) {
        if (x.d2 != y.d2) return x.d2 < y.d2;
        if (x.g.re != y.g.re) return x.g.re < y.g.re;
        return x.g.im < y.g.im;
    });
    for (int i = 0; i < count && i < static_cast<int>(cands.size()); ++i) out.push_back(cands[static_cast<std::size_t>(i)].g);
}

}  // namespace

namespace {

// Anytime depth-first Schnorr-Euchner pass over the causal triangular system:
// per position the candidates are visited nearest-first around the
// zero-forcing estimate, partial metrics prune against the incumbent. When it
// finishes inside the visit budget the result is the exact nearest point over
// the coefficient tree.
struct RefineLevel {
    std::complex<double> zf;
    double entry_metric = 0.0;
    std::vector<GaussInt> cands;
    std::size_t next = 0;
};

bool se_refine(const SignalCode& c, const Eigen::VectorXcd& y, std::size_t visit_budget,
               std::vector<GaussInt>& best_path, double& best_metric) {
    const int n = c.n();
    const int m = c.m();
    std::vector<RefineLevel> levels(static_cast<std::size_t>(n));
    std::vector<GaussInt> path(static_cast<std::size_t>(n));
    std::size_t visits = 0;
    const int ring = 2;  // candidates per level: (2*ring+1)^2 nearest, ample under pruning

    auto enter_level = [&](int t, double entry_metric) {
        RefineLevel& lv = levels[static_cast<std::size_t>(t)];
        std::complex<double> fb = 0.0;
        for (int j = 1; j <= std::min(m, t); ++j)
            fb += c.taps[static_cast<std::size_t>(j - 1)] * path[static_cast<std::size_t>(t - j)].to_complex();
        lv.zf = y(t) - fb;
        lv.entry_metric = entry_metric;
        lv.next = 0;
        nearest_candidates(lv.zf, (2 * ring + 1) * (2 * ring + 1), t < c.k ? 1 : c.p, lv.cands);
    };

    int t = 0;
    enter_level(0, 0.0);
    while (t >= 0) {
        if (++visits > visit_budget) return false;
        RefineLevel& lv = levels[static_cast<std::size_t>(t)];
        bool descended = false;
        while (lv.next < lv.cands.size()) {
            const GaussInt& cand = lv.cands[lv.next++];
            double metric = lv.entry_metric + std::norm(lv.zf - cand.to_complex());
            if (metric >= best_metric) {
                // nearest-first ordering: everything after is worse
                lv.next = lv.cands.size();
                break;
            }
            path[static_cast<std::size_t>(t)] = cand;
            if (t + 1 == n) {
                best_metric = metric;
                best_path = path;
                continue;  // keep scanning this level under the tighter radius
            }
            enter_level(t + 1, metric);
            ++t;
            descended = true;
            break;
        }
        if (!descended) --t;
    }
    return true;
}

}  // namespace

StackDecodeResult stack_decode(const SignalCode& c, const Eigen::VectorXcd& y,
                               const StackDecodeOptions& opts) {
    const int n = c.n();
    const int m = c.m();
    if (y.size() != n) throw std::invalid_argument("stack_decode: received vector length mismatch");
    if (opts.branch_width < 1) throw std::invalid_argument("stack_decode: branch width must be positive");

    std::vector<Node> pool;
    pool.reserve(1024);
    pool.push_back({0.0, -1, 0, GaussInt{}});
    MinHeap heap;
    heap.push({0.0, 0});

    std::vector<GaussInt> feedback_buf(static_cast<std::size_t>(m));
    std::vector<GaussInt> cand_buf;
    std::size_t expansions = 0;
    bool budget_limited = false;
    std::int32_t final_node = -1;
    double final_metric = 0.0;
    std::vector<GaussInt> greedy_tail;

    auto feedback_at = [&](std::int32_t node, int t) {
        std::complex<double> fb = 0.0;
        std::int32_t cur = node;
        for (int j = 1; j <= std::min(m, t); ++j) {
            fb += c.taps[static_cast<std::size_t>(j - 1)] * pool[static_cast<std::size_t>(cur)].coeff.to_complex();
            cur = pool[static_cast<std::size_t>(cur)].parent;
        }
        return fb;
    };

    while (!heap.empty()) {
        auto [metric, idx] = heap.top();
        heap.pop();
        const int t = pool[static_cast<std::size_t>(idx)].depth;
        if (t == n) {
            final_node = idx;
            final_metric = metric;
            break;
        }
        if (expansions >= opts.max_expansions) {
            // Budget exhausted: complete the best frontier node greedily
            // (zero-forcing per position) and report it.
            budget_limited = true;
            final_node = idx;
            final_metric = metric;
            std::int32_t cur = idx;
            greedy_tail.clear();
            // emulate remaining positions on a local window of past coefficients
            std::vector<GaussInt> recent(static_cast<std::size_t>(m));
            for (int j = 1; j <= std::min(m, t); ++j) {
                recent[static_cast<std::size_t>(j - 1)] = pool[static_cast<std::size_t>(cur)].coeff;
                cur = pool[static_cast<std::size_t>(cur)].parent;
            }
            for (int pos = t; pos < n; ++pos) {
                std::complex<double> fb = 0.0;
                for (int j = 1; j <= std::min(m, pos); ++j)
                    fb += c.taps[static_cast<std::size_t>(j - 1)] * recent[static_cast<std::size_t>(j - 1)].to_complex();
                std::complex<double> zf = y(pos) - fb;
                std::int64_t step = pos < c.k ? 1 : c.p;
                GaussInt pick{step * static_cast<std::int64_t>(std::llround(zf.real() / static_cast<double>(step))),
                              step * static_cast<std::int64_t>(std::llround(zf.imag() / static_cast<double>(step)))};
                final_metric += std::norm(zf - pick.to_complex());
                greedy_tail.push_back(pick);
                for (int j = m - 1; j >= 1; --j) recent[static_cast<std::size_t>(j)] = recent[static_cast<std::size_t>(j - 1)];
                if (m > 0) recent[0] = pick;
            }
            break;
        }
        ++expansions;

        std::complex<double> zf = y(t) - feedback_at(idx, t);
        // Tail positions carry shaping only: coefficients constrained to pZ[i].
        std::int64_t step = t < c.k ? 1 : c.p;
        nearest_candidates(zf, opts.branch_width, step, cand_buf);
        for (const auto& cand : cand_buf) {
            double child_metric = metric + std::norm(zf - cand.to_complex()) - opts.metric_bias;
            pool.push_back({child_metric, idx, t + 1, cand});
            heap.push({child_metric, static_cast<std::int32_t>(pool.size() - 1)});
        }
        if (heap.size() > opts.heap_capacity) {
            // evict the worst half
            std::vector<HeapEntry> keep;
            keep.reserve(heap.size());
            while (!heap.empty()) {
                keep.push_back(heap.top());
                heap.pop();
            }
            keep.resize(opts.heap_capacity / 2);
            heap = MinHeap(std::greater<HeapEntry>(), std::move(keep));
        }
    }

    if (final_node < 0) throw std::logic_error("stack_decode: search terminated without a leaf");

    std::vector<GaussInt> full(static_cast<std::size_t>(n));
    {
        int pos = pool[static_cast<std::size_t>(final_node)].depth;
        std::int32_t cur = final_node;
        while (pos > 0) {
            full[static_cast<std::size_t>(pos - 1)] = pool[static_cast<std::size_t>(cur)].coeff;
            cur = pool[static_cast<std::size_t>(cur)].parent;
            --pos;
        }
        int base = pool[static_cast<std::size_t>(final_node)].depth;
        for (std::size_t i = 0; i < greedy_tail.size(); ++i) full[static_cast<std::size_t>(base) + i] = greedy_tail[i];
    }

    StackDecodeResult out;
    // raw squared distance, not the biased search metric
    double raw_metric =
        final_metric + opts.metric_bias * pool[static_cast<std::size_t>(final_node)].depth;
    if (opts.refine_visits > 0) {
        bool certified = se_refine(c, y, opts.refine_visits, full, raw_metric);
        if (!certified) budget_limited = true;
    }
    out.coeffs.assign(full.begin(), full.begin() + c.k);
    out.shaping_coeffs.assign(full.begin() + c.k, full.end());
    out.metric = raw_metric;
    out.budget_limited = budget_limited;
    return out;
}

}  // namespace pnc

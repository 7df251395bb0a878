#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace pnc::detail {

// Schnorr-Euchner depth-first enumeration over z in Z^N minimizing the
// quadratic form sum_j ( L(j,j)*(z_j - mu_j) )^2 derived from a lower
// Cholesky factor L and a real target c. Visits leaves in pruned order;
// the Visitor decides whether a leaf becomes the new incumbent.
//
//   visitor(z, value) -> bool   (true: accept as new best, shrinking the radius)
template <typename Visitor>
class SphereEnumerator {
  public:
    SphereEnumerator(const Eigen::MatrixXd& chol_lower, const Eigen::VectorXd& target, Visitor visitor)
        : L(chol_lower), c(target), N(static_cast<int>(target.size())), z(N), visit(visitor) {}

    void run(double initial_radius = std::numeric_limits<double>::infinity()) {
        best = initial_radius;
        descend(N - 1, 0.0);
    }

    double best_value() const { return best; }

  private:
    void descend(int j, double acc) {
        if (j < 0) {
            if (visit(z, acc)) best = acc;
            return;
        }
        double s = 0.0;
        for (int i = j + 1; i < N; ++i) s += (z(i) - c(i)) * L(i, j);
        double mu = c(j) - s / L(j, j);
        double base = std::round(mu);
        for (int t = 0;; ++t) {
            double cand;
            if (t == 0) cand = base;
            else if (t % 2 == 1) cand = base + (mu >= base ? (t + 1) / 2 : -(t + 1) / 2);
            else cand = base + (mu >= base ? -(t / 2) : t / 2);
            double f = L(j, j) * (cand - mu);
            double cost = acc + f * f;
            if (cost > best) break;  // candidates are ordered by distance
            z(j) = cand;
            descend(j - 1, cost);
        }
    }

    const Eigen::MatrixXd& L;
    const Eigen::VectorXd& c;
    int N;
    Eigen::VectorXd z;
    Visitor visit;
    double best = std::numeric_limits<double>::infinity();
};

}  // namespace pnc::detail

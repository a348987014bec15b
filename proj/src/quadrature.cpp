#include "bloch/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <thread>

namespace bloch {

QuadRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        double beta = i / std::sqrt(4.0 * i * i - 1.0);
        J(i, i - 1) = beta;
        J(i - 1, i) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()[i];
        double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        q.nodes[i] = 0.5 * (b - a) * x + 0.5 * (a + b);
        q.weights[i] = 0.5 * (b - a) * w;
    }
    return q;
}

QuadRule periodic_trapezoid(int n) {
    QuadRule q;
    q.nodes.resize(n);
    q.weights.assign(n, 2.0 * M_PI / n);
    for (int i = 0; i < n; ++i) q.nodes[i] = 2.0 * M_PI * i / n;
    return q;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    int nt = std::min<std::size_t>(threads, n);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace bloch

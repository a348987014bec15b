#include "bloch/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace bloch {

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (long long i = 0; i < A.rows(); ++i)
        for (long long j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

Matrix expm(const Matrix& A) { return A.exp(); }

CanonicalEigen canonical_eigenbasis(const Matrix& H, double cluster_tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    long long D = H.rows();
    std::vector<int> order(D);
    for (long long i = 0; i < D; ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return es.eigenvalues()[a] > es.eigenvalues()[b]; });

    CanonicalEigen out;
    out.vectors = Matrix::Zero(D, D);
    out.values.resize(D);
    int col = 0;
    long long i0 = 0;
    while (i0 < D) {
        long long i1 = i0;
        double e0 = es.eigenvalues()[order[i0]];
        while (i1 < D && std::abs(es.eigenvalues()[order[i1]] - e0) <=
                             cluster_tol * std::max(1.0, std::abs(e0)))
            ++i1;
        long long m = i1 - i0;
        Matrix Q(D, m);
        for (long long j = 0; j < m; ++j) Q.col(j) = es.eigenvectors().col(order[i0 + j]);
        Matrix P = Q * Q.adjoint();
        std::vector<Vector> basis;
        for (long long e = 0; e < D && (long long)basis.size() < m; ++e) {
            Vector u = P.col(e);
            for (const auto& b : basis) u -= (b.adjoint() * u)(0, 0) * b;
            double nn = u.norm();
            if (nn > 1e-8) basis.push_back(u / nn);
        }
        if ((long long)basis.size() != m)
            throw std::runtime_error("canonical_eigenbasis: cluster basis incomplete");
        auto largest_index = [](const Vector& u) {
            int idx = 0;
            double best = -1;
            for (int i = 0; i < u.size(); ++i)
                if (std::abs(u[i]) > best + 1e-12) {
                    best = std::abs(u[i]);
                    idx = i;
                }
            return idx;
        };
        std::sort(basis.begin(), basis.end(), [&](const Vector& a, const Vector& b) {
            return largest_index(a) < largest_index(b);
        });
        for (auto& u : basis) {
            int idx = largest_index(u);
            u /= (u[idx] / std::abs(u[idx]));
            out.vectors.col(col) = u;
            out.values[col] = e0;
            ++col;
        }
        i0 = i1;
    }
    return out;
}

}  // namespace bloch

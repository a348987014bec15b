#include "bloch/bloch_ball.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "bloch/quadrature.hpp"

namespace bloch {

double ball_h1(Group g, int twoS) {
    return g.parity == Parity::Odd ? 0.5 * twoS : 0.25 * (twoS + 1);
}

namespace {

std::vector<BallDensity::Eigenvalue> closed_spectrum(Group g, int twoS, double r) {
    std::vector<BallDensity::Eigenvalue> out;
    auto table = spectrum_table(g, twoS);
    long long N = table.total_dimension();
    double h1 = ball_h1(g, twoS);
    for (auto& e : table.entries)
        out.push_back({e.twoLambda, (1.0 + r * e.energy / h1) / double(N), e.degeneracy});
    return out;
}

}  // namespace

BallDensity density(const GammaSet& g, double r, const RealVector& x) {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("density: r in [0,1] required");
    auto m = hamiltonian(g, x);
    BallDensity out;
    out.gammas = &g;
    out.r = r;
    out.x = x;
    out.h1 = ball_h1(g.group, g.twoS);
    long long D = g.dim();
    out.rho = (Matrix::Identity(D, D) + (r / out.h1) * m.hamiltonian) / double(D);
    out.closed_spectrum = closed_spectrum(g.group, g.twoS, r);
    return out;
}

double von_neumann_closed(Group g, int twoS, double r) {
    auto spec = closed_spectrum(g, twoS, r);
    double s = 0;
    for (auto& e : spec) {
        if (e.value > 0) s -= e.degeneracy * e.value * std::log(e.value);
        // p ln p -> 0 at p = 0
    }
    return s;
}

double von_neumann(const GammaSet& g, double r) {
    RealVector x = RealVector::Zero(g.n());
    x[g.n() - 1] = 1.0;
    BallDensity rho = density(g, r, x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.rho);
    double s = 0;
    for (long long i = 0; i < g.dim(); ++i) {
        double p = es.eigenvalues()[i];
        if (p > 1e-15) s -= p * std::log(p);
    }
    double closed = von_neumann_closed(g.group, g.twoS, r);
    if (std::abs(closed - s) > 1e-10)
        throw std::runtime_error("von_neumann: closed form and eigendecomposition disagree by " +
                                 std::to_string(std::abs(closed - s)));
    return s;
}

double trace_distance(const BallDensity& a, const BallDensity& b) {
    if (a.gammas != b.gammas)
        throw std::invalid_argument("trace_distance: densities from different models");
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(a.rho - b.rho));
    double L = 0;
    for (long long i = 0; i < es.eigenvalues().size(); ++i) L += std::abs(es.eigenvalues()[i]);
    return 0.5 * L;
}

double trace_distance_coefficient(Group g, int twoS) {
    auto table = spectrum_table(g, twoS);
    long long N = table.total_dimension();
    double h1 = ball_h1(g, twoS);
    double s = 0;
    for (auto& e : table.entries) s += std::abs(e.energy) * e.degeneracy;
    return s / (2.0 * h1 * N);
}

double trace_distance_coefficient_printed(Group g, int twoS) {
    return 2.0 * trace_distance_coefficient(g, twoS);
}

RealMatrix hubner_metric(const GammaSet& g, double r, const RealVector& x, double h1) {
    if (r <= 0.0 || r >= 1.0)
        throw std::invalid_argument("hubner_metric: open interval 0 < r < 1 required");
    auto m = hamiltonian(g, x);
    long long D = g.dim();
    Matrix rho = (Matrix::Identity(D, D) + (r / h1) * m.hamiltonian) / double(D);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const Matrix& U = es.eigenvectors();
    int n = g.n();
    // d rho / d X_a = Gamma_a / (2 h1 D), rotated to the rho eigenbasis
    std::vector<Matrix> dr(n);
    for (int a = 0; a < n; ++a) dr[a] = U.adjoint() * g.gammas[a] * U / (2.0 * h1 * D);
    RealMatrix B(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            double s = 0;
            for (long long i = 0; i < D; ++i)
                for (long long j = 0; j < D; ++j) {
                    double w = es.eigenvalues()[i] + es.eigenvalues()[j];
                    s += (dr[a](i, j) * dr[b](j, i)).real() / (2.0 * w);
                }
            B(a, b) = s;
            B(b, a) = s;
        }
    return B;
}

RealMatrix bures_metric(const GammaSet& g, double r, const RealVector& x) {
    return hubner_metric(g, r, x, ball_h1(g.group, g.twoS));
}

FgPair fg_extract(const RealMatrix& B, const RealVector& x) {
    int n = (int)x.size();
    double xBx = x.dot(B * x);
    double f = (B.trace() - xBx) / (n - 1);
    double gg = xBx - f;
    RealMatrix recon = f * RealMatrix::Identity(n, n) + gg * (x * x.transpose());
    FgPair out;
    out.f = f;
    out.g = gg;
    out.residual = (B - recon).cwiseAbs().maxCoeff();
    return out;
}

RadialMetric sample_radial_metric(const GammaSet& g, const std::vector<double>& rs, double h1) {
    RadialMetric out;
    out.group = g.group;
    out.twoS = g.twoS;
    RealVector x = RealVector::Zero(g.n());
    x[g.n() - 1] = 1.0;
    for (double r : rs) {
        RealMatrix B = hubner_metric(g, r, x, h1);
        auto fg = fg_extract(B, x);
        if (fg.residual > 1e-8)
            throw std::runtime_error("sample_radial_metric: anisotropic Bures metric");
        out.r.push_back(r);
        out.f.push_back(fg.f);
        out.g.push_back(fg.g);
    }
    return out;
}

namespace {

// 5-point first and second derivative stencils on a uniform grid
double d1(const std::vector<double>& y, int i, double h) {
    return (y[i - 2] - 8 * y[i - 1] + 8 * y[i + 1] - y[i + 2]) / (12 * h);
}
double d2(const std::vector<double>& y, int i, double h) {
    return (-y[i - 2] + 16 * y[i - 1] - 30 * y[i] + 16 * y[i + 1] - y[i + 2]) / (12 * h * h);
}

}  // namespace

CurvatureReport radial_curvature(const RadialMetric& m, int d, double divergence_threshold) {
    size_t n = m.r.size();
    if (n < 5) throw std::invalid_argument("radial_curvature: need at least 5 samples");
    double h = m.r[1] - m.r[0];
    for (size_t i = 1; i + 1 < n; ++i)
        if (std::abs((m.r[i + 1] - m.r[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("radial_curvature: uniform r grid required");

    // ds^2 = a^2 dr^2 + R^2 dOmega_d^2 with a = sqrt(A), R = sqrt(B)
    std::vector<double> a(n), R(n);
    for (size_t i = 0; i < n; ++i) {
        a[i] = std::sqrt(m.a((int)i));
        R[i] = std::sqrt(m.b((int)i));
    }
    CurvatureReport rep;
    rep.divergence_threshold = divergence_threshold;
    for (size_t i = 2; i + 2 < n; ++i) {
        double ap = d1(a, (int)i, h);
        double Rp = d1(R, (int)i, h);
        double Rpp = d2(R, (int)i, h);
        double R_rho = Rp / a[i];
        double R_rhorho = Rpp / (a[i] * a[i]) - Rp * ap / (a[i] * a[i] * a[i]);
        double Kr = -R_rhorho / R[i];
        double Ks = (1.0 - R_rho * R_rho) / (R[i] * R[i]);
        double ricci = 2.0 * d * Kr + double(d) * (d - 1) * Ks;
        double kret = 4.0 * d * Kr * Kr + 2.0 * d * (d - 1) * Ks * Ks;
        rep.r.push_back(m.r[i]);
        rep.ricci.push_back(ricci);
        rep.kretschmann.push_back(kret);
        if (!std::isfinite(ricci) || !std::isfinite(kret) ||
            std::abs(ricci) > divergence_threshold || std::abs(kret) > divergence_threshold)
            rep.singular = true;
    }
    return rep;
}

double bures_volume_minimal_closed(int d) {
    double df = 1.0;
    for (int x = d; x >= 2; x -= 2) df *= x;
    return std::pow(M_PI / 2.0, d / 2 + 1) / df;
}

double bures_volume_minimal_quadrature(int d, int n_radial) {
    GammaSet g = make_minimal_gamma_set(Group::so(d + 1));
    RealVector x = RealVector::Zero(d + 1);
    x[d] = 1.0;
    // r = sin(alpha) removes the boundary singularity of 1/sqrt(1-r^2);
    // sqrt(det B) itself comes from the computed metric (spherical symmetry
    // makes the angular factor the exact sphere area)
    auto rule = gauss_legendre(n_radial, 0.0, M_PI / 2.0);
    std::vector<double> vals(n_radial);
    for (int i = 0; i < n_radial; ++i) {
        double alpha = rule.nodes[i];
        double r = std::sin(alpha);
        RealMatrix B = hubner_metric(g, r, x, ball_h1(g.group, g.twoS));
        double det = B.determinant();
        vals[i] = rule.weights[i] * std::sqrt(det) * std::pow(r, d) * std::cos(alpha);
    }
    double radial = pairwise_sum(vals);
    // A(S^d) = 2 pi^{(d+1)/2} / Gamma((d+1)/2)
    double area = 2.0 * std::pow(M_PI, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
    return area * radial;
}

double bures_distance_minimal(const RealVector& X, const RealVector& Xp) {
    double r2 = 4.0 * X.squaredNorm(), rp2 = 4.0 * Xp.squaredNorm();
    if (r2 > 1.0 + 1e-12 || rp2 > 1.0 + 1e-12)
        throw std::invalid_argument("bures_distance_minimal: points must lie in the ball");
    double arg = 4.0 * X.dot(Xp) + std::sqrt(std::max(0.0, (1.0 - r2) * (1.0 - rp2)));
    arg = std::clamp(arg, -1.0, 1.0);
    return 0.5 * std::acos(arg);
}

}  // namespace bloch

#include "bloch/harmonics.hpp"

#include <cmath>

#include "bloch/fuzzy_gamma.hpp"
#include "bloch/geometry.hpp"
#include "bloch/linalg.hpp"
#include "bloch/quadrature.hpp"

namespace bloch {

namespace {

Matrix expi_hermitian(const Matrix& H, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    Vector ph(H.rows());
    for (long long i = 0; i < H.rows(); ++i) ph[i] = std::exp(I * (t * es.eigenvalues()[i]));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// Phi = e^{-i phi S3} e^{-i theta S2} e^{i phi S3}, assembled from the spin
/// matrices directly (independent of the generic frame machinery).
Matrix so3_frame_direct(int twoS, const AngleChart& chart) {
    auto S = spin_matrices(twoS);
    double theta = chart.angles[0], phi = chart.angles[1];
    return expi_hermitian(S[2], -phi) * expi_hermitian(S[1], -theta) * expi_hermitian(S[2], phi);
}

}  // namespace

Vector so3_harmonics(int twoS, int twoLambda, const AngleChart& chart) {
    if (std::abs(twoLambda) > twoS || (twoS - twoLambda) % 2 != 0)
        throw std::invalid_argument("so3_harmonics: |lambda| <= S, stepped by 1");
    Matrix Phi = so3_frame_direct(twoS, chart);
    int col = (twoS - twoLambda) / 2;  // columns ordered lambda = S..-S
    return Phi.col(col).conjugate();
}

Matrix wigner_d(int twoS, const AngleChart& chart_s3, bool minus) {
    if (chart_s3.d() != 3) throw std::invalid_argument("wigner_d: S^3 chart required");
    auto S = spin_matrices(twoS);
    double chi = chart_s3.angles[0], theta = chart_s3.angles[1], phi = chart_s3.angles[2];
    Matrix ydotS = std::cos(phi) * std::sin(theta) * S[0] + std::sin(phi) * std::sin(theta) * S[1] +
                   std::cos(theta) * S[2];
    return expi_hermitian(ydotS, minus ? chi : -chi);
}

Matrix so4_harmonics(int twoSL, int twoSR, int twoSparam, const AngleChart& chart_s3) {
    if (twoSparam > twoSL + twoSR || twoSparam < std::abs(twoSL - twoSR))
        throw std::invalid_argument("so4_harmonics: S outside the Clebsch-Gordan range");
    Matrix DL = wigner_d(twoSL, chart_s3, false);
    Matrix DR = wigner_d(twoSR, chart_s3, true);
    int dL = twoSL + 1, dR = twoSR + 1, dS = twoSparam + 1;
    Matrix out = Matrix::Zero((long long)dL * dR, dS);
    for (int a = 0; a < dL; ++a) {       // mL = sL - a
        int twomL = twoSL - 2 * a;
        for (int b = 0; b < dR; ++b) {   // mR = sR - b
            int twomR = twoSR - 2 * b;
            long long alpha = (long long)a * dR + b;
            for (int c = 0; c < dS; ++c) {  // A = S - c
                int twoA = twoSparam - 2 * c;
                cdouble v(0, 0);
                for (int ap = 0; ap < dL; ++ap) {
                    int twomLp = twoSL - 2 * ap;
                    int twomRp = twoA - twomLp;
                    if (std::abs(twomRp) > twoSR || (twoSR - twomRp) % 2 != 0) continue;
                    int bp = (twoSR - twomRp) / 2;
                    double cg = clebsch_gordan(twoSL, twomLp, twoSR, twomRp, twoSparam, twoA);
                    if (cg == 0.0) continue;
                    v += cg * DL(ap, a) * DR(bp, b);
                }
                out(alpha, c) = v;
            }
        }
    }
    return out;
}

OrthonormalityCheck so3_orthonormality(int twoS, int twoLambda, int n_polar, int n_azimuth) {
    auto polar = gauss_legendre(n_polar, 0.0, M_PI);
    auto azim = periodic_trapezoid(n_azimuth);
    int dim = twoS + 1;
    Matrix gram = Matrix::Zero(dim, dim);
    for (int it = 0; it < n_polar; ++it)
        for (int ip = 0; ip < n_azimuth; ++ip) {
            AngleChart chart({polar.nodes[it], azim.nodes[ip]});
            Vector phi = so3_harmonics(twoS, twoLambda, chart);
            double w = polar.weights[it] * azim.weights[ip] * std::sin(polar.nodes[it]);
            gram += w * (phi.conjugate() * phi.transpose());
        }
    OrthonormalityCheck out;
    out.gram = gram;
    out.expected_constant = 4.0 * M_PI / (twoS + 1);
    out.deviation =
        (gram - out.expected_constant * Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    return out;
}

OrthonormalityCheck so4_orthonormality(int twoSL, int twoSR, int twoSparam, int n_polar,
                                       int n_azimuth) {
    auto chi_rule = gauss_legendre(n_polar, 0.0, M_PI);
    auto th_rule = gauss_legendre(n_polar, 0.0, M_PI);
    auto azim = periodic_trapezoid(n_azimuth);
    long long dim = (long long)(twoSL + 1) * (twoSR + 1);
    Matrix gram = Matrix::Zero(dim, dim);
    for (int ic = 0; ic < n_polar; ++ic)
        for (int it = 0; it < n_polar; ++it)
            for (int ip = 0; ip < n_azimuth; ++ip) {
                AngleChart chart({chi_rule.nodes[ic], th_rule.nodes[it], azim.nodes[ip]});
                Matrix F = so4_harmonics(twoSL, twoSR, twoSparam, chart);
                double w = chi_rule.weights[ic] * th_rule.weights[it] * azim.weights[ip] *
                           std::pow(std::sin(chi_rule.nodes[ic]), 2) *
                           std::sin(th_rule.nodes[it]);
                gram += w * (F * F.adjoint());
            }
    OrthonormalityCheck out;
    out.gram = gram;
    out.expected_constant =
        2.0 * M_PI * M_PI * (twoSparam + 1) / double((twoSL + 1) * (twoSR + 1));
    out.deviation =
        (gram - out.expected_constant * Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    return out;
}

RealVector so3_gauge_field_from_harmonics(int twoS, int twoLambda, const AngleChart& chart) {
    double h = 1e-6;
    RealVector A(2);
    Vector phi0 = so3_harmonics(twoS, twoLambda, chart);
    for (int r = 0; r < 2; ++r) {
        AngleChart cp = chart, cm = chart;
        cp.angles[r] += h;
        cm.angles[r] -= h;
        Vector dconj = (so3_harmonics(twoS, twoLambda, cp).conjugate() -
                        so3_harmonics(twoS, twoLambda, cm).conjugate()) /
                       (2 * h);
        cdouble val = (phi0.transpose() * dconj)(0, 0);  // sum_a phi_a d(phi_a^*)
        A[r] = (-I * val).real();
    }
    return A;
}

std::vector<Matrix> so4_connection_from_harmonics(int twoSL, int twoSR, int twoSparam,
                                                  const AngleChart& chart_s3, double fd_step) {
    Matrix F0 = so4_harmonics(twoSL, twoSR, twoSparam, chart_s3);
    std::vector<Matrix> A(3);
    for (int r = 0; r < 3; ++r) {
        AngleChart cp = chart_s3, cm = chart_s3;
        cp.angles[r] += fd_step;
        cm.angles[r] -= fd_step;
        Matrix dFc = (so4_harmonics(twoSL, twoSR, twoSparam, cp).conjugate() -
                      so4_harmonics(twoSL, twoSR, twoSparam, cm).conjugate()) /
                     (2 * fd_step);
        A[r] = -I * (F0.transpose() * dFc);
    }
    return A;
}

CorrespondenceReport coherent_landau_correspondence(Group g, int twoS, int twoLambda,
                                                    const AngleChart& chart) {
    CorrespondenceReport rep{};
    if (g == Group{1, Parity::Odd}) {
        // SO(3): conjugated frame column reproduces the harmonic family entrywise
        GammaSet gs = [&] {
            GammaSet out;
            out.group = g;
            out.twoS = twoS;
            out.construction = "oscillator";
            auto S = spin_matrices(twoS);
            out.gammas = {2.0 * S[0], 2.0 * S[1], 2.0 * S[2]};
            out.generators = so_generators(out.gammas);
            return out;
        }();
        FrameBuilder fb(gs);
        CoherentFrame f = fb.frame(chart, true);
        Vector phi = so3_harmonics(twoS, twoLambda, chart);
        Matrix col = f.block(twoLambda);
        rep.frame_dimension = gs.dim();
        rep.level_degeneracy = 1;
        rep.row_column_deviation = (col.col(0).conjugate() - phi).cwiseAbs().maxCoeff();
        // connection from both sides
        Matrix P = f.block(twoLambda);
        double dev = 0;
        RealVector Ah = so3_gauge_field_from_harmonics(twoS, twoLambda, chart);
        for (int r = 0; r < 2; ++r) {
            cdouble Af = (-I * (P.adjoint() * f.block_derivative(twoLambda, r)))(0, 0);
            dev = std::max(dev, std::abs(Af.real() - Ah[r]));
        }
        rep.connection_deviation = dev;
        return rep;
    }
    if (g == Group{2, Parity::Even}) {
        if (twoS % 2 == 0) throw std::invalid_argument("correspondence: odd twoS for SO(4)");
        GammaSet gs = build_so4_gammas_closed_form(twoS);
        FrameBuilder fb(gs);
        int sgn = twoLambda > 0 ? 1 : -1;
        int twoSL = (twoS + sgn) / 2;  // 2 s_L = S + sgn/2
        int twoSR = (twoS - sgn) / 2;
        Matrix H = so4_harmonics(twoSL, twoSR, std::abs(twoLambda), chart);
        rep.frame_dimension = H.rows();
        rep.level_degeneracy = std::abs(twoLambda) + 1;
        rep.row_column_deviation =
            std::abs(double(H.rows() - irrep_dim(Group{2, Parity::Even}, twoS, sgn)));

        // connections agree up to the block-basis unitary: compare invariants
        auto Ah = so4_connection_from_harmonics(twoSL, twoSR, std::abs(twoLambda), chart);
        WZConnection Af = wilczek_zee(fb, twoLambda, chart);
        double dev = 0;
        for (int r = 0; r < 3; ++r) {
            Eigen::SelfAdjointEigenSolver<Matrix> eh(Ah[r]), ef(Af.components[r]);
            dev = std::max(dev,
                           (eh.eigenvalues() - ef.eigenvalues()).cwiseAbs().maxCoeff());
            for (int s = 0; s < 3; ++s) {
                cdouble th = (Ah[r] * Ah[s]).trace();
                cdouble tf = (Af.components[r] * Af.components[s]).trace();
                dev = std::max(dev, std::abs(th - tf));
            }
        }
        rep.connection_deviation = dev;
        return rep;
    }
    throw std::invalid_argument("coherent_landau_correspondence: SO(3) and SO(4) only");
}

}  // namespace bloch

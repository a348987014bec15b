#include "bloch/geometry.hpp"

#include <cmath>

#include "bloch/quadrature.hpp"

namespace bloch {

RealMatrix QGTensor::metric() const {
    RealMatrix g(d, d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n)
            g(m, n) = 0.5 * ((*this)(m, n) + (*this)(n, m)).trace().real();
    return g;
}

Matrix QGTensor::curvature(int mu, int nu) const {
    return -I * ((*this)(mu, nu) - (*this)(nu, mu));
}

namespace {

QGTensor qgt_from_blocks(const Matrix& P, const std::vector<Matrix>& dP, const AngleChart& chart,
                         int twoLambda, DerivMode mode) {
    int d = (int)dP.size();
    QGTensor q;
    q.chart = chart;
    q.twoLambda = twoLambda;
    q.d = d;
    q.mode = mode;
    q.chi.resize(d * d);
    std::vector<Matrix> PdP(d);  // Psi^dag dPsi
    for (int r = 0; r < d; ++r) PdP[r] = P.adjoint() * dP[r];
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n)
            q.chi[m * d + n] = dP[m].adjoint() * dP[n] - PdP[m].adjoint() * PdP[n];
    return q;
}

}  // namespace

QGTensor qgt(const FrameBuilder& fb, int twoLambda, const AngleChart& chart, DerivMode mode,
             double fd_step) {
    int d = chart.d();
    if (mode == DerivMode::Analytic) {
        CoherentFrame f = fb.frame(chart, true);
        Matrix P = f.block(twoLambda);
        std::vector<Matrix> dP(d);
        for (int r = 0; r < d; ++r) dP[r] = f.block_derivative(twoLambda, r);
        return qgt_from_blocks(P, dP, chart, twoLambda, mode);
    }
    CoherentFrame f = fb.frame(chart, false);
    Matrix P = f.block(twoLambda);
    std::vector<Matrix> dP(d);
    for (int r = 0; r < d; ++r) {
        AngleChart cp = chart, cm = chart;
        cp.angles[r] += fd_step;
        cm.angles[r] -= fd_step;
        dP[r] = (fb.frame(cp).block(twoLambda) - fb.frame(cm).block(twoLambda)) / (2 * fd_step);
    }
    return qgt_from_blocks(P, dP, chart, twoLambda, mode);
}

MetricFit metric_from_qgt(const QGTensor& q) {
    MetricFit out;
    out.metric = q.metric();
    RealVector round = q.chart.round_metric_diag();
    double num = 0, den = 0;
    for (int m = 0; m < q.d; ++m) {
        num += out.metric(m, m) * round[m];
        den += round[m] * round[m];
    }
    out.coefficient = num / den;
    double resid = 0;
    for (int m = 0; m < q.d; ++m)
        for (int n = 0; n < q.d; ++n) {
            double target = (m == n) ? out.coefficient * round[m] : 0.0;
            resid = std::max(resid, std::abs(out.metric(m, n) - target));
        }
    out.residual = resid / std::abs(out.coefficient);
    return out;
}

WZConnection wilczek_zee(const FrameBuilder& fb, int twoLambda, const AngleChart& chart) {
    CoherentFrame f = fb.frame(chart, true);
    Matrix P = f.block(twoLambda);
    WZConnection A;
    A.chart = chart;
    A.twoLambda = twoLambda;
    A.components.resize(chart.d());
    for (int r = 0; r < chart.d(); ++r)
        A.components[r] = -I * (P.adjoint() * f.block_derivative(twoLambda, r));
    return A;
}

WZConnection wilczek_zee_closed_form(const FrameBuilder& fb, const GammaSet& g, int twoLambda,
                                     const AngleChart& chart) {
    int d = chart.d();
    RealVector x = chart.bloch_vector();
    if (1.0 + x[d] < 1e-6)
        throw std::domain_error("wilczek_zee_closed_form: chart too close to the south pole");

    const GammaSet::Level* lv = nullptr;
    for (auto& b : fb.levels())
        if (b.twoLambda == twoLambda) lv = &b;
    if (!lv) throw std::invalid_argument("wilczek_zee_closed_form: unknown level");
    const Matrix& V = fb.diagonalizer();

    WZConnection A;
    A.chart = chart;
    A.twoLambda = twoLambda;
    A.components.assign(d, Matrix::Zero(lv->width, lv->width));
    for (int rho = 0; rho < d; ++rho) {
        RealVector dx = chart.dx_dangle(rho);
        Matrix acc = Matrix::Zero(g.dim(), g.dim());
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                if (mu == nu) continue;
                double w = x[nu] * dx[mu];
                if (w != 0.0) acc += w * g.sigma(mu, nu);
            }
        Matrix conj = V.adjoint() * acc * V;
        A.components[rho] =
            (-1.0 / (1.0 + x[d])) * conj.block(lv->offset, lv->offset, lv->width, lv->width);
    }
    return A;
}

FieldStrength field_strength(const FrameBuilder& fb, int twoLambda, const AngleChart& chart,
                             double fd_step) {
    int d = chart.d();
    FieldStrength out;
    out.d = d;
    QGTensor q = qgt(fb, twoLambda, chart, DerivMode::Analytic);
    out.from_qgt.resize(d * d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) out.from_qgt[m * d + n] = q.curvature(m, n);

    WZConnection A0 = wilczek_zee(fb, twoLambda, chart);
    std::vector<WZConnection> Ap(d), Am(d);
    for (int r = 0; r < d; ++r) {
        AngleChart cp = chart, cm = chart;
        cp.angles[r] += fd_step;
        cm.angles[r] -= fd_step;
        Ap[r] = wilczek_zee(fb, twoLambda, cp);
        Am[r] = wilczek_zee(fb, twoLambda, cm);
    }
    out.from_connection.resize(d * d);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            Matrix dAm = (Ap[m].components[n] - Am[m].components[n]) / (2 * fd_step);
            Matrix dAn = (Ap[n].components[m] - Am[n].components[m]) / (2 * fd_step);
            Matrix comm = A0.components[m] * A0.components[n] -
                          A0.components[n] * A0.components[m];
            out.from_connection[m * d + n] = dAm - dAn + I * comm;
            out.route_deviation = std::max(
                out.route_deviation,
                (out.from_connection[m * d + n] - out.from_qgt[m * d + n]).cwiseAbs().maxCoeff());
        }
    return out;
}

Rational chern_formula(Group g, int twoS, int twoLambda) {
    if (twoLambda == 0) return Rational(0);
    int sgn = twoLambda > 0 ? 1 : -1;
    Rational D = irrep_dim_rational(Group{g.k, Parity::Odd}, twoS - 1, std::abs(twoLambda) - 1);
    return Rational(sgn) * D;
}

Rational so5_second_chern(int twoS, int twoLambda) {
    Rational S(twoS, 2), L(twoLambda, 2);
    return Rational(2, 3) * (S + Rational(1)) * L * (S + Rational(1) + L) * (S + Rational(1) - L);
}

Rational so5_euler_invariant(int twoS, int twoLambda) {
    Rational S(twoS, 2), L(twoLambda, 2);
    return Rational(1, 3) * (S * (S + Rational(2)) + L * L) * (S + Rational(1) + L) *
           (S + Rational(1) - L);
}

Rational winding_number(Group g, int twoS, int sign) {
    Rational D = irrep_dim_rational(Group{g.k, Parity::Odd}, twoS - 1, 0);
    return Rational(sign) * D;
}

double chern_numeric_k1(const GammaSet& g, int twoLambda, int n_polar, int n_azimuth,
                        int threads) {
    if (g.d() != 2) throw std::invalid_argument("chern_numeric_k1: S^2 models only");
    FrameBuilder fb(g);
    auto polar = gauss_legendre(n_polar, 0.0, M_PI);
    auto azim = periodic_trapezoid(n_azimuth);
    std::vector<double> vals((size_t)n_polar * n_azimuth);
    parallel_for(vals.size(), threads, [&](size_t idx) {
        int it = (int)(idx / n_azimuth), ip = (int)(idx % n_azimuth);
        AngleChart chart({polar.nodes[it], azim.nodes[ip]});
        QGTensor q = qgt(fb, twoLambda, chart, DerivMode::Analytic);
        double F = q.curvature(0, 1).trace().real();
        vals[idx] = polar.weights[it] * azim.weights[ip] * F;
    });
    return pairwise_sum(vals) / (2 * M_PI);
}

double chern_numeric_k2(const GammaSet& g, int twoLambda, int n_nodes, int threads) {
    if (g.d() != 4) throw std::invalid_argument("chern_numeric_k2: S^4 models only");
    FrameBuilder fb(g);
    auto polar = gauss_legendre(n_nodes, 0.0, M_PI);
    auto azim = gauss_legendre(n_nodes, 0.0, 2.0 * M_PI);
    size_t total = (size_t)n_nodes * n_nodes * n_nodes * n_nodes;
    std::vector<double> vals(total);
    parallel_for(total, threads, [&](size_t idx) {
        size_t r = idx;
        int i4 = (int)(r % n_nodes); r /= n_nodes;
        int i3 = (int)(r % n_nodes); r /= n_nodes;
        int i2 = (int)(r % n_nodes); r /= n_nodes;
        int i1 = (int)r;
        AngleChart chart({polar.nodes[i1], polar.nodes[i2], polar.nodes[i3], azim.nodes[i4]});
        QGTensor q = qgt(fb, twoLambda, chart, DerivMode::Analytic);
        auto F = [&](int m, int n) { return q.curvature(m, n); };
        cdouble T = 2.0 * ((F(0, 1) * F(2, 3)).trace() - (F(0, 2) * F(1, 3)).trace() +
                           (F(0, 3) * F(1, 2)).trace());
        double w = polar.weights[i1] * polar.weights[i2] * polar.weights[i3] * azim.weights[i4];
        vals[idx] = w * T.real();
    });
    // the nested chart carries negative orientation on S^4
    return -pairwise_sum(vals) / (8 * M_PI * M_PI);
}

}  // namespace bloch

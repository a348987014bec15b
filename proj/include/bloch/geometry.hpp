#pragma once

#include "bloch/zeeman_dirac.hpp"

namespace bloch {

enum class DerivMode { Analytic, FiniteDifference };

/// Matrix-valued quantum geometric tensor chi_{mu nu} of one eigenvalue block
/// over the chart angles.
struct QGTensor {
    AngleChart chart;
    int twoLambda = 0;
    int d = 0;
    DerivMode mode = DerivMode::Analytic;
    std::vector<Matrix> chi;  // d*d, row-major (mu, nu)

    const Matrix& operator()(int mu, int nu) const { return chi[mu * d + nu]; }
    /// g_{mu nu} = (1/2) tr(chi_{mu nu} + chi_{nu mu})
    RealMatrix metric() const;
    /// F_{mu nu} = -i (chi_{mu nu} - chi_{nu mu})
    Matrix curvature(int mu, int nu) const;
};

QGTensor qgt(const FrameBuilder& fb, int twoLambda, const AngleChart& chart,
             DerivMode mode = DerivMode::Analytic, double fd_step = 1e-5);

struct MetricFit {
    RealMatrix metric;
    double coefficient;  // least-squares fit against the round-sphere metric
    double residual;     // max |g - c g_round| / |c|
};
MetricFit metric_from_qgt(const QGTensor& q);

/// Wilczek-Zee connection A_rho = -i Psi^(lambda)dag d_rho Psi^(lambda).
struct WZConnection {
    AngleChart chart;
    int twoLambda = 0;
    std::vector<Matrix> components;  // per angle, Hermitian
};

WZConnection wilczek_zee(const FrameBuilder& fb, int twoLambda, const AngleChart& chart);

/// Closed-form comparator: A_rho = -(1/(1+x_{d+1})) Sigma_{mu nu}|_block
/// x_nu dx_mu/d theta_rho, the generators restricted to the lambda block in
/// the frame basis (V-conjugated for even groups).
WZConnection wilczek_zee_closed_form(const FrameBuilder& fb, const GammaSet& g, int twoLambda,
                                     const AngleChart& chart);

/// Two routes to the curvature; both returned for comparison.
struct FieldStrength {
    std::vector<Matrix> from_qgt;         // d*d row-major
    std::vector<Matrix> from_connection;  // dA - dA + i[A,A], FD derivative of A
    double route_deviation = 0;
    int d = 0;
    const Matrix& qgt_route(int mu, int nu) const { return from_qgt[mu * d + nu]; }
};
FieldStrength field_strength(const FrameBuilder& fb, int twoLambda, const AngleChart& chart,
                             double fd_step = 1e-5);

/// ch_k^{[lambda]} = sgn(lambda) D_{SO(2k+1)}(S - 1/2, |lambda| - 1/2), exact.
Rational chern_formula(Group g, int twoS, int twoLambda);
/// SO(5) closed forms of the two invariants.
Rational so5_second_chern(int twoS, int twoLambda);   // (2/3)(S+1) l (S+1+l)(S+1-l)
Rational so5_euler_invariant(int twoS, int twoLambda);  // (1/3)(S(S+2)+l^2)(S+1+l)(S+1-l)
/// Winding number of the chiral SO(2k) model: +- D_{SO(2k+1)}(S - 1/2, 0).
Rational winding_number(Group g, int twoS, int sign);

/// (1/2pi) int F over S^2, Gauss x periodic grid.
double chern_numeric_k1(const GammaSet& g, int twoLambda, int n_polar, int n_azimuth,
                        int threads = 1);

/// (1/8pi^2) int tr(F ^ F) over S^4, product Gauss grid (n nodes per angle).
double chern_numeric_k2(const GammaSet& g, int twoLambda, int n_nodes, int threads = 1);

}  // namespace bloch

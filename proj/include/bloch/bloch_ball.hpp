#pragma once

#include "bloch/zeeman_dirac.hpp"

namespace bloch {

/// Density matrix family rho = (1 + (r/h1) H)/tr(1) on the Bloch hyper-ball,
/// with h1 = S (odd groups) or (S + 1/2)/2 (even groups).
struct BallDensity {
    const GammaSet* gammas;
    double r;
    RealVector x;
    Matrix rho;
    double h1;
    struct Eigenvalue {
        int twoLambda;
        double value;
        long long degeneracy;
    };
    std::vector<Eigenvalue> closed_spectrum;
};

double ball_h1(Group g, int twoS);
BallDensity density(const GammaSet& g, double r, const RealVector& x);

/// Closed-form von Neumann entropy (dimension formulas only, no matrices).
double von_neumann_closed(Group g, int twoS, double r);
/// Eigendecomposition route; throws if the two routes disagree beyond 1e-10.
double von_neumann(const GammaSet& g, double r);

double trace_distance(const BallDensity& a, const BallDensity& b);
/// L = c * |r x - r' x'|; the eigenvalue-route constant.
double trace_distance_coefficient(Group g, int twoS);
/// The paper's printed c(S, d+1); equals twice the eigenvalue-route constant.
double trace_distance_coefficient_printed(Group g, int twoS);

/// Bures metric over Cartesian ball coordinates X_a = r x_a (Hubner eigen-sum),
/// with an explicit radial normalization h1 (the published table of f/g
/// functions uses h1 = S for every group).
RealMatrix hubner_metric(const GammaSet& g, double r, const RealVector& x, double h1);
/// Spec normalization: h1 = ball_h1(group, twoS).
RealMatrix bures_metric(const GammaSet& g, double r, const RealVector& x);

struct FgPair {
    double f;
    double g;
    double residual;  // of the isotropic + rank-1 decomposition
};
FgPair fg_extract(const RealMatrix& B, const RealVector& x);

/// Sampled radial Bures-metric functions.
struct RadialMetric {
    Group group;
    int twoS;
    std::vector<double> r;
    std::vector<double> f;
    std::vector<double> g;
    double a(int i) const { return f[i] + g[i]; }        // A(r) = f + g
    double b(int i) const { return f[i] * r[i] * r[i]; }  // B(r) = f r^2
};
RadialMetric sample_radial_metric(const GammaSet& g, const std::vector<double>& rs, double h1);

struct CurvatureReport {
    std::vector<double> r;          // interior points with full stencils
    std::vector<double> ricci;
    std::vector<double> kretschmann;
    bool singular = false;
    double divergence_threshold = 0;
};
/// Warped-product curvature of ds^2 = A(r) dr^2 + B(r) dl^2_{S^d} with
/// 5-point finite differences on a uniform r grid.
CurvatureReport radial_curvature(const RadialMetric& m, int d,
                                 double divergence_threshold = 1e8);

double bures_volume_minimal_closed(int d);
/// Quadrature of sqrt(det B) over the ball using the computed metric.
double bures_volume_minimal_quadrature(int d, int n_radial);

/// Geodesic distance on the minimal-model Bures hemisphere.
double bures_distance_minimal(const RealVector& X, const RealVector& Xp);

}  // namespace bloch

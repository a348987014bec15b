#pragma once

#include "bloch/zeeman_dirac.hpp"

namespace bloch {

/// SO(3) monopole harmonics: component-wise conjugates of the lambda column
/// block of the SO(3) coherent frame; 2S+1 components.
Vector so3_harmonics(int twoS, int twoLambda, const AngleChart& chart);

/// Wigner rotation D^{(s)}(chi-vec) = exp(-i chi y.S) for the S^3 chart
/// (chi, theta, phi); minus = true gives D^{(s)}(-chi-vec).
Matrix wigner_d(int twoS, const AngleChart& chart_s3, bool minus = false);

/// SO(4) monopole harmonics phi_{mL,mR} with 2S+1 components:
/// rows alpha = (mL, mR) lexicographic descending, columns A = S..-S.
Matrix so4_harmonics(int twoSL, int twoSR, int twoSparam, const AngleChart& chart_s3);

/// Gram matrix int dOmega phi_alpha^dag phi_beta by Gauss x trapezoid
/// quadrature, plus the closed-form normalization constant.
struct OrthonormalityCheck {
    Matrix gram;
    double expected_constant;
    double deviation;  // max |gram - const 1|
};
OrthonormalityCheck so3_orthonormality(int twoS, int twoLambda, int n_polar, int n_azimuth);
OrthonormalityCheck so4_orthonormality(int twoSL, int twoSR, int twoSparam, int n_polar,
                                       int n_azimuth);

/// U(1) gauge field -i sum_alpha phi_alpha d phi_alpha^* per chart angle.
RealVector so3_gauge_field_from_harmonics(int twoS, int twoLambda, const AngleChart& chart);

/// SU(2)-type connection -i sum_alpha phi_alpha d phi_alpha^dag from the
/// SO(4) harmonics (components per S^3 chart angle; (2S+1) x (2S+1)).
std::vector<Matrix> so4_connection_from_harmonics(int twoSL, int twoSR, int twoSparam,
                                                  const AngleChart& chart_s3, double fd_step = 1e-6);

struct CorrespondenceReport {
    long long frame_dimension;     // D_{SO(d+1)}-side count
    long long level_degeneracy;    // stabilizer-side count
    double row_column_deviation;   // harmonics vs conjugated frame rows (SO(3))
    double connection_deviation;   // harmonic-built vs frame-built connection
    bool ok(double tol) const {
        return row_column_deviation < tol && connection_deviation < tol;
    }
};

/// Verifies the spin-coherent-state / monopole-harmonic dictionary for the
/// SO(3) and SO(4) models at one chart point.
CorrespondenceReport coherent_landau_correspondence(Group g, int twoS, int twoLambda,
                                                    const AngleChart& chart);

}  // namespace bloch

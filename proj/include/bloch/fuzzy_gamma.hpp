#pragma once

#include <map>
#include <optional>

#include "bloch/chart.hpp"
#include "bloch/spin_algebra.hpp"

namespace bloch {

/// Occupation-number basis of the totally symmetric subspace of
/// (C^modes)^{tensor quanta}: all (n_1,...,n_modes) with sum = quanta,
/// lexicographically ordered (first mode descending).
struct OscillatorBasis {
    int modes = 0;
    int quanta = 0;
    std::vector<std::vector<int>> occ;
    std::map<std::vector<int>, int> index;

    static OscillatorBasis make(int modes, int quanta);
    long long dim() const { return (long long)occ.size(); }

    /// Second-quantized one-body operator sum_ij X_ij a_i^dag a_j.
    Matrix one_body(const Matrix& X) const;
};

/// Large-spin SO(2k+1) gamma matrices: one-body lift of the minimal gammas on
/// the symmetric oscillator basis, projected onto the quadratic-Casimir
/// eigenspace with eigenvalue k*S*(S+k), basis rotated so the last gamma is
/// diagonal descending.
GammaSet build_so2k1_gammas(int k, int twoS);

/// SO(2k) set from the lambda = +-1/2 eigenspaces of the parent's last gamma.
/// Requires odd twoS.
GammaSet restrict_to_so2k(const GammaSet& parent);

/// SO(4) set assembled from the closed-form Y_mu matrix elements, in the
/// paper-fixed (m_L, m_R) basis.  Requires odd twoS.
GammaSet build_so4_gammas_closed_form(int twoS);

/// Totally antisymmetrized product sum_perm sgn(pi) M_{pi(1)} ... M_{pi(m)}.
Matrix nambu_bracket(std::span<const Matrix> mats);

/// Chiral bracket [[M_1, ..., M_{m}]] = [M_1, ..., M_m, G].
Matrix chiral_nambu_bracket(std::span<const Matrix> mats, const Matrix& G);

struct NambuReport {
    double casimir_coefficient = 0;       // fitted c in sum Gamma^2 = c 1
    double casimir_residual = 0;          // max |sum G^2 - c 1| / |c|
    cdouble bracket_coefficient{0, 0};    // fitted c in bracket = c eps Gamma
    double bracket_residual = 0;          // relative, against the fit
    double covariance_residual = 0;       // max |[Sigma_ab, Gamma_c] - i(d Gamma - d Gamma)|
    std::vector<std::pair<double, int>> last_gamma_spectrum;  // (eigenvalue, multiplicity)

    Rational casimir_expected{0};
    cdouble bracket_expected{0, 0};
};

/// Expected Casimir coefficient: 4S(S+k) (odd) or (2S+1)(2S+2k-1)/2 (even).
Rational casimir_coefficient_expected(Group g, int twoS);

/// Expected Nambu-bracket coefficient: i^k (2k)!!(2S+2k-2)!!/(2S)!! for the
/// 2k-bracket of odd groups, with a minus sign for the chiral (2k-1)-bracket
/// of even groups.
cdouble bracket_coefficient_expected(Group g, int twoS);

/// Measure Casimir/bracket/covariance residuals of a constructed set.
/// full_subsets sweeps every index subset for the bracket; otherwise two
/// representative subsets are used (factorial cost).
NambuReport verify_fuzzy_sphere(const GammaSet& g, bool full_subsets = true);

struct LandauRecovery {
    std::array<Matrix, 3> spin;  // recovered S_i
    double deviation;            // against spin_matrices(twoS)
    double refinement_change;    // disagreement between the two grid levels
};

/// Rebuild the SU(2) spin matrices from quadrature of the Bloch vector between
/// monopole harmonics on S^2 (grid = polar node count; azimuthal uses 2*grid).
LandauRecovery landau_matrix_elements_so3(int twoS, int twoLambda, int grid);

}  // namespace bloch

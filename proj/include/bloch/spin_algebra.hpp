#pragma once

#include "bloch/types.hpp"

namespace bloch {

/// SU(2) spin matrices (S_x, S_y, S_z) of dimension twoS+1, S_z descending.
std::array<Matrix, 3> spin_matrices(int twoS);

/// Spinor-representation gamma matrices of SO(2k+1), dimension 2^k, built by
/// the block recursion from the Pauli base.  Returns 2k+1 matrices; the last
/// one is diagonal (+1, -1 blocks).
std::vector<Matrix> minimal_gammas(int k);

/// Sigma_ab = -(i/4)[Gamma_a, Gamma_b] for all a < b.
std::vector<Matrix> so_generators(const std::vector<Matrix>& gammas);

/// 't Hooft tensor eta^{(sign) i}_{mu nu}; indices 1-based, mu,nu in 1..4,
/// i in 1..3, sign = +1 or -1.  Values in {-1, 0, 1}.
int thooft_tensor(int mu, int nu, int i, int sign);

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
/// convention (Racah closed form, log-factorials in extended precision).
/// All spins passed doubled.  Selection-rule violations return exact 0.
double clebsch_gordan(int twoj1, int twom1, int twoj2, int twom2, int twoJ, int twoM);

/// Dimension of the irrep [S,...,S,lambda] of SO(2k+1) (lambda >= 0, doubled)
/// or [S,...,S,lambda] of SO(2k) (lambda of either sign, doubled), as an exact
/// rational; integer-valued for valid labels.
Rational irrep_dim_rational(Group g, int twoS, int twoLambda);

/// Same, checked to be a positive integer.
long long irrep_dim(Group g, int twoS, int twoLambda);

/// Raw formula evaluation with no label validation (the half-integer-stepped
/// hierarchy identity is checked to fail for even 2S through this).
Rational irrep_dim_formula(Group g, int twoS, int twoLambda);

/// Generalized gamma-matrix family for SO(n) at spin 2S together with the
/// group generators.  For even groups the chirality matrix G_{2k+1} is held
/// separately and the generators are the canonical block ones (for S > 1/2
/// the commutators of the gammas do not close onto them).
struct GammaSet {
    Group group;
    int twoS = 1;
    std::vector<Matrix> gammas;      // n() matrices
    std::vector<Matrix> generators;  // a<b lexicographic: (0,1),(0,2),(1,2),(0,3),...
    Matrix chirality;                // even groups only; otherwise 0x0
    std::string construction;        // "minimal" | "oscillator" | "restricted" | "closed-form"

    int n() const { return group.n(); }
    int d() const { return group.d(); }
    long long dim() const { return gammas.empty() ? 0 : gammas[0].rows(); }

    /// Generator Sigma_ab with antisymmetry handled; a, b zero-based.
    Matrix sigma(int a, int b) const;
    int gen_index(int a, int b) const;  // a < b

    /// Eigenvalue blocks of the diagonalized last gamma (odd groups: Gamma_{2k+1}
    /// itself, canonical construction keeps it diagonal descending).
    struct Level {
        int twoLambda;
        int offset;
        int width;
        double gamma_eigenvalue;  // 2*lambda (odd) or lambda + sgn(lambda)/2 (even)
    };
    std::vector<Level> levels() const;
};

/// Minimal (spinor representation) set for SO(2k+1) or SO(2k).
GammaSet make_minimal_gamma_set(Group g);

}  // namespace bloch

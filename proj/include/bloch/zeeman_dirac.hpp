#pragma once

#include "bloch/chart.hpp"
#include "bloch/spin_algebra.hpp"

namespace bloch {

struct ZeemanDiracModel {
    const GammaSet* gammas;
    RealVector x;
    Matrix hamiltonian;
};

/// H = sum_a x_a Gamma_a / 2.  |x| must be 1 within 1e-12.
ZeemanDiracModel hamiltonian(const GammaSet& g, const RealVector& x);

struct SpectrumTable {
    Group group;
    int twoS;
    struct Entry {
        int twoLambda;
        double energy;
        long long degeneracy;
    };
    std::vector<Entry> entries;  // energy descending

    long long total_dimension() const;
    std::string to_csv() const;
    std::string to_json() const;
};

/// Energies and degeneracies of the SO(n) Zeeman-Dirac model from the integer
/// dimension formulas (no matrix construction).
SpectrumTable spectrum_table(Group g, int twoS);

/// Unitary V with V^dag Gamma_{2k} V = diag(lambda + sgn(lambda)/2) blocks,
/// descending, deterministic within degenerate clusters.
Matrix so2k_diagonalizer(const GammaSet& g);

struct CoherentFrame {
    const GammaSet* gammas = nullptr;
    AngleChart chart;
    Matrix psi;                      // Psi (odd groups) or Psi * V (even groups)
    std::vector<Matrix> dpsi;        // analytic d(psi)/d(angle), if requested
    std::vector<GammaSet::Level> blocks;

    const GammaSet::Level& level(int twoLambda) const;
    /// Column block of the eigenvalue-lambda spin-coherent states.
    Matrix block(int twoLambda) const;
    Matrix block_derivative(int twoLambda, int rho) const;
    double energy(int twoLambda) const;
};

/// Builds coherent frames by the factorized product of single-angle generator
/// exponentials; the fixed generators are spectrally decomposed once.
class FrameBuilder {
public:
    explicit FrameBuilder(const GammaSet& g);

    CoherentFrame frame(const AngleChart& chart, bool with_derivatives = false) const;
    const Matrix& diagonalizer() const { return V_; }  // identity for odd groups
    const std::vector<GammaSet::Level>& levels() const { return blocks_; }
    /// Diagonal of Psi^dag H Psi in this convention (H-eigenvalues, descending).
    RealVector target_diagonal() const;

private:
    const GammaSet* g_;
    Matrix V_;
    std::vector<GammaSet::Level> blocks_;
    struct Factor {
        int a, b;            // generator indices (zero-based)
        Matrix U;            // eigenvectors of Sigma_ab
        RealVector evals;    // eigenvalues
        Matrix expi(double angle) const;
    };
    Factor middle_;
    std::vector<Factor> chain_;  // outermost first
    Factor make_factor(int a, int b) const;
};

/// Psi^(lambda)dag Gamma_a Psi^(lambda) for all a; equals c(lambda) x_a 1.
std::vector<Matrix> bloch_expectation(const CoherentFrame& frame, int twoLambda);

/// c(lambda): 2 lambda (odd groups) or lambda + sgn(lambda)/2 (even groups).
double bloch_expectation_coefficient(Group g, int twoLambda);

}  // namespace bloch

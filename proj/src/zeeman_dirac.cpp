#include "bloch/zeeman_dirac.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "bloch/linalg.hpp"

namespace bloch {

ZeemanDiracModel hamiltonian(const GammaSet& g, const RealVector& x) {
    if (x.size() != g.n())
        throw std::invalid_argument("hamiltonian: Bloch vector length must match the group");
    if (std::abs(x.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("hamiltonian: Bloch vector must be unit length");
    ZeemanDiracModel m;
    m.gammas = &g;
    m.x = x;
    m.hamiltonian = Matrix::Zero(g.dim(), g.dim());
    for (int a = 0; a < g.n(); ++a) m.hamiltonian += 0.5 * x[a] * g.gammas[a];
    return m;
}

SpectrumTable spectrum_table(Group g, int twoS) {
    if (g.parity == Parity::Even && twoS % 2 == 0)
        throw std::invalid_argument("spectrum_table: SO(2k) models need odd twoS");
    SpectrumTable t;
    t.group = g;
    t.twoS = twoS;
    for (int tl = twoS; tl >= -twoS; tl -= 2) {
        SpectrumTable::Entry e;
        e.twoLambda = tl;
        if (g.parity == Parity::Odd) {
            e.energy = 0.5 * tl;
            e.degeneracy = irrep_dim(Group{g.k, Parity::Even}, twoS, tl);
        } else {
            int sgn = (tl > 0) - (tl < 0);
            e.energy = 0.25 * (tl + sgn);
            e.degeneracy = irrep_dim(Group{g.k - 1, Parity::Odd}, twoS, std::abs(tl));
        }
        t.entries.push_back(e);
    }
    return t;
}

long long SpectrumTable::total_dimension() const {
    long long s = 0;
    for (auto& e : entries) s += e.degeneracy;
    return s;
}

std::string SpectrumTable::to_csv() const {
    std::ostringstream os;
    os << "# group=" << group.name() << " twoS=" << twoS << "\n";
    os << "energy,degeneracy\n";
    os.precision(17);
    for (auto& e : entries) os << e.energy << "," << e.degeneracy << "\n";
    return os.str();
}

std::string SpectrumTable::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"group\":\"" << group.name() << "\",\"twoS\":" << twoS << ",\"levels\":[";
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ",";
        os << "{\"energy\":" << entries[i].energy << ",\"degeneracy\":" << entries[i].degeneracy
           << "}";
    }
    os << "]}";
    return os.str();
}

Matrix so2k_diagonalizer(const GammaSet& g) {
    if (g.group.parity != Parity::Even)
        throw std::invalid_argument("so2k_diagonalizer: even-group set required");
    return canonical_eigenbasis(g.gammas.back()).vectors;
}

const GammaSet::Level& CoherentFrame::level(int twoLambda) const {
    for (auto& b : blocks)
        if (b.twoLambda == twoLambda) return b;
    throw std::invalid_argument("CoherentFrame: no level with 2*lambda = " +
                                std::to_string(twoLambda));
}

Matrix CoherentFrame::block(int twoLambda) const {
    const auto& b = level(twoLambda);
    return psi.middleCols(b.offset, b.width);
}

Matrix CoherentFrame::block_derivative(int twoLambda, int rho) const {
    if (dpsi.empty())
        throw std::logic_error("CoherentFrame: derivatives were not requested");
    const auto& b = level(twoLambda);
    return dpsi.at(rho).middleCols(b.offset, b.width);
}

double CoherentFrame::energy(int twoLambda) const {
    const auto& b = level(twoLambda);
    return 0.5 * b.gamma_eigenvalue;
}

Matrix FrameBuilder::Factor::expi(double angle) const {
    long long D = U.rows();
    Vector phase(D);
    for (long long i = 0; i < D; ++i) phase[i] = std::exp(I * (angle * evals[i]));
    return U * phase.asDiagonal() * U.adjoint();
}

FrameBuilder::Factor FrameBuilder::make_factor(int a, int b) const {
    Factor f;
    f.a = a;
    f.b = b;
    Eigen::SelfAdjointEigenSolver<Matrix> es(g_->sigma(a, b));
    f.U = es.eigenvectors();
    f.evals = es.eigenvalues();
    return f;
}

FrameBuilder::FrameBuilder(const GammaSet& g) : g_(&g) {
    int d = g.d();
    if (g.group.parity == Parity::Even) {
        V_ = so2k_diagonalizer(g);
        Matrix gd = V_.adjoint() * g.gammas.back() * V_;
        // levels from the diagonalized Gamma_{2k}
        long long D = g.dim();
        long long i0 = 0;
        for (long long i = 1; i <= D; ++i) {
            if (i == D || std::abs(gd(i, i).real() - gd(i0, i0).real()) > 1e-6) {
                GammaSet::Level lv;
                lv.offset = (int)i0;
                lv.width = int(i - i0);
                lv.gamma_eigenvalue = gd(i0, i0).real();
                int twice = (int)std::llround(2 * lv.gamma_eigenvalue);
                lv.twoLambda = twice > 0 ? twice - 1 : twice + 1;
                blocks_.push_back(lv);
                i0 = i;
            }
        }
    } else {
        V_ = Matrix::Identity(g.dim(), g.dim());
        blocks_ = g.levels();
    }

    if (d == 2) {
        middle_ = make_factor(0, 2);
        chain_ = {make_factor(0, 1)};
    } else {
        middle_ = make_factor(d - 1, d);
        chain_.clear();
        for (int j = 1; j <= d - 3; ++j) chain_.push_back(make_factor(d - j, d - j - 1));
        chain_.push_back(make_factor(2, 0));
        chain_.push_back(make_factor(0, 1));
    }
}

RealVector FrameBuilder::target_diagonal() const {
    RealVector t(g_->dim());
    for (auto& b : blocks_)
        for (int i = 0; i < b.width; ++i) t[b.offset + i] = 0.5 * b.gamma_eigenvalue;
    return t;
}

CoherentFrame FrameBuilder::frame(const AngleChart& chart, bool with_derivatives) const {
    int d = g_->d();
    if (chart.d() != d) throw std::invalid_argument("frame: chart dimension mismatch");
    long long D = g_->dim();
    int m = (int)chain_.size();

    // N = F_1 F_2 ... F_m applied with angles (theta_{d-1}, ..., theta, phi);
    // Psi = N^dag exp(i theta_d G_mid) N, then right-multiplied by V.
    std::vector<Matrix> F(m);
    for (int j = 0; j < m; ++j) F[j] = chain_[j].expi(chart.angles[j + 1]);
    Matrix M = middle_.expi(chart.angles[0]);

    std::vector<Matrix> prefix(m + 1), suffix(m + 1);
    prefix[0] = Matrix::Identity(D, D);
    for (int j = 0; j < m; ++j) prefix[j + 1] = prefix[j] * F[j];
    suffix[m] = Matrix::Identity(D, D);
    for (int j = m - 1; j >= 0; --j) suffix[j] = F[j] * suffix[j + 1];

    const Matrix& N = prefix[m];
    Matrix MN = M * N;

    CoherentFrame out;
    out.gammas = g_;
    out.chart = chart;
    out.blocks = blocks_;
    out.psi = N.adjoint() * MN * V_;

    if (with_derivatives) {
        out.dpsi.resize(d);
        // d/d theta_d: N^dag (i G_mid M) N
        out.dpsi[0] = N.adjoint() * (I * (g_->sigma(middle_.a, middle_.b) * MN)) * V_;
        for (int j = 0; j < m; ++j) {
            const Matrix& G = g_->sigma(chain_[j].a, chain_[j].b);
            Matrix dN = prefix[j] * (I * (G * suffix[j]));
            out.dpsi[j + 1] = (dN.adjoint() * MN + N.adjoint() * (M * dN)) * V_;
        }
    }
    return out;
}

std::vector<Matrix> bloch_expectation(const CoherentFrame& frame, int twoLambda) {
    Matrix blk = frame.block(twoLambda);
    std::vector<Matrix> out;
    out.reserve(frame.gammas->n());
    for (auto& G : frame.gammas->gammas) out.push_back(blk.adjoint() * G * blk);
    return out;
}

double bloch_expectation_coefficient(Group g, int twoLambda) {
    if (g.parity == Parity::Odd) return double(twoLambda);
    int sgn = (twoLambda > 0) - (twoLambda < 0);
    return 0.5 * (twoLambda + sgn);
}

}  // namespace bloch

#include <doctest.h>

#include <random>

#include "bloch/fuzzy_gamma.hpp"
#include "bloch/linalg.hpp"
#include "bloch/zeeman_dirac.hpp"

using namespace bloch;

namespace {

Matrix direct_exponential_frame(const GammaSet& g, const AngleChart& chart) {
    // defining form: exp(i theta_d sum_mu y_mu Sigma_{mu,d})
    int d = g.d();
    RealVector x = chart.bloch_vector();
    double st = std::sin(chart.angles[0]);
    Matrix A = Matrix::Zero(g.dim(), g.dim());
    for (int mu = 0; mu < d; ++mu) A += (x[mu] / st) * g.sigma(mu, d);
    return expm(Matrix(I * chart.angles[0] * A));
}

GammaSet so3_set(int twoS) {
    if (twoS == 1) return make_minimal_gamma_set(Group{1, Parity::Odd});
    return build_so2k1_gammas(1, twoS);
}

}  // namespace

TEST_CASE("hamiltonian construction and validation") {
    GammaSet g = make_minimal_gamma_set(Group{1, Parity::Odd});
    RealVector x(3);
    x << 0.6, 0.0, 0.8;
    auto m = hamiltonian(g, x);
    CHECK((m.hamiltonian - m.hamiltonian.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(m.hamiltonian.trace()) < 1e-15);
    // minimal model: H^2 = 1/4
    CHECK((m.hamiltonian * m.hamiltonian - 0.25 * Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    RealVector bad(3);
    bad << 1.0, 1.0, 0.0;
    CHECK_THROWS(hamiltonian(g, bad));
}

TEST_CASE("factorized frame equals the defining exponential") {
    std::mt19937_64 rng(7);
    // SO(3), SO(5), SO(4), SO(7) models
    std::vector<GammaSet> sets;
    sets.push_back(so3_set(3));
    sets.push_back(build_so2k1_gammas(2, 2));
    sets.push_back(restrict_to_so2k(build_so2k1_gammas(2, 3)));
    sets.push_back(build_so2k1_gammas(3, 1));
    for (auto& g : sets) {
        FrameBuilder fb(g);
        for (int t = 0; t < 5; ++t) {
            AngleChart chart = AngleChart::random(rng, g.d());
            CoherentFrame f = fb.frame(chart);
            Matrix direct = direct_exponential_frame(g, chart) * fb.diagonalizer();
            CHECK((f.psi - direct).cwiseAbs().maxCoeff() < 1e-12);
        }
        // north pole: frame reduces to the constant diagonalizer
        CoherentFrame f0 = fb.frame(AngleChart::north(g.d()));
        CHECK((f0.psi - fb.diagonalizer()).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("SO(3) factorization matches the closed product form") {
    GammaSet g = so3_set(1);
    FrameBuilder fb(g);
    auto S = spin_matrices(1);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        AngleChart chart = AngleChart::random(rng, 2);
        double th = chart.angles[0], ph = chart.angles[1];
        Matrix closed = expm(Matrix(-I * ph * S[2])) * expm(Matrix(-I * th * S[1])) *
                        expm(Matrix(I * ph * S[2]));
        CHECK((fb.frame(chart).psi - closed).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("frame diagonalizes the Hamiltonian at random charts") {
    std::mt19937_64 rng(11);
    std::vector<GammaSet> sets;
    sets.push_back(so3_set(4));
    sets.push_back(build_so2k1_gammas(2, 2));
    sets.push_back(build_so4_gammas_closed_form(3));
    for (auto& g : sets) {
        FrameBuilder fb(g);
        RealVector target = fb.target_diagonal();
        for (int t = 0; t < 20; ++t) {
            AngleChart chart = AngleChart::random(rng, g.d());
            CoherentFrame f = fb.frame(chart);
            Matrix H = hamiltonian(g, chart.bloch_vector()).hamiltonian;
            Matrix D = f.psi.adjoint() * H * f.psi;
            for (long long i = 0; i < g.dim(); ++i) D(i, i) -= target[i];
            CHECK(D.cwiseAbs().maxCoeff() < 1e-9);
            // unitarity
            CHECK((f.psi.adjoint() * f.psi - Matrix::Identity(g.dim(), g.dim()))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("analytic frame derivatives match finite differences") {
    std::mt19937_64 rng(23);
    GammaSet g = build_so2k1_gammas(2, 2);
    FrameBuilder fb(g);
    AngleChart chart = AngleChart::random(rng, 4);
    CoherentFrame f = fb.frame(chart, true);
    double h = 1e-6;
    for (int r = 0; r < 4; ++r) {
        AngleChart cp = chart, cm = chart;
        cp.angles[r] += h;
        cm.angles[r] -= h;
        Matrix fd = (fb.frame(cp).psi - fb.frame(cm).psi) / (2 * h);
        CHECK((f.dpsi[r] - fd).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("so2k diagonalizer: minimal SO(4) block form and S=3/2 spectrum") {
    GammaSet g4 = make_minimal_gamma_set(Group{2, Parity::Even});
    Matrix V = so2k_diagonalizer(g4);
    CHECK((V.adjoint() * V - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    Matrix D = V.adjoint() * g4.gammas[3] * V;
    RealVector expect(4);
    expect << 1, 1, -1, -1;
    for (int i = 0; i < 4; ++i) CHECK(D(i, i).real() == doctest::Approx(expect[i]));
    CHECK((D - D.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-12);
    // (1/sqrt2)[[1,-1],[1,1]] block pattern up to per-column sign
    double inv = 1.0 / std::sqrt(2.0);
    for (int c = 0; c < 4; ++c) {
        int rtop = c % 2, rbot = 2 + c % 2;
        CHECK(std::abs(std::abs(V(rtop, c)) - inv) < 1e-12);
        CHECK(std::abs(std::abs(V(rbot, c)) - inv) < 1e-12);
    }

    GammaSet g32 = build_so4_gammas_closed_form(3);
    Matrix V32 = so2k_diagonalizer(g32);
    Matrix D32 = V32.adjoint() * g32.gammas[3] * V32;
    std::vector<double> diag;
    for (int i = 0; i < 12; ++i) diag.push_back(D32(i, i).real());
    std::vector<double> expect32 = {2, 2, 2, 2, 1, 1, -1, -1, -2, -2, -2, -2};
    for (int i = 0; i < 12; ++i) CHECK(diag[i] == doctest::Approx(expect32[i]));
}

TEST_CASE("coherent blocks: widths, eigen-equation, orthogonality") {
    GammaSet g = build_so2k1_gammas(2, 2);
    FrameBuilder fb(g);
    std::mt19937_64 rng(5);
    AngleChart chart = AngleChart::random(rng, 4);
    CoherentFrame f = fb.frame(chart);
    Matrix H = hamiltonian(g, chart.bloch_vector()).hamiltonian;
    // widths (S+1)^2 - lambda^2: 3, 4, 3
    CHECK(f.level(2).width == 3);
    CHECK(f.level(0).width == 4);
    CHECK(f.level(-2).width == 3);
    for (int tl : {2, 0, -2}) {
        Matrix blk = f.block(tl);
        CHECK((H * blk - f.energy(tl) * blk).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((blk.adjoint() * blk - Matrix::Identity(blk.cols(), blk.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
    // cross-block orthogonality
    CHECK((f.block(2).adjoint() * f.block(0)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS(f.block(1));

    // minimal SO(5): lambda = +1/2 columns match the published closed form
    GammaSet g5 = make_minimal_gamma_set(Group{2, Parity::Odd});
    FrameBuilder fb5(g5);
    CoherentFrame f5 = fb5.frame(chart);
    RealVector x = chart.bloch_vector();
    double nrm = 1.0 / std::sqrt(2.0 * (1.0 + x[4]));
    Matrix expect(4, 2);
    expect.col(0) << 1.0 + x[4], 0, x[3] - I * x[2], x[1] - I * x[0];
    expect.col(1) << 0, 1.0 + x[4], -x[1] - I * x[0], x[3] + I * x[2];
    expect *= nrm;
    CHECK((f5.block(1) - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bloch expectation values") {
    std::mt19937_64 rng(17);
    // minimal SO(3): +- x_i
    GammaSet g3 = so3_set(1);
    FrameBuilder fb3(g3);
    AngleChart c2 = AngleChart::random(rng, 2);
    CoherentFrame f3 = fb3.frame(c2);
    RealVector x3 = c2.bloch_vector();
    for (int tl : {1, -1}) {
        auto vals = bloch_expectation(f3, tl);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(vals[i](0, 0).real() - tl * x3[i]) < 1e-12);
    }

    // SO(5) twoS=2: c(lambda) = 2 lambda; lambda = 0 gives zero
    GammaSet g5 = build_so2k1_gammas(2, 2);
    FrameBuilder fb5(g5);
    AngleChart c4 = AngleChart::random(rng, 4);
    CoherentFrame f5 = fb5.frame(c4);
    RealVector x5 = c4.bloch_vector();
    for (int tl : {2, 0, -2}) {
        auto vals = bloch_expectation(f5, tl);
        double c = bloch_expectation_coefficient(g5.group, tl);
        for (int a = 0; a < 5; ++a) {
            Matrix target = c * x5[a] * Matrix::Identity(vals[a].rows(), vals[a].cols());
            CHECK((vals[a] - target).cwiseAbs().maxCoeff() < 1e-9);
        }
    }

    // SO(4) twoS=3, lambda=3/2: coefficient 2 on x_mu
    GammaSet g4 = build_so4_gammas_closed_form(3);
    FrameBuilder fb4(g4);
    AngleChart c3 = AngleChart::random(rng, 3);
    CoherentFrame f4 = fb4.frame(c3);
    RealVector x4 = c3.bloch_vector();
    auto vals = bloch_expectation(f4, 3);
    CHECK(bloch_expectation_coefficient(g4.group, 3) == doctest::Approx(2.0));
    for (int mu = 0; mu < 4; ++mu) {
        Matrix target = 2.0 * x4[mu] * Matrix::Identity(4, 4);
        CHECK((vals[mu] - target).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("stabilizer rotations leave the Hamiltonian invariant") {
    std::mt19937_64 rng(29);
    std::vector<GammaSet> sets;
    sets.push_back(so3_set(2));
    sets.push_back(build_so2k1_gammas(2, 2));
    for (auto& g : sets) {
        FrameBuilder fb(g);
        int d = g.d();
        AngleChart chart = AngleChart::random(rng, d);
        CoherentFrame f = fb.frame(chart);
        // even frames carry V; the stabilizer conjugation uses the raw frame
        Matrix psi = f.psi * fb.diagonalizer().adjoint();
        Matrix H = hamiltonian(g, chart.bloch_vector()).hamiltonian;
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        Matrix X = Matrix::Zero(g.dim(), g.dim());
        for (int b = 1; b < d; ++b)
            for (int a = 0; a < b; ++a) X += uni(rng) * g.sigma(a, b);
        Matrix U = psi * expm(Matrix(I * X)) * psi.adjoint();
        CHECK((U.adjoint() * H * U - H).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("spectrum tables") {
    SpectrumTable t3 = spectrum_table(Group{1, Parity::Odd}, 2);
    REQUIRE(t3.entries.size() == 3);
    CHECK(t3.entries[0].energy == doctest::Approx(1.0));
    CHECK(t3.entries[1].energy == doctest::Approx(0.0));
    CHECK(t3.entries[2].energy == doctest::Approx(-1.0));
    for (auto& e : t3.entries) CHECK(e.degeneracy == 1);

    SpectrumTable t5 = spectrum_table(Group{2, Parity::Odd}, 2);
    CHECK(t5.total_dimension() == 10);
    CHECK(t5.entries[0].degeneracy == 3);
    CHECK(t5.entries[1].degeneracy == 4);
    CHECK(t5.entries[2].degeneracy == 3);

    SpectrumTable t4 = spectrum_table(Group{2, Parity::Even}, 3);
    REQUIRE(t4.entries.size() == 4);
    CHECK(t4.entries[0].energy == doctest::Approx(1.0));
    CHECK(t4.entries[0].degeneracy == 4);
    CHECK(t4.entries[1].energy == doctest::Approx(0.5));
    CHECK(t4.entries[1].degeneracy == 2);
    CHECK(t4.entries[2].energy == doctest::Approx(-0.5));
    CHECK(t4.entries[3].energy == doctest::Approx(-1.0));

    CHECK_THROWS(spectrum_table(Group{2, Parity::Even}, 2));

    // spectrum reflection symmetry: multiset E -> -E invariant
    for (auto g : {Group{3, Parity::Odd}, Group{4, Parity::Even}})
        for (int twoS : {1, 3}) {
            auto t = spectrum_table(g, twoS);
            for (size_t i = 0; i < t.entries.size(); ++i) {
                auto& a = t.entries[i];
                auto& b = t.entries[t.entries.size() - 1 - i];
                CHECK(a.energy == doctest::Approx(-b.energy));
                CHECK(a.degeneracy == b.degeneracy);
            }
        }

    // matrix spectra agree with the table
    GammaSet g4 = build_so4_gammas_closed_form(3);
    auto frames = FrameBuilder(g4);
    RealVector tgt = frames.target_diagonal();
    auto entries = spectrum_table(Group{2, Parity::Even}, 3).entries;
    int pos = 0;
    for (auto& e : entries)
        for (int i = 0; i < e.degeneracy; ++i) CHECK(tgt[pos++] == doctest::Approx(e.energy));

    CHECK(!t3.to_csv().empty());
    CHECK(!t5.to_json().empty());
}

TEST_CASE("degeneracy distributions at 2S=31 from exact dimensions") {
    const int twoS = 31;
    // SO(2k+1) models: degeneracy D_{SO(2k)}(lambda) peaks at the smallest |lambda|
    for (int k : {2, 3, 4}) {
        Rational best(0);
        int best_tl = 0;
        for (int tl = twoS; tl >= -twoS; tl -= 2) {
            Rational d = irrep_dim_rational(Group{k, Parity::Even}, twoS, tl);
            if (d.as_double() > best.as_double()) {
                best = d;
                best_tl = tl;
            }
        }
        CHECK(std::abs(best_tl) == 1);
    }
    // SO(2k) models: D_{SO(2k-1)}(|lambda|) has two symmetric peaks; interior for k >= 3
    for (int k : {2, 3, 4}) {
        long long best = 0;
        int best_tl = 0;
        std::vector<long long> vals;
        for (int tl = 1; tl <= twoS; tl += 2) {
            long long d = irrep_dim(Group{k - 1, Parity::Odd}, twoS, tl);
            vals.push_back(d);
            if (d > best) {
                best = d;
                best_tl = tl;
            }
        }
        if (k == 2) {
            CHECK(best_tl == twoS);  // 2 lambda + 1 rises to the pole
        } else {
            CHECK(best_tl > 1);
            CHECK(best_tl < twoS);
            // unimodal over lambda > 0
            bool rising = true;
            for (size_t i = 1; i < vals.size(); ++i) {
                if (vals[i] < vals[i - 1]) rising = false;
                if (!rising) CHECK(vals[i] <= vals[i - 1]);
            }
        }
    }
}

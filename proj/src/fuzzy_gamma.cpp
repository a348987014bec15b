#include "bloch/fuzzy_gamma.hpp"

#include "bloch/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "bloch/harmonics.hpp"
#include "bloch/quadrature.hpp"

namespace bloch {

OscillatorBasis OscillatorBasis::make(int modes, int quanta) {
    OscillatorBasis b;
    b.modes = modes;
    b.quanta = quanta;
    std::vector<int> cur(modes, 0);
    // lexicographic with first mode descending
    std::function<void(int, int)> rec = [&](int mode, int left) {
        if (mode == modes - 1) {
            cur[mode] = left;
            b.occ.push_back(cur);
            return;
        }
        for (int n = left; n >= 0; --n) {
            cur[mode] = n;
            rec(mode + 1, left - n);
        }
    };
    rec(0, quanta);
    for (int i = 0; i < (int)b.occ.size(); ++i) b.index[b.occ[i]] = i;
    return b;
}

Matrix OscillatorBasis::one_body(const Matrix& X) const {
    long long D = dim();
    Matrix out = Matrix::Zero(D, D);
    std::vector<int> n2;
    for (long long col = 0; col < D; ++col) {
        const auto& n = occ[col];
        for (int j = 0; j < modes; ++j) {
            if (n[j] == 0) continue;
            for (int i = 0; i < modes; ++i) {
                cdouble x = X(i, j);
                if (x == cdouble(0, 0)) continue;
                if (i == j) {
                    out(col, col) += x * double(n[j]);
                } else {
                    n2 = n;
                    n2[j] -= 1;
                    n2[i] += 1;
                    long long row = index.at(n2);
                    out(row, col) += x * std::sqrt(double(n[i] + 1) * double(n[j]));
                }
            }
        }
    }
    return out;
}

GammaSet build_so2k1_gammas(int k, int twoS) {
    if (k < 1 || twoS < 1) throw std::invalid_argument("build_so2k1_gammas: k,twoS >= 1");
    auto minimal = minimal_gammas(k);
    int n = 2 * k + 1;
    auto basis = OscillatorBasis::make(1 << k, twoS);

    std::vector<Matrix> lifted;
    lifted.reserve(n);
    for (auto& g : minimal) lifted.push_back(basis.one_body(g));

    std::vector<Matrix> gen_min = so_generators(minimal);
    std::vector<Matrix> gen_lift;
    gen_lift.reserve(gen_min.size());
    for (auto& s : gen_min) gen_lift.push_back(basis.one_body(s));

    long long Ds = basis.dim();
    Matrix C2 = Matrix::Zero(Ds, Ds);
    for (auto& s : gen_lift) C2 += s * s;

    double S = 0.5 * twoS;
    double target = k * S * (S + k);
    Eigen::SelfAdjointEigenSolver<Matrix> es(C2);
    std::vector<int> sel;
    for (int i = 0; i < Ds; ++i)
        if (std::abs(es.eigenvalues()[i] - target) < 1e-6 * std::max(1.0, target)) sel.push_back(i);

    long long Dirr = irrep_dim(Group{k, Parity::Odd}, twoS, twoS);
    if ((long long)sel.size() != Dirr)
        throw std::runtime_error("build_so2k1_gammas: Casimir eigenspace has dimension " +
                                 std::to_string(sel.size()) + ", expected " + std::to_string(Dirr));

    Matrix P(Ds, Dirr);
    for (long long j = 0; j < Dirr; ++j) P.col(j) = es.eigenvectors().col(sel[j]);

    GammaSet out;
    out.group = Group{k, Parity::Odd};
    out.twoS = twoS;
    out.construction = "oscillator";
    out.gammas.reserve(n);
    for (auto& g : lifted) out.gammas.push_back(P.adjoint() * g * P);

    // rotate so Gamma_{2k+1} = diag(2S, ..., -2S) descending with canonical blocks
    auto ce = canonical_eigenbasis(out.gammas.back());
    for (auto& g : out.gammas) g = ce.vectors.adjoint() * g * ce.vectors;
    // snap the diagonal to the exact integers it converged to
    Matrix& last = out.gammas.back();
    for (long long i = 0; i < Dirr; ++i)
        for (long long j = 0; j < Dirr; ++j)
            last(i, j) = (i == j) ? cdouble(std::round(last(i, i).real()), 0) : cdouble(0, 0);

    out.generators = so_generators(out.gammas);
    return out;
}

GammaSet restrict_to_so2k(const GammaSet& parent) {
    if (parent.group.parity != Parity::Odd)
        throw std::invalid_argument("restrict_to_so2k: parent must be an SO(2k+1) set");
    if (parent.twoS % 2 == 0)
        throw std::invalid_argument("restrict_to_so2k: defined only for odd twoS");
    int k = parent.group.k;
    auto lv = parent.levels();
    const GammaSet::Level *plus = nullptr, *minus = nullptr;
    for (auto& l : lv) {
        if (l.twoLambda == 1) plus = &l;
        if (l.twoLambda == -1) minus = &l;
    }
    if (!plus || !minus) throw std::runtime_error("restrict_to_so2k: lambda=+-1/2 levels missing");

    long long w = plus->width;
    if (w != minus->width || w != irrep_dim(Group{k, Parity::Even}, parent.twoS, 1))
        throw std::runtime_error("restrict_to_so2k: unexpected block widths");

    GammaSet out;
    out.group = Group{k, Parity::Even};
    out.twoS = parent.twoS;
    out.construction = "restricted";
    long long D = 2 * w;
    for (int mu = 0; mu < 2 * k; ++mu) {
        // keep only the chirality-odd blocks; the diagonal ones vanish by the
        // lambda -> lambda +- 1 selection rule
        Matrix B = parent.gammas[mu].block(plus->offset, minus->offset, w, w);
        Matrix G = Matrix::Zero(D, D);
        G.topRightCorner(w, w) = B;
        G.bottomLeftCorner(w, w) = B.adjoint();
        out.gammas.push_back(std::move(G));
    }
    out.chirality = Matrix::Zero(D, D);
    out.chirality.topLeftCorner(w, w) = Matrix::Identity(w, w);
    out.chirality.bottomRightCorner(w, w) = -Matrix::Identity(w, w);

    // generators: restriction of the parent SO(2k) generators (they commute
    // with Gamma_{2k+1}, hence block-diagonal in the two eigenspaces)
    for (int b = 1; b < 2 * k; ++b)
        for (int a = 0; a < b; ++a) {
            Matrix s = parent.sigma(a, b);
            Matrix S = Matrix::Zero(D, D);
            S.topLeftCorner(w, w) = s.block(plus->offset, plus->offset, w, w);
            S.bottomRightCorner(w, w) = s.block(minus->offset, minus->offset, w, w);
            out.generators.push_back(std::move(S));
        }
    return out;
}

namespace {

std::vector<double> half_range(int twoS) {
    std::vector<double> out;
    for (int tm = twoS; tm >= -twoS; tm -= 2) out.push_back(0.5 * tm);
    return out;
}

}  // namespace

GammaSet build_so4_gammas_closed_form(int twoS) {
    if (twoS < 1 || twoS % 2 == 0)
        throw std::invalid_argument("build_so4_gammas_closed_form: odd twoS required");
    double S = 0.5 * twoS;
    double c = 2 * S + 3;
    double a0 = (2 * S + 3) / 4, b0 = (2 * S + 1) / 4;
    // sector A = (sL, sR) = ((2S+1)/4, (2S-1)/4), sector B swapped; states
    // ordered (m_L descending, m_R descending)
    int twoA_L = (twoS + 1) / 2;  // doubled sector spins; odd twoS keeps them integral
    int twoA_R = (twoS - 1) / 2;
    auto mAL = half_range(twoA_L), mAR = half_range(twoA_R);
    auto mBL = half_range(twoA_R), mBR = half_range(twoA_L);
    long long dA = (long long)mAL.size() * mAR.size();
    long long dB = (long long)mBL.size() * mBR.size();

    auto near = [](double x, double y) { return std::abs(x - y) < 1e-9; };

    std::vector<Matrix> Y(4, Matrix::Zero(dA, dB));
    for (int mu = 1; mu <= 4; ++mu) {
        cdouble ph = std::pow(-I, mu);
        double sgn_mu = (mu % 2 == 0) ? 1.0 : -1.0;  // (-1)^mu
        long long row = 0;
        for (double mLp : mAL)
            for (double mRp : mAR) {
                long long col = 0;
                for (double mL : mBL)
                    for (double mR : mBR) {
                        cdouble v(0, 0);
                        if (mu <= 2) {
                            if (near(mLp, mL + 0.5) && near(mRp, mR + 0.5))
                                v += ph * std::sqrt((a0 + mL) * (b0 - mR));
                            if (near(mLp, mL - 0.5) && near(mRp, mR - 0.5))
                                v += -sgn_mu * ph * std::sqrt((a0 - mL) * (b0 + mR));
                            v *= 1.0 / c;
                        } else {
                            if (near(mLp, mL + 0.5) && near(mRp, mR - 0.5))
                                v += ph * std::sqrt((a0 + mL) * (b0 + mR));
                            if (near(mLp, mL - 0.5) && near(mRp, mR + 0.5))
                                v += sgn_mu * ph * std::sqrt((a0 - mL) * (b0 - mR));
                            v *= -1.0 / c;
                        }
                        Y[mu - 1](row, col) = v;
                        ++col;
                    }
                ++row;
            }
    }

    GammaSet out;
    out.group = Group{2, Parity::Even};
    out.twoS = twoS;
    out.construction = "closed-form";
    long long D = dA + dB;
    for (int mu = 0; mu < 4; ++mu) {
        Matrix G = Matrix::Zero(D, D);
        G.topRightCorner(dA, dB) = -c * Y[mu];
        G.bottomLeftCorner(dB, dA) = (-c * Y[mu]).adjoint();
        out.gammas.push_back(std::move(G));
    }
    out.chirality = Matrix::Zero(D, D);
    out.chirality.topLeftCorner(dA, dA) = Matrix::Identity(dA, dA);
    out.chirality.bottomRightCorner(dB, dB) = -Matrix::Identity(dB, dB);

    // canonical tensor-product generators per sector
    auto sector_gens = [&](int twosL, int twosR) {
        auto SL = spin_matrices(twosL);
        auto SR = spin_matrices(twosR);
        long long dL = twosL + 1, dR = twosR + 1;
        std::vector<Matrix> gens;
        for (int b = 1; b < 4; ++b)
            for (int a = 0; a < b; ++a) {
                Matrix M = Matrix::Zero(dL * dR, dL * dR);
                for (int i = 0; i < 3; ++i) {
                    int tp = thooft_tensor(a + 1, b + 1, i + 1, +1);
                    int tm = thooft_tensor(a + 1, b + 1, i + 1, -1);
                    if (tp)
                        M += double(tp) *
                             kron(SL[i], Matrix::Identity(dR, dR));
                    if (tm)
                        M += double(tm) *
                             kron(Matrix::Identity(dL, dL), SR[i]);
                }
                gens.push_back(std::move(M));
            }
        return gens;
    };
    auto gA = sector_gens(twoA_L, twoA_R);
    auto gB = sector_gens(twoA_R, twoA_L);
    for (size_t i = 0; i < gA.size(); ++i) {
        Matrix M = Matrix::Zero(D, D);
        M.topLeftCorner(dA, dA) = gA[i];
        M.bottomRightCorner(dB, dB) = gB[i];
        out.generators.push_back(std::move(M));
    }
    return out;
}

namespace {

/// DFS over permutations with shared prefix products.
void bracket_rec(std::span<const Matrix> mats, std::vector<bool>& used, const Matrix& prefix,
                 int depth, int sign_inversions, Matrix& acc, std::vector<int>& chosen) {
    int m = (int)mats.size();
    if (depth == m) {
        // permutation sign from inversion count
        acc += (sign_inversions % 2 == 0 ? 1.0 : -1.0) * prefix;
        return;
    }
    for (int i = 0; i < m; ++i) {
        if (used[i]) continue;
        int inv = 0;
        for (int c : chosen)
            if (c > i) ++inv;
        used[i] = true;
        chosen.push_back(i);
        Matrix next;
        if (depth == 0)
            next = mats[i];
        else
            next = prefix * mats[i];
        bracket_rec(mats, used, next, depth + 1, sign_inversions + inv, acc, chosen);
        chosen.pop_back();
        used[i] = false;
    }
}

}  // namespace

Matrix nambu_bracket(std::span<const Matrix> mats) {
    if (mats.empty()) throw std::invalid_argument("nambu_bracket: empty list");
    if (mats.size() > 6) throw std::invalid_argument("nambu_bracket: at most 6 factors");
    long long D = mats[0].rows();
    for (auto& m : mats)
        if (m.rows() != D || m.cols() != D)
            throw std::invalid_argument("nambu_bracket: dimension mismatch");
    Matrix acc = Matrix::Zero(D, D);
    std::vector<bool> used(mats.size(), false);
    std::vector<int> chosen;
    bracket_rec(mats, used, Matrix(), 0, 0, acc, chosen);
    return acc;
}

Matrix chiral_nambu_bracket(std::span<const Matrix> mats, const Matrix& G) {
    std::vector<Matrix> all(mats.begin(), mats.end());
    all.push_back(G);
    return nambu_bracket(all);
}

Rational casimir_coefficient_expected(Group g, int twoS) {
    Rational S(twoS, 2);
    if (g.parity == Parity::Odd) return Rational(4) * S * (S + Rational(g.k));
    return Rational(twoS + 1) * Rational(twoS + 2 * g.k - 1) / Rational(2);
}

cdouble bracket_coefficient_expected(Group g, int twoS) {
    int k = g.k;
    double df = 1.0;
    for (int x = 2 * k; x >= 2; x -= 2) df *= x;  // (2k)!!
    double num = 1.0;
    for (int x = twoS + 2 * k - 2; x > twoS; x -= 2) num *= x;  // (2S+2k-2)!!/(2S)!!
    cdouble ik = std::pow(I, k);
    cdouble c = ik * df * num;
    return g.parity == Parity::Odd ? c : -c;
}

NambuReport verify_fuzzy_sphere(const GammaSet& g, bool full_subsets) {
    NambuReport rep;
    long long D = g.dim();
    int n = g.n();
    Matrix sum2 = Matrix::Zero(D, D);
    for (auto& G : g.gammas) sum2 += G * G;
    rep.casimir_coefficient = sum2.trace().real() / double(D);
    rep.casimir_residual =
        (sum2 - rep.casimir_coefficient * Matrix::Identity(D, D)).cwiseAbs().maxCoeff() /
        std::abs(rep.casimir_coefficient);
    rep.casimir_expected = casimir_coefficient_expected(g.group, g.twoS);
    rep.bracket_expected = bracket_coefficient_expected(g.group, g.twoS);

    // covariance [Sigma_ab, Gamma_c] = i delta_ac Gamma_b - i delta_bc Gamma_a
    double cov = 0;
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a) {
            const Matrix& s = g.generators[g.gen_index(a, b)];
            for (int c = 0; c < n; ++c) {
                Matrix comm = s * g.gammas[c] - g.gammas[c] * s;
                if (c == a) comm -= I * g.gammas[b];
                if (c == b) comm += I * g.gammas[a];
                cov = std::max(cov, comm.cwiseAbs().maxCoeff());
            }
        }
    rep.covariance_residual = cov;

    // bracket fit: for each retained subset, bracket(all but e) = c * sign * Gamma_e
    int m = (g.group.parity == Parity::Odd) ? 2 * g.group.k : 2 * g.group.k - 1;
    std::vector<int> omit;
    if (full_subsets)
        for (int e = 0; e < n; ++e) omit.push_back(e);
    else
        omit = {n - 1, 0};
    cdouble num(0, 0);
    double den = 0;
    std::vector<std::pair<Matrix, Matrix>> pairs;  // (bracket, sign * Gamma_e)
    for (int e : omit) {
        std::vector<Matrix> sub;
        for (int i = 0; i < n; ++i)
            if (i != e) sub.push_back(g.gammas[i]);
        Matrix B = (g.group.parity == Parity::Odd)
                       ? nambu_bracket(sub)
                       : chiral_nambu_bracket(sub, g.chirality);
        // eps_{(sorted subset), e} moves e across m slots: sign (-1)^{m - e}
        double sgn = ((m - e) % 2 == 0) ? 1.0 : -1.0;
        Matrix T = sgn * g.gammas[e];
        num += (T.adjoint() * B).trace();
        den += T.squaredNorm();
        pairs.emplace_back(std::move(B), std::move(T));
    }
    rep.bracket_coefficient = num / den;
    double resid = 0, scale = 0;
    for (auto& [B, T] : pairs) {
        resid = std::max(resid, (B - rep.bracket_coefficient * T).cwiseAbs().maxCoeff());
        scale = std::max(scale, B.cwiseAbs().maxCoeff());
    }
    rep.bracket_residual = scale > 0 ? resid / scale : resid;

    Eigen::SelfAdjointEigenSolver<Matrix> es(g.gammas.back());
    int i0 = 0;
    for (int i = 1; i <= D; ++i) {
        if (i == D || std::abs(es.eigenvalues()[i] - es.eigenvalues()[i0]) > 1e-6) {
            rep.last_gamma_spectrum.push_back({es.eigenvalues()[i0], i - i0});
            i0 = i;
        }
    }
    return rep;
}

LandauRecovery landau_matrix_elements_so3(int twoS, int twoLambda, int grid) {
    if (twoLambda == 0 || std::abs(twoLambda) > twoS)
        throw std::invalid_argument("landau_matrix_elements_so3: need 0 < |lambda| <= S");
    double S = 0.5 * twoS, lam = 0.5 * twoLambda;
    int dim = twoS + 1;

    auto integrate = [&](int npolar) {
        auto polar = gauss_legendre(npolar, 0.0, M_PI);
        auto azim = periodic_trapezoid(2 * npolar);
        std::array<Matrix, 3> acc{Matrix::Zero(dim, dim), Matrix::Zero(dim, dim),
                                  Matrix::Zero(dim, dim)};
        for (int it = 0; it < npolar; ++it) {
            double th = polar.nodes[it];
            for (int ip = 0; ip < (int)azim.nodes.size(); ++ip) {
                AngleChart chart({th, azim.nodes[ip]});
                Vector phi = so3_harmonics(twoS, twoLambda, chart);
                RealVector x = chart.bloch_vector();
                double w = polar.weights[it] * azim.weights[ip] * std::sin(th);
                for (int i = 0; i < 3; ++i)
                    acc[i] += (w * x[i]) * (phi.conjugate() * phi.transpose());
            }
        }
        double scale = S * (S + 1) * (2 * S + 1) / (4 * M_PI * lam);
        for (auto& m : acc) m *= scale;
        return acc;
    };

    auto coarse = integrate(grid);
    auto fine = integrate(2 * grid);
    LandauRecovery out;
    out.spin = fine;
    out.refinement_change = 0;
    for (int i = 0; i < 3; ++i)
        out.refinement_change =
            std::max(out.refinement_change, (fine[i] - coarse[i]).cwiseAbs().maxCoeff());
    if (out.refinement_change > 1e-7)
        throw std::runtime_error("landau_matrix_elements_so3: quadrature did not converge");
    auto ref = spin_matrices(twoS);
    out.deviation = 0;
    for (int i = 0; i < 3; ++i)
        out.deviation = std::max(out.deviation, (fine[i] - ref[i]).cwiseAbs().maxCoeff());
    return out;
}

}  // namespace bloch

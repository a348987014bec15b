#include "bloch/spin_algebra.hpp"

#include <cmath>

namespace bloch {

Group Group::parse(const std::string& s) {
    if (s.size() < 3 || s.substr(0, 2) != "so")
        throw std::invalid_argument("group label must look like so3, so4, ...: got " + s);
    int n = std::stoi(s.substr(2));
    return Group::so(n);
}

std::array<Matrix, 3> spin_matrices(int twoS) {
    if (twoS < 0) throw std::invalid_argument("spin_matrices: twoS >= 0 required");
    int dim = twoS + 1;
    double S = 0.5 * twoS;
    Matrix Sp = Matrix::Zero(dim, dim);
    Matrix Sz = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        double m = S - i;
        Sz(i, i) = m;
        if (i > 0) Sp(i - 1, i) = std::sqrt(S * (S + 1) - m * (m + 1));  // raises |m> -> |m+1>
    }
    Matrix Sx = 0.5 * (Sp + Sp.adjoint());
    Matrix Sy = -0.5 * I * (Sp - Sp.adjoint());
    return {Sx, Sy, Sz};
}

std::vector<Matrix> minimal_gammas(int k) {
    if (k < 1) throw std::invalid_argument("minimal_gammas: k >= 1 required");
    if (k == 1) {
        auto s = spin_matrices(1);
        return {2.0 * s[0], 2.0 * s[1], 2.0 * s[2]};
    }
    auto prev = minimal_gammas(k - 1);  // 2k-1 matrices, dim 2^{k-1}
    long long d = prev[0].rows();
    Matrix Id = Matrix::Identity(d, d);
    std::vector<Matrix> out;
    out.reserve(2 * k + 1);
    for (int mu = 0; mu < 2 * k; ++mu) {
        Matrix g = (mu < 2 * k - 1) ? Matrix(-I * prev[mu]) : Id;   // g_mu
        Matrix gb = (mu < 2 * k - 1) ? Matrix(I * prev[mu]) : Id;   // gbar_mu
        Matrix M = Matrix::Zero(2 * d, 2 * d);
        M.topRightCorner(d, d) = gb;
        M.bottomLeftCorner(d, d) = g;
        out.push_back(std::move(M));
    }
    Matrix G = Matrix::Zero(2 * d, 2 * d);
    G.topLeftCorner(d, d) = Id;
    G.bottomRightCorner(d, d) = -Id;
    out.push_back(std::move(G));
    return out;
}

std::vector<Matrix> so_generators(const std::vector<Matrix>& gammas) {
    std::vector<Matrix> out;
    int n = (int)gammas.size();
    out.reserve(n * (n - 1) / 2);
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a)
            out.push_back(-0.25 * I * (gammas[a] * gammas[b] - gammas[b] * gammas[a]));
    return out;
}

int GammaSet::gen_index(int a, int b) const {
    // lexicographic by (b, a) with a < b: (0,1),(0,2),(1,2),(0,3),...
    return b * (b - 1) / 2 + a;
}

Matrix GammaSet::sigma(int a, int b) const {
    if (a == b) return Matrix::Zero(dim(), dim());
    if (a < b) return generators[gen_index(a, b)];
    return -generators[gen_index(b, a)];
}

std::vector<GammaSet::Level> GammaSet::levels() const {
    std::vector<Level> out;
    const Matrix& last = gammas.back();
    long long D = dim();
    int i0 = 0;
    auto diag = [&](int i) { return last(i, i).real(); };
    for (int i = 1; i <= D; ++i) {
        if (i == D || std::abs(diag(i) - diag(i0)) > 1e-6) {
            Level lv;
            lv.offset = i0;
            lv.width = i - i0;
            lv.gamma_eigenvalue = diag(i0);
            if (group.parity == Parity::Odd) {
                lv.twoLambda = (int)std::llround(diag(i0));  // eigenvalue 2*lambda
            } else {
                // eigenvalue lambda + sgn(lambda)/2 = (2*lambda + sgn)/2
                int twice = (int)std::llround(2 * diag(i0));  // 2*lambda + sgn(lambda)
                lv.twoLambda = twice > 0 ? twice - 1 : twice + 1;
            }
            out.push_back(lv);
            i0 = i;
        }
    }
    return out;
}

int thooft_tensor(int mu, int nu, int i, int sign) {
    if (mu < 1 || mu > 4 || nu < 1 || nu > 4 || i < 1 || i > 3 || (sign != 1 && sign != -1))
        throw std::out_of_range("thooft_tensor: mu,nu in 1..4, i in 1..3, sign = +-1");
    auto eps4 = [](int a, int b, int c, int d) {
        int p[4] = {a, b, c, d};
        int s = 1;
        for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) {
                if (p[x] == p[y]) return 0;
                if (p[x] > p[y]) s = -s;
            }
        return s;
    };
    int t = eps4(mu, nu, i, 4);
    t += sign * ((mu == i && nu == 4) ? 1 : 0);
    t -= sign * ((nu == i && mu == 4) ? 1 : 0);
    return t;
}

namespace {
long double lfact(int n) { return std::lgamma((long double)n + 1.0L); }
}  // namespace

double clebsch_gordan(int twoj1, int twom1, int twoj2, int twom2, int twoJ, int twoM) {
    // selection rules -> exact zero
    if (twoM != twom1 + twom2) return 0.0;
    if (std::abs(twom1) > twoj1 || std::abs(twom2) > twoj2 || std::abs(twoM) > twoJ) return 0.0;
    if (twoJ < std::abs(twoj1 - twoj2) || twoJ > twoj1 + twoj2) return 0.0;
    if ((twoj1 + twoj2 + twoJ) % 2 != 0) return 0.0;
    if ((twoj1 + twom1) % 2 != 0 || (twoj2 + twom2) % 2 != 0) return 0.0;

    auto ihalf = [](int two) {
        if (two % 2 != 0) throw std::logic_error("clebsch_gordan: non-integral combination");
        return two / 2;
    };

    int a = ihalf(twoj1 + twoj2 - twoJ);
    int b = ihalf(twoj1 - twoj2 + twoJ);
    int c = ihalf(-twoj1 + twoj2 + twoJ);
    int jpm = ihalf(twoJ + twoM), jmm = ihalf(twoJ - twoM);
    int j1m = ihalf(twoj1 - twom1), j1p = ihalf(twoj1 + twom1);
    int j2m = ihalf(twoj2 - twom2), j2p = ihalf(twoj2 + twom2);

    long double logpref =
        std::log((long double)(twoJ + 1)) + lfact(a) + lfact(b) + lfact(c) -
        lfact(ihalf(twoj1 + twoj2 + twoJ) + 1) + lfact(jpm) + lfact(jmm) + lfact(j1m) +
        lfact(j1p) + lfact(j2m) + lfact(j2p);

    int kmin = std::max(0, std::max(ihalf(twoj2 - twoJ - twom1), ihalf(twoj1 + twom2 - twoJ)));
    int kmax = std::min(a, std::min(j1m, j2p));
    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        long double logden = lfact(k) + lfact(a - k) + lfact(j1m - k) + lfact(j2p - k) +
                             lfact(ihalf(twoJ - twoj2 + twom1) + k) +
                             lfact(ihalf(twoJ - twoj1 - twom2) + k);
        long double term = std::exp(0.5L * logpref - logden);
        sum += (k % 2 == 0) ? term : -term;
    }
    return (double)sum;
}

namespace {

Rational dim_so_odd(int k, int twoS, int twoLambda) {
    // Eq-form: (2l+1)/(2S+1) * prod_{j=1}^{k-1} (S-l+k-j)/(k-j) * (S+l+k-j+1)/(2S+k-j+1)
    //          * prod_{l=1}^{k} prod_{i=1}^{l} (2S+l+i-1)/(l+i-1), spins doubled.
    Rational S(twoS, 2), L(twoLambda, 2);
    Rational out = (Rational(twoLambda) + Rational(1)) / (Rational(twoS) + Rational(1));
    for (int j = 1; j <= k - 1; ++j) {
        out *= (S - L + Rational(k - j)) / Rational(k - j);
        out *= (S + L + Rational(k - j + 1)) / (Rational(twoS) + Rational(k - j + 1));
    }
    for (int l = 1; l <= k; ++l)
        for (int i = 1; i <= l; ++i)
            out *= (Rational(twoS) + Rational(l + i - 1)) / Rational(l + i - 1);
    return out;
}

Rational dim_so_even(int k, int twoS, int twoLambda) {
    if (k == 1) return Rational(1);  // SO(2): one-dimensional weight spaces
    Rational S(twoS, 2), L(twoLambda, 2);
    Rational out(1);
    for (int j = 1; j <= k - 1; ++j)
        out *= ((S + Rational(j)) * (S + Rational(j)) - L * L) / Rational(j * j);
    for (int l = 1; l <= k - 2; ++l)
        for (int i = 1; i <= k - l - 1; ++i)
            out *= (Rational(twoS) + Rational(2 * l + i)) / Rational(2 * l + i);
    return out;
}

}  // namespace

Rational irrep_dim_formula(Group g, int twoS, int twoLambda) {
    if (g.parity == Parity::Odd) return dim_so_odd(g.k, twoS, std::abs(twoLambda));
    return dim_so_even(g.k, twoS, twoLambda);
}

Rational irrep_dim_rational(Group g, int twoS, int twoLambda) {
    if (std::abs(twoLambda) > twoS || (twoS - twoLambda) % 2 != 0)
        throw std::invalid_argument("irrep_dim: lambda must lie in {-S..S} stepped by 1");
    if (g.parity == Parity::Odd) return dim_so_odd(g.k, twoS, std::abs(twoLambda));
    return dim_so_even(g.k, twoS, twoLambda);
}

long long irrep_dim(Group g, int twoS, int twoLambda) {
    Rational r = irrep_dim_rational(g, twoS, twoLambda);
    if (!r.is_integer() || r.num() <= 0)
        throw std::domain_error("irrep_dim: invalid label, non-integer dimension " + r.str());
    return r.as_integer();
}

GammaSet make_minimal_gamma_set(Group g) {
    GammaSet out;
    out.group = g;
    out.twoS = 1;
    out.construction = "minimal";
    auto full = minimal_gammas(g.k);
    if (g.parity == Parity::Odd) {
        out.gammas = full;
    } else {
        out.gammas.assign(full.begin(), full.end() - 1);
        out.chirality = full.back();
    }
    out.generators = so_generators(out.gammas);
    return out;
}

}  // namespace bloch

#pragma once

#include <cmath>
#include <random>

#include "bloch/types.hpp"

namespace bloch {

/// A point of S^d in nested polar coordinates, ordered outermost first:
/// (theta_d, theta_{d-1}, ..., theta_3, theta, phi). Polar angles lie in
/// [0, pi], phi in [0, 2*pi).
struct AngleChart {
    std::vector<double> angles;

    AngleChart() = default;
    explicit AngleChart(std::vector<double> a) : angles(std::move(a)) {}

    int d() const { return (int)angles.size(); }

    static AngleChart north(int d) { return AngleChart(std::vector<double>(d, 0.0)); }

    /// Uniform-in-angle random chart keeping every polar angle `margin` away
    /// from both poles (connection formulas exclude x_{d+1} = -1).
    static AngleChart random(std::mt19937_64& rng, int d, double margin = 0.2) {
        std::vector<double> a(d);
        std::uniform_real_distribution<double> polar(margin, M_PI - margin);
        std::uniform_real_distribution<double> azim(0.0, 2 * M_PI);
        for (int i = 0; i + 1 < d; ++i) a[i] = polar(rng);
        a[d - 1] = azim(rng);
        return AngleChart(std::move(a));
    }

    /// x_1 = cos(phi) sin(theta) ... sin(theta_d), ..., x_{d+1} = cos(theta_d).
    RealVector bloch_vector() const {
        int dd = d();
        RealVector x(dd + 1);
        double s = 1.0;
        for (int j = 0; j + 1 < dd; ++j) {
            x[dd - j] = s * std::cos(angles[j]);
            s *= std::sin(angles[j]);
        }
        x[1] = s * std::sin(angles[dd - 1]);
        x[0] = s * std::cos(angles[dd - 1]);
        return x;
    }

    /// d x_a / d theta_rho.  Every x_a is a product of sines of a prefix of the
    /// angle list times one closing sine/cosine; differentiate factor by factor.
    RealVector dx_dangle(int rho) const {
        int dd = d();
        RealVector g = RealVector::Zero(dd + 1);
        std::vector<std::pair<int, bool>> fs;  // (angle index, is_cos)
        for (int a = 0; a <= dd; ++a) {
            fs.clear();
            if (a >= 2) {
                int j = dd - a;  // x_a = sin(angles[0..j-1]) * cos(angles[j])
                for (int i = 0; i < j; ++i) fs.push_back({i, false});
                fs.push_back({j, true});
            } else {  // x_1 ~ sin(phi), x_0 ~ cos(phi), times all polar sines
                for (int i = 0; i + 1 < dd; ++i) fs.push_back({i, false});
                fs.push_back({dd - 1, a == 0});
            }
            bool involves = false;
            for (auto& f : fs) involves |= (f.first == rho);
            if (!involves) continue;
            double val = 1.0;
            for (auto& [idx, is_cos] : fs) {
                double t = angles[idx];
                if (idx == rho)
                    val *= is_cos ? -std::sin(t) : std::cos(t);
                else
                    val *= is_cos ? std::cos(t) : std::sin(t);
            }
            g[a] = val;
        }
        return g;
    }

    /// Diagonal of the round unit-sphere metric in this chart:
    /// diag(1, sin^2 theta_d, sin^2 theta_d sin^2 theta_{d-1}, ...).
    RealVector round_metric_diag() const {
        int dd = d();
        RealVector m(dd);
        double s = 1.0;
        for (int j = 0; j < dd; ++j) {
            m[j] = s;
            s *= std::sin(angles[j]) * std::sin(angles[j]);
        }
        return m;
    }
};

}  // namespace bloch

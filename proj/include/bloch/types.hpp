#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bloch {

using cdouble    = std::complex<double>;
using Matrix     = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector     = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cdouble I{0.0, 1.0};

/// Exact rational arithmetic for dimension formulas and closed-form invariants.
/// Intermediates go through __int128; values at the scales used here (2S <= 31,
/// k <= 5) stay far below overflow once reduced.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    long long as_integer() const {
        if (den_ != 1) throw std::domain_error("Rational: not an integer: " + str());
        return num_;
    }
    double as_double() const { return double(num_) / double(den_); }
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: divide by zero");
        return make(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

private:
    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: overflow");
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a ? a : 1;
    }
    void reduce() { *this = make(num_, den_); }

    long long num_ = 0;
    long long den_ = 1;
};

enum class Parity { Odd, Even };  // SO(2k+1) vs SO(2k)

/// Orthogonal group label SO(n), n = 2k+1 (odd) or 2k (even).
struct Group {
    int k = 1;
    Parity parity = Parity::Odd;

    int n() const { return parity == Parity::Odd ? 2 * k + 1 : 2 * k; }
    int d() const { return n() - 1; }  // sphere dimension S^d
    std::string name() const { return "so" + std::to_string(n()); }

    static Group so(int n) {
        if (n < 2) throw std::invalid_argument("Group: n >= 2 required");
        return n % 2 ? Group{n / 2, Parity::Odd} : Group{n / 2, Parity::Even};
    }
    static Group parse(const std::string& s);
    friend bool operator==(const Group& a, const Group& b) {
        return a.k == b.k && a.parity == b.parity;
    }
};

/// Deterministic summation independent of evaluation chunking.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
    if (xs.empty()) return T{};
    std::vector<T> buf(xs.begin(), xs.end());
    size_t n = buf.size();
    while (n > 1) {
        size_t h = (n + 1) / 2;
        for (size_t i = 0; i + h < n; ++i) buf[i] = buf[i] + buf[i + h];
        n = h;
    }
    return buf[0];
}

inline double pairwise_sum(const std::vector<double>& xs) {
    return pairwise_sum(std::span<const double>(xs));
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace bloch

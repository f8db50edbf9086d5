#ifndef COXCELL_SCALAR_HPP
#define COXCELL_SCALAR_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxcell/errors.hpp"

namespace coxcell {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kInfiniteLabel = -1; // encodes m = infinity in Coxeter matrices

// Exact arithmetic in the field Q(sqrt2, sqrt3, sqrt5), represented over the
// basis {sqrt(d) : d squarefree divisor of 30}. Enough for every Coxeter label
// in {2,3,4,5,6} and for the infinite label, i.e. for all spherical and affine
// irreducible families.
class ExactScalar {
  public:
    static constexpr std::array<int, 8> kBasis = {1, 2, 3, 5, 6, 10, 15, 30};

    ExactScalar() = default;
    ExactScalar(int v) { c_[0] = v; }
    ExactScalar(long v) { c_[0] = v; }
    explicit ExactScalar(const Rational& v) { c_[0] = v; }

    static ExactScalar sqrt_of(int d) {
        ExactScalar s;
        s.c_[index_of(d)] = 1;
        return s;
    }

    static bool supports_label(int m) {
        return m == kInfiniteLabel || (m >= 2 && m <= 6);
    }

    // cos(pi/m), with the convention cos(pi/inf) = 1.
    static ExactScalar cos_pi_over(int m) {
        switch (m) {
            case kInfiniteLabel: return ExactScalar(1);
            case 2: return ExactScalar(0);
            case 3: return ExactScalar(Rational(1, 2));
            case 4: return sqrt_of(2) * ExactScalar(Rational(1, 2));
            case 5: return (ExactScalar(1) + sqrt_of(5)) * ExactScalar(Rational(1, 4));
            case 6: return sqrt_of(3) * ExactScalar(Rational(1, 2));
            default:
                throw ArithmeticModeUnavailable("label " + std::to_string(m) +
                                                " is outside {2,3,4,5,6}");
        }
    }

    ExactScalar operator-() const {
        ExactScalar r;
        for (size_t i = 0; i < 8; ++i) r.c_[i] = -c_[i];
        return r;
    }
    ExactScalar& operator+=(const ExactScalar& o) {
        for (size_t i = 0; i < 8; ++i) c_[i] += o.c_[i];
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& o) {
        for (size_t i = 0; i < 8; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }

    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        ExactScalar r;
        for (size_t i = 0; i < 8; ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < 8; ++j) {
                if (b.c_[j] == 0) continue;
                int da = kBasis[i], db = kBasis[j];
                int g = gcd_int(da, db);
                int d = (da / g) * (db / g);
                r.c_[index_of(d)] += a.c_[i] * b.c_[j] * g;
            }
        }
        return r;
    }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

    ExactScalar inverse() const {
        if (is_zero()) throw Error("division by zero");
        // Peel off one square root at a time with the matching conjugation.
        ExactScalar x5 = conjugate(5);
        ExactScalar y = *this * x5; // lies in Q(sqrt2, sqrt3)
        ExactScalar y3 = y.conjugate(3);
        ExactScalar z = y * y3; // lies in Q(sqrt2)
        ExactScalar z2 = z.conjugate(2);
        ExactScalar w = z * z2; // rational
        Rational q = w.c_[0];
        if (q == 0) throw InternalInvariantViolation("field norm vanished on nonzero element");
        ExactScalar r = x5 * y3 * z2;
        Rational iq = Rational(denominator(q), numerator(q));
        for (size_t i = 0; i < 8; ++i) r.c_[i] *= iq;
        return r;
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        return a * b.inverse();
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.c_ == b.c_; }

    // Exact sign via interval evaluation with decimal rational bounds; the
    // basis radicals are linearly independent over Q, so a nonzero element has
    // nonzero value and the refinement terminates.
    int sign() const {
        if (is_zero()) return 0;
        for (int digits = 24;; digits *= 2) {
            Rational lo = 0, hi = 0;
            for (size_t i = 0; i < 8; ++i) {
                if (c_[i] == 0) continue;
                auto [l, u] = sqrt_bounds(kBasis[i], digits);
                if (c_[i] > 0) {
                    lo += c_[i] * l;
                    hi += c_[i] * u;
                } else {
                    lo += c_[i] * u;
                    hi += c_[i] * l;
                }
            }
            if (lo > 0) return 1;
            if (hi < 0) return -1;
        }
    }
    bool is_positive() const { return sign() > 0; }
    bool is_negative() const { return sign() < 0; }
    friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
        return (a - b).sign() < 0;
    }

    double to_double() const {
        double r = 0;
        for (size_t i = 0; i < 8; ++i)
            if (c_[i] != 0) r += c_[i].convert_to<double>() * std::sqrt(double(kBasis[i]));
        return r;
    }

    const Rational& rational_part() const { return c_[0]; }
    bool is_rational() const {
        for (size_t i = 1; i < 8; ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < 8; ++i) {
            if (c_[i] == 0) continue;
            Rational v = c_[i];
            if (first) {
                if (v < 0) { os << '-'; v = -v; }
            } else {
                os << (v < 0 ? '-' : '+');
                if (v < 0) v = -v;
            }
            first = false;
            bool unit = (v == 1) && i > 0;
            if (!unit) os << v;
            if (i > 0) {
                if (!unit) os << '*';
                os << "sqrt(" << kBasis[i] << ')';
            }
        }
        return os.str();
    }

    // Canonical key for hashing.
    std::string key() const { return str(); }

  private:
    std::array<Rational, 8> c_{};

    static constexpr int gcd_int(int a, int b) { return b == 0 ? a : gcd_int(b, a % b); }
    static constexpr size_t index_of(int d) {
        for (size_t i = 0; i < kBasis.size(); ++i)
            if (kBasis[i] == d) return i;
        return 0; // unreachable for products of basis elements
    }

    // Flip the sign of every component whose radicand is divisible by p.
    ExactScalar conjugate(int p) const {
        ExactScalar r = *this;
        for (size_t i = 0; i < 8; ++i)
            if (kBasis[i] % p == 0) r.c_[i] = -r.c_[i];
        return r;
    }

    // l <= sqrt(d) <= u with u - l <= 2 * 10^-digits, all exact rationals.
    static std::pair<Rational, Rational> sqrt_bounds(int d, int digits) {
        if (d == 1) return {Rational(1), Rational(1)};
        BigInt scale = 1;
        for (int i = 0; i < digits; ++i) scale *= 10;
        BigInt n = boost::multiprecision::sqrt(BigInt(d) * scale * scale);
        return {Rational(n, scale), Rational(n + 1, scale)};
    }
};

// Floating-point backend with a fixed symmetric equality tolerance. Fallback
// for labels outside the exact field (e.g. I2(7)).
class FloatScalar {
  public:
    static constexpr double kEps = 1e-9;

    FloatScalar() = default;
    FloatScalar(int v) : v_(v) {}
    FloatScalar(long v) : v_(double(v)) {}
    explicit FloatScalar(double v) : v_(v) {}
    explicit FloatScalar(const Rational& v) : v_(v.convert_to<double>()) {}

    static bool supports_label(int m) { return m == kInfiniteLabel || m >= 2; }
    static FloatScalar cos_pi_over(int m) {
        if (m == kInfiniteLabel) return FloatScalar(1.0);
        return FloatScalar(std::cos(std::numbers::pi / m));
    }

    FloatScalar operator-() const { return FloatScalar(-v_); }
    FloatScalar& operator+=(const FloatScalar& o) { v_ += o.v_; return *this; }
    FloatScalar& operator-=(const FloatScalar& o) { v_ -= o.v_; return *this; }
    FloatScalar& operator*=(const FloatScalar& o) { v_ *= o.v_; return *this; }
    friend FloatScalar operator+(FloatScalar a, const FloatScalar& b) { return a += b; }
    friend FloatScalar operator-(FloatScalar a, const FloatScalar& b) { return a -= b; }
    friend FloatScalar operator*(FloatScalar a, const FloatScalar& b) { return a *= b; }
    friend FloatScalar operator/(const FloatScalar& a, const FloatScalar& b) {
        return FloatScalar(a.v_ / b.v_);
    }
    FloatScalar inverse() const { return FloatScalar(1.0 / v_); }

    bool is_zero() const { return std::abs(v_) <= kEps; }
    int sign() const { return is_zero() ? 0 : (v_ > 0 ? 1 : -1); }
    bool is_positive() const { return sign() > 0; }
    bool is_negative() const { return sign() < 0; }
    friend bool operator==(const FloatScalar& a, const FloatScalar& b) {
        return std::abs(a.v_ - b.v_) <= kEps;
    }
    friend bool operator<(const FloatScalar& a, const FloatScalar& b) {
        return a.v_ < b.v_ - kEps;
    }

    double to_double() const { return v_; }

    std::string str() const {
        char buf[64];
        double r = v_;
        if (std::abs(r) <= kEps) r = 0.0; // normalize -0 and noise
        std::snprintf(buf, sizeof(buf), "%.12g", r);
        return buf;
    }

    // Coefficients are rounded to 12 decimal digits for hashing; callers must
    // confirm candidate matches with the eps comparison.
    int64_t rounded_key() const { return llround(v_ * 1e12); }
    std::string key() const { return std::to_string(rounded_key()); }

  private:
    double v_ = 0.0;
};

} // namespace coxcell

#endif

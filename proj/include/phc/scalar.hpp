#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phc {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Thrown on violated preconditions (bad dimensions, invalid parameters,
/// malformed input). Everything a caller could have checked up front.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact rational scalar. Always canonical: denominator > 0, gcd = 1
/// (cpp_rational maintains that internally). No operation ever rounds.
class Scalar {
public:
    Scalar() : v_(0) {}
    Scalar(int n) : v_(n) {}                 // NOLINT: implicit by design
    Scalar(long long n) : v_(n) {}           // NOLINT
    explicit Scalar(BigInt n) : v_(std::move(n)) {}
    explicit Scalar(BigRat v) : v_(std::move(v)) {}
    Scalar(const BigInt& num, const BigInt& den) {
        if (den == 0) throw UsageError("Scalar: zero denominator");
        v_ = den < 0 ? BigRat(-num, -den) : BigRat(num, den);
    }

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }
    const BigRat& raw() const { return v_; }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }
    int sign() const { return v_.sign(); }

    Scalar operator-() const { return Scalar(BigRat(-v_)); }
    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw UsageError("Scalar: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return a.v_ >= b.v_; }

    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const { return v_.convert_to<double>(); }

    /// "p" or "p/q".
    std::string str() const {
        std::string s = num().str();
        if (den() != 1) s += "/" + den().str();
        return s;
    }

    /// Parses "p", "-p", "p/q". Whitespace is not accepted.
    static Scalar parse(std::string_view text) {
        auto bad = [&] { throw UsageError("Scalar: cannot parse '" + std::string(text) + "'"); };
        if (text.empty()) bad();
        size_t slash = text.find('/');
        auto parse_int = [&](std::string_view t, bool allow_neg) -> BigInt {
            if (t.empty()) bad();
            size_t i = 0;
            if (allow_neg && (t[0] == '-' || t[0] == '+')) i = 1;
            if (i == t.size()) bad();
            for (size_t k = i; k < t.size(); ++k)
                if (t[k] < '0' || t[k] > '9') bad();
            return BigInt(std::string(t));
        };
        if (slash == std::string_view::npos)
            return Scalar(parse_int(text, true));
        BigInt n = parse_int(text.substr(0, slash), true);
        BigInt d = parse_int(text.substr(slash + 1), false);
        if (d == 0) bad();
        return Scalar(n, d);
    }

    /// Exact rational square root, if one exists.
    std::optional<Scalar> sqrt_exact() const {
        if (sign() < 0) return std::nullopt;
        BigInt n = num(), d = den();
        BigInt rn = boost::multiprecision::sqrt(n);
        BigInt rd = boost::multiprecision::sqrt(d);
        if (rn * rn != n || rd * rd != d) return std::nullopt;
        return Scalar(rn, rd);
    }

    /// Nearest rational with denominator <= max_den, by the classical
    /// continued-fraction convergent construction (keeps the last partial
    /// matrix product instead of the term sequence).
    static Scalar from_double(double x, const BigInt& max_den) {
        if (max_den < 1) throw UsageError("Scalar: max denominator must be >= 1");
        if (!std::isfinite(x)) throw UsageError("Scalar: non-finite input");
        bool neg = x < 0;
        double v = neg ? -x : x;
        BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // convergents h/k
        double frac = v;
        for (int iter = 0; iter < 64; ++iter) {
            double fl = std::floor(frac);
            if (fl > 9.2e18) break;
            BigInt ai(static_cast<long long>(fl));
            if (k1 * ai + k0 > max_den) {
                // semiconvergent with the largest admissible last term
                BigInt t = (max_den - k0) / k1;
                BigInt h2 = h1 * t + h0, k2 = k1 * t + k0;
                double e1 = std::fabs(v - BigRat(h1, k1).convert_to<double>());
                double e2 = std::fabs(v - BigRat(h2, k2).convert_to<double>());
                if (k2 >= 1 && e2 < e1) { h1 = h2; k1 = k2; }
                break;
            }
            BigInt h2 = h1 * ai + h0, k2 = k1 * ai + k0;
            h0 = h1; h1 = h2; k0 = k1; k1 = k2;
            double rem = frac - fl;
            if (rem < 1e-18) break;
            frac = 1.0 / rem;
        }
        if (k1 == 0) return Scalar(0);
        Scalar r(h1, k1);
        return neg ? -r : r;
    }

private:
    BigRat v_;
};

inline Scalar operator*(int a, const Scalar& b) { return Scalar(a) * b; }

}  // namespace phc

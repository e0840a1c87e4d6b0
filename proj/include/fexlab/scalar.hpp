#ifndef FEXLAB_SCALAR_HPP
#define FEXLAB_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fexlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Backend { Rational, Float };

/// Tolerance used by all ApproxFloat comparisons.
inline constexpr double kFloatTolerance = 1e-12;

/// A number in [0,1] (occasionally outside, e.g. digit shifts) under one of
/// two backends: exact rational or double-with-tolerance.  Mixed-backend
/// arithmetic throws, never coerces.
class Scalar {
public:
    Scalar() : backend_(Backend::Rational), rat_(0), flt_(0.0) {}

    static Scalar rational(Rational r) {
        Scalar s;
        s.backend_ = Backend::Rational;
        s.rat_ = std::move(r);
        return s;
    }
    static Scalar rational(long long p, long long q) {
        if (q == 0) throw std::domain_error("Scalar: zero denominator");
        return rational(Rational(p, q));
    }
    static Scalar floating(double v) {
        Scalar s;
        s.backend_ = Backend::Float;
        s.flt_ = v;
        return s;
    }
    static Scalar zero(Backend b) {
        return b == Backend::Rational ? rational(0, 1) : floating(0.0);
    }
    static Scalar one(Backend b) {
        return b == Backend::Rational ? rational(1, 1) : floating(1.0);
    }
    static Scalar integer(long long n, Backend b) {
        return b == Backend::Rational ? rational(n, 1)
                                      : floating(static_cast<double>(n));
    }

    Backend backend() const { return backend_; }
    bool is_rational() const { return backend_ == Backend::Rational; }

    const Rational& rat() const {
        require(Backend::Rational);
        return rat_;
    }
    double flt() const {
        require(Backend::Float);
        return flt_;
    }
    double to_double() const {
        return backend_ == Backend::Rational ? static_cast<double>(rat_) : flt_;
    }

    /// Three-way comparison.  Float backend treats |a-b| <= tolerance as equal.
    int compare(const Scalar& o) const {
        check_same(o);
        if (backend_ == Backend::Rational)
            return rat_ < o.rat_ ? -1 : (rat_ > o.rat_ ? 1 : 0);
        if (flt_ < o.flt_ - kFloatTolerance) return -1;
        if (flt_ > o.flt_ + kFloatTolerance) return 1;
        return 0;
    }

    bool operator<(const Scalar& o) const { return compare(o) < 0; }
    bool operator>(const Scalar& o) const { return compare(o) > 0; }
    bool operator<=(const Scalar& o) const { return compare(o) <= 0; }
    bool operator>=(const Scalar& o) const { return compare(o) >= 0; }
    bool operator==(const Scalar& o) const { return compare(o) == 0; }
    bool operator!=(const Scalar& o) const { return compare(o) != 0; }

    /// Strict ordering on raw values, tolerance-free.  Use for sorting.
    static bool raw_less(const Scalar& a, const Scalar& b) {
        a.check_same(b);
        if (a.backend_ == Backend::Rational) return a.rat_ < b.rat_;
        return a.flt_ < b.flt_;
    }

    Scalar operator+(const Scalar& o) const { return arith(o, '+'); }
    Scalar operator-(const Scalar& o) const { return arith(o, '-'); }
    Scalar operator*(const Scalar& o) const { return arith(o, '*'); }
    Scalar operator/(const Scalar& o) const { return arith(o, '/'); }
    Scalar operator-() const {
        return backend_ == Backend::Rational ? rational(-rat_) : floating(-flt_);
    }

    Scalar abs() const {
        if (backend_ == Backend::Rational)
            return rational(rat_ < 0 ? Rational(-rat_) : rat_);
        return floating(std::fabs(flt_));
    }

    long long floor_ll() const {
        if (backend_ == Backend::Float) return static_cast<long long>(std::floor(flt_));
        BigInt n = numerator(rat_), d = denominator(rat_);
        BigInt q = n / d;
        if (n < 0 && q * d != n) q -= 1;
        return static_cast<long long>(q);
    }
    long long ceil_ll() const {
        if (backend_ == Backend::Float) return static_cast<long long>(std::ceil(flt_));
        BigInt n = numerator(rat_), d = denominator(rat_);
        BigInt q = n / d;
        if (n > 0 && q * d != n) q += 1;
        return static_cast<long long>(q);
    }

    /// "p/q" for rationals, 17 significant digits for floats.
    std::string str() const {
        std::ostringstream os;
        if (backend_ == Backend::Rational) {
            os << numerator(rat_);
            if (denominator(rat_) != 1) os << "/" << denominator(rat_);
        } else {
            os << std::setprecision(17) << flt_;
        }
        return os.str();
    }

    /// Accepts "p/q", integers, and decimal literals.
    static Scalar parse(const std::string& text, Backend b) {
        auto slash = text.find('/');
        if (b == Backend::Rational) {
            if (slash == std::string::npos) {
                if (text.find('.') != std::string::npos ||
                    text.find('e') != std::string::npos ||
                    text.find('E') != std::string::npos)
                    throw std::invalid_argument(
                        "Scalar::parse: decimal literal on rational backend: " + text);
                return rational(Rational(BigInt(text)));
            }
            BigInt p(text.substr(0, slash)), q(text.substr(slash + 1));
            if (q == 0) throw std::domain_error("Scalar::parse: zero denominator");
            return rational(Rational(p, q));
        }
        if (slash != std::string::npos) {
            Scalar r = parse(text, Backend::Rational);
            return floating(r.to_double());
        }
        return floating(std::stod(text));
    }

private:
    void require(Backend b) const {
        if (backend_ != b)
            throw std::logic_error("Scalar: wrong backend access");
    }
    void check_same(const Scalar& o) const {
        if (backend_ != o.backend_)
            throw std::invalid_argument("Scalar: mixed-backend operation");
    }
    Scalar arith(const Scalar& o, char op) const {
        check_same(o);
        if (backend_ == Backend::Rational) {
            switch (op) {
                case '+': return rational(rat_ + o.rat_);
                case '-': return rational(rat_ - o.rat_);
                case '*': return rational(rat_ * o.rat_);
                default:
                    if (o.rat_ == 0) throw std::domain_error("Scalar: division by zero");
                    return rational(rat_ / o.rat_);
            }
        }
        switch (op) {
            case '+': return floating(flt_ + o.flt_);
            case '-': return floating(flt_ - o.flt_);
            case '*': return floating(flt_ * o.flt_);
            default:
                if (o.flt_ == 0.0) throw std::domain_error("Scalar: division by zero");
                return floating(flt_ / o.flt_);
        }
    }

    Backend backend_;
    Rational rat_;
    double flt_;
};

}  // namespace fexlab

#endif

#ifndef FEXLAB_INTERVAL_HPP
#define FEXLAB_INTERVAL_HPP

#include "fexlab/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace fexlab {

enum class Kind { Closed, Open };

/// A subinterval of [0,1] with explicit open/closed endpoint kinds.
/// A point interval (lo == hi) must be closed on both sides.
class Interval {
public:
    Interval(Scalar lo, Scalar hi, Kind lo_kind, Kind hi_kind)
        : lo_(std::move(lo)), hi_(std::move(hi)), lo_kind_(lo_kind), hi_kind_(hi_kind) {
        int c = lo_.compare(hi_);
        if (c > 0) throw std::invalid_argument("Interval: lo > hi");
        if (c == 0 && (lo_kind_ != Kind::Closed || hi_kind_ != Kind::Closed))
            throw std::invalid_argument("Interval: point interval must be closed");
    }

    static Interval closed(Scalar a, Scalar b) {
        return Interval(std::move(a), std::move(b), Kind::Closed, Kind::Closed);
    }
    static Interval open(Scalar a, Scalar b) {
        return Interval(std::move(a), std::move(b), Kind::Open, Kind::Open);
    }
    static Interval half_open(Scalar a, Scalar b) {  // [a,b)
        return Interval(std::move(a), std::move(b), Kind::Closed, Kind::Open);
    }
    static Interval point(Scalar a) {
        Scalar b = a;
        return closed(std::move(a), std::move(b));
    }

    /// Returns nullopt instead of throwing when the data describe an empty set
    /// (lo > hi, or lo == hi with an open end).
    static std::optional<Interval> make(Scalar lo, Scalar hi, Kind lk, Kind hk) {
        int c = lo.compare(hi);
        if (c > 0) return std::nullopt;
        if (c == 0 && (lk != Kind::Closed || hk != Kind::Closed)) return std::nullopt;
        return Interval(std::move(lo), std::move(hi), lk, hk);
    }

    const Scalar& lo() const { return lo_; }
    const Scalar& hi() const { return hi_; }
    Kind lo_kind() const { return lo_kind_; }
    Kind hi_kind() const { return hi_kind_; }

    bool is_point() const { return lo_.compare(hi_) == 0; }
    bool nontrivial() const { return lo_.compare(hi_) < 0; }

    Scalar length() const { return hi_ - lo_; }
    Scalar midpoint() const {
        Scalar two = Scalar::integer(2, lo_.backend());
        return (lo_ + hi_) / two;
    }

    bool contains(const Scalar& x) const {
        int cl = x.compare(lo_);
        if (cl < 0 || (cl == 0 && lo_kind_ == Kind::Open)) return false;
        int ch = x.compare(hi_);
        if (ch > 0 || (ch == 0 && hi_kind_ == Kind::Open)) return false;
        return true;
    }

    /// The open core (lo,hi), or nullopt for point intervals.
    std::optional<Interval> core() const {
        if (!nontrivial()) return std::nullopt;
        return open(lo_, hi_);
    }
    Interval closure() const { return closed(lo_, hi_); }

    std::string str() const {
        std::string s = lo_kind_ == Kind::Closed ? "[" : "(";
        s += lo_.str() + ", " + hi_.str();
        s += hi_kind_ == Kind::Closed ? "]" : ")";
        return s;
    }

private:
    Scalar lo_, hi_;
    Kind lo_kind_, hi_kind_;
};

/// Set intersection with correct endpoint kinds; nullopt when empty.
/// A single shared closed endpoint yields a point interval.
inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    Scalar lo = a.lo();
    Kind lk = a.lo_kind();
    int c = a.lo().compare(b.lo());
    if (c < 0) {
        lo = b.lo();
        lk = b.lo_kind();
    } else if (c == 0) {
        lk = (a.lo_kind() == Kind::Open || b.lo_kind() == Kind::Open) ? Kind::Open
                                                                      : Kind::Closed;
    }
    Scalar hi = a.hi();
    Kind hk = a.hi_kind();
    c = a.hi().compare(b.hi());
    if (c > 0) {
        hi = b.hi();
        hk = b.hi_kind();
    } else if (c == 0) {
        hk = (a.hi_kind() == Kind::Open || b.hi_kind() == Kind::Open) ? Kind::Open
                                                                      : Kind::Closed;
    }
    return Interval::make(std::move(lo), std::move(hi), lk, hk);
}

inline Scalar interval_length(const Interval& i) { return i.length(); }

}  // namespace fexlab

#endif

#ifndef FEXLAB_PARTITION_HPP
#define FEXLAB_PARTITION_HPP

#include "fexlab/interval.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace fexlab {

using Digit = long long;

/// Callbacks describing a countable cell family produced on demand.
struct LazyCells {
    /// x -> digit of the cell containing x, or nullopt if x is in no cell.
    std::function<std::optional<Digit>(const Scalar&)> locate;
    /// digit -> its cell, or nullopt for digits outside the family.
    std::function<std::optional<Interval>(Digit)> cell;
    /// Enumeration: nullopt -> first digit; d -> successor of d (nullopt if none).
    std::function<std::optional<Digit>(std::optional<Digit>)> next;
};

/// An indexed family of disjoint subintervals of [0,1]: either a finite list
/// or a lazy countable rule.
class IntervalPartition {
public:
    static IntervalPartition finite(std::vector<std::pair<Digit, Interval>> cells) {
        if (cells.size() < 2)
            throw std::invalid_argument("IntervalPartition: need at least 2 cells");
        IntervalPartition p;
        p.finite_ = true;
        p.backend_ = cells.front().second.lo().backend();
        p.cells_ = std::move(cells);
        return p;
    }
    static IntervalPartition lazy(LazyCells rule, Backend backend) {
        IntervalPartition p;
        p.finite_ = false;
        p.backend_ = backend;
        p.lazy_ = std::move(rule);
        return p;
    }

    bool finite_alphabet() const { return finite_; }
    Backend backend() const { return backend_; }

    /// The unique digit d with x in Delta(d), respecting endpoint kinds.
    std::optional<Digit> locate(const Scalar& x) const {
        if (finite_) {
            for (const auto& [d, cell] : cells_)
                if (cell.contains(x)) return d;
            return std::nullopt;
        }
        auto d = lazy_.locate(x);
        if (!d) return std::nullopt;
        auto c = lazy_.cell(*d);
        if (!c || !c->contains(x)) return std::nullopt;
        return d;
    }

    std::optional<Interval> cell(Digit d) const {
        if (finite_) {
            for (const auto& [e, c] : cells_)
                if (e == d) return c;
            return std::nullopt;
        }
        return lazy_.cell(d);
    }

    /// Finite: all digits.  Lazy: digits <= cap in enumeration order;
    /// *truncated is set when the enumeration was cut at the cap.
    std::vector<Digit> digits_up_to(Digit cap, bool* truncated = nullptr) const {
        std::vector<Digit> out;
        if (truncated) *truncated = false;
        if (finite_) {
            for (const auto& [d, c] : cells_) out.push_back(d);
            return out;
        }
        std::optional<Digit> d = lazy_.next(std::nullopt);
        while (d) {
            if (*d > cap) {
                if (truncated) *truncated = true;
                break;
            }
            out.push_back(*d);
            d = lazy_.next(*d);
        }
        return out;
    }

    const std::vector<std::pair<Digit, Interval>>& cells() const {
        if (!finite_)
            throw std::logic_error("IntervalPartition: lazy family has no cell list");
        return cells_;
    }

    /// Sum of cell lengths (1 for finite partitions; a partial sum <= 1 when lazy).
    Scalar total_length(Digit cap) const {
        Scalar sum = Scalar::zero(backend_);
        for (Digit d : digits_up_to(cap)) {
            auto c = cell(d);
            if (c) sum = sum + c->length();
        }
        return sum;
    }

private:
    IntervalPartition() = default;
    bool finite_ = true;
    Backend backend_ = Backend::Rational;
    std::vector<std::pair<Digit, Interval>> cells_;
    LazyCells lazy_;
};

/// True iff every grid cell [k*eps, (k+1)*eps), k = 0..ceil(1/eps)-1, holds a
/// point.  Empty point list is false.  Deterministic and backend-exact.
inline bool epsilon_dense(const std::vector<Scalar>& points, const Scalar& eps) {
    if (points.empty()) return false;
    Scalar one = Scalar::one(eps.backend());
    long long total = (one / eps).ceil_ll();
    if (total <= 0) return false;
    std::vector<char> hit(static_cast<size_t>(total), 0);
    for (const auto& x : points) {
        long long k = (x / eps).floor_ll();
        if (k < 0) k = 0;
        if (k >= total) k = total - 1;
        hit[static_cast<size_t>(k)] = 1;
    }
    for (char h : hit)
        if (!h) return false;
    return true;
}

/// Same grid as epsilon_dense, reporting the covered-cell count and the empty
/// cells (up to max_gaps).
struct GridCoverage {
    long long covered = 0;
    long long total = 0;
    std::vector<Interval> gaps;
};

inline GridCoverage grid_coverage(const std::vector<Scalar>& points, const Scalar& eps,
                                  std::size_t max_gaps = 10) {
    GridCoverage cov;
    Scalar one = Scalar::one(eps.backend());
    cov.total = (one / eps).ceil_ll();
    if (cov.total <= 0) return cov;
    std::vector<char> hit(static_cast<size_t>(cov.total), 0);
    for (const auto& x : points) {
        long long k = (x / eps).floor_ll();
        if (k < 0) k = 0;
        if (k >= cov.total) k = cov.total - 1;
        hit[static_cast<size_t>(k)] = 1;
    }
    for (long long k = 0; k < cov.total; ++k) {
        if (hit[static_cast<size_t>(k)]) {
            ++cov.covered;
        } else if (cov.gaps.size() < max_gaps) {
            Scalar a = eps * Scalar::integer(k, eps.backend());
            Scalar b = eps * Scalar::integer(k + 1, eps.backend());
            cov.gaps.push_back(Interval::half_open(a, b));
        }
    }
    return cov;
}

}  // namespace fexlab

#endif

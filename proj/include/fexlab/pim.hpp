#ifndef FEXLAB_PIM_HPP
#define FEXLAB_PIM_HPP

#include "fexlab/interval.hpp"
#include "fexlab/partition.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fexlab {

/// Fractional linear transformation x -> (a x + b) / (c x + d), exact
/// rational coefficients.  Affine maps are the c = 0, d = 1 case.
struct Mobius {
    Rational a, b, c, d;

    static Mobius affine(Rational slope, Rational offset) {
        return Mobius{std::move(slope), std::move(offset), Rational(0), Rational(1)};
    }

    Rational eval(const Rational& x) const { return (a * x + b) / (c * x + d); }

    Mobius inverse() const { return Mobius{d, -b, -c, a}; }

    /// Composition A.then_after(B) is x -> A(B(x)).
    static Mobius compose(const Mobius& A, const Mobius& B) {
        return Mobius{A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d,
                      A.c * B.a + A.d * B.c, A.c * B.b + A.d * B.d};
    }
};

enum class Mono { TypeA, TypeB };  // increasing / decreasing

/// One monotone piece of a PIM.  forward/inverse are defined on the closure
/// of the domain / image hull respectively.
struct Branch {
    Digit digit;
    Interval domain;
    Mono mono;
    std::function<Scalar(const Scalar&)> forward;
    std::function<Scalar(const Scalar&)> inverse;
    Interval image;       // F(domain), with endpoint kinds
    Interval image_hull;  // closed hull of the image
    std::optional<Mobius> flt;  // forward as an FLT, when exactly representable
};

enum class PimKind { TypeA, TypeB, Mixed };

struct PreimageList {
    std::vector<std::pair<Digit, Scalar>> points;  // sorted by point ascending
    bool truncated = false;
};

struct ImageList {
    std::vector<Interval> intervals;  // disjoint, sorted, merged
    bool truncated = false;
};

struct PimConfig {
    std::string name;
    IntervalPartition partition = IntervalPartition::lazy({}, Backend::Rational);
    bool finite = true;
    std::vector<Branch> branches;                              // finite case
    std::function<std::optional<Branch>(Digit)> make_branch;   // lazy case
    PimKind type = PimKind::TypeA;
    bool well_ordered = true;
    bool surjective_hint = true;
    Interval domain = Interval::half_open(Scalar::rational(0, 1), Scalar::rational(1, 1));
};

/// A piecewise interval map: an interval partition together with a strictly
/// monotone branch over each cell.  Immutable after construction; the lazy
/// branch cache is internally synchronized.
class Pim {
public:
    explicit Pim(PimConfig cfg);

    Pim(const Pim&) = delete;
    Pim& operator=(const Pim&) = delete;

    const std::string& name() const { return cfg_.name; }
    Backend backend() const { return cfg_.partition.backend(); }
    const IntervalPartition& partition() const { return cfg_.partition; }
    PimKind type() const { return cfg_.type; }
    bool well_ordered() const { return cfg_.well_ordered; }
    bool surjective_hint() const { return cfg_.surjective_hint; }
    bool finite_alphabet() const { return cfg_.finite; }
    const Interval& domain() const { return cfg_.domain; }

    /// Branch for digit d, or nullptr.  Lazy branches are memoized.
    const Branch* branch(Digit d) const;

    std::vector<Digit> digits_up_to(Digit cap, bool* truncated = nullptr) const {
        return cfg_.partition.digits_up_to(cap, truncated);
    }

    /// Induced digit order: d < e iff Delta(d) lies left of Delta(e).
    bool digit_less(Digit d, Digit e) const;

    /// F(x) via the unique branch containing x; nullopt if x is not in D.
    std::optional<Scalar> apply(const Scalar& x) const;
    std::optional<std::pair<Digit, Scalar>> apply_with_digit(const Scalar& x) const;

    /// The map f_d: the branch inverse on the branch image hull, clamped to
    /// the nearer endpoint of the domain closure outside it.
    Scalar inverse_branch(Digit d, const Scalar& y) const;

    /// All x with F(x) = y, one per branch whose image contains y, digits
    /// restricted to <= digit_cap for lazy alphabets.
    PreimageList preimages(const Scalar& y, Digit digit_cap) const;

    /// F(I intersect D) as a minimal list of disjoint intervals.
    ImageList image_of_interval(const Interval& I, Digit digit_cap) const;

private:
    PimConfig cfg_;
    mutable std::map<Digit, Branch> cache_;
    mutable std::mutex cache_mutex_;
};

/// Monotone image of a subinterval of the branch domain.
Interval branch_image_of(const Branch& br, const Interval& J);

}  // namespace fexlab

#endif

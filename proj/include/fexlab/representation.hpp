#ifndef FEXLAB_REPRESENTATION_HPP
#define FEXLAB_REPRESENTATION_HPP

#include "fexlab/pim.hpp"
#include "fexlab/word.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fexlab {

class EmptyCylinder : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotWellOrdered : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The set of points whose first n digits are the given word: a closed hull
/// [a_n, b_n] with nonempty open core (a_n, b_n).
struct FundamentalInterval {
    Word word;
    Interval hull;
    Interval core;
    int order = 0;
};

/// First n digits of the F-representation of x.  Terminated(k) when the
/// iterate before digit k has left the domain of definition.
Word encode(const Pim& F, const Scalar& x, int n);

/// Fundamental interval of the word, or nullopt when it is empty or a point.
std::optional<FundamentalInterval> cylinder(const Pim& F, const Word& w);

/// Closed hull [a_n, b_n] of the order-n cylinder.  Throws EmptyCylinder.
Interval decode(const Pim& F, const Word& w);

/// Nested branch-inverse evaluation f_{d1}(f_{d2}(...f_{dn}(seed)...)),
/// seed 0 / 1 standing for the endpoints of the domain closure.
Scalar f_expand(const Pim& F, const Word& w, int seed);

/// Evaluation through the single assembled function f(x) = f_d(x - d) on
/// [d, d+1), extended constantly across digit gaps.  Requires a well-ordered
/// digit-to-cell correspondence; throws NotWellOrdered otherwise.
Scalar classical_f_expand(const Pim& F, const Word& w);

enum class FlipLex { Less, Equal, Greater, IncomparablePrefix };

/// Flip lexicographic comparison.  Digits are compared in the order induced
/// by their cells' positions; the comparison flips once per decreasing-branch
/// digit in the shared prefix.  Terminated words compare by their digits only.
FlipLex flip_lex_compare(const Pim& F, const Word& w, const Word& v);

enum class RefinementVerdict { ShrinksBelow, Stalled };

struct RefinementReport {
    std::vector<Scalar> sup_lengths;  // index k = sup cylinder length at level k+1
    RefinementVerdict verdict = RefinementVerdict::Stalled;
    int shrink_level = 0;    // first level whose sup drops below tol
    Word stalled_word;       // deepest-level word of maximal cylinder length
    bool digit_capped = false;
    bool budget_exhausted = false;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 1000000;

/// Expands all nonempty cylinders to depth n_max (digits <= digit_cap on lazy
/// alphabets) and reports the sup cylinder length per level.  The per-level
/// sequence is non-increasing; representations are valid iff it tends to 0,
/// which the tol threshold approximates.
RefinementReport refinement_norm(const Pim& F, int n_max, const Scalar& tol,
                                 Digit digit_cap,
                                 std::uint64_t node_budget = kDefaultNodeBudget);

/// Shared cylinder-tree walk: visit(word, hull) is called for every nonempty
/// cylinder up to depth n_max, parents before children, digits in enumeration
/// order.  Returns false when the node budget was exhausted.
bool walk_cylinders(const Pim& F, int n_max, Digit digit_cap,
                    std::uint64_t node_budget, bool* digit_capped,
                    const std::function<void(const std::vector<Digit>&, const Interval&)>& visit);

}  // namespace fexlab

#endif

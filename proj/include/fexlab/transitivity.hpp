#ifndef FEXLAB_TRANSITIVITY_HPP
#define FEXLAB_TRANSITIVITY_HPP

#include "fexlab/pim.hpp"

#include <cstdint>
#include <vector>

namespace fexlab {

/// [x, F(x), ..., F^n(x)], cut short at the first point outside the domain
/// of definition (that point is still included).
std::vector<Scalar> forward_orbit(const Pim& F, const Scalar& x, int n);

/// Grid density report: the unit interval is split into cells
/// [k*eps, (k+1)*eps) and dense means every cell holds a point.
struct DensityReport {
    Scalar eps;
    long long covered_cells = 0;
    long long total_cells = 0;
    bool dense = false;
    std::vector<Interval> witness_gaps;  // empty cells, capped
    bool orbit_terminated = false;       // forward orbit left the domain early
    bool truncated = false;              // digit cap or node budget hit
    bool stt_chain_dense = false;        // a single backward chain is eps-dense
};

DensityReport tt_estimate(const Pim& F, const Scalar& x, int n, const Scalar& eps);

/// Level k holds F^{-k}(x) restricted to digits <= digit_cap, sorted and
/// deduplicated (exact on rationals, tolerance-clustered on floats).
struct PreimageTree {
    Scalar root;
    std::vector<std::vector<Scalar>> levels;  // levels[k-1] = level k
    Digit digit_cap = 0;
    int depth = 0;
    std::uint64_t node_budget = 0;
    bool truncated = false;
};

PreimageTree backward_tree(const Pim& F, const Scalar& x, int depth,
                           Digit digit_cap, std::uint64_t node_budget);

/// Density of the whole backward tree (root plus all levels); additionally
/// runs a greedy single-chain search and reports stt_chain_dense when some
/// chain x_1 = x, F(x_{k+1}) = x_k is itself eps-dense.
DensityReport ptt_estimate(const Pim& F, const Scalar& x, int depth,
                           Digit digit_cap, std::uint64_t node_budget,
                           const Scalar& eps);

/// Outcome of iterating an interval and watching for monotonicity breaks,
/// self-overlaps, and absorbing inclusions.
struct HomtervalVerdict {
    enum class Kind { NotHomterval, WanderingUpTo, AbsorbingPeriod, Undetermined };
    Interval J;
    Kind kind = Kind::Undetermined;
    int at = 0;  // NotHomterval: iterate k; WanderingUpTo: N; AbsorbingPeriod: p
};

HomtervalVerdict classify_homterval(const Pim& F, const Interval& J, int max_p,
                                    int max_n, Digit digit_cap = 1024);

}  // namespace fexlab

#endif

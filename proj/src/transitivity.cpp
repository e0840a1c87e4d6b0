#include "fexlab/transitivity.hpp"

#include <algorithm>

namespace fexlab {

std::vector<Scalar> forward_orbit(const Pim& F, const Scalar& x, int n) {
    std::vector<Scalar> orbit{x};
    for (int k = 0; k < n; ++k) {
        auto y = F.apply(orbit.back());
        if (!y) break;
        orbit.push_back(std::move(*y));
    }
    return orbit;
}

namespace {

DensityReport report_from_points(const std::vector<Scalar>& pts, const Scalar& eps) {
    DensityReport rep{eps};
    auto cov = grid_coverage(pts, eps);
    rep.covered_cells = cov.covered;
    rep.total_cells = cov.total;
    rep.dense = cov.covered == cov.total && cov.total > 0;
    rep.witness_gaps = std::move(cov.gaps);
    return rep;
}

void sort_dedup(std::vector<Scalar>& v, Backend b) {
    std::sort(v.begin(), v.end(), Scalar::raw_less);
    if (b == Backend::Rational) {
        v.erase(std::unique(v.begin(), v.end(),
                            [](const Scalar& a, const Scalar& c) {
                                return !Scalar::raw_less(a, c) && !Scalar::raw_less(c, a);
                            }),
                v.end());
        return;
    }
    std::vector<Scalar> kept;
    for (const auto& x : v)
        if (kept.empty() || x.flt() - kept.back().flt() > kFloatTolerance)
            kept.push_back(x);
    v = std::move(kept);
}

}  // namespace

DensityReport tt_estimate(const Pim& F, const Scalar& x, int n, const Scalar& eps) {
    auto orbit = forward_orbit(F, x, n);
    auto rep = report_from_points(orbit, eps);
    rep.orbit_terminated = static_cast<int>(orbit.size()) < n + 1;
    return rep;
}

PreimageTree backward_tree(const Pim& F, const Scalar& x, int depth,
                           Digit digit_cap, std::uint64_t node_budget) {
    PreimageTree tree{x, {}, digit_cap, depth, node_budget, false};
    std::uint64_t used = 1;
    std::vector<Scalar> current{x};
    for (int k = 0; k < depth; ++k) {
        std::vector<Scalar> next;
        bool stop = false;
        for (const auto& y : current) {
            auto pre = F.preimages(y, digit_cap);
            if (pre.truncated) tree.truncated = true;
            for (auto& [d, v] : pre.points) {
                if (used + next.size() >= node_budget) {
                    tree.truncated = true;
                    stop = true;
                    break;
                }
                next.push_back(std::move(v));
            }
            if (stop) break;
        }
        sort_dedup(next, F.backend());
        used += next.size();
        if (next.empty()) break;
        tree.levels.push_back(std::move(next));
        current = tree.levels.back();
        if (stop) break;
    }
    return tree;
}

DensityReport ptt_estimate(const Pim& F, const Scalar& x, int depth,
                           Digit digit_cap, std::uint64_t node_budget,
                           const Scalar& eps) {
    PreimageTree tree = backward_tree(F, x, depth, digit_cap, node_budget);
    std::vector<Scalar> pts{x};
    for (const auto& lvl : tree.levels)
        pts.insert(pts.end(), lvl.begin(), lvl.end());
    auto rep = report_from_points(pts, eps);
    rep.truncated = tree.truncated;

    // Greedy single-chain witness: extend by the preimage landing in a fresh
    // grid cell when one exists, smallest value otherwise.
    Scalar one = Scalar::one(eps.backend());
    long long total = (one / eps).ceil_ll();
    if (total > 0) {
        std::vector<char> hit(static_cast<std::size_t>(total), 0);
        auto cell_of = [&](const Scalar& v) {
            long long c = (v / eps).floor_ll();
            if (c < 0) c = 0;
            if (c >= total) c = total - 1;
            return static_cast<std::size_t>(c);
        };
        std::vector<Scalar> chain{x};
        hit[cell_of(x)] = 1;
        Scalar cur = x;
        for (int k = 0; k < depth; ++k) {
            auto pre = F.preimages(cur, digit_cap);
            if (pre.points.empty()) break;
            const Scalar* pick = nullptr;
            for (const auto& [d, v] : pre.points) {
                if (!hit[cell_of(v)]) {
                    pick = &v;
                    break;
                }
            }
            if (!pick) pick = &pre.points.front().second;
            cur = *pick;
            hit[cell_of(cur)] = 1;
            chain.push_back(cur);
        }
        rep.stt_chain_dense = epsilon_dense(chain, eps);
    }
    return rep;
}

namespace {

bool interval_subset(const Interval& a, const Interval& b) {
    int cl = a.lo().compare(b.lo());
    if (cl < 0) return false;
    if (cl == 0 && b.lo_kind() == Kind::Open && a.lo_kind() == Kind::Closed) return false;
    int ch = a.hi().compare(b.hi());
    if (ch > 0) return false;
    if (ch == 0 && b.hi_kind() == Kind::Open && a.hi_kind() == Kind::Closed) return false;
    return true;
}

std::vector<Interval> merge_list(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        return Scalar::raw_less(a.lo(), b.lo());
    });
    std::vector<Interval> out;
    for (const auto& it : v) {
        if (!out.empty()) {
            const Interval& last = out.back();
            int c = it.lo().compare(last.hi());
            bool joins = c < 0 || (c == 0 && (last.hi_kind() == Kind::Closed ||
                                              it.lo_kind() == Kind::Closed));
            if (joins) {
                Scalar hi = last.hi();
                Kind hk = last.hi_kind();
                int ch = it.hi().compare(last.hi());
                if (ch > 0) {
                    hi = it.hi();
                    hk = it.hi_kind();
                } else if (ch == 0 && it.hi_kind() == Kind::Closed) {
                    hk = Kind::Closed;
                }
                out.back() = Interval(last.lo(), hi, last.lo_kind(), hk);
                continue;
            }
        }
        out.push_back(it);
    }
    return out;
}

// Iterates U <- U union F^p(U) until F^p(U) is contained in U; true on
// stabilization within max_iter rounds.
bool absorbing_test(const Pim& F, std::vector<Interval> U, int p, int max_iter,
                    Digit digit_cap) {
    for (int it = 0; it < max_iter; ++it) {
        std::vector<Interval> V = U;
        for (int step = 0; step < p; ++step) {
            std::vector<Interval> next;
            for (const auto& comp : V) {
                auto img = F.image_of_interval(comp, digit_cap);
                if (img.truncated) return false;
                next.insert(next.end(), img.intervals.begin(), img.intervals.end());
            }
            V = merge_list(std::move(next));
            if (V.empty()) return false;
        }
        bool inside = true;
        for (const auto& comp : V) {
            bool found = false;
            for (const auto& u : U)
                if (interval_subset(comp, u)) found = true;
            if (!found) inside = false;
        }
        if (inside) return true;
        for (const auto& comp : V) U.push_back(comp);
        U = merge_list(std::move(U));
    }
    return false;
}

}  // namespace

HomtervalVerdict classify_homterval(const Pim& F, const Interval& J, int max_p,
                                    int max_n, Digit digit_cap) {
    if (!J.nontrivial())
        throw std::invalid_argument("classify_homterval: J must be nontrivial");
    HomtervalVerdict verdict{J};
    std::vector<Interval> history{J};
    for (int k = 0; k < max_n; ++k) {
        const Interval& I = history.back();
        auto d = F.partition().locate(I.midpoint());
        const Branch* br = d ? F.branch(*d) : nullptr;
        bool monotone = br && I.lo() >= br->domain.lo() && I.hi() <= br->domain.hi();
        if (!monotone) {
            verdict.kind = HomtervalVerdict::Kind::NotHomterval;
            verdict.at = k;
            return verdict;
        }
        history.push_back(branch_image_of(*br, I));
        int idx = k + 1;
        for (int p = 1; p <= max_p && p <= idx; ++p) {
            auto overlap = intersect(history[static_cast<std::size_t>(idx - p)],
                                     history[static_cast<std::size_t>(idx)]);
            if (!overlap) continue;
            std::vector<Interval> U{history[static_cast<std::size_t>(idx - p)],
                                    history[static_cast<std::size_t>(idx)]};
            if (absorbing_test(F, merge_list(std::move(U)), p, max_n, digit_cap)) {
                verdict.kind = HomtervalVerdict::Kind::AbsorbingPeriod;
                verdict.at = p;
            } else {
                verdict.kind = HomtervalVerdict::Kind::Undetermined;
                verdict.at = p;
            }
            return verdict;
        }
    }
    verdict.kind = HomtervalVerdict::Kind::WanderingUpTo;
    verdict.at = max_n;
    return verdict;
}

}  // namespace fexlab

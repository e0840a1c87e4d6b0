#include "fexlab/representation.hpp"

#include <algorithm>
#include <utility>

namespace fexlab {

Word encode(const Pim& F, const Scalar& x, int n) {
    std::vector<Digit> digits;
    Scalar y = x;
    for (int k = 1; k <= n; ++k) {
        auto step = F.apply_with_digit(y);
        if (!step) return Word::terminated(std::move(digits), k);
        digits.push_back(step->first);
        y = step->second;
    }
    return Word::complete(std::move(digits));
}

std::optional<FundamentalInterval> cylinder(const Pim& F, const Word& w) {
    if (w.digits.empty())
        throw std::invalid_argument("cylinder: empty word");
    for (Digit d : w.digits)
        if (!F.branch(d)) return std::nullopt;
    Interval dom = F.domain().closure();
    Scalar a = dom.lo(), b = dom.hi();
    for (auto it = w.digits.rbegin(); it != w.digits.rend(); ++it) {
        Scalar a2 = F.inverse_branch(*it, a);
        Scalar b2 = F.inverse_branch(*it, b);
        if (Scalar::raw_less(b2, a2)) std::swap(a2, b2);
        a = std::move(a2);
        b = std::move(b2);
    }
    if (!(a < b)) return std::nullopt;
    return FundamentalInterval{w, Interval::closed(a, b), Interval::open(a, b),
                               static_cast<int>(w.digits.size())};
}

Interval decode(const Pim& F, const Word& w) {
    auto fi = cylinder(F, w);
    if (!fi) throw EmptyCylinder("decode: empty cylinder for word " + w.str());
    return fi->hull;
}

Scalar f_expand(const Pim& F, const Word& w, int seed) {
    if (seed != 0 && seed != 1)
        throw std::invalid_argument("f_expand: seed must be 0 or 1");
    Interval dom = F.domain().closure();
    Scalar t = seed == 0 ? dom.lo() : dom.hi();
    for (auto it = w.digits.rbegin(); it != w.digits.rend(); ++it) {
        if (!F.branch(*it))
            throw std::invalid_argument("f_expand: unknown digit " + std::to_string(*it));
        t = F.inverse_branch(*it, t);
    }
    return t;
}

namespace {

// f(d + v) for v in [0,1]: the assembled f(x) = f_e(x - e) on [e, e+1),
// constant f_{e'}(1) across a digit gap (e' = largest digit below) and
// constant f_{d_min}(0) below the smallest digit.
Scalar global_f(const Pim& F, Digit d, const Scalar& v) {
    Backend b = F.backend();
    Scalar zero = Scalar::zero(b), one = Scalar::one(b);
    Digit e = d;
    Scalar y = v;
    if (v.compare(one) >= 0) {
        e = d + 1;
        y = zero;
    }
    if (F.branch(e)) return F.inverse_branch(e, y);

    Digit cap = std::max<Digit>(e, 1);
    std::vector<Digit> ds;
    for (int guard = 0; guard < 64; ++guard) {
        ds = F.digits_up_to(cap);
        if (!ds.empty()) break;
        cap *= 2;
    }
    if (ds.empty())
        throw std::invalid_argument("classical_f_expand: no digits found");
    Digit d_min = *std::min_element(ds.begin(), ds.end());
    if (e < d_min) return F.inverse_branch(d_min, zero);
    Digit below = d_min;
    for (Digit g : ds)
        if (g < e && g > below) below = g;
    return F.inverse_branch(below, one);
}

}  // namespace

Scalar classical_f_expand(const Pim& F, const Word& w) {
    if (!F.well_ordered())
        throw NotWellOrdered("classical_f_expand: " + F.name() + " is not well ordered");
    if (w.digits.empty())
        throw std::invalid_argument("classical_f_expand: empty word");
    Backend b = F.backend();
    Scalar t = Scalar::zero(b);
    for (auto it = w.digits.rbegin(); it != w.digits.rend(); ++it)
        t = global_f(F, *it, t);
    return t;
}

FlipLex flip_lex_compare(const Pim& F, const Word& w, const Word& v) {
    std::size_t n = std::min(w.digits.size(), v.digits.size());
    std::size_t i = 0;
    int flips = 0;
    for (; i < n; ++i) {
        if (w.digits[i] != v.digits[i]) break;
        const Branch* br = F.branch(w.digits[i]);
        if (!br)
            throw std::invalid_argument("flip_lex_compare: unknown digit " +
                                        std::to_string(w.digits[i]));
        if (br->mono == Mono::TypeB) ++flips;
    }
    if (i == n) {
        if (w.digits.size() == v.digits.size()) return FlipLex::Equal;
        return FlipLex::IncomparablePrefix;
    }
    bool less = F.digit_less(w.digits[i], v.digits[i]);
    if (flips % 2 == 1) less = !less;
    return less ? FlipLex::Less : FlipLex::Greater;
}

namespace {

struct WalkState {
    const Pim* F;
    std::vector<Digit> digits_list;  // enumerable digits, fixed for the walk
    bool use_flt = false;
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    int n_max = 0;
    const std::function<void(const std::vector<Digit>&, const Interval&)>* visit;
    std::vector<Digit> path;
    bool exhausted = false;

    // G = f_{d1} o ... o f_{dk} maps the depth-k future space back to x-space.
    void walk(const Interval& J, const Mobius& G) {
        if (exhausted || static_cast<int>(path.size()) >= n_max) return;
        for (Digit d : digits_list) {
            const Branch* br = F->branch(d);
            if (!br) continue;
            auto K = intersect(J, br->domain);
            if (!K || !K->nontrivial()) continue;
            if (++nodes > budget) {
                exhausted = true;
                return;
            }
            Scalar a = pull_back(G, K->lo());
            Scalar b = pull_back(G, K->hi());
            if (Scalar::raw_less(b, a)) std::swap(a, b);
            if (!(a < b)) continue;
            path.push_back(d);
            (*visit)(path, Interval::closed(a, b));
            Interval J2 = branch_image_of(*br, *K);
            if (use_flt)
                walk(J2, Mobius::compose(G, br->flt->inverse()));
            else
                walk(J2, G);
            path.pop_back();
            if (exhausted) return;
        }
    }

    Scalar pull_back(const Mobius& G, const Scalar& t) const {
        if (use_flt) return Scalar::rational(G.eval(t.rat()));
        Scalar x = t;
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            x = F->inverse_branch(*it, x);
        return x;
    }
};

}  // namespace

bool walk_cylinders(const Pim& F, int n_max, Digit digit_cap,
                    std::uint64_t node_budget, bool* digit_capped,
                    const std::function<void(const std::vector<Digit>&, const Interval&)>& visit) {
    WalkState st;
    st.F = &F;
    bool capped = false;
    st.digits_list = F.digits_up_to(digit_cap, &capped);
    if (digit_capped) *digit_capped = capped;
    st.budget = node_budget;
    st.n_max = n_max;
    st.visit = &visit;
    st.use_flt = F.backend() == Backend::Rational;
    for (Digit d : st.digits_list) {
        const Branch* br = F.branch(d);
        if (br && !br->flt) st.use_flt = false;
    }
    Mobius identity{Rational(1), Rational(0), Rational(0), Rational(1)};
    st.walk(F.domain(), identity);
    return !st.exhausted;
}

RefinementReport refinement_norm(const Pim& F, int n_max, const Scalar& tol,
                                 Digit digit_cap, std::uint64_t node_budget) {
    if (n_max < 1) throw std::invalid_argument("refinement_norm: n_max must be >= 1");
    RefinementReport rep;
    Backend b = F.backend();
    rep.sup_lengths.assign(static_cast<std::size_t>(n_max), Scalar::zero(b));
    std::vector<Digit> deepest;
    std::uint64_t nodes = 0;

    auto visit = [&](const std::vector<Digit>& path, const Interval& hull) {
        ++nodes;
        std::size_t lvl = path.size() - 1;
        Scalar len = hull.length();
        if (Scalar::raw_less(rep.sup_lengths[lvl], len)) {
            rep.sup_lengths[lvl] = len;
            if (static_cast<int>(path.size()) == n_max) deepest = path;
        }
    };
    bool ok = walk_cylinders(F, n_max, digit_cap, node_budget, &rep.digit_capped, visit);
    rep.budget_exhausted = !ok;
    rep.nodes = nodes;

    for (int lvl = 1; lvl <= n_max; ++lvl) {
        if (rep.sup_lengths[static_cast<std::size_t>(lvl - 1)] < tol) {
            rep.verdict = RefinementVerdict::ShrinksBelow;
            rep.shrink_level = lvl;
            return rep;
        }
    }
    rep.verdict = RefinementVerdict::Stalled;
    rep.stalled_word = Word::complete(deepest);
    return rep;
}

}  // namespace fexlab

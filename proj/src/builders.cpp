#include "fexlab/builders.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fexlab {

namespace {

Branch finish_branch(Digit d, Interval domain, Mono mono,
                     std::function<Scalar(const Scalar&)> fwd,
                     std::function<Scalar(const Scalar&)> inv,
                     std::optional<Mobius> flt) {
    Branch br{d, domain, mono, std::move(fwd), std::move(inv),
              domain, domain, std::move(flt)};
    br.image = branch_image_of(br, br.domain);
    br.image_hull = br.image.closure();
    return br;
}

Branch affine_branch(Digit d, Interval domain, const Scalar& slope, const Scalar& offset) {
    Backend b = slope.backend();
    Mono mono = slope > Scalar::zero(b) ? Mono::TypeA : Mono::TypeB;
    std::optional<Mobius> flt;
    if (b == Backend::Rational) flt = Mobius::affine(slope.rat(), offset.rat());
    auto fwd = [slope, offset](const Scalar& x) { return slope * x + offset; };
    auto inv = [slope, offset](const Scalar& y) { return (y - offset) / slope; };
    return finish_branch(d, std::move(domain), mono, fwd, inv, flt);
}

Scalar sum_of(const std::vector<Scalar>& v, Backend b) {
    Scalar s = Scalar::zero(b);
    for (const auto& x : v) s = s + x;
    return s;
}

std::shared_ptr<Pim> build_beta(const Scalar& beta) {
    Backend b = beta.backend();
    Scalar one = Scalar::one(b);
    if (!(beta > one)) throw SpecError("beta map requires beta > 1");
    long long fl = beta.floor_ll();
    bool integral = (beta == Scalar::integer(fl, b));
    Digit dmax = integral ? fl - 1 : fl;

    std::vector<Branch> branches;
    for (Digit d = 0; d <= dmax; ++d) {
        Scalar lo = Scalar::integer(d, b) / beta;
        Scalar hi = Scalar::integer(d + 1, b) / beta;
        if (hi > one) hi = one;
        branches.push_back(affine_branch(d, Interval::half_open(lo, hi), beta,
                                         -Scalar::integer(d, b)));
    }
    std::vector<std::pair<Digit, Interval>> cells;
    for (const auto& br : branches) cells.emplace_back(br.digit, br.domain);

    PimConfig cfg;
    cfg.name = "beta(" + beta.str() + ")";
    cfg.partition = IntervalPartition::finite(std::move(cells));
    cfg.finite = true;
    cfg.branches = std::move(branches);
    cfg.type = PimKind::TypeA;
    cfg.well_ordered = true;
    cfg.surjective_hint = true;
    cfg.domain = Interval::half_open(Scalar::zero(b), one);
    return std::make_shared<Pim>(std::move(cfg));
}

std::shared_ptr<Pim> build_alpha_beta(const Scalar& alpha, const Scalar& beta) {
    Backend b = beta.backend();
    Scalar zero = Scalar::zero(b), one = Scalar::one(b);
    if (!(beta > one)) throw SpecError("alpha-beta map requires beta > 1");
    if (alpha < zero || alpha >= one)
        throw SpecError("alpha-beta map requires 0 <= alpha < 1");

    Digit d_lo = alpha.floor_ll();
    Digit d_hi = (alpha + beta).ceil_ll() - 1;
    std::vector<Branch> branches;
    for (Digit d = d_lo; d <= d_hi; ++d) {
        Scalar lo = (Scalar::integer(d, b) - alpha) / beta;
        Scalar hi = (Scalar::integer(d + 1, b) - alpha) / beta;
        if (lo < zero) lo = zero;
        if (hi > one) hi = one;
        if (!(lo < hi)) continue;
        branches.push_back(affine_branch(d, Interval::half_open(lo, hi), beta,
                                         alpha - Scalar::integer(d, b)));
    }
    std::vector<std::pair<Digit, Interval>> cells;
    for (const auto& br : branches) cells.emplace_back(br.digit, br.domain);

    PimConfig cfg;
    cfg.name = "alpha_beta(" + alpha.str() + "," + beta.str() + ")";
    cfg.partition = IntervalPartition::finite(std::move(cells));
    cfg.finite = true;
    cfg.branches = std::move(branches);
    cfg.type = PimKind::TypeA;
    cfg.well_ordered = true;
    cfg.surjective_hint = true;
    cfg.domain = Interval::half_open(zero, one);
    return std::make_shared<Pim>(std::move(cfg));
}

std::shared_ptr<Pim> build_gauss(const Scalar& r) {
    Backend b = r.backend();
    Scalar zero = Scalar::zero(b), one = Scalar::one(b);
    if (r < one) throw SpecError("gauss map requires r >= 1");
    Digit d_min = r.floor_ll();

    auto cell_of = [r, d_min, b, zero, one](Digit d) -> std::optional<Interval> {
        if (d < d_min) return std::nullopt;
        Scalar lo = r / Scalar::integer(d + 1, b);
        Scalar hi = r / Scalar::integer(d, b);
        if (hi >= one) return Interval::open(lo, one);
        return Interval(lo, hi, Kind::Open, Kind::Closed);
    };
    LazyCells rule;
    rule.cell = cell_of;
    rule.locate = [r, zero, one](const Scalar& x) -> std::optional<Digit> {
        if (x <= zero || x >= one) return std::nullopt;
        return (r / x).floor_ll();
    };
    rule.next = [d_min](std::optional<Digit> d) -> std::optional<Digit> {
        return d ? *d + 1 : d_min;
    };

    auto make_branch = [r, b, cell_of](Digit d) -> std::optional<Branch> {
        auto dom = cell_of(d);
        if (!dom) return std::nullopt;
        Scalar sd = Scalar::integer(d, b);
        std::optional<Mobius> flt;
        if (b == Backend::Rational)
            flt = Mobius{Rational(-d), r.rat(), Rational(1), Rational(0)};
        auto fwd = [r, sd](const Scalar& x) { return r / x - sd; };
        auto inv = [r, sd](const Scalar& y) { return r / (y + sd); };
        return finish_branch(d, *dom, Mono::TypeB, fwd, inv, flt);
    };

    PimConfig cfg;
    cfg.name = "gauss(" + r.str() + ")";
    cfg.partition = IntervalPartition::lazy(std::move(rule), b);
    cfg.finite = false;
    cfg.make_branch = make_branch;
    cfg.type = PimKind::TypeB;
    cfg.well_ordered = true;
    cfg.surjective_hint = true;
    cfg.domain = Interval::half_open(zero, one);
    return std::make_shared<Pim>(std::move(cfg));
}

std::shared_ptr<Pim> build_quadratic(double r) {
    // q(x) = 4rx(1-x) restricted to [q(r), r], renormalized.  The lower
    // parameter bound s is taken as 0.8.
    if (!(r > 0.8 && r <= 1.0)) throw SpecError("quadratic map requires 0.8 < r <= 1");
    double c0 = -4 * r * (1 - r - 4 * r * r + 4 * r * r * r);
    double c1 = 4 * r * (1 - 8 * r * r + 8 * r * r * r);
    double c2 = -4 * r * r * (1 - 2 * r) * (1 - 2 * r);
    double m = -c1 / (2 * c2);  // vertex = partition point

    auto fwd = [c0, c1, c2](const Scalar& x) {
        double t = x.flt();
        return Scalar::floating(c0 + t * (c1 + t * c2));
    };
    auto root = [c0, c1, c2](double y, int sign) {
        double disc = c1 * c1 - 4 * c2 * (c0 - y);
        if (disc < 0) disc = 0;
        return (-c1 + sign * std::sqrt(disc)) / (2 * c2);
    };
    auto inv_a = [root](const Scalar& y) { return Scalar::floating(root(y.flt(), +1)); };
    auto inv_b = [root](const Scalar& y) { return Scalar::floating(root(y.flt(), -1)); };

    Scalar zero = Scalar::floating(0), one = Scalar::floating(1), sm = Scalar::floating(m);
    std::vector<Branch> branches;
    branches.push_back(
        finish_branch(0, Interval::half_open(zero, sm), Mono::TypeA, fwd, inv_a, std::nullopt));
    branches.push_back(
        finish_branch(1, Interval::closed(sm, one), Mono::TypeB, fwd, inv_b, std::nullopt));
    std::vector<std::pair<Digit, Interval>> cells;
    for (const auto& br : branches) cells.emplace_back(br.digit, br.domain);

    PimConfig cfg;
    cfg.name = "quadratic(" + Scalar::floating(r).str() + ")";
    cfg.partition = IntervalPartition::finite(std::move(cells));
    cfg.finite = true;
    cfg.branches = std::move(branches);
    cfg.type = PimKind::Mixed;
    cfg.well_ordered = true;
    cfg.surjective_hint = true;
    cfg.domain = Interval::closed(zero, one);
    return std::make_shared<Pim>(std::move(cfg));
}

std::shared_ptr<Pim> build_tent(double tau) {
    if (!(tau > 1.0 && tau <= 2.0)) throw SpecError("tent map requires 1 < tau <= 2");
    Scalar zero = Scalar::floating(0), one = Scalar::floating(1);
    Scalar st = Scalar::floating(tau), split = Scalar::floating(1.0 / tau);
    std::vector<Branch> branches;
    branches.push_back(affine_branch(0, Interval::half_open(zero, split), st, zero));
    branches.push_back(
        affine_branch(1, Interval::half_open(split, one), -st, Scalar::floating(2)));
    std::vector<std::pair<Digit, Interval>> cells;
    for (const auto& br : branches) cells.emplace_back(br.digit, br.domain);

    PimConfig cfg;
    cfg.name = "tent(" + Scalar::floating(tau).str() + ")";
    cfg.partition = IntervalPartition::finite(std::move(cells));
    cfg.finite = true;
    cfg.branches = std::move(branches);
    cfg.type = PimKind::Mixed;
    cfg.well_ordered = true;
    cfg.surjective_hint = true;
    cfg.domain = Interval::half_open(zero, one);
    return std::make_shared<Pim>(std::move(cfg));
}

// Cantor-set gaps indexed breadth first: index m >= 1 has binary heap
// position (level n = bit length of m, offset j = m - 2^(n-1)) and denotes
// the gap of length 3^-n at the dyadic rational (2j+1)/2^n.
struct CantorGap {
    Rational lo;
    int level;
};

CantorGap cantor_gap(Digit m) {
    int n = 0;
    while ((Digit(1) << n) <= m) ++n;
    Digit j = m - (Digit(1) << (n - 1));
    Rational lo(0), p3(1);
    for (int i = n - 2; i >= 0; --i) {
        p3 /= 3;
        if ((j >> i) & 1) lo += 2 * p3;
    }
    p3 /= 3;
    lo += p3;
    return {lo, n};
}

std::shared_ptr<Pim> build_cantor() {
    Backend b = Backend::Rational;
    Scalar zero = Scalar::zero(b), one = Scalar::one(b);

    auto cell_of = [](Digit m) -> std::optional<Interval> {
        if (m < 1 || m > (Digit(1) << 60)) return std::nullopt;
        CantorGap g = cantor_gap(m);
        Rational width = 1;
        for (int i = 0; i < g.level; ++i) width /= 3;
        return Interval::open(Scalar::rational(g.lo), Scalar::rational(g.lo + width));
    };
    LazyCells rule;
    rule.cell = cell_of;
    rule.locate = [](const Scalar& x) -> std::optional<Digit> {
        // Ternary walk; x lies in a gap iff some iterate of y -> 3y (wod the
        // outer thirds) lands strictly inside the middle third.
        Rational y = x.rat();
        if (y <= 0 || y >= 1) return std::nullopt;
        Rational third(1, 3), two_thirds(2, 3);
        Digit j = 0;
        int n = 1;
        std::set<Rational> seen;
        while (n <= 60) {
            if (y > third && y < two_thirds) return (Digit(1) << (n - 1)) + j;
            if (y == third || y == two_thirds) return std::nullopt;
            if (!seen.insert(y).second) return std::nullopt;  // periodic: in the Cantor set
            if (y < third) {
                j = 2 * j;
                y *= 3;
            } else {
                j = 2 * j + 1;
                y = 3 * y - 2;
            }
            ++n;
        }
        return std::nullopt;
    };
    rule.next = [](std::optional<Digit> d) -> std::optional<Digit> {
        return d ? *d + 1 : 1;
    };

    auto make_branch = [cell_of](Digit m) -> std::optional<Branch> {
        auto dom = cell_of(m);
        if (!dom) return std::nullopt;
        Scalar slope = Scalar::one(Backend::Rational) / dom->length();
        Scalar offset = -dom->lo() * slope;
        return affine_branch(m, *dom, slope, offset);
    };

    PimConfig cfg;
    cfg.name = "cantor";
    cfg.partition = IntervalPartition::lazy(std::move(rule), b);
    cfg.finite = false;
    cfg.make_branch = make_branch;
    cfg.type = PimKind::TypeA;
    cfg.well_ordered = false;  // gap position is not monotone in the index
    cfg.surjective_hint = false;
    cfg.domain = Interval::half_open(zero, one);
    return std::make_shared<Pim>(std::move(cfg));
}

std::shared_ptr<Pim> build_luroth(const std::vector<Scalar>& lengths) {
    if (lengths.size() < 2) throw SpecError("luroth map requires at least 2 cells");
    Backend b = lengths.front().backend();
    Scalar zero = Scalar::zero(b), one = Scalar::one(b);
    for (const auto& len : lengths)
        if (!(len > zero)) throw SpecError("luroth cell lengths must be positive");
    if (sum_of(lengths, b) != one) throw SpecError("luroth cell lengths must sum to 1");

    std::vector<Branch> branches;
    Scalar cum = zero;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        Scalar lo = cum;
        cum = cum + lengths[i];
        Scalar slope = one / lengths[i];
        branches.push_back(affine_branch(static_cast<Digit>(i),
                                         Interval::half_open(lo, cum), slope, -lo * slope));
    }
    std::vector<std::pair<Digit, Interval>> cells;
    for (const auto& br : branches) cells.emplace_back(br.digit, br.domain);

    PimConfig cfg;
    cfg.name = "luroth";
    cfg.partition = IntervalPartition::finite(std::move(cells));
    cfg.finite = true;
    cfg.branches = std::move(branches);
    cfg.type = PimKind::TypeA;
    cfg.well_ordered = true;
    cfg.surjective_hint = true;
    cfg.domain = Interval::half_open(zero, one);
    return std::make_shared<Pim>(std::move(cfg));
}

bool is_prime_ll(Digit n) {
    if (n < 2) return false;
    for (Digit p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

struct EgyptianRule {
    std::function<Digit(const Rational&)> ceil_to;  // smallest a_n >= y, for y > 1
    std::function<Digit(Digit)> prev;               // a_{n-1}, with a_0 = 1
    std::function<std::optional<Digit>(std::optional<Digit>)> next;
    std::function<bool(Digit)> is_digit;
};

EgyptianRule egyptian_rule_named(const std::string& name) {
    auto ceil_of = [](const Rational& y) {
        BigInt n = numerator(y), d = denominator(y);
        BigInt q = n / d;
        if (q * d != n) q += 1;
        return static_cast<Digit>(q);
    };
    if (name == "integers") {
        return EgyptianRule{
            [ceil_of](const Rational& y) { return std::max<Digit>(2, ceil_of(y)); },
            [](Digit d) { return d == 2 ? 1 : d - 1; },
            [](std::optional<Digit> d) -> std::optional<Digit> { return d ? *d + 1 : 2; },
            [](Digit d) { return d >= 2; }};
    }
    if (name == "powers_of_two") {
        return EgyptianRule{
            [](const Rational& y) {
                Digit t = 2;
                while (Rational(t) < y) t *= 2;
                return t;
            },
            [](Digit d) { return d == 2 ? 1 : d / 2; },
            [](std::optional<Digit> d) -> std::optional<Digit> { return d ? *d * 2 : 2; },
            [](Digit d) { return d >= 2 && (d & (d - 1)) == 0; }};
    }
    if (name == "primes") {
        return EgyptianRule{
            [ceil_of](const Rational& y) {
                Digit t = std::max<Digit>(2, ceil_of(y));
                while (!is_prime_ll(t)) ++t;
                return t;
            },
            [](Digit d) {
                if (d == 2) return Digit(1);
                Digit t = d - 1;
                while (!is_prime_ll(t)) --t;
                return t;
            },
            [](std::optional<Digit> d) -> std::optional<Digit> {
                if (!d) return 2;
                Digit t = *d + 1;
                while (!is_prime_ll(t)) ++t;
                return t;
            },
            [](Digit d) { return is_prime_ll(d); }};
    }
    throw SpecError("egyptian map: unknown digit sequence '" + name + "'");
}

std::shared_ptr<Pim> build_egyptian(const std::string& rule_name) {
    EgyptianRule rule = egyptian_rule_named(rule_name);
    Backend b = Backend::Rational;
    Scalar zero = Scalar::zero(b), one = Scalar::one(b);

    auto cell_of = [rule, b](Digit d) -> std::optional<Interval> {
        if (!rule.is_digit(d)) return std::nullopt;
        Scalar lo = Scalar::rational(Rational(1, d));
        Scalar hi = Scalar::rational(Rational(1, rule.prev(d)));
        return Interval::half_open(lo, hi);
    };
    LazyCells cells;
    cells.cell = cell_of;
    cells.locate = [rule, zero, one](const Scalar& x) -> std::optional<Digit> {
        if (x <= zero || x >= one) return std::nullopt;
        return rule.ceil_to(Rational(1) / x.rat());
    };
    cells.next = rule.next;

    auto make_branch = [cell_of](Digit d) -> std::optional<Branch> {
        auto dom = cell_of(d);
        if (!dom) return std::nullopt;
        Scalar one = Scalar::one(Backend::Rational);
        return affine_branch(d, *dom, one, -dom->lo());
    };

    PimConfig cfg;
    cfg.name = "egyptian(" + rule_name + ")";
    cfg.partition = IntervalPartition::lazy(std::move(cells), b);
    cfg.finite = false;
    cfg.make_branch = make_branch;
    cfg.type = PimKind::TypeA;
    cfg.well_ordered = true;
    cfg.surjective_hint = false;  // images union to [0, 1/2) only
    cfg.domain = Interval::half_open(zero, one);
    return std::make_shared<Pim>(std::move(cfg));
}

std::shared_ptr<Pim> build_iet(const std::vector<Scalar>& lengths,
                               const std::vector<Scalar>& translations) {
    if (lengths.size() != translations.size() || lengths.size() < 2)
        throw SpecError("interval exchange requires matching lengths/translations, >= 2 cells");
    Backend b = lengths.front().backend();
    Scalar zero = Scalar::zero(b), one = Scalar::one(b);
    for (const auto& len : lengths)
        if (!(len > zero)) throw SpecError("interval exchange lengths must be positive");
    if (sum_of(lengths, b) != one)
        throw SpecError("interval exchange lengths must sum to 1");
    for (const auto& t : translations) {
        if (t.backend() != b) throw SpecError("interval exchange: mixed parameter backends");
        if (t <= -one || t >= one)
            throw SpecError("interval exchange translations must lie in (-1,1)");
    }

    std::vector<Branch> branches;
    Scalar cum = zero;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        Scalar lo = cum;
        cum = cum + lengths[i];
        branches.push_back(affine_branch(static_cast<Digit>(i),
                                         Interval::half_open(lo, cum), one, translations[i]));
    }
    // The translated cells must re-tile [0,1).
    std::vector<Interval> images;
    for (const auto& br : branches) images.push_back(br.image);
    std::sort(images.begin(), images.end(), [](const Interval& a, const Interval& c) {
        return Scalar::raw_less(a.lo(), c.lo());
    });
    Scalar cursor = zero;
    for (const auto& img : images) {
        if (img.lo() != cursor)
            throw SpecError("interval exchange: translated cells do not re-tile [0,1)");
        cursor = img.hi();
    }
    if (cursor != one)
        throw SpecError("interval exchange: translated cells do not re-tile [0,1)");

    std::vector<std::pair<Digit, Interval>> cells;
    for (const auto& br : branches) cells.emplace_back(br.digit, br.domain);

    PimConfig cfg;
    cfg.name = "interval_exchange";
    cfg.partition = IntervalPartition::finite(std::move(cells));
    cfg.finite = true;
    cfg.branches = std::move(branches);
    cfg.type = PimKind::TypeA;
    cfg.well_ordered = true;
    cfg.surjective_hint = true;
    cfg.domain = Interval::half_open(zero, one);
    return std::make_shared<Pim>(std::move(cfg));
}

std::shared_ptr<Pim> build_example_first() {
    Backend b = Backend::Rational;
    auto q = [](long long p, long long d) { return Scalar::rational(p, d); };
    std::vector<Branch> branches;
    branches.push_back(affine_branch(0, Interval::half_open(q(0, 1), q(1, 4)),
                                     q(-2, 1), q(1, 2)));
    branches.push_back(affine_branch(1, Interval::half_open(q(1, 4), q(3, 4)),
                                     q(2, 1), q(-1, 2)));
    branches.push_back(affine_branch(2, Interval::closed(q(3, 4), q(1, 1)),
                                     q(-2, 1), q(5, 2)));
    std::vector<std::pair<Digit, Interval>> cells;
    for (const auto& br : branches) cells.emplace_back(br.digit, br.domain);

    PimConfig cfg;
    cfg.name = "example_first";
    cfg.partition = IntervalPartition::finite(std::move(cells));
    cfg.finite = true;
    cfg.branches = std::move(branches);
    cfg.type = PimKind::Mixed;
    cfg.well_ordered = true;
    cfg.surjective_hint = true;
    cfg.domain = Interval::closed(Scalar::zero(b), Scalar::one(b));
    return std::make_shared<Pim>(std::move(cfg));
}

}  // namespace

PimSpec PimSpec::beta_map(Scalar beta) {
    PimSpec s;
    s.family = Family::Beta;
    s.beta = std::move(beta);
    return s;
}
PimSpec PimSpec::alpha_beta(Scalar alpha, Scalar beta) {
    PimSpec s;
    s.family = Family::AlphaBeta;
    s.alpha = std::move(alpha);
    s.beta = std::move(beta);
    return s;
}
PimSpec PimSpec::gauss(Scalar r) {
    PimSpec s;
    s.family = Family::Gauss;
    s.r = std::move(r);
    return s;
}
PimSpec PimSpec::quadratic(double r) {
    PimSpec s;
    s.family = Family::Quadratic;
    s.r = Scalar::floating(r);
    return s;
}
PimSpec PimSpec::tent(double tau) {
    PimSpec s;
    s.family = Family::Tent;
    s.tau = Scalar::floating(tau);
    return s;
}
PimSpec PimSpec::cantor() {
    PimSpec s;
    s.family = Family::Cantor;
    return s;
}
PimSpec PimSpec::luroth(std::vector<Scalar> lengths) {
    PimSpec s;
    s.family = Family::Luroth;
    s.lengths = std::move(lengths);
    return s;
}
PimSpec PimSpec::egyptian(std::string rule) {
    PimSpec s;
    s.family = Family::Egyptian;
    s.egyptian_rule = std::move(rule);
    return s;
}
PimSpec PimSpec::interval_exchange(std::vector<Scalar> lengths,
                                   std::vector<Scalar> translations) {
    PimSpec s;
    s.family = Family::IntervalExchange;
    s.lengths = std::move(lengths);
    s.translations = std::move(translations);
    return s;
}
PimSpec PimSpec::example_first() {
    PimSpec s;
    s.family = Family::ExampleFirst;
    return s;
}

std::shared_ptr<Pim> build(const PimSpec& spec) {
    using F = PimSpec::Family;
    switch (spec.family) {
        case F::Beta: return build_beta(spec.beta);
        case F::AlphaBeta: return build_alpha_beta(spec.alpha, spec.beta);
        case F::Gauss: return build_gauss(spec.r);
        case F::Quadratic: return build_quadratic(spec.r.to_double());
        case F::Tent: return build_tent(spec.tau.to_double());
        case F::Cantor: return build_cantor();
        case F::Luroth: return build_luroth(spec.lengths);
        case F::Egyptian: return build_egyptian(spec.egyptian_rule);
        case F::IntervalExchange: return build_iet(spec.lengths, spec.translations);
        case F::ExampleFirst: return build_example_first();
    }
    throw SpecError("unknown map family");
}

namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw SpecError("unknown key '" + it.key() + "' in " + where);
    }
}

bool value_needs_float(const json& v) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        return s == "golden" || s == "phi";
    }
    if (v.is_number_integer() || v.is_number_unsigned()) return false;
    if (v.is_number_float()) {
        double d = v.get<double>();
        return d != std::floor(d);
    }
    throw SpecError("parameter must be a number or a string");
}

Scalar value_to_scalar(const json& v, Backend b) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "golden" || s == "phi") {
            if (b == Backend::Rational)
                throw SpecError("'" + s + "' requires the float backend");
            return Scalar::floating((1.0 + std::sqrt(5.0)) / 2.0);
        }
        return Scalar::parse(s, b);
    }
    if (v.is_number_integer() || v.is_number_unsigned())
        return Scalar::integer(v.get<long long>(), b);
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (b == Backend::Rational) {
            if (d == std::floor(d)) return Scalar::integer(static_cast<long long>(d), b);
            throw SpecError("non-integer numeric literal on rational backend; use \"p/q\"");
        }
        return Scalar::floating(d);
    }
    throw SpecError("parameter must be a number or a string");
}

std::vector<Scalar> values_to_scalars(const json& v, Backend b) {
    if (!v.is_array()) throw SpecError("parameter must be an array");
    std::vector<Scalar> out;
    for (const auto& e : v) out.push_back(value_to_scalar(e, b));
    return out;
}

}  // namespace

PimSpec parse_pim_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw SpecError("map spec must be a JSON object");
    check_keys(j, {"kind", "params", "backend"}, "map spec");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw SpecError("map spec needs a string 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    json params = j.value("params", json::object());
    if (!params.is_object()) throw SpecError("'params' must be an object");

    std::optional<Backend> forced;
    if (j.contains("backend")) {
        std::string b = j.at("backend").get<std::string>();
        if (b == "rational")
            forced = Backend::Rational;
        else if (b == "float")
            forced = Backend::Float;
        else
            throw SpecError("backend must be \"rational\" or \"float\"");
    }

    auto pick_backend = [&](bool family_float_only, bool family_rational_only) {
        if (family_float_only) {
            if (forced == Backend::Rational)
                throw SpecError("map '" + kind + "' supports only the float backend");
            return Backend::Float;
        }
        if (family_rational_only) {
            if (forced == Backend::Float)
                throw SpecError("map '" + kind + "' supports only the rational backend");
            return Backend::Rational;
        }
        if (forced) return *forced;
        for (auto it = params.begin(); it != params.end(); ++it) {
            const json& v = it.value();
            if (v.is_array()) {
                for (const auto& e : v)
                    if (value_needs_float(e)) return Backend::Float;
            } else if (value_needs_float(v)) {
                return Backend::Float;
            }
        }
        return Backend::Rational;
    };

    if (kind == "beta") {
        check_keys(params, {"beta"}, "beta params");
        if (!params.contains("beta")) throw SpecError("beta map needs params.beta");
        Backend b = pick_backend(false, false);
        return PimSpec::beta_map(value_to_scalar(params.at("beta"), b));
    }
    if (kind == "alpha_beta") {
        check_keys(params, {"alpha", "beta"}, "alpha_beta params");
        if (!params.contains("alpha") || !params.contains("beta"))
            throw SpecError("alpha_beta map needs params.alpha and params.beta");
        Backend b = pick_backend(false, false);
        return PimSpec::alpha_beta(value_to_scalar(params.at("alpha"), b),
                                   value_to_scalar(params.at("beta"), b));
    }
    if (kind == "gauss") {
        check_keys(params, {"r"}, "gauss params");
        if (!params.contains("r")) throw SpecError("gauss map needs params.r");
        Backend b = pick_backend(false, false);
        return PimSpec::gauss(value_to_scalar(params.at("r"), b));
    }
    if (kind == "quadratic") {
        check_keys(params, {"r"}, "quadratic params");
        if (!params.contains("r")) throw SpecError("quadratic map needs params.r");
        pick_backend(true, false);
        return PimSpec::quadratic(value_to_scalar(params.at("r"), Backend::Float).flt());
    }
    if (kind == "tent") {
        check_keys(params, {"tau"}, "tent params");
        if (!params.contains("tau")) throw SpecError("tent map needs params.tau");
        pick_backend(true, false);
        return PimSpec::tent(value_to_scalar(params.at("tau"), Backend::Float).flt());
    }
    if (kind == "cantor") {
        check_keys(params, {}, "cantor params");
        pick_backend(false, true);
        return PimSpec::cantor();
    }
    if (kind == "luroth") {
        check_keys(params, {"lengths"}, "luroth params");
        if (!params.contains("lengths")) throw SpecError("luroth map needs params.lengths");
        Backend b = pick_backend(false, false);
        return PimSpec::luroth(values_to_scalars(params.at("lengths"), b));
    }
    if (kind == "egyptian") {
        check_keys(params, {"sequence"}, "egyptian params");
        pick_backend(false, true);
        return PimSpec::egyptian(params.value("sequence", std::string("integers")));
    }
    if (kind == "interval_exchange") {
        check_keys(params, {"lengths", "translations"}, "interval_exchange params");
        if (!params.contains("lengths") || !params.contains("translations"))
            throw SpecError("interval_exchange needs params.lengths and params.translations");
        Backend b = pick_backend(false, false);
        return PimSpec::interval_exchange(values_to_scalars(params.at("lengths"), b),
                                          values_to_scalars(params.at("translations"), b));
    }
    if (kind == "example_first") {
        check_keys(params, {}, "example_first params");
        pick_backend(false, true);
        return PimSpec::example_first();
    }
    throw SpecError("unknown map kind '" + kind + "'");
}

std::shared_ptr<Pim> build_from_json(const nlohmann::json& j) {
    return build(parse_pim_spec(j));
}

}  // namespace fexlab

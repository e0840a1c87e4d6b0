// End-to-end checks for the library: round trips, exact refinement norms,
// transitivity diagnostics, and shift-language decisions, each printed as one
// PASS/FAIL line.  Exits nonzero when any check fails.
#include "fexlab/builders.hpp"
#include "fexlab/representation.hpp"
#include "fexlab/shift.hpp"
#include "fexlab/transitivity.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

using namespace fexlab;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok) {
    std::printf("%d %-34s %s\n", id, what, ok ? "PASS" : "FAIL");
    if (!ok) ++failures;
}

Scalar q(long long p, long long d) { return Scalar::rational(p, d); }

Scalar random_unit_rational(std::mt19937_64& rng) {
    return Scalar::rational(Rational(BigInt(rng() >> 11), BigInt(1) << 53));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<long long> fibs(int count) {  // 1, 1, 2, 3, ...
    std::vector<long long> f{1, 1};
    while (static_cast<int>(f.size()) < count) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
    return f;
}

// 1. encode/decode round trip: the hull midpoint of the first m digits sits
//    within the level-m sup cylinder length of x.
void check_round_trip() {
    auto t0 = std::chrono::steady_clock::now();
    auto fib = fibs(44);
    bool ok = true;
    std::mt19937_64 rng(101);
    struct Case {
        std::shared_ptr<Pim> F;
        std::function<Scalar(int)> norm;
    };
    std::vector<Case> cases;
    cases.push_back({build(PimSpec::beta_map(q(2, 1))), [](int m) {
                         return Scalar::rational(Rational(1, BigInt(1) << m));
                     }});
    cases.push_back({build(PimSpec::beta_map(q(10, 1))), [](int m) {
                         BigInt p = 1;
                         for (int i = 0; i < m; ++i) p *= 10;
                         return Scalar::rational(Rational(1, p));
                     }});
    cases.push_back({build(PimSpec::gauss(q(1, 1))), [&fib](int m) {
                         return q(1, fib[static_cast<std::size_t>(m)] *
                                         fib[static_cast<std::size_t>(m + 1)]);
                     }});
    for (auto& c : cases) {
        for (int t = 0; t < 200 && ok; ++t) {
            Scalar x = random_unit_rational(rng);
            Word w = encode(*c.F, x, 40);
            if (w.digits.empty()) continue;
            int m = static_cast<int>(w.digits.size());
            Interval hull = decode(*c.F, w);
            if ((hull.midpoint() - x).abs() > c.norm(m)) ok = false;
        }
    }
    ok = ok && seconds_since(t0) < 10.0;
    report(1, "round trip within refinement norm", ok);
}

// 2. all-ones continued fraction: exact value 5/8 at depth 5; at depth 10 the
//    two seeds bracket (sqrt(5)-1)/2 within 0.05.
void check_fibonacci_expansion() {
    auto g1 = build(PimSpec::gauss(q(1, 1)));
    Word w5 = Word::complete({1, 1, 1, 1, 1});
    bool ok = f_expand(*g1, w5, 0) == q(5, 8);
    Word w10 = Word::complete(std::vector<Digit>(10, 1));
    Scalar a = f_expand(*g1, w10, 0), b = f_expand(*g1, w10, 1);
    if (b < a) std::swap(a, b);
    // t < (sqrt(5)-1)/2 iff (2t+1)^2 < 5, exactly on rationals
    auto below_golden = [](const Scalar& t) {
        Scalar s = t + t + Scalar::rational(1, 1);
        return s * s < Scalar::rational(5, 1);
    };
    ok = ok && below_golden(a) && !below_golden(b);
    ok = ok && (b - a) < q(1, 20);
    report(2, "fibonacci f-expansion brackets", ok);
}

// 3. order consistency: x < y implies the codes compare Less (or Equal).
void check_order_consistency() {
    bool ok = true;
    std::mt19937_64 rng(202);
    auto check_pair = [&ok](const Pim& F, Scalar x, Scalar y) {
        if (y < x) std::swap(x, y);
        if (x == y) return;
        Word wx = encode(F, x, 40), wy = encode(F, y, 40);
        if (!wx.complete_p() || !wy.complete_p()) return;
        auto v = flip_lex_compare(F, wx, wy);
        if (v != FlipLex::Less && v != FlipLex::Equal) ok = false;
    };

    auto b2 = build(PimSpec::beta_map(q(2, 1)));
    auto ex = build(PimSpec::example_first());
    for (int t = 0; t < 500; ++t) check_pair(*b2, random_unit_rational(rng), random_unit_rational(rng));
    for (int t = 0; t < 500; ++t) check_pair(*ex, random_unit_rational(rng), random_unit_rational(rng));

    // Gauss points with guaranteed 40 complete digits: values of random
    // 45-digit continued fractions
    auto g1 = build(PimSpec::gauss(q(1, 1)));
    auto random_cf = [&rng, &g1]() {
        std::vector<Digit> d;
        for (int i = 0; i < 45; ++i) d.push_back(1 + static_cast<Digit>(rng() % 9));
        return f_expand(*g1, Word::complete(d), 0);
    };
    for (int t = 0; t < 500; ++t) check_pair(*g1, random_cf(), random_cf());

    auto tent = build(PimSpec::tent(2.0));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 500; ++t)
        check_pair(*tent, Scalar::floating(u(rng)), Scalar::floating(u(rng)));
    report(3, "flip-lex matches numeric order", ok);
}

// 4. dyadic refinement norms are exactly 2^-n up to level 20.
void check_exact_refinement() {
    auto b2 = build(PimSpec::beta_map(q(2, 1)));
    auto rep = refinement_norm(*b2, 20, q(0, 1), 2, 4200000);
    bool ok = !rep.budget_exhausted && rep.sup_lengths.size() == 20;
    for (int n = 1; ok && n <= 20; ++n)
        ok = rep.sup_lengths[static_cast<std::size_t>(n - 1)] ==
             Scalar::rational(Rational(1, BigInt(1) << n));
    report(4, "dyadic refinement norm exact", ok);
}

// 5. folded 3-branch map: forward images of (1/8,3/8) never meet (5/8,7/8),
//    backward orbit of 1/2 is dense, backward orbit of 1/3 is blocked.
void check_folded_map_halves() {
    auto t0 = std::chrono::steady_clock::now();
    auto ex = build(PimSpec::example_first());
    auto bad = Interval::open(q(5, 8), q(7, 8));
    std::vector<Interval> parts{Interval::open(q(1, 8), q(3, 8))};
    bool ok = true;
    for (int nstep = 1; nstep <= 20 && ok; ++nstep) {
        std::vector<Interval> next;
        for (const auto& piece : parts) {
            auto img = ex->image_of_interval(piece, 100);
            if (img.truncated) ok = false;
            for (const auto& i : img.intervals) next.push_back(i);
        }
        parts = std::move(next);
        for (const auto& piece : parts)
            if (intersect(piece, bad).has_value()) ok = false;
    }
    auto dense = ptt_estimate(*ex, q(1, 2), 12, 100, 2000000, q(1, 100));
    ok = ok && dense.dense;
    auto blocked = ptt_estimate(*ex, q(1, 3), 12, 100, 2000000, q(1, 4));
    ok = ok && !blocked.dense;
    ok = ok && seconds_since(t0) < 5.0;
    report(5, "blocked forward, dense backward", ok);
}

// 6. greedy unit-fraction map: orbits strictly decrease, the backward orbit
//    of 0 is dense, no forward orbit is.
void check_unit_fraction_map() {
    auto eg = build(PimSpec::egyptian("integers"));
    bool ok = true;
    std::mt19937_64 rng(303);
    std::vector<Scalar> samples;
    while (samples.size() < 100) {
        // modest denominators keep the greedy expansions desk-sized
        long long den = 2 + static_cast<long long>(rng() % 9998);
        long long num = 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(den - 1));
        samples.push_back(Scalar::rational(num, den));
    }
    for (const auto& x : samples) {
        auto orb = forward_orbit(*eg, x, 1000);
        for (std::size_t k = 1; k < orb.size(); ++k)
            if (!(orb[k] < orb[k - 1])) ok = false;
    }
    auto back = ptt_estimate(*eg, q(0, 1), 8, 40, 500000, q(1, 20));
    ok = ok && back.dense;
    for (int t = 0; t < 10; ++t) {
        auto fwd = tt_estimate(*eg, samples[static_cast<std::size_t>(t)], 1000, q(1, 10));
        if (fwd.dense) ok = false;
    }
    report(6, "unit fractions decay, spread back", ok);
}

// 7. language transitivity: known verdicts, and the follower-graph decision
//    agrees with the bounded connector search on random small SFTs.
void check_shift_decisions() {
    bool ok = true;
    auto full = LanguageOracle::from_sft(validate_sft(Sft{{0, 1}, {}}));
    ok = ok && is_tt_language(full, 6).kind == TtVerdict::Kind::True;
    auto golden = LanguageOracle::from_sft(validate_sft(Sft{{0, 1}, {{1, 1}}}));
    ok = ok && is_tt_language(golden, 6).kind == TtVerdict::Kind::True;
    auto paired = LanguageOracle::from_sft(
        validate_sft(Sft{{1, 2, -1, -2}, {{-1, 1}, {-1, 2}, {-2, 1}, {-2, 2}}}));
    auto pv = is_tt_language(paired, 6);
    ok = ok && pv.kind == TtVerdict::Kind::FalseWitness && pv.v == SymbolWord{-1};

    std::mt19937_64 rng(404);
    for (int t = 0; t < 10; ++t) {
        int nsym = 2 + static_cast<int>(rng() % 2);
        Sft s;
        for (int a = 0; a < nsym; ++a) s.alphabet.push_back(a);
        int nforb = static_cast<int>(rng() % 4);
        for (int f = 0; f < nforb; ++f) {
            SymbolWord w;
            int len = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < len; ++i)
                w.push_back(static_cast<Symbol>(rng() % static_cast<unsigned>(nsym)));
            s.forbidden.push_back(std::move(w));
        }
        auto L = LanguageOracle::from_sft(validate_sft(std::move(s)));
        bool graph_tt = is_tt_language(L, 6).kind == TtVerdict::Kind::True;
        if (graph_tt != exhaustive_vcw(L, 6, nullptr, nullptr)) ok = false;
    }
    report(7, "shift transitivity decisions", ok);
}

// 8. golden beta map: admissible words are exactly the golden-mean SFT
//    language, with Fibonacci counts.
void check_beta_shift_agreement() {
    double phi = (1 + std::sqrt(5.0)) / 2;
    auto F = build(PimSpec::beta_map(Scalar::floating(phi)));
    auto S = LanguageOracle::from_sft(validate_sft(Sft{{0, 1}, {{1, 1}}}));
    auto fib = fibs(14);
    bool ok = true;
    for (int n = 1; n <= 10; ++n) {
        auto words = admissible_words(*F, n, 100);
        ok = ok && static_cast<long long>(words.size()) == fib[static_cast<std::size_t>(n + 1)];
        std::function<void(SymbolWord&)> gen = [&](SymbolWord& cur) {
            if (static_cast<int>(cur.size()) == n) {
                bool in_map = false;
                for (const auto& w : words)
                    if (std::vector<Symbol>(w.digits.begin(), w.digits.end()) == cur)
                        in_map = true;
                if (in_map != S.contains(cur)) ok = false;
                return;
            }
            for (Symbol a : {0, 1}) {
                cur.push_back(a);
                gen(cur);
                cur.pop_back();
            }
        };
        SymbolWord cur;
        gen(cur);
    }
    report(8, "beta shift equals golden mean sft", ok);
}

// 9. irrational rotation: the orbit of 0 is 0.01-dense and visits the first
//    cell with frequency close to its length.
void check_rotation_transitivity() {
    double alpha = std::sqrt(2.0) - 1.0;
    auto rot = build(PimSpec::interval_exchange(
        {Scalar::floating(alpha), Scalar::floating(1.0 - alpha)},
        {Scalar::floating(1.0 - alpha), Scalar::floating(-alpha)}));
    int n = 5000;
    auto rep = tt_estimate(*rot, Scalar::floating(0.0), n, Scalar::floating(0.01));
    bool ok = rep.dense && !rep.orbit_terminated;
    auto orb = forward_orbit(*rot, Scalar::floating(0.0), n - 1);
    long long zeros = 0;
    for (const auto& x : orb)
        if (x.to_double() < alpha) ++zeros;
    double freq = static_cast<double>(zeros) / static_cast<double>(orb.size());
    ok = ok && std::fabs(freq - alpha) < 0.01;
    report(9, "rotation orbit equidistributes", ok);
}

}  // namespace

int main() {
    check_round_trip();
    check_fibonacci_expansion();
    check_order_consistency();
    check_exact_refinement();
    check_folded_map_halves();
    check_unit_fraction_map();
    check_shift_decisions();
    check_beta_shift_agreement();
    check_rotation_transitivity();
    return failures == 0 ? 0 : 1;
}

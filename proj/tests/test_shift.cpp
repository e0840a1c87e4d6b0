#include <doctest.h>

#include "fexlab/builders.hpp"
#include "fexlab/representation.hpp"
#include "fexlab/shift.hpp"

#include <cmath>

using namespace fexlab;

namespace {
Sft golden_mean() { return validate_sft(Sft{{0, 1}, {{1, 1}}}); }
Sft full_two() { return validate_sft(Sft{{0, 1}, {}}); }
Sft paired() {  // barred symbols may not precede unbarred ones
    return validate_sft(Sft{{1, 2, -1, -2}, {{-1, 1}, {-1, 2}, {-2, 1}, {-2, 2}}});
}

int count_words(const LanguageOracle& L, int n) {
    int total = 0;
    std::function<void(SymbolWord&)> gen = [&](SymbolWord& cur) {
        if (static_cast<int>(cur.size()) == n) {
            if (L.contains(cur)) ++total;
            return;
        }
        for (Symbol a : L.alphabet()) {
            cur.push_back(a);
            gen(cur);
            cur.pop_back();
        }
    };
    SymbolWord cur;
    gen(cur);
    return total;
}
}  // namespace

TEST_CASE("sft validation and json parsing") {
    CHECK_THROWS_AS(validate_sft(Sft{{0, 0}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_sft(Sft{{0}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_sft(Sft{{0, 1}, {{2}}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_sft(Sft{{0, 1}, {{}}}), std::invalid_argument);

    auto s = parse_sft(nlohmann::json::parse(R"({"alphabet":[0,1],"forbidden":[[1,1]]})"));
    CHECK(s.alphabet == std::vector<Symbol>{0, 1});
    REQUIRE(s.forbidden.size() == 1);
    CHECK(s.forbidden[0] == SymbolWord{1, 1});
    CHECK_THROWS_AS(parse_sft(nlohmann::json::parse(R"({"alphabet":[0,1],"banned":[]})")),
                    std::invalid_argument);
    CHECK(sft_to_json(s).at("alphabet").size() == 2);
    CHECK(symbol_word_str({1, -2, 0}) == "1 -2 0");
}

TEST_CASE("language membership for sft oracles") {
    auto L = LanguageOracle::from_sft(golden_mean());
    CHECK(L.exact());
    CHECK(L.contains({}));
    CHECK(L.contains({1, 0, 1}));
    CHECK_FALSE(L.contains({1, 1}));
    CHECK_FALSE(L.contains({0, 1, 1, 0}));
    CHECK_THROWS_AS(L.contains({2}), std::invalid_argument);

    // words must stay right-extendable: after a 0 here nothing can follow
    auto D = LanguageOracle::from_sft(validate_sft(Sft{{0, 1}, {{0, 0}, {0, 1}}}));
    CHECK_FALSE(D.contains({0}));
    CHECK(D.contains({1}));
    CHECK(D.contains({1, 0}) == false);  // 0 still leads nowhere
    REQUIRE(D.graph().vertices.size() == 1);
    CHECK(D.graph().vertices[0] == SymbolWord{1});
}

TEST_CASE("golden mean word counts follow the fibonacci numbers") {
    auto L = LanguageOracle::from_sft(golden_mean());
    int fib[9] = {1, 1, 2, 3, 5, 8, 13, 21, 34};
    for (int n = 1; n <= 6; ++n) CHECK(count_words(L, n) == fib[n + 1]);
}

TEST_CASE("languages are factor closed") {
    for (auto s : {golden_mean(), paired()}) {
        auto L = LanguageOracle::from_sft(s);
        std::function<void(SymbolWord&)> gen = [&](SymbolWord& cur) {
            if (cur.size() == 5) {
                if (!L.contains(cur)) return;
                for (std::size_t i = 0; i < cur.size(); ++i)
                    for (std::size_t j = i; j < cur.size(); ++j)
                        CHECK(L.contains(SymbolWord(cur.begin() + static_cast<long>(i),
                                                    cur.begin() + static_cast<long>(j) + 1)));
                return;
            }
            for (Symbol a : L.alphabet()) {
                cur.push_back(a);
                gen(cur);
                cur.pop_back();
            }
        };
        SymbolWord cur;
        gen(cur);
    }
}

TEST_CASE("topological transitivity of sft languages") {
    auto full = is_tt_language(LanguageOracle::from_sft(full_two()), 6);
    CHECK(full.kind == TtVerdict::Kind::True);

    auto gm = is_tt_language(LanguageOracle::from_sft(golden_mean()), 6);
    CHECK(gm.kind == TtVerdict::Kind::True);

    auto p = is_tt_language(LanguageOracle::from_sft(paired()), 6);
    CHECK(p.kind == TtVerdict::Kind::FalseWitness);
    CHECK(p.v == SymbolWord{-1});
    CHECK(p.w == SymbolWord{1});

    // once a 1 appears no 0 may follow, so {1} cannot be connected to {0}
    auto mono = is_tt_language(LanguageOracle::from_sft(validate_sft(Sft{{0, 1}, {{1, 0}}})), 6);
    CHECK(mono.kind == TtVerdict::Kind::FalseWitness);
    CHECK(mono.v == SymbolWord{1});
    CHECK(mono.w == SymbolWord{0});

    auto two = two_sided_tt_equiv(LanguageOracle::from_sft(golden_mean()), 6);
    CHECK(two.one_sided.kind == TtVerdict::Kind::True);
    CHECK(two.applies_to_natural_extension);
}

TEST_CASE("graph decision agrees with the bounded connector search") {
    std::vector<Sft> cases = {golden_mean(), full_two(), paired(),
                              validate_sft(Sft{{0, 1}, {{1, 0}}}),
                              validate_sft(Sft{{0, 1, 2}, {{0, 2}, {2, 0}}}),
                              validate_sft(Sft{{0, 1}, {{1, 1, 1}}})};
    for (const auto& s : cases) {
        auto L = LanguageOracle::from_sft(s);
        bool graph_tt = is_tt_language(L, 6).kind == TtVerdict::Kind::True;
        CHECK(graph_tt == exhaustive_vcw(L, 6, nullptr, nullptr));
    }
}

TEST_CASE("map-backed oracles answer by cylinder nonemptiness") {
    double phi = (1 + std::sqrt(5.0)) / 2;
    auto F = std::shared_ptr<const Pim>(build(PimSpec::beta_map(Scalar::floating(phi))));
    auto L = LanguageOracle::from_pim(F, 100);
    CHECK_FALSE(L.exact());
    CHECK(L.alphabet() == std::vector<Symbol>{0, 1});
    CHECK(L.contains({1, 0, 1}));
    CHECK_FALSE(L.contains({1, 1}));
    CHECK_THROWS_AS(L.graph(), std::logic_error);

    auto tt = is_tt_language(L, 4);
    CHECK(tt.kind == TtVerdict::Kind::True);

    // words admitted by the map oracle and the golden mean sft coincide
    auto S = LanguageOracle::from_sft(golden_mean());
    std::function<void(SymbolWord&)> gen = [&](SymbolWord& cur) {
        if (cur.size() == 6) {
            CHECK(L.contains(cur) == S.contains(cur));
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

TEST_CASE("admissible words are the nonempty cylinders in flip-lex order") {
    double phi = (1 + std::sqrt(5.0)) / 2;
    auto F = build(PimSpec::beta_map(Scalar::floating(phi)));
    auto words = admissible_words(*F, 3, 100);
    REQUIRE(words.size() == 5);
    CHECK(words[0].digits == std::vector<Digit>{0, 0, 0});
    CHECK(words[1].digits == std::vector<Digit>{0, 0, 1});
    CHECK(words[2].digits == std::vector<Digit>{0, 1, 0});
    CHECK(words[3].digits == std::vector<Digit>{1, 0, 0});
    CHECK(words[4].digits == std::vector<Digit>{1, 0, 1});

    // encodings of points are admissible words of the same map
    auto all4 = admissible_words(*F, 4, 100);
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        Word w = encode(*F, Scalar::floating(x), 4);
        REQUIRE(w.complete_p());
        bool found = false;
        for (const auto& a : all4)
            if (a.digits == w.digits) found = true;
        CHECK(found);
    }
}

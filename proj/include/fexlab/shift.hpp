#ifndef FEXLAB_SHIFT_HPP
#define FEXLAB_SHIFT_HPP

#include "fexlab/pim.hpp"
#include "fexlab/word.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace fexlab {

using Symbol = long long;
using SymbolWord = std::vector<Symbol>;

/// A subshift of finite type: all one-sided sequences over the alphabet that
/// avoid every forbidden factor.  Negative symbols render with a trailing
/// apostrophe (1' for the barred 1).
struct Sft {
    std::vector<Symbol> alphabet;
    std::vector<SymbolWord> forbidden;
};

Sft validate_sft(Sft s);
Sft parse_sft(const nlohmann::json& j);
nlohmann::json sft_to_json(const Sft& s);
std::string symbol_str(Symbol s);
std::string symbol_word_str(const SymbolWord& w);

/// Transition structure on the admissible windows of width m (m = longest
/// forbidden word minus one, at least 1), trimmed to right-extendable windows.
struct FollowerGraph {
    int window = 1;                    // m
    std::vector<SymbolWord> vertices;  // surviving windows, deterministic order
    std::vector<std::vector<int>> adjacency;
};

/// Membership test for finite words in the language of a subshift, backed
/// either by an SFT presentation (exact) or by cylinder nonemptiness of a
/// piecewise interval map (digits capped).
class LanguageOracle {
public:
    static LanguageOracle from_sft(Sft s);
    static LanguageOracle from_pim(std::shared_ptr<const Pim> F, Digit digit_cap);

    bool exact() const { return sft_.has_value(); }
    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    bool alphabet_truncated() const { return alphabet_truncated_; }
    const FollowerGraph& graph() const;

    /// True iff w extends to a point of the subshift (no forbidden factor and
    /// right-extendable for SFTs; nonempty cylinder for maps).
    bool contains(const SymbolWord& w) const;

private:
    LanguageOracle() = default;
    std::optional<Sft> sft_;
    std::optional<FollowerGraph> graph_;
    std::shared_ptr<const Pim> pim_;
    Digit digit_cap_ = 0;
    std::vector<Symbol> alphabet_;
    bool alphabet_truncated_ = false;
};

struct TtVerdict {
    enum class Kind { True, FalseWitness, UnknownUpTo };
    Kind kind = Kind::UnknownUpTo;
    SymbolWord v, w;  // witness pair for FalseWitness / unresolved pair
    int max_len = 0;
};

/// Decides whether for all v,w in the language some connector c makes vcw a
/// language word.  Exact (follower-graph strong connectivity) for SFT
/// oracles; a length-bounded search otherwise, Unknown when a pair fails.
TtVerdict is_tt_language(const LanguageOracle& L, int max_len);

/// The bounded forall-v,w exists-c check itself, connectors tried by length
/// then lexicographic alphabet order.  first_fail receives the first pair
/// with no connector within max_len.
bool exhaustive_vcw(const LanguageOracle& L, int max_len, SymbolWord* fail_v,
                    SymbolWord* fail_w);

struct TwoSidedVerdict {
    TtVerdict one_sided;
    bool applies_to_natural_extension = true;  // same language, same verdict
};

TwoSidedVerdict two_sided_tt_equiv(const LanguageOracle& L, int max_len);

/// All length-n words with nonempty cylinders, sorted flip-lexicographically.
std::vector<Word> admissible_words(const Pim& F, int n, Digit digit_cap,
                                   std::uint64_t node_budget = 1000000,
                                   bool* truncated = nullptr);

}  // namespace fexlab

#endif

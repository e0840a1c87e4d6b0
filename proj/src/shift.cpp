#include "fexlab/shift.hpp"

#include "fexlab/representation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fexlab {

std::string symbol_str(Symbol s) { return std::to_string(s); }

std::string symbol_word_str(const SymbolWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += symbol_str(w[i]);
    }
    return out;
}

Sft validate_sft(Sft s) {
    std::set<Symbol> seen(s.alphabet.begin(), s.alphabet.end());
    if (seen.size() != s.alphabet.size())
        throw std::invalid_argument("sft: duplicate alphabet symbols");
    if (s.alphabet.size() < 2)
        throw std::invalid_argument("sft: alphabet needs at least 2 symbols");
    for (const auto& w : s.forbidden) {
        if (w.empty()) throw std::invalid_argument("sft: empty forbidden word");
        for (Symbol c : w)
            if (!seen.count(c))
                throw std::invalid_argument("sft: forbidden word uses unknown symbol " +
                                            symbol_str(c));
    }
    return s;
}

Sft parse_sft(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("sft spec must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "alphabet" && it.key() != "forbidden")
            throw std::invalid_argument("sft spec: unknown key '" + it.key() + "'");
    if (!j.contains("alphabet") || !j.at("alphabet").is_array())
        throw std::invalid_argument("sft spec needs an 'alphabet' array");
    Sft s;
    for (const auto& a : j.at("alphabet")) s.alphabet.push_back(a.get<Symbol>());
    if (j.contains("forbidden")) {
        if (!j.at("forbidden").is_array())
            throw std::invalid_argument("sft spec: 'forbidden' must be an array of arrays");
        for (const auto& fw : j.at("forbidden")) {
            SymbolWord w;
            for (const auto& c : fw) w.push_back(c.get<Symbol>());
            s.forbidden.push_back(std::move(w));
        }
    }
    return validate_sft(std::move(s));
}

nlohmann::json sft_to_json(const Sft& s) {
    return nlohmann::json{{"alphabet", s.alphabet}, {"forbidden", s.forbidden}};
}

namespace {

bool has_forbidden_factor(const SymbolWord& w, const std::vector<SymbolWord>& forbidden) {
    for (const auto& f : forbidden) {
        if (f.size() > w.size()) continue;
        for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
            if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(i)))
                return true;
    }
    return false;
}

FollowerGraph build_follower_graph(const Sft& s) {
    FollowerGraph g;
    std::size_t maxlen = 1;
    for (const auto& f : s.forbidden) maxlen = std::max(maxlen, f.size());
    g.window = std::max<int>(1, static_cast<int>(maxlen) - 1);
    int m = g.window;

    // all locally admissible width-m windows, lexicographic by alphabet order
    std::vector<SymbolWord> windows;
    SymbolWord cur;
    std::function<void()> gen = [&]() {
        if (static_cast<int>(cur.size()) == m) {
            if (!has_forbidden_factor(cur, s.forbidden)) windows.push_back(cur);
            return;
        }
        for (Symbol a : s.alphabet) {
            cur.push_back(a);
            gen();
            cur.pop_back();
        }
    };
    gen();

    std::map<SymbolWord, int> index;
    for (std::size_t i = 0; i < windows.size(); ++i)
        index[windows[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> adj(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        SymbolWord block = windows[i];
        for (Symbol a : s.alphabet) {
            block.push_back(a);
            if (!has_forbidden_factor(block, s.forbidden)) {
                SymbolWord nxt(block.begin() + 1, block.end());
                auto it = index.find(nxt);
                if (it != index.end()) adj[i].push_back(it->second);
            }
            block.pop_back();
        }
    }

    // trim vertices that cannot be extended forever
    std::vector<char> alive(windows.size(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < windows.size(); ++i) {
            if (!alive[i]) continue;
            bool any = false;
            for (int j : adj[i])
                if (alive[static_cast<std::size_t>(j)]) any = true;
            if (!any) {
                alive[i] = 0;
                changed = true;
            }
        }
    }
    std::vector<int> remap(windows.size(), -1);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (!alive[i]) continue;
        remap[i] = static_cast<int>(g.vertices.size());
        g.vertices.push_back(windows[i]);
    }
    g.adjacency.resize(g.vertices.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (!alive[i]) continue;
        for (int j : adj[i])
            if (remap[static_cast<std::size_t>(j)] >= 0)
                g.adjacency[static_cast<std::size_t>(remap[i])].push_back(
                    remap[static_cast<std::size_t>(j)]);
    }
    return g;
}

}  // namespace

LanguageOracle LanguageOracle::from_sft(Sft s) {
    LanguageOracle L;
    L.sft_ = validate_sft(std::move(s));
    L.alphabet_ = L.sft_->alphabet;
    L.graph_ = build_follower_graph(*L.sft_);
    return L;
}

LanguageOracle LanguageOracle::from_pim(std::shared_ptr<const Pim> F, Digit digit_cap) {
    LanguageOracle L;
    L.pim_ = std::move(F);
    L.digit_cap_ = digit_cap;
    for (Digit d : L.pim_->digits_up_to(digit_cap, &L.alphabet_truncated_))
        L.alphabet_.push_back(d);
    return L;
}

const FollowerGraph& LanguageOracle::graph() const {
    if (!graph_) throw std::logic_error("LanguageOracle: no follower graph for map oracles");
    return *graph_;
}

bool LanguageOracle::contains(const SymbolWord& w) const {
    for (Symbol c : w)
        if (std::find(alphabet_.begin(), alphabet_.end(), c) == alphabet_.end())
            throw std::invalid_argument("language_contains: unknown symbol " + symbol_str(c));
    if (w.empty()) return true;
    if (sft_) {
        if (has_forbidden_factor(w, sft_->forbidden)) return false;
        std::size_t m = static_cast<std::size_t>(graph_->window);
        if (w.size() >= m) {
            SymbolWord last(w.end() - static_cast<long>(m), w.end());
            for (const auto& v : graph_->vertices)
                if (v == last) return true;
            return false;
        }
        for (const auto& v : graph_->vertices)
            if (std::equal(w.begin(), w.end(), v.begin())) return true;
        return false;
    }
    return cylinder(*pim_, Word::complete(w)).has_value();
}

namespace {

std::vector<char> reachable_from(const FollowerGraph& g, int start) {
    std::vector<char> seen(g.vertices.size(), 0);
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.adjacency[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

std::vector<SymbolWord> language_words_up_to(const LanguageOracle& L, int max_len) {
    // the language is factor-closed, so only extend words already inside it
    std::vector<SymbolWord> out;
    SymbolWord cur;
    std::function<void()> gen = [&]() {
        if (static_cast<int>(cur.size()) == max_len) return;
        for (Symbol a : L.alphabet()) {
            cur.push_back(a);
            if (L.contains(cur)) {
                out.push_back(cur);
                gen();
            }
            cur.pop_back();
        }
    };
    gen();
    return out;
}

bool has_connector(const LanguageOracle& L, const SymbolWord& v, const SymbolWord& w,
                   int max_len) {
    SymbolWord probe = v;
    std::function<bool(int)> try_c = [&](int remaining) -> bool {
        if (remaining == 0) {
            std::size_t base = probe.size();
            probe.insert(probe.end(), w.begin(), w.end());
            bool ok = L.contains(probe);
            probe.resize(base);
            return ok;
        }
        for (Symbol a : L.alphabet()) {
            probe.push_back(a);
            bool ok = try_c(remaining - 1);
            probe.pop_back();
            if (ok) return true;
        }
        return false;
    };
    for (int len = 0; len <= max_len; ++len)
        if (try_c(len)) return true;
    return false;
}

}  // namespace

bool exhaustive_vcw(const LanguageOracle& L, int max_len, SymbolWord* fail_v,
                    SymbolWord* fail_w) {
    auto words = language_words_up_to(L, max_len);
    for (const auto& v : words) {
        for (const auto& w : words) {
            if (!has_connector(L, v, w, max_len)) {
                if (fail_v) *fail_v = v;
                if (fail_w) *fail_w = w;
                return false;
            }
        }
    }
    return true;
}

TtVerdict is_tt_language(const LanguageOracle& L, int max_len) {
    if (max_len < 1) throw std::invalid_argument("is_tt_language: max_len must be >= 1");
    TtVerdict out;
    out.max_len = max_len;
    if (L.exact()) {
        const FollowerGraph& g = L.graph();
        for (std::size_t i = 0; i < g.vertices.size(); ++i) {
            auto seen = reachable_from(g, static_cast<int>(i));
            for (std::size_t j = 0; j < g.vertices.size(); ++j) {
                if (!seen[j]) {
                    out.kind = TtVerdict::Kind::FalseWitness;
                    out.v = g.vertices[i];
                    out.w = g.vertices[j];
                    return out;
                }
            }
        }
        out.kind = TtVerdict::Kind::True;
        return out;
    }
    SymbolWord fv, fw;
    if (exhaustive_vcw(L, max_len, &fv, &fw)) {
        out.kind = TtVerdict::Kind::True;
    } else {
        out.kind = TtVerdict::Kind::UnknownUpTo;
        out.v = std::move(fv);
        out.w = std::move(fw);
    }
    return out;
}

TwoSidedVerdict two_sided_tt_equiv(const LanguageOracle& L, int max_len) {
    return TwoSidedVerdict{is_tt_language(L, max_len), true};
}

std::vector<Word> admissible_words(const Pim& F, int n, Digit digit_cap,
                                   std::uint64_t node_budget, bool* truncated) {
    std::vector<Word> out;
    bool capped = false;
    bool ok = walk_cylinders(F, n, digit_cap, node_budget, &capped,
                             [&](const std::vector<Digit>& path, const Interval&) {
                                 if (static_cast<int>(path.size()) == n)
                                     out.push_back(Word::complete(path));
                             });
    if (truncated) *truncated = capped || !ok;
    std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
        return flip_lex_compare(F, a, b) == FlipLex::Less;
    });
    return out;
}

}  // namespace fexlab

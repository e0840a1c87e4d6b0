#include "fexlab/builders.hpp"
#include "fexlab/json_io.hpp"
#include "fexlab/representation.hpp"
#include "fexlab/shift.hpp"
#include "fexlab/transitivity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using fexlab::Backend;
using fexlab::Digit;
using fexlab::Scalar;
using fexlab::Word;
using nlohmann::json;

constexpr int kExitBadSpec = 2;
constexpr int kExitDomain = 3;
constexpr int kExitBudget = 4;

[[noreturn]] void die_spec(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(kExitBadSpec);
}

json load_json_arg(const std::string& arg) {
    try {
        if (!arg.empty() && arg.front() == '{') return json::parse(arg);
        std::ifstream in(arg);
        if (!in) die_spec("cannot open " + arg);
        return json::parse(in);
    } catch (const json::parse_error& e) {
        die_spec(std::string("bad JSON: ") + e.what());
    }
}

std::shared_ptr<fexlab::Pim> load_map(const std::string& arg) {
    try {
        return fexlab::build_from_json(load_json_arg(arg));
    } catch (const fexlab::SpecError& e) {
        die_spec(e.what());
    } catch (const std::exception& e) {
        die_spec(e.what());
    }
}

Scalar parse_x(const std::string& text, Backend b) {
    try {
        return Scalar::parse(text, b);
    } catch (const std::exception& e) {
        die_spec(std::string("bad number '") + text + "': " + e.what());
    }
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("FEXLAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        die_spec("FEXLAB_BUDGET must be a positive integer");
    }
    return fexlab::kDefaultNodeBudget;
}

// seeded uniform sample in [0,1) with 53 random bits; std::mt19937_64 is the
// documented generator so output is identical across platforms
Scalar sample_unit(std::uint64_t seed, Backend b) {
    std::mt19937_64 rng(seed);
    std::uint64_t bits = rng() >> 11;
    if (b == Backend::Rational)
        return Scalar::rational(fexlab::Rational(fexlab::BigInt(bits),
                                                 fexlab::BigInt(1) << 53));
    return Scalar::floating(static_cast<double>(bits) / 9007199254740992.0);
}

std::vector<Digit> parse_digits(const std::string& text) {
    std::vector<Digit> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    if (out.empty()) die_spec("no digits given");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"f-expansion laboratory: piecewise interval maps, digit "
                 "representations, transitivity diagnostics, subshift checks"};
    app.require_subcommand(1);

    std::string map_arg, sft_arg, x_arg, digits_arg, format = "csv", tol_arg = "1/1000";
    int n = 10, depth = 8, n_max = 10, max_len = 6, words_len = 0;
    Digit digit_cap = 64;
    std::uint64_t node_budget = default_budget();
    std::uint64_t seed = 0;
    std::string eps_arg;
    bool strict = false;

    auto add_map = [&](CLI::App* c) { c->add_option("--map", map_arg, "map spec: JSON file or inline JSON")->required(); };
    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", format, "csv or json");
        c->add_flag("--strict", strict, "exit 4 when a budget was exhausted");
        c->add_option("--node-budget", node_budget, "node budget (default FEXLAB_BUDGET or 1e6)");
        c->add_option("--digit-cap", digit_cap, "largest digit expanded on lazy alphabets");
    };

    auto* cmd_encode = app.add_subcommand("encode", "digits of the F-representation of x");
    add_map(cmd_encode);
    cmd_encode->add_option("--x", x_arg, "point in the domain, or 'random'")->required();
    cmd_encode->add_option("--n", n, "number of digits")->required();
    cmd_encode->add_option("--seed", seed, "PRNG seed for --x random (mt19937_64)");
    cmd_encode->add_option("--format", format, "csv or json");

    auto* cmd_decode = app.add_subcommand("decode", "hull of the cylinder of a digit word");
    add_map(cmd_decode);
    cmd_decode->add_option("--digits", digits_arg, "comma-separated digits")->required();
    cmd_decode->add_option("--format", format, "csv or json");

    auto* cmd_validity = app.add_subcommand("validity", "refinement norms per level");
    add_map(cmd_validity);
    cmd_validity->add_option("--n-max", n_max, "deepest level")->required();
    cmd_validity->add_option("--tol", tol_arg, "shrink threshold");
    add_common(cmd_validity);

    auto* cmd_orbit = app.add_subcommand("orbit", "forward orbit, optional grid density");
    add_map(cmd_orbit);
    cmd_orbit->add_option("--x", x_arg, "starting point, or 'random'")->required();
    cmd_orbit->add_option("--n", n, "iterations")->required();
    cmd_orbit->add_option("--eps", eps_arg, "grid cell width for the density report");
    cmd_orbit->add_option("--seed", seed, "PRNG seed for --x random (mt19937_64)");
    cmd_orbit->add_option("--format", format, "csv or json");

    auto* cmd_pre = app.add_subcommand("preimages", "backward preimage tree, optional density");
    add_map(cmd_pre);
    cmd_pre->add_option("--x", x_arg, "root point")->required();
    cmd_pre->add_option("--depth", depth, "tree depth")->required();
    cmd_pre->add_option("--eps", eps_arg, "grid cell width for the density report");
    add_common(cmd_pre);

    auto* cmd_shift = app.add_subcommand("shift-check", "language transitivity check");
    cmd_shift->add_option("--sft", sft_arg, "SFT spec: JSON file or inline JSON");
    cmd_shift->add_option("--map", map_arg, "map spec (language via cylinders)");
    cmd_shift->add_option("--max-len", max_len, "word/connector length bound");
    cmd_shift->add_option("--words", words_len, "also list admissible words of this length (map mode)");
    cmd_shift->add_option("--digit-cap", digit_cap, "largest digit used on lazy alphabets");
    cmd_shift->add_option("--node-budget", node_budget, "node budget");
    cmd_shift->add_flag("--strict", strict, "exit 4 when a budget was exhausted");

    auto* cmd_info = app.add_subcommand("map-info", "built map summary");
    add_map(cmd_info);
    cmd_info->add_option("--digit-cap", digit_cap, "largest digit listed on lazy alphabets");

    CLI11_PARSE(app, argc, argv);
    bool json_out = format == "json";
    if (format != "csv" && format != "json") die_spec("--format must be csv or json");

    try {
        if (*cmd_encode) {
            auto F = load_map(map_arg);
            Scalar x = x_arg == "random" ? sample_unit(seed, F->backend())
                                         : parse_x(x_arg, F->backend());
            if (!F->domain().contains(x)) {
                std::cerr << "error: x = " << x.str() << " outside the domain "
                          << F->domain().str() << "\n";
                return kExitDomain;
            }
            Word w = fexlab::encode(*F, x, n);
            if (json_out) {
                json out = fexlab::word_to_json(w);
                out["x"] = fexlab::scalar_to_json(x);
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "step,digit,iterate\n";
                Scalar y = x;
                for (std::size_t k = 0; k < w.digits.size(); ++k) {
                    std::cout << k + 1 << "," << w.digits[k] << "," << y.str() << "\n";
                    y = *F->apply(y);
                }
                if (!w.complete_p()) std::cout << "TERMINATED," << w.terminated_at << "\n";
            }
            return 0;
        }

        if (*cmd_decode) {
            auto F = load_map(map_arg);
            Word w = Word::complete(parse_digits(digits_arg));
            auto fi = fexlab::cylinder(*F, w);
            if (!fi) {
                std::cout << (json_out ? "{\"cylinder\":\"empty\"}" : "EMPTY") << "\n";
                return 0;
            }
            if (json_out) {
                std::cout << fexlab::fundamental_interval_to_json(*fi).dump() << "\n";
            } else {
                std::cout << "lo,hi,midpoint,length\n"
                          << fi->hull.lo().str() << "," << fi->hull.hi().str() << ","
                          << fi->hull.midpoint().str() << "," << fi->hull.length().str()
                          << "\n";
            }
            return 0;
        }

        if (*cmd_validity) {
            auto F = load_map(map_arg);
            Scalar tol = parse_x(tol_arg, F->backend());
            auto rep = fexlab::refinement_norm(*F, n_max, tol, digit_cap, node_budget);
            if (json_out) {
                std::cout << fexlab::refinement_report_to_json(rep).dump() << "\n";
            } else {
                std::cout << "level,sup_length\n";
                for (std::size_t k = 0; k < rep.sup_lengths.size(); ++k)
                    std::cout << k + 1 << "," << rep.sup_lengths[k].str() << "\n";
                if (rep.verdict == fexlab::RefinementVerdict::ShrinksBelow)
                    std::cout << "VERDICT,shrinks_below," << rep.shrink_level << "\n";
                else
                    std::cout << "VERDICT,stalled," << rep.stalled_word.str() << "\n";
                if (rep.digit_capped) std::cout << "NOTE,digit_capped\n";
                if (rep.budget_exhausted) std::cout << "NOTE,budget_exhausted\n";
            }
            return strict && rep.budget_exhausted ? kExitBudget : 0;
        }

        if (*cmd_orbit) {
            auto F = load_map(map_arg);
            Scalar x = x_arg == "random" ? sample_unit(seed, F->backend())
                                         : parse_x(x_arg, F->backend());
            if (!F->domain().contains(x)) {
                std::cerr << "error: x = " << x.str() << " outside the domain\n";
                return kExitDomain;
            }
            auto orbit = fexlab::forward_orbit(*F, x, n);
            if (json_out) {
                json pts = json::array();
                for (const auto& v : orbit) pts.push_back(fexlab::scalar_to_json(v));
                json out{{"orbit", pts}};
                if (!eps_arg.empty()) {
                    Scalar eps = parse_x(eps_arg, F->backend());
                    out["density"] = fexlab::density_report_to_json(
                        fexlab::tt_estimate(*F, x, n, eps));
                }
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "step,value,digit\n";
                for (std::size_t k = 0; k < orbit.size(); ++k) {
                    auto d = F->partition().locate(orbit[k]);
                    std::cout << k << "," << orbit[k].str() << ","
                              << (d ? std::to_string(*d) : "") << "\n";
                }
                if (!eps_arg.empty()) {
                    Scalar eps = parse_x(eps_arg, F->backend());
                    auto rep = fexlab::tt_estimate(*F, x, n, eps);
                    std::cout << "DENSITY," << (rep.dense ? "true" : "false") << ","
                              << rep.covered_cells << "," << rep.total_cells << "\n";
                }
            }
            return 0;
        }

        if (*cmd_pre) {
            auto F = load_map(map_arg);
            Scalar x = parse_x(x_arg, F->backend());
            auto tree = fexlab::backward_tree(*F, x, depth, digit_cap, node_budget);
            if (json_out) {
                json out = fexlab::preimage_tree_to_json(tree);
                if (!eps_arg.empty()) {
                    Scalar eps = parse_x(eps_arg, F->backend());
                    out["density"] = fexlab::density_report_to_json(fexlab::ptt_estimate(
                        *F, x, depth, digit_cap, node_budget, eps));
                }
                std::cout << out.dump() << "\n";
            } else {
                std::cout << "level,value\n";
                for (std::size_t k = 0; k < tree.levels.size(); ++k)
                    for (const auto& v : tree.levels[k])
                        std::cout << k + 1 << "," << v.str() << "\n";
                if (tree.truncated) std::cout << "NOTE,truncated\n";
                if (!eps_arg.empty()) {
                    Scalar eps = parse_x(eps_arg, F->backend());
                    auto rep = fexlab::ptt_estimate(*F, x, depth, digit_cap, node_budget, eps);
                    std::cout << "DENSITY," << (rep.dense ? "true" : "false") << ","
                              << rep.covered_cells << "," << rep.total_cells << "\n";
                }
            }
            return strict && tree.truncated ? kExitBudget : 0;
        }

        if (*cmd_shift) {
            if (sft_arg.empty() == map_arg.empty())
                die_spec("shift-check needs exactly one of --sft / --map");
            std::optional<fexlab::LanguageOracle> L;
            std::shared_ptr<fexlab::Pim> F;
            if (!sft_arg.empty()) {
                try {
                    L = fexlab::LanguageOracle::from_sft(fexlab::parse_sft(load_json_arg(sft_arg)));
                } catch (const std::invalid_argument& e) {
                    die_spec(e.what());
                }
            } else {
                F = load_map(map_arg);
                L = fexlab::LanguageOracle::from_pim(F, digit_cap);
            }
            auto verdict = fexlab::two_sided_tt_equiv(*L, max_len);
            switch (verdict.one_sided.kind) {
                case fexlab::TtVerdict::Kind::True:
                    std::cout << "TRUE (two-sided natural extension: TRUE)\n";
                    break;
                case fexlab::TtVerdict::Kind::FalseWitness:
                    std::cout << "FALSE witness v=" << fexlab::symbol_word_str(verdict.one_sided.v)
                              << " w=" << fexlab::symbol_word_str(verdict.one_sided.w)
                              << " (two-sided natural extension: FALSE)\n";
                    break;
                case fexlab::TtVerdict::Kind::UnknownUpTo:
                    std::cout << "UNKNOWN up to length " << max_len << " (pair v="
                              << fexlab::symbol_word_str(verdict.one_sided.v) << " w="
                              << fexlab::symbol_word_str(verdict.one_sided.w) << " unresolved)\n";
                    break;
            }
            if (F && words_len > 0) {
                bool truncated = false;
                auto ws = fexlab::admissible_words(*F, words_len, digit_cap, node_budget,
                                                   &truncated);
                for (const auto& w : ws) {
                    for (std::size_t i = 0; i < w.digits.size(); ++i)
                        std::cout << (i ? " " : "") << w.digits[i];
                    std::cout << "\n";
                }
                if (truncated) std::cout << "NOTE,truncated\n";
                if (strict && truncated) return kExitBudget;
            }
            return 0;
        }

        if (*cmd_info) {
            auto F = load_map(map_arg);
            std::cout << "name," << F->name() << "\n"
                      << "backend," << (F->backend() == Backend::Rational ? "rational" : "float")
                      << "\n"
                      << "type,"
                      << (F->type() == fexlab::PimKind::TypeA
                              ? "increasing"
                              : F->type() == fexlab::PimKind::TypeB ? "decreasing" : "mixed")
                      << "\n"
                      << "well_ordered," << (F->well_ordered() ? "yes" : "no") << "\n"
                      << "finite_alphabet," << (F->finite_alphabet() ? "yes" : "no") << "\n"
                      << "surjective_hint," << (F->surjective_hint() ? "yes" : "no") << "\n"
                      << "domain," << F->domain().str() << "\n";
            bool truncated = false;
            for (Digit d : F->digits_up_to(digit_cap, &truncated)) {
                const auto* br = F->branch(d);
                std::cout << "cell," << d << "," << br->domain.str() << ","
                          << (br->mono == fexlab::Mono::TypeA ? "up" : "down") << ","
                          << br->image.str() << "\n";
            }
            if (truncated) std::cout << "NOTE,digit_capped\n";
            return 0;
        }
    } catch (const fexlab::SpecError& e) {
        die_spec(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "fexlab/json_io.hpp"

namespace fexlab {

using nlohmann::json;

json scalar_to_json(const Scalar& s) {
    if (s.is_rational()) return s.str();
    return s.flt();
}

Scalar scalar_from_json(const json& j, Backend b) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), b);
    if (j.is_number()) {
        if (b == Backend::Rational && j.is_number_integer())
            return Scalar::integer(j.get<long long>(), b);
        if (b == Backend::Float) return Scalar::floating(j.get<double>());
    }
    throw std::invalid_argument("scalar json must be a \"p/q\" string or a number");
}

json interval_to_json(const Interval& i) {
    return json{{"lo", scalar_to_json(i.lo())},
                {"hi", scalar_to_json(i.hi())},
                {"lo_closed", i.lo_kind() == Kind::Closed},
                {"hi_closed", i.hi_kind() == Kind::Closed}};
}

Interval interval_from_json(const json& j, Backend b) {
    return Interval(scalar_from_json(j.at("lo"), b), scalar_from_json(j.at("hi"), b),
                    j.at("lo_closed").get<bool>() ? Kind::Closed : Kind::Open,
                    j.at("hi_closed").get<bool>() ? Kind::Closed : Kind::Open);
}

json word_to_json(const Word& w) {
    json out{{"digits", w.digits},
             {"status", w.complete_p() ? "complete" : "terminated"}};
    if (!w.complete_p()) out["terminated_at"] = w.terminated_at;
    return out;
}

Word word_from_json(const json& j) {
    std::vector<Digit> digits = j.at("digits").get<std::vector<Digit>>();
    std::string status = j.at("status").get<std::string>();
    if (status == "complete") return Word::complete(std::move(digits));
    if (status == "terminated")
        return Word::terminated(std::move(digits), j.at("terminated_at").get<int>());
    throw std::invalid_argument("word status must be complete or terminated");
}

json fundamental_interval_to_json(const FundamentalInterval& fi) {
    return json{{"word", word_to_json(fi.word)},
                {"hull", interval_to_json(fi.hull)},
                {"order", fi.order}};
}

json density_report_to_json(const DensityReport& r) {
    json gaps = json::array();
    for (const auto& g : r.witness_gaps) gaps.push_back(interval_to_json(g));
    return json{{"eps", scalar_to_json(r.eps)},
                {"covered_cells", r.covered_cells},
                {"total_cells", r.total_cells},
                {"dense", r.dense},
                {"witness_gaps", gaps},
                {"orbit_terminated", r.orbit_terminated},
                {"truncated", r.truncated},
                {"stt_chain_dense", r.stt_chain_dense}};
}

DensityReport density_report_from_json(const json& j, Backend b) {
    DensityReport r{scalar_from_json(j.at("eps"), b)};
    r.covered_cells = j.at("covered_cells").get<long long>();
    r.total_cells = j.at("total_cells").get<long long>();
    r.dense = j.at("dense").get<bool>();
    for (const auto& g : j.at("witness_gaps")) r.witness_gaps.push_back(interval_from_json(g, b));
    r.orbit_terminated = j.at("orbit_terminated").get<bool>();
    r.truncated = j.at("truncated").get<bool>();
    r.stt_chain_dense = j.at("stt_chain_dense").get<bool>();
    return r;
}

json refinement_report_to_json(const RefinementReport& r) {
    json sups = json::array();
    for (const auto& s : r.sup_lengths) sups.push_back(scalar_to_json(s));
    json out{{"sup_lengths", sups},
             {"verdict", r.verdict == RefinementVerdict::ShrinksBelow ? "shrinks_below"
                                                                      : "stalled"},
             {"digit_capped", r.digit_capped},
             {"budget_exhausted", r.budget_exhausted},
             {"nodes", r.nodes}};
    if (r.verdict == RefinementVerdict::ShrinksBelow)
        out["shrink_level"] = r.shrink_level;
    else
        out["stalled_word"] = word_to_json(r.stalled_word);
    return out;
}

RefinementReport refinement_report_from_json(const json& j, Backend b) {
    RefinementReport r;
    for (const auto& s : j.at("sup_lengths")) r.sup_lengths.push_back(scalar_from_json(s, b));
    std::string v = j.at("verdict").get<std::string>();
    if (v == "shrinks_below") {
        r.verdict = RefinementVerdict::ShrinksBelow;
        r.shrink_level = j.at("shrink_level").get<int>();
    } else if (v == "stalled") {
        r.verdict = RefinementVerdict::Stalled;
        r.stalled_word = word_from_json(j.at("stalled_word"));
    } else {
        throw std::invalid_argument("unknown refinement verdict " + v);
    }
    r.digit_capped = j.at("digit_capped").get<bool>();
    r.budget_exhausted = j.at("budget_exhausted").get<bool>();
    r.nodes = j.at("nodes").get<std::uint64_t>();
    return r;
}

json preimage_tree_to_json(const PreimageTree& t) {
    json levels = json::array();
    for (const auto& lvl : t.levels) {
        json row = json::array();
        for (const auto& v : lvl) row.push_back(scalar_to_json(v));
        levels.push_back(row);
    }
    return json{{"root", scalar_to_json(t.root)},
                {"levels", levels},
                {"digit_cap", t.digit_cap},
                {"depth", t.depth},
                {"node_budget", t.node_budget},
                {"truncated", t.truncated}};
}

}  // namespace fexlab

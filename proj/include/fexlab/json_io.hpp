#ifndef FEXLAB_JSON_IO_HPP
#define FEXLAB_JSON_IO_HPP

#include "fexlab/representation.hpp"
#include "fexlab/transitivity.hpp"

#include <json.hpp>

namespace fexlab {

// Rationals serialize as "p/q" strings, floats as JSON numbers; every
// to/from pair is a parse-serialize identity.

nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j, Backend b);

nlohmann::json interval_to_json(const Interval& i);
Interval interval_from_json(const nlohmann::json& j, Backend b);

nlohmann::json word_to_json(const Word& w);
Word word_from_json(const nlohmann::json& j);

nlohmann::json fundamental_interval_to_json(const FundamentalInterval& fi);

nlohmann::json density_report_to_json(const DensityReport& r);
DensityReport density_report_from_json(const nlohmann::json& j, Backend b);

nlohmann::json refinement_report_to_json(const RefinementReport& r);
RefinementReport refinement_report_from_json(const nlohmann::json& j, Backend b);

nlohmann::json preimage_tree_to_json(const PreimageTree& t);

}  // namespace fexlab

#endif

#ifndef FEXLAB_BUILDERS_HPP
#define FEXLAB_BUILDERS_HPP

#include "fexlab/pim.hpp"

#include <json.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fexlab {

/// Thrown for malformed or out-of-range map specifications.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters of a built-in map family.
struct PimSpec {
    enum class Family {
        Beta,
        AlphaBeta,
        Gauss,
        Quadratic,
        Tent,
        Cantor,
        Luroth,
        Egyptian,
        IntervalExchange,
        ExampleFirst,
    };

    Family family = Family::Beta;
    Scalar beta;                      // Beta, AlphaBeta
    Scalar alpha;                     // AlphaBeta
    Scalar r;                         // Gauss, Quadratic
    Scalar tau;                       // Tent
    std::vector<Scalar> lengths;      // Luroth, IntervalExchange
    std::vector<Scalar> translations; // IntervalExchange
    std::string egyptian_rule = "integers";  // integers | powers_of_two | primes

    static PimSpec beta_map(Scalar beta);
    static PimSpec alpha_beta(Scalar alpha, Scalar beta);
    static PimSpec gauss(Scalar r);
    static PimSpec quadratic(double r);
    static PimSpec tent(double tau);
    static PimSpec cantor();
    static PimSpec luroth(std::vector<Scalar> lengths);
    static PimSpec egyptian(std::string rule = "integers");
    static PimSpec interval_exchange(std::vector<Scalar> lengths,
                                     std::vector<Scalar> translations);
    static PimSpec example_first();
};

/// Builds the map, picking ExactRational wherever branches are linear or
/// Moebius with rational parameters and ApproxFloat otherwise.
std::shared_ptr<Pim> build(const PimSpec& spec);

/// JSON schema {"kind": "...", "params": {...}, "backend": "rational"|"float"}.
/// Unknown keys are rejected.
PimSpec parse_pim_spec(const nlohmann::json& j);
std::shared_ptr<Pim> build_from_json(const nlohmann::json& j);

}  // namespace fexlab

#endif

#ifndef FEXLAB_WORD_HPP
#define FEXLAB_WORD_HPP

#include "fexlab/partition.hpp"

#include <string>
#include <vector>

namespace fexlab {

/// A finite digit string: the truncation of an F-representation.  Terminated
/// words record the 1-based step at which the orbit left D.
struct Word {
    enum class Status { Complete, Terminated };

    std::vector<Digit> digits;
    Status status = Status::Complete;
    int terminated_at = 0;  // meaningful only when Terminated

    static Word complete(std::vector<Digit> d) { return Word{std::move(d), Status::Complete, 0}; }
    static Word terminated(std::vector<Digit> d, int step) {
        return Word{std::move(d), Status::Terminated, step};
    }

    std::size_t size() const { return digits.size(); }
    bool complete_p() const { return status == Status::Complete; }

    std::string str() const {
        std::string s = ".";
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (i) s += " ";
            s += std::to_string(digits[i]);
        }
        if (status == Status::Terminated)
            s += " T(" + std::to_string(terminated_at) + ")";
        return s;
    }

    bool operator==(const Word& o) const {
        return digits == o.digits && status == o.status &&
               (status == Status::Complete || terminated_at == o.terminated_at);
    }
};

}  // namespace fexlab

#endif

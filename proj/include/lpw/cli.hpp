#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpw/weight.hpp"

namespace lpw {

/// Parameters of `lpw construct`.
struct ConstructOptions {
    std::string group = "pruefer:2";  // pruefer:p, rationals, sum, euclidean:d, product:d, builtin:NAME
    std::string chain = "factorial";  // rationals: factorial or explicit:t1,t2,...
    std::string phi_prefix;           // comma-separated rationals
    std::string phi_tail;             // kind:c:r
    bool allow_nonmonotone = false;
    std::vector<std::string> summands;  // sum: one group per summand; product: the discrete factor
    std::string scale = "auto";         // auto, none or a rational factor
    std::string algebra_p;              // empty: no algebra transform
    bool raw = false;                   // euclidean: skip the (2 pi)^-d normalization
};

WeightFn construct_weight(const ConstructOptions& opts);

/// Weight from a provenance file, or builtin:NAME.
WeightFn load_weight(const std::string& ref);

/// Default window and truncation specs for verify.
std::string default_window(const GroupDescriptor& g);
std::string default_truncation(const GroupDescriptor& g);

/// Entry point of the lpw tool. Exit codes: 0 all hold, 1 a check fails,
/// 2 invalid parameters, 3 inconclusive, 4 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpw

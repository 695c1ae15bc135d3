#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "lpw/group.hpp"

namespace lpw {

/// Insertion-ordered JSON so serialized output is stable byte for byte.
using Json = nlohmann::ordered_json;

Json to_json(const BigRational& v);
BigRational rational_from_json(const Json& j);

Json to_json(const GroupDescriptor& g);
GroupDescriptor group_from_json(const Json& j);

Json to_json(const GroupPoint& x);
GroupPoint point_from_json(const Json& j);

/// "pruefer:2", "rationals", "rationals:explicit:1,2,6", "circle", "real:2",
/// "sum(pruefer:2,pruefer:3)", "product(1,pruefer:2)".
GroupDescriptor parse_group_spec(std::string_view text);

/// Text form of a point of g: "3/8" on discrete cyclic groups and the circle,
/// "{1:1/2,2:1/3}" on sums, "0.5,-1" on R^d, "(0.5;1/2)" on products.
GroupPoint parse_point(const GroupDescriptor& g, std::string_view text);
std::string point_str(const GroupPoint& x);

}  // namespace lpw

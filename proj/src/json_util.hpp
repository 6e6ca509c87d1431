#pragma once

#include <string>

#include "json.hpp"
#include "oltsp/metric.hpp"

namespace oltsp::detail {

using Json = nlohmann::ordered_json;

Json point_to_json(const MetricSpace& space, const Point& p);
// `where` names the field for error messages.
Point point_from_json(const MetricSpace& space, const Json& j, const std::string& where);

}  // namespace oltsp::detail

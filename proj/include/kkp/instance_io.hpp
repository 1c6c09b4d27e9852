#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "kkp/instance.hpp"

namespace kkp {

// JSON layout:
//   {"budget": "10", "cardinality": 3, "mode": "at_most"|"exact",
//    "items": [{"id": 1, "profit": "5/2", "weight": "1.5"}, ...]}
// Rationals may also be given as JSON integers on input.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& inst);

Instance read_instance_json(std::istream& in);
void write_instance_json(std::ostream& out, const Instance& inst);

// CSV with header "id,profit,weight"; budget, K and mode come from the caller.
Instance read_instance_csv(std::istream& in, const Rational& budget, std::int64_t cardinality,
                           CardinalityMode mode);

nlohmann::json solution_to_json(const Solution& sol);

}  // namespace kkp

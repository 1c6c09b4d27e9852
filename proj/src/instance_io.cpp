#include "kkp/instance_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kkp {
namespace {

Rational rational_field(const nlohmann::json& node, const char* name) {
  if (!node.contains(name)) throw std::invalid_argument(std::string("missing field '") + name + "'");
  const auto& v = node.at(name);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return from_int(v.get<std::int64_t>());
  throw std::invalid_argument(std::string("field '") + name + "' must be a rational string or integer");
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

Instance instance_from_json(const nlohmann::json& doc) {
  Instance inst;
  inst.budget = rational_field(doc, "budget");
  if (!doc.contains("cardinality") || !doc.at("cardinality").is_number_integer()) {
    throw std::invalid_argument("field 'cardinality' must be an integer");
  }
  inst.cardinality = doc.at("cardinality").get<std::int64_t>();
  std::string mode = doc.value("mode", std::string("at_most"));
  auto parsed = parse_mode(mode);
  if (!parsed) throw std::invalid_argument("unknown mode '" + mode + "'");
  inst.mode = *parsed;
  if (!doc.contains("items") || !doc.at("items").is_array()) {
    throw std::invalid_argument("field 'items' must be an array");
  }
  for (const auto& node : doc.at("items")) {
    Item item;
    if (!node.contains("id") || !node.at("id").is_number_integer()) {
      throw std::invalid_argument("item without integer 'id'");
    }
    item.id = node.at("id").get<ItemId>();
    item.profit = rational_field(node, "profit");
    item.weight = rational_field(node, "weight");
    inst.items.push_back(std::move(item));
  }
  return inst;
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json items = nlohmann::json::array();
  for (const Item& item : inst.items) {
    items.push_back({{"id", item.id}, {"profit", to_string(item.profit)}, {"weight", to_string(item.weight)}});
  }
  return {{"budget", to_string(inst.budget)},
          {"cardinality", inst.cardinality},
          {"mode", mode_name(inst.mode)},
          {"items", std::move(items)}};
}

Instance read_instance_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

void write_instance_json(std::ostream& out, const Instance& inst) { out << instance_to_json(inst).dump(1) << '\n'; }

Instance read_instance_csv(std::istream& in, const Rational& budget, std::int64_t cardinality,
                           CardinalityMode mode) {
  Instance inst;
  inst.budget = budget;
  inst.cardinality = cardinality;
  inst.mode = mode;
  std::string line;
  bool header = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line != "id,profit,weight") throw std::invalid_argument("CSV header must be 'id,profit,weight'");
      continue;
    }
    std::stringstream ss(line);
    std::string id, profit, weight;
    if (!std::getline(ss, id, ',') || !std::getline(ss, profit, ',') || !std::getline(ss, weight)) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected 3 fields");
    }
    Rational id_q = parse_rational(id);
    if (id_q.get_den() != 1) throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": non-integer id");
    inst.items.push_back({floor_to_int64(id_q), parse_rational(profit), parse_rational(weight)});
  }
  if (header) throw std::invalid_argument("empty CSV input");
  return inst;
}

nlohmann::json solution_to_json(const Solution& sol) {
  const char* status = "ok";
  if (sol.status == SolveStatus::kTrivial) status = "trivial";
  if (sol.status == SolveStatus::kInfeasible) status = "infeasible";
  return {{"status", status},
          {"value", to_string(sol.total_profit)},
          {"weight", to_string(sol.total_weight)},
          {"count", sol.count},
          {"items", sol.selected},
          {"epsilon_user", to_string(sol.epsilon_used)},
          {"opt_lower_bound", to_string(sol.opt_lower_bound)}};
}

}  // namespace kkp

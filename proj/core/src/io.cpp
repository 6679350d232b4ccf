#include "germforge/io.hpp"

#include <json.hpp>

#include "germforge/errors.hpp"

namespace germforge {

namespace {

using nlohmann::ordered_json;

ordered_json table_json(const std::vector<std::pair<Exps, Scalar>>& terms) {
  ordered_json t = ordered_json::array();
  for (const auto& [e, v] : terms) t.push_back(ordered_json::array({ordered_json::array({e[0], e[1], e[2]}), v.str()}));
  return t;
}

std::vector<std::pair<Exps, Scalar>> poly_terms(const Poly& p) {
  std::vector<std::pair<Exps, Scalar>> out(p.terms().begin(), p.terms().end());
  return out;
}

Exps exps_of(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw parse_error(std::string(what) + ": expected an exponent triple");
  Exps e;
  for (int k = 0; k < 3; ++k) {
    if (!j[k].is_number_integer() || j[k].get<long>() < 0)
      throw parse_error(std::string(what) + ": exponents must be non-negative integers");
    e[k] = j[k].get<int>();
  }
  return e;
}

Scalar scalar_of(const ordered_json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw parse_error("coefficients must be strings or integers");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad coefficient '") + j.get<std::string>() + "': " + e.what());
  }
}

template <class F>
void read_table(const ordered_json& t, const char* what, F&& add) {
  if (!t.is_array()) throw parse_error(std::string(what) + ": expected a list of [[i, j, k], scalar] pairs");
  for (const auto& entry : t) {
    if (!entry.is_array() || entry.size() != 2) throw parse_error(std::string(what) + ": malformed entry");
    add(exps_of(entry[0], what), scalar_of(entry[1]));
  }
}

ordered_json parse(const std::string& text) {
  try {
    ordered_json j = ordered_json::parse(text);
    if (!j.is_object()) throw parse_error("expected a JSON object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
}

int read_order(const ordered_json& j) {
  if (!j.contains("N") || !j["N"].is_number_integer()) throw parse_error("missing integer field N");
  int N = j["N"].get<int>();
  if (N < 2) throw parse_error("N must be at least 2");
  return N;
}

}  // namespace

std::string germ_json(const Germ& f) {
  ordered_json j;
  j["N"] = f.N();
  j["divisor"] = ordered_json::array({f.divisor()[0], f.divisor()[1], f.divisor()[2]});
  ordered_json coords = ordered_json::array();
  for (int k = 0; k < 3; ++k) coords.push_back(table_json(f.disp(k).terms()));
  j["coords"] = coords;
  return j.dump();
}

Germ germ_from_json(const std::string& text) {
  ordered_json j = parse(text);
  int N = read_order(j);
  Exps divisor{0, 0, 0};
  if (j.contains("divisor")) divisor = exps_of(j["divisor"], "divisor");
  if (!j.contains("coords") || !j["coords"].is_array() || j["coords"].size() != 3)
    throw parse_error("coords must list the three components of f - id");
  std::vector<CoeffEntry> table;
  for (int k = 0; k < 3; ++k)
    read_table(j["coords"][k], "coords", [&](const Exps& e, const Scalar& v) {
      if (degree(e) <= N) table.emplace_back(k, e, v);
    });
  return make_germ(table, N, divisor);
}

std::string instance_json(const ExampleInstance& inst) {
  ordered_json j;
  j["N"] = inst.N;
  j["P"] = table_json(poly_terms(inst.P));
  j["Q"] = table_json(poly_terms(inst.Q));
  j["R"] = table_json(poly_terms(inst.R));
  return j.dump();
}

ExampleInstance instance_from_json(const std::string& text) {
  ordered_json j = parse(text);
  int N = read_order(j);
  std::array<Poly, 3> pqr;
  const char* names[3] = {"P", "Q", "R"};
  for (int k = 0; k < 3; ++k)
    if (j.contains(names[k]))
      read_table(j[names[k]], names[k], [&](const Exps& e, const Scalar& v) { pqr[k].add_to(e, v); });
  return build_instance(pqr[0], pqr[1], pqr[2], N);
}

bool is_germ_json(const std::string& text) {
  try {
    return parse(text).contains("coords");
  } catch (const parse_error&) {
    return false;
  }
}

}  // namespace germforge

#pragma once

// JSON eigenvalue datasets: exact rationals as text, field polynomial constant
// term first.
//
//   {"schema_version": 1,
//    "forms": [{"label": "...", "weight": 20, "field_poly": ["-5", "0", "1"],
//               "multiplicity_one": true, "interesting": true,
//               "eigen": [{"p": 2, "a_p": ["1/3", "2"], "a_p2": ["0", "-7"]}]}]}

#include <siegel/exact/number_field.hpp>
#include <siegel/spinor.hpp>

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

inline constexpr int kSchemaVersion = 1;

class DatasetError : public std::runtime_error {
 public:
  enum class Kind {
    io,
    syntax,
    schema,
    missing_a_p2,
    malformed_rational,
    field_polynomial,
    odd_weight,
    bad_prime,
  };
  DatasetError(Kind kind, std::string record, const std::string& what)
      : std::runtime_error(record.empty() ? what : "record '" + record + "': " + what), kind_(kind), record_(std::move(record)) {}
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::string& record() const { return record_; }

 private:
  Kind kind_;
  std::string record_;
};

struct Dataset {
  int schema_version = kSchemaVersion;
  std::vector<EigenformData> forms;
};

inline bool operator==(const EigenformData& a, const EigenformData& b) {
  if (a.label() != b.label() || a.weight() != b.weight() || !(a.field() == b.field()) ||
      a.multiplicity_one() != b.multiplicity_one() || a.interesting() != b.interesting() || a.table().size() != b.table().size())
    return false;
  for (const auto& [p, ev] : a.table()) {
    const auto it = b.table().find(p);
    if (it == b.table().end() || !(it->second.a_p == ev.a_p) || !(it->second.a_p2 == ev.a_p2)) return false;
  }
  return true;
}

inline bool operator==(const Dataset& a, const Dataset& b) { return a.schema_version == b.schema_version && a.forms == b.forms; }

namespace detail {

using nlohmann::json;

inline Integer json_integer(const json& v, const std::string& record, const std::string& what) {
  if (v.is_number_integer()) return Integer(v.dump());
  if (v.is_string()) {
    const Rational q = parse_rational(v.get<std::string>());
    if (q.get_den() == 1) return q.get_num();
  }
  throw DatasetError(DatasetError::Kind::schema, record, what + " must be an integer");
}

inline FieldElement json_element(const json& v, const NumberField& K, const std::string& record, const std::string& what) {
  if (!v.is_array()) throw DatasetError(DatasetError::Kind::schema, record, what + " must be an array of rationals");
  if (v.size() != K.degree())
    throw DatasetError(DatasetError::Kind::schema, record,
                       what + " has " + std::to_string(v.size()) + " coordinates, field degree is " + std::to_string(K.degree()));
  std::vector<Rational> coords;
  for (const auto& c : v) {
    std::string text;
    if (c.is_string()) text = c.get<std::string>();
    else if (c.is_number_integer()) text = c.dump();
    else throw DatasetError(DatasetError::Kind::malformed_rational, record, what + ": coordinate " + c.dump() + " is not a rational");
    try {
      coords.push_back(parse_rational(text));
    } catch (const std::invalid_argument& e) {
      throw DatasetError(DatasetError::Kind::malformed_rational, record, what + ": " + e.what());
    }
  }
  return K.element(std::move(coords));
}

template <class T>
T required(const json& obj, const char* key, const std::string& record) {
  if (!obj.contains(key)) throw DatasetError(DatasetError::Kind::schema, record, std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw DatasetError(DatasetError::Kind::schema, record, std::string("field '") + key + "' has the wrong type");
  }
}

inline EigenformData parse_form(const json& f, std::size_t position, std::uint64_t seed) {
  std::string record = "#" + std::to_string(position);
  if (!f.is_object()) throw DatasetError(DatasetError::Kind::schema, record, "form must be an object");
  const auto label = required<std::string>(f, "label", record);
  record = label;
  const int weight = required<int>(f, "weight", record);
  if (weight % 2 != 0) throw DatasetError(DatasetError::Kind::odd_weight, record, "odd weight " + std::to_string(weight) + " is not supported");
  if (weight < 4) throw DatasetError(DatasetError::Kind::schema, record, "weight must be >= 4");
  if (!f.contains("field_poly") || !f.at("field_poly").is_array())
    throw DatasetError(DatasetError::Kind::schema, record, "missing field 'field_poly'");
  std::vector<Integer> poly;
  for (const auto& c : f.at("field_poly")) poly.push_back(json_integer(c, record, "field_poly coefficient"));
  std::optional<NumberField> K;
  try {
    K.emplace(poly, seed);
  } catch (const FieldPolynomialError& e) {
    throw DatasetError(DatasetError::Kind::field_polynomial, record, e.what());
  }
  if (!f.contains("eigen") || !f.at("eigen").is_array()) throw DatasetError(DatasetError::Kind::schema, record, "missing field 'eigen'");
  std::map<std::uint64_t, Eigenvalues> table;
  for (const auto& row : f.at("eigen")) {
    const auto p = required<std::uint64_t>(row, "p", record);
    if (!is_prime_u64(p)) throw DatasetError(DatasetError::Kind::bad_prime, record, "p=" + std::to_string(p) + " is not prime");
    if (table.count(p) != 0) throw DatasetError(DatasetError::Kind::bad_prime, record, "p=" + std::to_string(p) + " listed twice");
    const std::string ps = "p=" + std::to_string(p);
    if (!row.contains("a_p")) throw DatasetError(DatasetError::Kind::schema, record, "missing a_p for " + ps);
    if (!row.contains("a_p2")) throw DatasetError(DatasetError::Kind::missing_a_p2, record, "missing a_{p^2} for " + ps);
    table.emplace(p, Eigenvalues{json_element(row.at("a_p"), *K, record, "a_p at " + ps),
                                 json_element(row.at("a_p2"), *K, record, "a_p2 at " + ps)});
  }
  if (table.empty()) throw DatasetError(DatasetError::Kind::schema, record, "empty eigenvalue table");
  return EigenformData(label, weight, *K, std::move(table), f.value("multiplicity_one", false), f.value("interesting", false));
}

inline json element_json(const FieldElement& e) {
  json arr = json::array();
  for (const auto& c : e.coords()) arr.push_back(to_string(c));
  return arr;
}

}  // namespace detail

inline Dataset parse_dataset(const std::string& text, std::uint64_t seed = 0) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DatasetError(DatasetError::Kind::syntax, "", std::string("JSON syntax: ") + e.what());
  }
  if (!doc.is_object()) throw DatasetError(DatasetError::Kind::schema, "", "dataset must be a JSON object");
  Dataset ds;
  ds.schema_version = detail::required<int>(doc, "schema_version", "");
  if (ds.schema_version != kSchemaVersion)
    throw DatasetError(DatasetError::Kind::schema, "", "unsupported schema_version " + std::to_string(ds.schema_version));
  if (!doc.contains("forms") || !doc.at("forms").is_array() || doc.at("forms").empty())
    throw DatasetError(DatasetError::Kind::schema, "", "'forms' must be a nonempty array");
  std::size_t i = 0;
  for (const auto& f : doc.at("forms")) ds.forms.push_back(detail::parse_form(f, i++, seed));
  return ds;
}

inline Dataset load_dataset(const std::string& path, std::uint64_t seed = 0) {
  std::ifstream in(path);
  if (!in) throw DatasetError(DatasetError::Kind::io, "", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), seed);
}

inline nlohmann::json dataset_json(const Dataset& ds) {
  using nlohmann::json;
  json forms = json::array();
  for (const auto& f : ds.forms) {
    json poly = json::array();
    for (const auto& c : f.field().min_poly()) poly.push_back(c.get_str());
    json eigen = json::array();
    for (const auto& [p, ev] : f.table())
      eigen.push_back({{"p", p}, {"a_p", detail::element_json(ev.a_p)}, {"a_p2", detail::element_json(ev.a_p2)}});
    forms.push_back({{"label", f.label()},
                     {"weight", f.weight()},
                     {"field_poly", poly},
                     {"multiplicity_one", f.multiplicity_one()},
                     {"interesting", f.interesting()},
                     {"eigen", eigen}});
  }
  return {{"schema_version", ds.schema_version}, {"forms", forms}};
}

inline std::string render_dataset(const Dataset& ds) { return dataset_json(ds).dump(2) + "\n"; }

}  // namespace siegel

#ifndef CONMAP_MAP_SPEC_IO_HPP
#define CONMAP_MAP_SPEC_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "consistent_map.hpp"

namespace conmap {

using json = nlohmann::json;

// ---------------------------------------------------------------------
// JSON map-spec format. Rationals are "p/q" strings, fields are
// constant-first integer coefficient arrays of the defining polynomial,
// places are (prime, index-in-canonical-order) pairs. parse(serialize(m))
// reproduces m; serialize(parse(s)) is byte-identical on canonical input.
// ---------------------------------------------------------------------

inline json rat_to_json(const Rat& r) { return format_rat(r); }

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<long>()));
  if (!j.is_string()) fail(errc::parse_error, "expected a rational string");
  return parse_rat(j.get<std::string>());
}

inline json poly_to_json(const IntPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

inline IntPoly poly_from_json(const json& j) {
  if (!j.is_array()) fail(errc::parse_error, "expected a coefficient array");
  std::vector<Int> c;
  for (const auto& v : j) {
    if (v.is_number_integer()) c.emplace_back(v.get<long>());
    else if (v.is_string()) {
      try {
        c.emplace_back(v.get<std::string>());
      } catch (const std::invalid_argument&) {
        fail(errc::parse_error, "bad integer literal in coefficient array");
      }
    } else fail(errc::parse_error, "bad coefficient entry");
  }
  return IntPoly(std::move(c));
}

inline json coords_to_json(const FieldElement& a) {
  json out = json::array();
  for (const auto& v : a.coords()) out.push_back(rat_to_json(v));
  return out;
}

inline FieldElement coords_from_json(const NumberField& k, const json& j) {
  if (!j.is_array()) fail(errc::parse_error, "expected a coordinate array");
  std::vector<Rat> c;
  for (const auto& v : j) c.push_back(rat_from_json(v));
  if (static_cast<int>(c.size()) > k.degree())
    fail(errc::parse_error, "coordinate vector longer than the field degree");
  return element_from_coords(k, std::move(c));
}

// "[a0,a1,...]" with rational entries; a bare rational stands for [r].
inline FieldElement parse_element(const NumberField& k, const std::string& text) {
  std::string s = text;
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) fail(errc::parse_error, "empty element literal");
  std::vector<Rat> c;
  if (s.front() != '[') {
    c.push_back(parse_rat(s));
  } else {
    if (s.back() != ']') fail(errc::parse_error, "unterminated coordinate vector");
    std::string body = s.substr(1, s.size() - 2);
    size_t start = 0;
    while (start <= body.size() && !body.empty()) {
      size_t comma = body.find(',', start);
      std::string cur = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
      trim(cur);
      if (cur.empty()) fail(errc::parse_error, "empty coordinate");
      c.push_back(parse_rat(cur));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (static_cast<int>(c.size()) > k.degree())
    fail(errc::parse_error, "coordinate vector longer than the field degree");
  return element_from_coords(k, std::move(c));
}

inline json prime_values_to_json(const DegreeProportionalSpec& s) {
  json out = json::object();
  json values = json::array();
  for (const auto& [p, v] : s.values) values.push_back(json::array({p.get_str(), rat_to_json(v)}));
  out["values"] = values;
  if (s.default_value) out["default"] = rat_to_json(*s.default_value);
  return out;
}

inline DegreeProportionalSpec prime_values_from_json(const json& j) {
  if (!j.is_object()) fail(errc::parse_error, "expected a prime-value object");
  DegreeProportionalSpec s;
  if (j.contains("values")) {
    for (const auto& e : j.at("values")) {
      if (!e.is_array() || e.size() != 2) fail(errc::parse_error, "bad prime-value pair");
      Int p = e[0].is_string() ? Int(e[0].get<std::string>()) : Int(e[0].get<long>());
      s.values[p] = rat_from_json(e[1]);
    }
  }
  if (j.contains("default")) s.default_value = rat_from_json(j.at("default"));
  return s;
}

inline json place_table_to_json(const std::map<PlaceRef, Rat>& t) {
  json out = json::array();
  for (const auto& [r, v] : t) {
    json e = json::object();
    e["prime"] = r.p.get_str();
    e["index"] = r.index;
    e["value"] = rat_to_json(v);
    out.push_back(e);
  }
  return out;
}

inline std::map<PlaceRef, Rat> place_table_from_json(const json& j) {
  if (!j.is_array()) fail(errc::parse_error, "expected a place table array");
  std::map<PlaceRef, Rat> t;
  for (const auto& e : j) {
    PlaceRef r;
    r.p = e.at("prime").is_string() ? Int(e.at("prime").get<std::string>())
                                    : Int(e.at("prime").get<long>());
    r.index = e.at("index").get<int>();
    if (!t.emplace(r, rat_from_json(e.at("value"))).second)
      fail(errc::parse_error, "duplicate place in table");
  }
  return t;
}

inline json map_to_json(const ConsistentMap& c);

namespace detail {

inline json tower_to_json(const TowerData& d) {
  json out = json::object();
  out["kind"] = "tower";
  json fields = json::array();
  for (const auto& f : d.fields) fields.push_back(poly_to_json(f.poly()));
  out["fields"] = fields;
  json images = json::array();
  for (const auto& e : d.steps) images.push_back(coords_to_json(e.generator_image()));
  out["images"] = images;
  out["q"] = d.q.get_str();
  out["x"] = prime_values_to_json(d.x);
  out["depth"] = static_cast<int>(d.fields.size());
  json tables = json::array();
  for (const auto& t : d.tables) tables.push_back(place_table_to_json(t));
  out["tables"] = tables;
  return out;
}

} // namespace detail

inline json map_to_json(const ConsistentMap& c) {
  switch (c.kind()) {
    case MapKind::degree_proportional: {
      const auto& d = std::get<DegreeProportionalSpec>(c.data());
      json out = prime_values_to_json(d);
      out["kind"] = "degree_proportional";
      return out;
    }
    case MapKind::galois_invariant_base: {
      const auto& d = std::get<GaloisInvariantBaseData>(c.data());
      json out = json::object();
      out["kind"] = "galois_invariant_base";
      out["base_field"] = poly_to_json(d.base.poly());
      out["table"] = place_table_to_json(d.table);
      out["background"] = prime_values_to_json(d.background);
      return out;
    }
    case MapKind::tower: return detail::tower_to_json(std::get<TowerData>(c.data()));
    case MapKind::linear_combination: {
      const auto& d = std::get<LinearCombinationData>(c.data());
      json out = json::object();
      out["kind"] = "linear_combination";
      json terms = json::array();
      for (const auto& [r, m] : d.terms) {
        json t = json::object();
        t["coeff"] = rat_to_json(r);
        t["map"] = map_to_json(m);
        terms.push_back(t);
      }
      out["terms"] = terms;
      return out;
    }
    case MapKind::raw_table:
      fail(errc::bad_argument, "raw place tables have no serialized form");
  }
  fail(errc::bad_argument, "unknown map kind");
}

inline ConsistentMap map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) fail(errc::parse_error, "map spec must carry a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "degree_proportional") {
    return degree_proportional_map(prime_values_from_json(j));
  }
  if (kind == "galois_invariant_base") {
    NumberField base = make_field(poly_from_json(j.at("base_field")));
    auto table = place_table_from_json(j.at("table"));
    for (const auto& [r, v] : table) {
      (void)v;
      auto ws = places_above(base, r.p); // rejects unsupported primes
      if (r.index < 0 || r.index >= static_cast<int>(ws.size()))
        fail(errc::parse_error, "table place index out of range");
    }
    return galois_invariant_base_map(base, std::move(table),
                                     prime_values_from_json(j.at("background")));
  }
  if (kind == "tower") {
    TowerData d;
    for (const auto& fj : j.at("fields")) d.fields.push_back(make_field(poly_from_json(fj)));
    const auto& images = j.at("images");
    if (images.size() + 1 != d.fields.size()) fail(errc::parse_error, "tower image count mismatch");
    for (size_t i = 0; i < images.size(); ++i) {
      FieldElement img = coords_from_json(d.fields[i + 1], images[i]);
      d.steps.emplace_back(d.fields[i], d.fields[i + 1], img);
    }
    d.q = j.at("q").is_string() ? Int(j.at("q").get<std::string>()) : Int(j.at("q").get<long>());
    d.x = prime_values_from_json(j.at("x"));
    for (const auto& tj : j.at("tables")) d.tables.push_back(place_table_from_json(tj));
    return tower_map_from_data(std::move(d)); // re-verifies the ascent identity
  }
  if (kind == "linear_combination") {
    std::vector<std::pair<Rat, ConsistentMap>> terms;
    for (const auto& tj : j.at("terms"))
      terms.emplace_back(rat_from_json(tj.at("coeff")), map_from_json(tj.at("map")));
    return linear_combination_map(std::move(terms));
  }
  fail(errc::parse_error, "unknown map kind: " + kind);
}

inline std::string serialize_map(const ConsistentMap& c) { return map_to_json(c).dump(2) + "\n"; }

inline ConsistentMap parse_map(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, std::string("bad JSON: ") + e.what());
  }
  return map_from_json(j);
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, std::string("bad JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline ConsistentMap load_map_file(const std::string& path) {
  return map_from_json(load_json_file(path));
}

// ---------------------------------------------------------------------
// Tower/verification spec: a list of fields, embeddings between them, the
// primes to probe, and the bases whose Galois-invariance should be checked.
// ---------------------------------------------------------------------

struct TowerSpec {
  std::vector<NumberField> fields;
  struct Edge {
    int from = 0;
    int to = 0;
    FieldEmbedding embedding;
  };
  std::vector<Edge> edges;
  std::vector<Int> primes;
  std::vector<int> invariance_bases; // indices into fields
};

inline TowerSpec tower_spec_from_json(const json& j) {
  TowerSpec spec;
  for (const auto& fj : j.at("fields")) spec.fields.push_back(make_field(poly_from_json(fj)));
  for (const auto& ej : j.at("embeddings")) {
    TowerSpec::Edge e;
    e.from = ej.at("from").get<int>();
    e.to = ej.at("to").get<int>();
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(spec.fields.size()) ||
        e.to >= static_cast<int>(spec.fields.size()))
      fail(errc::parse_error, "embedding endpoint out of range");
    FieldElement img = coords_from_json(spec.fields[static_cast<size_t>(e.to)], ej.at("image"));
    e.embedding = FieldEmbedding(spec.fields[static_cast<size_t>(e.from)],
                                 spec.fields[static_cast<size_t>(e.to)], img);
    spec.edges.push_back(std::move(e));
  }
  if (j.contains("primes"))
    for (const auto& pj : j.at("primes"))
      spec.primes.push_back(pj.is_string() ? Int(pj.get<std::string>()) : Int(pj.get<long>()));
  if (j.contains("invariance_bases"))
    for (const auto& bj : j.at("invariance_bases")) {
      int b = bj.get<int>();
      if (b < 0 || b >= static_cast<int>(spec.fields.size()))
        fail(errc::parse_error, "invariance base index out of range");
      spec.invariance_bases.push_back(b);
    }
  return spec;
}

} // namespace conmap

#endif

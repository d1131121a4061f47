#ifndef CONMAP_CLI_HPP
#define CONMAP_CLI_HPP

#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "constructions.hpp"
#include "map_spec_io.hpp"
#include "summatory.hpp"

namespace conmap {
namespace cli {

// Exit codes: 0 success, 2 domain error (unsupported prime/field, failed
// search), 3 spec/usage parse error.
struct CommandResult {
  int exit_code = 0;
  json payload;
};

namespace detail {

struct GlobalOptions {
  bool approx = false;
  long search_bound = kDefaultSinglePlaceBound;
  std::string probe_corpus;
};

inline std::pair<Int, Int> parse_prime_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) fail(errc::parse_error, "prime range must be lo:hi");
  try {
    return {Int(text.substr(0, colon)), Int(text.substr(colon + 1))};
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad prime range: " + text);
  }
}

inline json cmd_field(const GlobalOptions&, const std::string& field_spec,
                      const std::string& range) {
  NumberField k = make_field(field_spec);
  json out = json::object();
  out["defining_polynomial"] = poly_to_json(k.poly());
  out["degree"] = k.degree();
  out["discriminant"] = k.disc().get_str();
  auto [lo, hi] = parse_prime_range(range);
  json supported = json::array(), unsupported = json::array();
  Int p = lo - 1;
  while (true) {
    p = next_prime_after(p);
    if (p > hi) break;
    try {
      places_above(k, p);
      supported.push_back(p.get_str());
    } catch (const error& e) {
      if (e.code() != errc::non_maximal_order) throw;
      unsupported.push_back(p.get_str());
    }
  }
  out["primes"] = json::object();
  out["primes"]["supported"] = supported;
  out["primes"]["unsupported"] = unsupported;
  return out;
}

inline json place_to_json(const Place& w) {
  json e = json::object();
  e["index"] = w.index();
  e["e"] = w.ramification();
  e["f"] = w.residue_degree();
  e["local_factor"] = poly_to_json(w.local_factor());
  return e;
}

inline json cmd_places(const GlobalOptions&, const std::string& field_spec, const std::string& ps) {
  NumberField k = make_field(field_spec);
  Int p;
  try {
    p = Int(ps);
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad prime: " + ps);
  }
  auto ws = places_above(k, p);
  json out = json::object();
  out["prime"] = p.get_str();
  out["degree"] = k.degree();
  json entries = json::array();
  for (const auto& w : ws) entries.push_back(place_to_json(w));
  out["places"] = entries;
  return out;
}

inline json cmd_phi(const GlobalOptions& g, const std::string& map_file,
                    const std::string& field_spec, const std::string& element_spec,
                    long root_index) {
  ConsistentMap c = load_map_file(map_file);
  NumberField k = make_field(field_spec);
  FieldElement a = parse_element(k, element_spec);
  EvaluationContext ctx;
  ctx.search_bound = g.search_bound;
  Rat v = phi(c, a, root_index, ctx);
  json out = json::object();
  out["value"] = rat_to_json(v);
  if (g.approx) out["approx"] = v.get_d();
  return out;
}

inline json cmd_omega(const GlobalOptions& g, const std::string& field_spec,
                      const std::string& element_spec) {
  NumberField k = make_field(field_spec);
  FieldElement a = parse_element(k, element_spec);
  Rat v = omega_canonical(a);
  json out = json::object();
  out["omega_canonical"] = rat_to_json(v);
  out["norm"] = rat_to_json(field_norm(a));
  if (g.approx) out["approx"] = v.get_d();
  return out;
}

inline json cmd_snorm(const GlobalOptions& g, const std::string& field_spec,
                      const std::string& element_spec, long root_index) {
  NumberField k = make_field(field_spec);
  FieldElement a = parse_element(k, element_spec);
  LogLinearValue v = snorm(a, root_index);
  json out = json::object();
  json coeffs = json::array();
  for (const auto& [p, r] : v.coefficients())
    coeffs.push_back(json::array({p.get_str(), rat_to_json(r)}));
  out["coefficients"] = coeffs;
  if (g.approx) out["approx"] = v.to_double();
  return out;
}

inline EvaluationContext context_for(const TowerSpec& spec, long search_bound) {
  EvaluationContext ctx;
  ctx.search_bound = search_bound;
  for (const auto& e : spec.edges) ctx.embeddings.push_back(e.embedding);
  // close under composition so evaluation can hop across chained edges
  bool grew = true;
  while (grew) {
    grew = false;
    const auto current = ctx.embeddings;
    for (const auto& a : current)
      for (const auto& b : current) {
        if (!a.target().same_as(b.source())) continue;
        if (a.source().same_as(b.target())) continue;
        if (ctx.find(a.source(), b.target())) continue;
        ctx.embeddings.push_back(compose(a, b));
        grew = true;
      }
  }
  return ctx;
}

inline json cmd_verify(const GlobalOptions& g, const std::string& map_file,
                       const std::string& tower_file) {
  ConsistentMap c = load_map_file(map_file);
  TowerSpec spec = tower_spec_from_json(load_json_file(tower_file));
  if (!g.probe_corpus.empty()) {
    json corpus = load_json_file(g.probe_corpus);
    if (corpus.contains("primes"))
      for (const auto& pj : corpus.at("primes"))
        spec.primes.push_back(pj.is_string() ? Int(pj.get<std::string>()) : Int(pj.get<long>()));
  }
  if (spec.primes.empty()) fail(errc::parse_error, "no probe primes given");
  EvaluationContext ctx = context_for(spec, g.search_bound);

  json checks = json::array();
  bool all = true;
  auto supported = [](const NumberField& k, const Int& p) {
    try {
      places_above(k, p);
      return true;
    } catch (const error& e) {
      if (e.code() == errc::non_maximal_order) return false;
      throw;
    }
  };

  for (size_t ei = 0; ei < spec.edges.size(); ++ei) {
    const auto& edge = spec.edges[ei];
    for (const auto& p : spec.primes) {
      if (!supported(edge.embedding.source(), p) || !supported(edge.embedding.target(), p)) {
        json rec = json::object();
        rec["type"] = "skipped";
        rec["edge"] = json::array({edge.from, edge.to});
        rec["prime"] = p.get_str();
        rec["reason"] = "unsupported prime";
        checks.push_back(rec);
        continue;
      }
      for (const auto& v : places_above(edge.embedding.source(), p)) {
        auto cc = check_consistency(c, edge.embedding, v, ctx);
        json rec = json::object();
        rec["type"] = "consistency";
        rec["edge"] = json::array({edge.from, edge.to});
        rec["prime"] = p.get_str();
        rec["place_index"] = v.index();
        rec["lhs"] = rat_to_json(cc.lhs);
        rec["rhs"] = rat_to_json(cc.rhs);
        rec["pass"] = cc.consistent;
        all = all && cc.consistent;
        checks.push_back(rec);
      }
    }
  }

  for (int b : spec.invariance_bases) {
    for (const auto& edge : spec.edges) {
      if (edge.from != b) continue;
      for (const auto& p : spec.primes) {
        if (!supported(edge.embedding.source(), p) || !supported(edge.embedding.target(), p))
          continue;
        for (const auto& v : places_above(edge.embedding.source(), p)) {
          auto ic = check_galois_invariance(c, edge.embedding, v, ctx);
          json rec = json::object();
          rec["type"] = "invariance";
          rec["base"] = b;
          rec["edge"] = json::array({edge.from, edge.to});
          rec["prime"] = p.get_str();
          rec["place_index"] = v.index();
          rec["pass"] = ic.invariant;
          all = all && ic.invariant;
          if (!ic.invariant) {
            rec["witness"] = json::object();
            rec["witness"]["place_index"] = ic.first_violation->w.index();
            rec["witness"]["got"] = rat_to_json(ic.first_violation->got);
            rec["witness"]["expected"] = rat_to_json(ic.first_violation->expected);
          }
          checks.push_back(rec);
        }
      }
    }
  }

  json out = json::object();
  out["all_passed"] = all;
  out["checks"] = checks;
  return out;
}

inline json cmd_special_element(const GlobalOptions& g, const std::string& field_spec,
                                const std::string& ps, int index) {
  NumberField k = make_field(field_spec);
  Int p;
  try {
    p = Int(ps);
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad prime: " + ps);
  }
  Place w = place_by_index(k, p, index);
  auto sp = single_place_element(k, w, g.search_bound);
  json out = json::object();
  out["beta"] = coords_to_json(sp.beta);
  out["k"] = sp.k;
  out["norm_abs"] = sp.norm_abs.get_str();
  out["place"] = place_to_json(w);
  return out;
}

inline json scheme_to_json(const PerturbationScheme& s) {
  json out = json::array();
  for (const auto& e : s.entries) {
    json rec = json::object();
    rec["subfield"] = poly_to_json(e.subfield.source().poly());
    rec["prime"] = e.base_place.prime().get_str();
    rec["base_place_index"] = e.base_place.index();
    json eps = json::array();
    for (const auto& [w, v] : e.epsilons)
      eps.push_back(json::object({{"index", w.index()}, {"epsilon", rat_to_json(v)}}));
    rec["epsilons"] = eps;
    out.push_back(rec);
  }
  return out;
}

inline json cmd_build_map(const GlobalOptions& g, const std::string& recipe_file,
                          const std::string& output) {
  json recipe = load_json_file(recipe_file);
  if (!recipe.contains("construction")) fail(errc::parse_error, "recipe must name a construction");
  const std::string kind = recipe.at("construction").get<std::string>();
  json out = json::object();
  ConsistentMap c;
  if (kind == "canonical_omega") {
    c = canonical_omega_map();
  } else if (kind == "qi_worked_example") {
    c = qi_worked_example();
  } else if (kind == "degree_proportional") {
    c = degree_proportional_map(prime_values_from_json(recipe));
  } else if (kind == "invariant_base") {
    json spec = json::object();
    spec["kind"] = "galois_invariant_base";
    spec["base_field"] = recipe.at("base_field");
    spec["table"] = recipe.at("table");
    spec["background"] = recipe.at("background");
    c = map_from_json(spec);
  } else if (kind == "perturbed_open_subgroup") {
    NumberField k = make_field(poly_from_json(recipe.at("field")));
    std::vector<FieldEmbedding> subs;
    for (const auto& sj : recipe.at("subfields")) {
      NumberField ki = make_field(poly_from_json(sj.at("poly")));
      subs.emplace_back(ki, k, coords_from_json(k, sj.at("image")));
    }
    DegreeProportionalSpec x = prime_values_from_json(recipe.at("x"));
    long bound = recipe.value("prime_search_bound", 10000);
    auto [map, scheme] = perturbed_open_subgroup_map(k, subs, x, bound);
    c = map;
    out["scheme"] = scheme_to_json(scheme);
  } else if (kind == "tower_prefix") {
    std::vector<NumberField> fields;
    for (const auto& fj : recipe.at("fields")) fields.push_back(make_field(poly_from_json(fj)));
    std::vector<FieldEmbedding> chain;
    const auto& images = recipe.at("images");
    if (images.size() + 1 != fields.size()) fail(errc::parse_error, "image count mismatch");
    for (size_t i = 0; i < images.size(); ++i)
      chain.emplace_back(fields[i], fields[i + 1], coords_from_json(fields[i + 1], images[i]));
    Int q = recipe.at("q").is_string() ? Int(recipe.at("q").get<std::string>())
                                       : Int(recipe.at("q").get<long>());
    DegreeProportionalSpec x = prime_values_from_json(recipe.at("x"));
    int depth = recipe.value("depth", static_cast<int>(fields.size()));
    c = tower_map_prefix(chain, q, x, depth);
  } else {
    fail(errc::parse_error, "unknown construction: " + kind);
  }
  out["map"] = map_to_json(c);
  if (!output.empty()) {
    std::ofstream f(output);
    if (!f) fail(errc::bad_argument, "cannot write " + output);
    f << serialize_map(c);
    out["written"] = output;
  }
  (void)g;
  return out;
}

inline json cmd_chowla(const GlobalOptions&, const std::string& poly_spec, long x) {
  IntPoly f = parse_poly(poly_spec);
  json out = json::object();
  out["polynomial"] = poly_to_json(f);
  out["x"] = x;
  out["value"] = summatory_chowla(f, x);
  return out;
}

} // namespace detail

inline CommandResult run(const std::vector<std::string>& args) {
  detail::GlobalOptions g;
  CLI::App app{"exact computation with consistent maps on number-field places"};
  app.require_subcommand(1);
  app.add_flag("--approx", g.approx, "append decimal renderings to exact values");
  app.add_option("--search-bound", g.search_bound, "lattice search bound for single-place elements");
  app.add_option("--probe-corpus", g.probe_corpus, "extra probe primes for verify (JSON file)");

  std::string field_spec, element_spec, map_file, tower_file, recipe_file, output;
  std::string prime = "2", prime_range = "2:50", poly_spec;
  long root_index = 1, x = 1;
  int place_index = 0;

  auto* c_field = app.add_subcommand("field", "field diagnostics");
  c_field->add_option("poly", field_spec)->required();
  c_field->add_option("--prime-range", prime_range, "diagnostic prime range lo:hi");

  auto* c_places = app.add_subcommand("places", "places above a prime");
  c_places->add_option("poly", field_spec)->required();
  c_places->add_option("prime", prime)->required();

  auto* c_phi = app.add_subcommand("phi", "evaluate the functional of a map spec");
  c_phi->add_option("map", map_file)->required();
  c_phi->add_option("poly", field_spec)->required();
  c_phi->add_option("element", element_spec)->required();
  c_phi->add_option("--root-index", root_index);

  auto* c_omega = app.add_subcommand("omega", "canonical prime omega value");
  c_omega->add_option("poly", field_spec)->required();
  c_omega->add_option("element", element_spec)->required();

  auto* c_snorm = app.add_subcommand("snorm", "S-norm as a log-linear value");
  c_snorm->add_option("poly", field_spec)->required();
  c_snorm->add_option("element", element_spec)->required();
  c_snorm->add_option("--root-index", root_index);

  auto* c_verify = app.add_subcommand("verify", "consistency / invariance checks over a tower");
  c_verify->add_option("map", map_file)->required();
  c_verify->add_option("tower", tower_file)->required();

  auto* c_special = app.add_subcommand("special-element", "single-place element search");
  c_special->add_option("poly", field_spec)->required();
  c_special->add_option("prime", prime)->required();
  c_special->add_option("index", place_index)->required();

  auto* c_build = app.add_subcommand("build-map", "emit a map spec from a construction recipe");
  c_build->add_option("recipe", recipe_file)->required();
  c_build->add_option("-o,--output", output);

  auto* c_chowla = app.add_subcommand("chowla", "summatory (-1)^Omega(f(n))");
  c_chowla->add_option("poly", poly_spec)->required();
  c_chowla->add_option("x", x)->required();

  for (auto* sub : {c_field, c_places, c_phi, c_omega, c_snorm, c_verify, c_special, c_build,
                    c_chowla})
    sub->fallthrough();

  CommandResult result;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (c_field->parsed()) result.payload = detail::cmd_field(g, field_spec, prime_range);
    else if (c_places->parsed()) result.payload = detail::cmd_places(g, field_spec, prime);
    else if (c_phi->parsed())
      result.payload = detail::cmd_phi(g, map_file, field_spec, element_spec, root_index);
    else if (c_omega->parsed()) result.payload = detail::cmd_omega(g, field_spec, element_spec);
    else if (c_snorm->parsed())
      result.payload = detail::cmd_snorm(g, field_spec, element_spec, root_index);
    else if (c_verify->parsed()) result.payload = detail::cmd_verify(g, map_file, tower_file);
    else if (c_special->parsed())
      result.payload = detail::cmd_special_element(g, field_spec, prime, place_index);
    else if (c_build->parsed()) result.payload = detail::cmd_build_map(g, recipe_file, output);
    else if (c_chowla->parsed()) result.payload = detail::cmd_chowla(g, poly_spec, x);
  } catch (const CLI::ParseError& e) {
    result.exit_code = 3;
    result.payload = json::object({{"error", e.what()}, {"kind", "usage"}});
    return result;
  } catch (const error& e) {
    // malformed specs (bad JSON, reducible or non-monic defining polynomials,
    // degree cap) are parse failures; everything else is a domain error
    const bool spec_error = e.code() == errc::parse_error || e.code() == errc::reducible ||
                            e.code() == errc::not_monic || e.code() == errc::degree_too_large;
    result.exit_code = spec_error ? 3 : 2;
    result.payload = json::object({{"error", e.what()}});
    return result;
  }
  return result;
}

} // namespace cli
} // namespace conmap

#endif

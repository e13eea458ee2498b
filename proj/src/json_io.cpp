#include "heckelab/json_io.hpp"

#include "heckelab/numeric.hpp"

namespace hecke {

using nlohmann::json;

json num(const mpz_class& v) { return v.get_str(); }
json num(long long v) { return std::to_string(v); }

mpz_class mpz_from(const json& j) {
  if (j.is_number_integer()) return mpz_ll(j.get<long long>());
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
      fail(Kind::InvalidInput, "not a decimal integer: " + j.get<std::string>());
    }
  }
  fail(Kind::InvalidInput, "expected an integer or a decimal string");
}

long long ll_from(const json& j) { return to_ll(mpz_from(j)); }

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.n; r++) {
    json row = json::array();
    for (int c = 0; c < m.n; c++) row.push_back(num(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from(const json& j) {
  if (!j.is_array() || j.empty() || j.size() > 8)
    fail(Kind::InvalidInput, "matrix must be a non-empty array of rows");
  int n = (int)j.size();
  IntMatrix m(n);
  for (int r = 0; r < n; r++) {
    if (!j[r].is_array() || (int)j[r].size() != n)
      fail(Kind::InvalidInput, "matrix rows must all have the same length");
    for (int c = 0; c < n; c++) m.at(r, c) = mpz_from(j[r][c]);
  }
  return m;
}

json vec_json(const Vec2& v) { return json::array({num(v[0]), num(v[1])}); }

Vec2 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(Kind::InvalidInput, "vector must be an array of two integers");
  return Vec2{mpz_from(j[0]), mpz_from(j[1])};
}

json snf_json(const SnfDecomposition& s) {
  json d = json::array();
  for (int t = 0; t < s.d.n; t++) d.push_back(num(s.d.at(t, t)));
  return json{{"d", d}, {"u", matrix_json(s.u)}, {"v", matrix_json(s.v)}};
}

json hnf_json(const HnfDecomposition& h) {
  return json{{"h", matrix_json(h.h)}, {"x", matrix_json(h.x)}};
}

json gl_coset_json(const GlCoset& c) {
  return json{{"divisors", json::array({num(c.d1), num(c.d2)})}};
}

GlCoset gl_coset_from(const json& j) {
  if (!j.is_object() || !j.contains("divisors") || !j["divisors"].is_array() ||
      j["divisors"].size() != 2)
    fail(Kind::InvalidInput, "expected {divisors: [d1, d2]}");
  return GlCoset{mpz_from(j["divisors"][0]), mpz_from(j["divisors"][1])};
}

json gl_element_json(const GlHeckeElement& e) {
  json terms = json::array();
  for (const auto& [c, m] : e.terms)
    terms.push_back(json{{"divisors", json::array({num(c.d1), num(c.d2)})},
                         {"coeff", num(m)}});
  json out{{"where", e.where == Locality::Global ? "global" : "local"},
           {"terms", terms}};
  if (e.where == Locality::Local) out["p"] = num(e.p);
  return out;
}

json heis_element_json(const HeisElement& x) {
  return json{{"mat", matrix_json(x.mat)}, {"vec", vec_json(x.vec)}};
}

HeisElement heis_element_from(const json& j) {
  if (!j.is_object() || !j.contains("mat") || !j.contains("vec"))
    fail(Kind::InvalidInput, "expected {mat: [[..]], vec: [..]}");
  IntMatrix m = matrix_from(j["mat"]);
  if (m.n != 2) fail(Kind::InvalidInput, "matrix part must be 2x2");
  return HeisElement{m, vec_from(j["vec"])};
}

json heis_coset_json(const HeisDoubleCoset& c) {
  return json{{"d", json::array({num(c.d1), num(c.d2)})},
              {"v", json::array({num(c.v1), num(c.v2)})}};
}

HeisDoubleCoset heis_coset_from(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("v") ||
      !j["d"].is_array() || j["d"].size() != 2 || !j["v"].is_array() ||
      j["v"].size() != 2)
    fail(Kind::InvalidInput, "expected {d: [d1, d2], v: [v1, v2]}");
  return HeisDoubleCoset{ll_from(j["d"][0]), ll_from(j["d"][1]),
                         ll_from(j["v"][0]), ll_from(j["v"][1])};
}

json local_params_json(const HeisLocalParams& c) {
  return json{{"p", num(c.p)},
              {"l", num((long long)c.l)},
              {"k", num((long long)c.k)},
              {"j", num((long long)c.j)},
              {"i", num((long long)c.i)}};
}

HeisLocalParams local_params_from(const json& j) {
  if (!j.is_object())
    fail(Kind::InvalidInput, "expected {p, l, k, j, i}");
  for (const char* key : {"p", "l", "k", "j", "i"})
    if (!j.contains(key))
      fail(Kind::InvalidInput, std::string("missing local parameter ") + key);
  return HeisLocalParams{ll_from(j["p"]), (int)ll_from(j["l"]),
                         (int)ll_from(j["k"]), (int)ll_from(j["j"]),
                         (int)ll_from(j["i"])};
}

json hecke_element_json(const HeisHeckeElement& e) {
  json terms = json::array();
  if (e.where == Locality::Global) {
    for (const auto& [c, m] : e.gterms)
      terms.push_back(json{{"coset", heis_coset_json(c)}, {"coeff", num(m)}});
    return json{{"where", "global"}, {"terms", terms}};
  }
  for (const auto& [c, m] : e.lterms)
    terms.push_back(json{{"class", local_params_json(c)}, {"coeff", num(m)}});
  return json{{"where", "local"}, {"p", num(e.p)}, {"terms", terms}};
}

HeisHeckeElement hecke_element_from(const json& j) {
  if (!j.is_object() || !j.contains("where") || !j.contains("terms") ||
      !j["terms"].is_array())
    fail(Kind::InvalidInput, "expected {where, terms}");
  HeisHeckeElement e;
  if (j["where"] == "global") {
    for (const json& t : j["terms"])
      e.gterms[heis_coset_from(t.at("coset"))] = mpz_from(t.at("coeff"));
  } else if (j["where"] == "local") {
    e.where = Locality::Local;
    e.p = ll_from(j.at("p"));
    for (const json& t : j["terms"])
      e.lterms[local_params_from(t.at("class"))] = mpz_from(t.at("coeff"));
  } else {
    fail(Kind::InvalidInput, "where must be global or local");
  }
  return e;
}

json adelic_coset_json(const AdelicCoset& c) {
  json support = json::array();
  for (const auto& [p, params] : c) support.push_back(local_params_json(params));
  return json{{"support", support}};
}

AdelicCoset adelic_coset_from(const json& j) {
  if (!j.is_object() || !j.contains("support") || !j["support"].is_array())
    fail(Kind::InvalidInput, "expected {support: [class...]}");
  std::vector<HeisLocalParams> comps;
  for (const json& t : j["support"]) comps.push_back(local_params_from(t));
  return adelic_coset(comps);
}

json adelic_element_json(const AdelicHeckeElement& e) {
  json terms = json::array();
  for (const auto& [c, m] : e.terms)
    terms.push_back(
        json{{"support", adelic_coset_json(c)["support"]}, {"coeff", num(m)}});
  return json{{"terms", terms}};
}

json orbit_report_json(const OrbitReport& r) {
  return json{{"p", num(r.p)},
              {"l", num((long long)r.l)},
              {"k", num((long long)r.k)},
              {"i", num((long long)r.i)},
              {"j", num((long long)r.j)},
              {"group_order", num(r.group_order)},
              {"orbit_size", num(r.orbit_size)},
              {"stab_size", num(r.stab_size)},
              {"n", num((long long)r.n)},
              {"fiber_count", num(r.fiber_count)},
              {"formula_count", num(r.formula_count)},
              {"match", r.match}};
}

json surjectivity_report_json(const SurjectivityReport& r) {
  return json{{"p", num(r.p)},
              {"l", num((long long)r.l)},
              {"k", num((long long)r.k)},
              {"initial_bound", num(r.initial_bound)},
              {"final_bound", num(r.final_bound)},
              {"seed_matrices", num(r.seed_matrices)},
              {"closure_size", num(r.closure_size)},
              {"detpm_order", num(r.detpm_order)},
              {"det1_closure_size", num(r.det1_closure_size)},
              {"det1_order", num(r.det1_order)},
              {"surjective", r.surjective}};
}

json certificate_json(const Certificate& c) {
  json fiber = json::array();
  for (const HeisDoubleCoset& g : c.fiber) fiber.push_back(heis_coset_json(g));
  return json{{"p", num(c.p)},
              {"params",
               {{"l", num((long long)c.params.l)},
                {"k", num((long long)c.params.k)},
                {"j", num((long long)c.params.j)},
                {"i", num((long long)c.params.i)}}},
              {"fiber", fiber},
              {"fiber_size", num((long long)c.fiber.size())},
              {"distinguished", heis_coset_json(c.distinguished)},
              {"checks",
               {{"fiber_size_expected", num(c.fiber_size_expected)},
                {"formula", c.formula},
                {"fibers_scanned", num(c.fibers_scanned)},
                {"fiber_partition", c.fiber_partition},
                {"equal_weights_violation", c.equal_weights_violation}}},
              {"verified", c.verified}};
}

json error_json(const Error& e) {
  return json{{"error", {{"kind", kind_name(e.kind())}, {"message", e.message()}}}};
}

std::string dump_stable(const json& j) { return j.dump(2) + "\n"; }

} // namespace hecke

// JSON front end for the library: every subcommand prints one JSON document
// (errors included) and encodes the outcome in the exit status.
// 0 = success, 1 = verification mismatch, 2 = invalid input, 3 = budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heckelab/json_io.hpp"
#include "heckelab/verify.hpp"

using namespace hecke;
using nlohmann::json;

namespace {

Budget resolve_budget(long long flag) {
  long long n = flag;
  if (n <= 0) {
    if (const char* env = std::getenv("HECKE_BUDGET")) {
      try {
        n = std::stoll(env);
      } catch (...) {
        fail(Kind::InvalidInput, "HECKE_BUDGET must be an integer");
      }
    }
  }
  Budget b;
  if (n > 0) {
    b.products = n;
    b.points = n;
    b.tuples = n <= std::numeric_limits<long long>::max() / 100 ? 100 * n : n;
  }
  return b;
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << dump_stable(j);
  } else {
    std::ofstream f(out);
    if (!f) fail(Kind::InvalidInput, "cannot open output file " + out);
    f << dump_stable(j);
  }
}

json parse_json_arg(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::parse_error& e) {
    fail(Kind::InvalidInput, std::string("bad JSON argument: ") + e.what());
  }
}

long long parse_ll(const std::string& s, const char* what) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    fail(Kind::InvalidInput, std::string("not an integer ") + what + ": " + s);
  }
}

// "p:l,k,j,i"
HeisLocalParams parse_component(const std::string& s) {
  size_t colon = s.find(':');
  if (colon == std::string::npos)
    fail(Kind::InvalidInput, "component must look like p:l,k,j,i");
  std::vector<long long> nums;
  std::string rest = s.substr(colon + 1);
  size_t pos = 0;
  while (true) {
    size_t comma = rest.find(',', pos);
    nums.push_back(parse_ll(rest.substr(pos, comma - pos), "component part"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (nums.size() != 4)
    fail(Kind::InvalidInput, "component must have four parameters l,k,j,i");
  return HeisLocalParams{parse_ll(s.substr(0, colon), "component prime"),
                         (int)nums[0], (int)nums[1], (int)nums[2],
                         (int)nums[3]};
}

std::vector<long long> parse_pset(const std::string& s) {
  std::vector<long long> out;
  size_t pos = 0;
  while (true) {
    size_t comma = s.find(',', pos);
    out.push_back(parse_ll(s.substr(pos, comma - pos), "prime"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

GlHeckeElement gl_single(const GlCoset& c, Locality where, long long p) {
  GlHeckeElement e;
  e.where = where;
  e.p = p;
  e.terms[c] = 1;
  return e;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact double coset computations: GL2 chains, the Heisenberg "
               "monoid, local orbit reports, and the fiber map certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  long long budget_flag = 0;
  std::string out_path;
  uint64_t seed = 12345;
  app.add_option("--budget", budget_flag,
                 "enumeration cap: products and points = N, tuples = 100N");
  app.add_option("--out", out_path, "write the JSON document to this file");
  app.add_option("--seed", seed, "seed for randomized representative checks");

  auto* c_snf = app.add_subcommand("snf", "elementary divisor decomposition");
  std::string snf_matrix;
  c_snf->add_option("--matrix", snf_matrix, "square integer matrix as JSON")
      ->required();

  auto* c_glc = app.add_subcommand("gl-cosets", "left cosets of a GL2 chain");
  std::string glc_d1 = "1", glc_d2 = "1";
  c_glc->add_option("--d1", glc_d1, "first divisor")->required();
  c_glc->add_option("--d2", glc_d2, "second divisor")->required();

  auto* c_glm = app.add_subcommand("gl-mul", "product of two GL2 classes");
  std::string glm_a, glm_b;
  long long glm_p = 0;
  c_glm->add_option("--a", glm_a, "first matrix as JSON")->required();
  c_glm->add_option("--b", glm_b, "second matrix as JSON")->required();
  c_glm->add_option("--local", glm_p, "work at this prime");

  auto* c_hc = app.add_subcommand("heis-canon", "canonical class of a pair");
  std::string hc_mat, hc_vec;
  long long hc_p = 0;
  c_hc->add_option("--mat", hc_mat, "matrix part as JSON")->required();
  c_hc->add_option("--vec", hc_vec, "vector part as JSON")->required();
  c_hc->add_option("--local", hc_p, "classify at this prime");

  auto* c_hm = app.add_subcommand("heis-mul", "product of two monoid classes");
  std::string hm_a, hm_b;
  long long hm_p = 0;
  c_hm->add_option("--a", hm_a, "first pair as JSON {mat, vec}")->required();
  c_hm->add_option("--b", hm_b, "second pair as JSON {mat, vec}")->required();
  c_hm->add_option("--local", hm_p, "work at this prime");

  auto* c_orb = app.add_subcommand("orbit", "orbit and stabilizer report");
  long long orb_p = 2;
  int orb_l = 0, orb_k = 0, orb_i = 0, orb_j = 0;
  c_orb->add_option("--p", orb_p, "prime")->required();
  c_orb->add_option("--l", orb_l, "row one level")->required();
  c_orb->add_option("--k", orb_k, "congruence depth")->required();
  c_orb->add_option("--i", orb_i, "vector exponent offset")->required();
  c_orb->add_option("--j", orb_j, "vector exponent")->required();

  auto* c_fib = app.add_subcommand("fiber", "global classes over an adelic "
                                            "coset");
  std::vector<std::string> fib_components;
  c_fib->add_option("--component", fib_components,
                    "local component p:l,k,j,i (repeatable)");

  auto* c_wit = app.add_subcommand("witness", "generation witnesses");
  std::string wit_kind = "nonsurjective";
  long long wit_p = 2;
  c_wit->add_option("--kind", wit_kind, "nonsurjective or noncommute")
      ->check(CLI::IsMember({"nonsurjective", "noncommute"}));
  c_wit->add_option("--p", wit_p, "prime");

  auto* c_ver = app.add_subcommand("verify", "named verification sweep");
  std::string ver_suite, ver_pset = "2,3";
  int ver_lmax = 3, ver_kmax = 4;
  long long ver_p = 2;
  c_ver->add_option("--suite", ver_suite, "one of the named sweeps")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  c_ver->add_option("--pset", ver_pset, "comma-separated primes");
  c_ver->add_option("--lmax", ver_lmax, "largest row level");
  c_ver->add_option("--kmax", ver_kmax, "largest congruence depth");
  c_ver->add_option("--p", ver_p, "prime for the single-prime sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    json j{{"error",
            {{"kind", kind_name(Kind::InvalidInput)}, {"message", e.what()}}}};
    std::cout << dump_stable(j);
    return 2;
  }

  try {
    Budget budget = resolve_budget(budget_flag);

    if (c_snf->parsed()) {
      IntMatrix m = matrix_from(parse_json_arg(snf_matrix));
      emit(snf_json(snf(m)), out_path);
      return 0;
    }

    if (c_glc->parsed()) {
      mpz_class d1 = mpz_from(json(glc_d1)), d2 = mpz_from(json(glc_d2));
      if (d1 <= 0 || d2 % d1 != 0)
        fail(Kind::InvalidInput, "need 0 < d1 and d1 | d2");
      GlCoset c{d1, d2};
      json mats = json::array();
      std::vector<IntMatrix> reps = gl_left_cosets(c, budget);
      for (const IntMatrix& m : reps) mats.push_back(matrix_json(m));
      emit(json{{"divisors", json::array({num(d1), num(d2)})},
                {"degree", num(gl_degree(c))},
                {"cosets", mats}},
           out_path);
      return 0;
    }

    if (c_glm->parsed()) {
      Locality where = glm_p > 0 ? Locality::Local : Locality::Global;
      IntMatrix a = matrix_from(parse_json_arg(glm_a));
      IntMatrix b = matrix_from(parse_json_arg(glm_b));
      GlHeckeElement prod =
          gl_mul(gl_single(gl_canonicalize(a, where, glm_p), where, glm_p),
                 gl_single(gl_canonicalize(b, where, glm_p), where, glm_p),
                 budget);
      emit(gl_element_json(prod), out_path);
      return 0;
    }

    if (c_hc->parsed()) {
      HeisElement x{matrix_from(parse_json_arg(hc_mat)),
                    vec_from(parse_json_arg(hc_vec))};
      if (x.mat.n != 2) fail(Kind::InvalidInput, "matrix part must be 2x2");
      if (hc_p > 0) {
        HeisLocalParams c = h_local_canonical(x, hc_p, budget);
        emit(json{{"class", local_params_json(c)},
                  {"degree", num(h_local_degree(c, budget))}},
             out_path);
      } else {
        HeisDoubleCoset c = h_double_coset_canonical(x, budget);
        emit(json{{"coset", heis_coset_json(c)},
                  {"degree", num(h_degree(c, budget))}},
             out_path);
      }
      return 0;
    }

    if (c_hm->parsed()) {
      HeisElement a = heis_element_from(parse_json_arg(hm_a));
      HeisElement b = heis_element_from(parse_json_arg(hm_b));
      HeisHeckeElement x, y;
      if (hm_p > 0) {
        x = hh_local_class(h_local_canonical(a, hm_p, budget));
        y = hh_local_class(h_local_canonical(b, hm_p, budget));
      } else {
        x = hh_class(h_double_coset_canonical(a, budget));
        y = hh_class(h_double_coset_canonical(b, budget));
      }
      emit(hecke_element_json(hecke_mul(x, y, budget)), out_path);
      return 0;
    }

    if (c_orb->parsed()) {
      OrbitReport rep = orbit_report(orb_p, orb_l, orb_k, orb_i, orb_j, budget);
      emit(orbit_report_json(rep), out_path);
      return rep.match ? 0 : 1;
    }

    if (c_fib->parsed()) {
      std::vector<HeisLocalParams> comps;
      for (const std::string& s : fib_components)
        comps.push_back(parse_component(s));
      AdelicCoset c = adelic_coset(comps);
      std::vector<HeisDoubleCoset> fib = eta_fiber(c, budget);
      json fiber = json::array();
      mpz_class fiber_degree = 0;
      for (const HeisDoubleCoset& g : fib) {
        fiber.push_back(heis_coset_json(g));
        fiber_degree += h_degree(g, budget);
      }
      emit(json{{"support", adelic_coset_json(c)["support"]},
                {"fiber", fiber},
                {"fiber_size", num((long long)fib.size())},
                {"degree", num(adelic_degree(adelic_class(c), budget))},
                {"fiber_degree_sum", num(fiber_degree)}},
           out_path);
      return 0;
    }

    if (c_wit->parsed()) {
      if (wit_kind == "noncommute") {
        NoncommuteWitness w = noncommutativity_witness(wit_p, budget);
        emit(json{{"u", hecke_element_json(w.u)},
                  {"v", hecke_element_json(w.v)},
                  {"uv", hecke_element_json(w.uv)},
                  {"vu", hecke_element_json(w.vu)}},
             out_path);
        return 0;
      }
      Certificate cert = nonsurjectivity_witness(wit_p, budget);
      emit(certificate_json(cert), out_path);
      return cert.verified ? 0 : 1;
    }

    if (c_ver->parsed()) {
      SuiteConfig cfg;
      cfg.pset = parse_pset(ver_pset);
      cfg.lmax = ver_lmax;
      cfg.kmax = ver_kmax;
      cfg.p = ver_p;
      cfg.seed = seed;
      cfg.budget = budget;
      SuiteResult res = run_suite(ver_suite, cfg);
      emit(json{{"suite", res.suite},
                {"cases", num(res.cases)},
                {"passed", num(res.passed)},
                {"failed", num(res.failed)},
                {"skipped", num(res.skipped)},
                {"ok", res.ok()},
                {"details", res.details}},
           out_path);
      return res.ok() ? 0 : 1;
    }

    fail(Kind::InvalidInput, "no subcommand given");
  } catch (const Error& e) {
    try {
      emit(error_json(e), out_path);
    } catch (...) {
      std::cout << dump_stable(error_json(e));
    }
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    json j{{"error",
            {{"kind", kind_name(Kind::Internal)}, {"message", e.what()}}}};
    std::cout << dump_stable(j);
    return 1;
  }
}

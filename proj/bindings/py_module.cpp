// Python module: thin exact-arithmetic wrappers over the core library.
// Integers cross the boundary as true python ints (decimal string bridge),
// so nothing is truncated.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "heckelab/gl_hecke.hpp"
#include "heckelab/heis_hecke.hpp"
#include "heckelab/verify.hpp"

namespace py = pybind11;
using namespace hecke;

namespace {

mpz_class to_mpz(py::handle h) {
  std::string s = static_cast<std::string>(py::str(h));
  try {
    return mpz_class(s, 10);
  } catch (const std::invalid_argument&) {
    throw py::value_error("not an integer: " + s);
  }
}

py::object to_py(const mpz_class& v) {
  PyObject* o = PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  if (!o) throw py::error_already_set();
  return py::reinterpret_steal<py::object>(o);
}

IntMatrix matrix_in(py::handle rows_obj) {
  py::sequence rows = py::reinterpret_borrow<py::sequence>(rows_obj);
  int n = (int)rows.size();
  if (n < 1 || n > 8) throw py::value_error("matrix must be 1x1 up to 8x8");
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    py::sequence row = py::reinterpret_borrow<py::sequence>(rows[i]);
    if ((int)row.size() != n) throw py::value_error("matrix must be square");
    for (int j = 0; j < n; ++j) m.at(i, j) = to_mpz(row[j]);
  }
  return m;
}

py::list matrix_out(const IntMatrix& m) {
  py::list rows;
  for (int i = 0; i < m.n; ++i) {
    py::list row;
    for (int j = 0; j < m.n; ++j) row.append(to_py(m.at(i, j)));
    rows.append(row);
  }
  return rows;
}

Vec2 vec_in(py::handle v_obj) {
  py::sequence v = py::reinterpret_borrow<py::sequence>(v_obj);
  if (v.size() != 2) throw py::value_error("vector must have two entries");
  return Vec2{to_mpz(v[0]), to_mpz(v[1])};
}

Budget budget_in(long long n) {
  Budget b;
  if (n > 0) {
    b.products = n;
    b.points = n;
    b.tuples = 100 * n;
  }
  return b;
}

py::tuple coset_out(const HeisDoubleCoset& c) {
  return py::make_tuple(c.d1, c.d2, c.v1, c.v2);
}

HeisDoubleCoset coset_in(py::handle t_obj) {
  py::sequence t = py::reinterpret_borrow<py::sequence>(t_obj);
  if (t.size() != 4) throw py::value_error("coset label is (d1, d2, v1, v2)");
  return HeisDoubleCoset{t[0].cast<long long>(), t[1].cast<long long>(),
                         t[2].cast<long long>(), t[3].cast<long long>()};
}

py::tuple params_out(const HeisLocalParams& c) {
  return py::make_tuple(c.p, c.l, c.k, c.j, c.i);
}

HeisLocalParams params_in(py::handle t_obj) {
  py::sequence t = py::reinterpret_borrow<py::sequence>(t_obj);
  if (t.size() != 5) throw py::value_error("local label is (p, l, k, j, i)");
  return HeisLocalParams{t[0].cast<long long>(), t[1].cast<int>(),
                         t[2].cast<int>(), t[3].cast<int>(), t[4].cast<int>()};
}

py::dict hecke_out(const HeisHeckeElement& e) {
  py::dict out;
  if (e.where == Locality::Global) {
    for (const auto& [c, coeff] : e.gterms) out[coset_out(c)] = to_py(coeff);
  } else {
    for (const auto& [c, coeff] : e.lterms) out[params_out(c)] = to_py(coeff);
  }
  return out;
}

} // namespace

PYBIND11_MODULE(_heckelab, m) {
  m.doc() = "exact double coset computations on integer matrix pairs";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string msg = std::string(kind_name(e.kind())) + ": " + e.what();
      if (e.kind() == Kind::InvalidInput)
        PyErr_SetString(PyExc_ValueError, msg.c_str());
      else
        PyErr_SetString(PyExc_RuntimeError, msg.c_str());
    }
  });

  m.def("det", [](py::handle mat) { return to_py(det(matrix_in(mat))); },
        py::arg("matrix"), "determinant of a square integer matrix");

  m.def("snf",
        [](py::handle mat) {
          SnfDecomposition s = snf(matrix_in(mat));
          py::list d;
          for (int i = 0; i < s.d.n; ++i) d.append(to_py(s.d.at(i, i)));
          py::dict out;
          out["d"] = d;
          out["u"] = matrix_out(s.u);
          out["v"] = matrix_out(s.v);
          return out;
        },
        py::arg("matrix"),
        "elementary divisors d with transforms u, v so u @ m @ v = diag(d)");

  m.def("hnf_left",
        [](py::handle mat) {
          HnfDecomposition h = hnf_left(matrix_in(mat));
          py::dict out;
          out["h"] = matrix_out(h.h);
          out["x"] = matrix_out(h.x);
          return out;
        },
        py::arg("matrix"), "row Hermite form h = x @ m, x unimodular");

  m.def("gl_canonical",
        [](py::handle mat, long long p) {
          GlCoset c = gl_canonicalize(
              matrix_in(mat), p > 0 ? Locality::Local : Locality::Global, p);
          return py::make_tuple(to_py(c.d1), to_py(c.d2));
        },
        py::arg("matrix"), py::arg("p") = 0,
        "divisor chain labeling the double coset of the matrix");

  m.def("gl_degree",
        [](py::handle d1, py::handle d2) {
          return to_py(gl_degree(GlCoset{to_mpz(d1), to_mpz(d2)}));
        },
        py::arg("d1"), py::arg("d2"), "number of left cosets in the chain");

  m.def("gl_left_cosets",
        [](py::handle d1, py::handle d2, long long budget) {
          py::list out;
          for (const IntMatrix& m : gl_left_cosets(
                   GlCoset{to_mpz(d1), to_mpz(d2)}, budget_in(budget)))
            out.append(matrix_out(m));
          return out;
        },
        py::arg("d1"), py::arg("d2"), py::arg("budget") = 0,
        "Hermite representatives of the left cosets of a chain");

  m.def("gl_mul",
        [](py::handle a, py::handle b, long long p, long long budget) {
          py::sequence sa = py::reinterpret_borrow<py::sequence>(a);
          py::sequence sb = py::reinterpret_borrow<py::sequence>(b);
          Locality where = p > 0 ? Locality::Local : Locality::Global;
          GlHeckeElement x, y;
          x.where = y.where = where;
          x.p = y.p = p;
          x.terms[GlCoset{to_mpz(sa[0]), to_mpz(sa[1])}] = 1;
          y.terms[GlCoset{to_mpz(sb[0]), to_mpz(sb[1])}] = 1;
          GlHeckeElement prod = gl_mul(x, y, budget_in(budget));
          py::dict out;
          for (const auto& [c, coeff] : prod.terms)
            out[py::make_tuple(to_py(c.d1), to_py(c.d2))] = to_py(coeff);
          return out;
        },
        py::arg("a"), py::arg("b"), py::arg("p") = 0, py::arg("budget") = 0,
        "product of two chain classes as a map chain -> coefficient");

  m.def("heis_canonical",
        [](py::handle mat, py::handle vec, long long budget) {
          return coset_out(h_double_coset_canonical(
              HeisElement{matrix_in(mat), vec_in(vec)}, budget_in(budget)));
        },
        py::arg("matrix"), py::arg("vector"), py::arg("budget") = 0,
        "double coset label (d1, d2, v1, v2) of a monoid pair");

  m.def("heis_local",
        [](py::handle mat, py::handle vec, long long p, long long budget) {
          return params_out(h_local_canonical(
              HeisElement{matrix_in(mat), vec_in(vec)}, p, budget_in(budget)));
        },
        py::arg("matrix"), py::arg("vector"), py::arg("p"),
        py::arg("budget") = 0,
        "local class label (p, l, k, j, i) of a monoid pair");

  m.def("heis_degree",
        [](py::handle c, long long budget) {
          return to_py(h_degree(coset_in(c), budget_in(budget)));
        },
        py::arg("coset"), py::arg("budget") = 0,
        "left coset count of a double coset");

  m.def("heis_local_degree",
        [](py::handle c, long long budget) {
          return to_py(h_local_degree(params_in(c), budget_in(budget)));
        },
        py::arg("params"), py::arg("budget") = 0,
        "left coset count of a local class");

  m.def("heis_mul",
        [](py::handle a, py::handle b, long long budget) {
          return hecke_out(hecke_mul(hh_class(coset_in(a)),
                                     hh_class(coset_in(b)),
                                     budget_in(budget)));
        },
        py::arg("a"), py::arg("b"), py::arg("budget") = 0,
        "product of two global classes as a map label -> coefficient");

  m.def("heis_mul_local",
        [](py::handle a, py::handle b, long long budget) {
          return hecke_out(hecke_mul(hh_local_class(params_in(a)),
                                     hh_local_class(params_in(b)),
                                     budget_in(budget)));
        },
        py::arg("a"), py::arg("b"), py::arg("budget") = 0,
        "product of two local classes as a map label -> coefficient");

  m.def("orbit_report",
        [](long long p, int l, int k, int i, int j, long long budget) {
          OrbitReport r = orbit_report(p, l, k, i, j, budget_in(budget));
          py::dict out;
          out["p"] = r.p;
          out["l"] = r.l;
          out["k"] = r.k;
          out["i"] = r.i;
          out["j"] = r.j;
          out["group_order"] = r.group_order;
          out["orbit_size"] = r.orbit_size;
          out["stab_size"] = r.stab_size;
          out["n"] = r.n;
          out["fiber_count"] = r.fiber_count;
          out["formula_count"] = r.formula_count;
          out["match"] = r.match;
          return out;
        },
        py::arg("p"), py::arg("l"), py::arg("k"), py::arg("i"), py::arg("j"),
        py::arg("budget") = 0,
        "orbit, stabilizer and sign-fiber report of one base point");

  m.def("eta_fiber",
        [](const std::vector<py::object>& comps, long long budget) {
          std::vector<HeisLocalParams> cs;
          cs.reserve(comps.size());
          for (const py::object& h : comps) cs.push_back(params_in(h));
          py::list out;
          for (const HeisDoubleCoset& c :
               eta_fiber(adelic_coset(cs), budget_in(budget)))
            out.append(coset_out(c));
          return out;
        },
        py::arg("components"), py::arg("budget") = 0,
        "global classes lying over an adelic coset, sorted");

  m.def("noncommute_witness",
        [](long long p, long long budget) {
          NoncommuteWitness w = noncommutativity_witness(p, budget_in(budget));
          py::dict out;
          out["u"] = params_out(w.u.lterms.begin()->first);
          out["v"] = params_out(w.v.lterms.begin()->first);
          out["uv"] = hecke_out(w.uv);
          out["vu"] = hecke_out(w.vu);
          return out;
        },
        py::arg("p") = 2, py::arg("budget") = 0,
        "first pair of local classes whose products differ by order");

  m.def("nonsurjectivity_witness",
        [](long long p, long long budget) {
          Certificate c = nonsurjectivity_witness(p, budget_in(budget));
          py::dict out;
          out["p"] = c.p;
          out["params"] = params_out(c.params);
          py::list fiber;
          for (const HeisDoubleCoset& g : c.fiber) fiber.append(coset_out(g));
          out["fiber"] = fiber;
          out["distinguished"] = coset_out(c.distinguished);
          out["fiber_size_expected"] = c.fiber_size_expected;
          out["formula"] = c.formula;
          out["fibers_scanned"] = c.fibers_scanned;
          out["fiber_partition"] = c.fiber_partition;
          out["equal_weights_violation"] = c.equal_weights_violation;
          out["verified"] = c.verified;
          return out;
        },
        py::arg("p") = 2, py::arg("budget") = 0,
        "certificate that one adelic class refines into several global ones");

  m.def("verify_suite",
        [](const std::string& name, std::vector<long long> pset, int lmax,
           int kmax, long long p, long long budget) {
          SuiteConfig cfg;
          if (!pset.empty()) cfg.pset = std::move(pset);
          cfg.lmax = lmax;
          cfg.kmax = kmax;
          cfg.p = p;
          cfg.budget = budget_in(budget);
          SuiteResult r = run_suite(name, cfg);
          py::dict out;
          out["suite"] = r.suite;
          out["cases"] = r.cases;
          out["passed"] = r.passed;
          out["failed"] = r.failed;
          out["skipped"] = r.skipped;
          out["ok"] = r.ok();
          out["details"] = r.details;
          return out;
        },
        py::arg("name"), py::arg("pset") = std::vector<long long>{},
        py::arg("lmax") = 3, py::arg("kmax") = 4, py::arg("p") = 2,
        py::arg("budget") = 0, "run one named verification sweep");

  m.def("suite_names", []() { return suite_names(); },
        "names accepted by verify_suite");
}

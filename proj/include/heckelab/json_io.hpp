#pragma once
// JSON forms of every public type.  Integers are emitted as decimal strings
// so arbitrary precision survives; parsers take strings or plain numbers.
// Key order is alphabetical (library default), making output byte-stable.

#include <string>

#include <json.hpp>

#include "heckelab/gl_hecke.hpp"
#include "heckelab/heis_hecke.hpp"
#include "heckelab/orbit_lab.hpp"

namespace hecke {

nlohmann::json num(const mpz_class& v);
nlohmann::json num(long long v);
mpz_class mpz_from(const nlohmann::json& j);
long long ll_from(const nlohmann::json& j);

nlohmann::json matrix_json(const IntMatrix& m);
IntMatrix matrix_from(const nlohmann::json& j);
nlohmann::json vec_json(const Vec2& v);
Vec2 vec_from(const nlohmann::json& j);

nlohmann::json snf_json(const SnfDecomposition& s);
nlohmann::json hnf_json(const HnfDecomposition& h);

nlohmann::json gl_coset_json(const GlCoset& c);
GlCoset gl_coset_from(const nlohmann::json& j);
nlohmann::json gl_element_json(const GlHeckeElement& e);

nlohmann::json heis_element_json(const HeisElement& x);
HeisElement heis_element_from(const nlohmann::json& j);
nlohmann::json heis_coset_json(const HeisDoubleCoset& c);
HeisDoubleCoset heis_coset_from(const nlohmann::json& j);
nlohmann::json local_params_json(const HeisLocalParams& c);
HeisLocalParams local_params_from(const nlohmann::json& j);

nlohmann::json hecke_element_json(const HeisHeckeElement& e);
HeisHeckeElement hecke_element_from(const nlohmann::json& j);
nlohmann::json adelic_coset_json(const AdelicCoset& c);
AdelicCoset adelic_coset_from(const nlohmann::json& j);
nlohmann::json adelic_element_json(const AdelicHeckeElement& e);

nlohmann::json orbit_report_json(const OrbitReport& r);
nlohmann::json surjectivity_report_json(const SurjectivityReport& r);
nlohmann::json certificate_json(const Certificate& c);
nlohmann::json error_json(const Error& e);

// dump(2) plus trailing newline; the one serialization everything uses
std::string dump_stable(const nlohmann::json& j);

} // namespace hecke

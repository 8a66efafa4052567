#include "tcg/serial.hpp"

#include <cstddef>
#include <limits>
#include <string>

#include "json.hpp"

namespace tcg {

namespace {

using nlohmann::json;

long long checked_ll(const Int& v, const std::string& what) {
  require(v >= std::numeric_limits<long long>::min() &&
              v <= std::numeric_limits<long long>::max(),
          what + ": entry out of 64-bit range");
  return static_cast<long long>(v);
}

const json& field(const json& j, const std::string& key) {
  require(j.is_object() && j.contains(key), "missing field \"" + key + "\"");
  return j.at(key);
}

long long int_field(const json& j, const std::string& key) {
  const json& v = field(j, key);
  require(v.is_number_integer(), "field \"" + key + "\" must be an integer");
  return v.get<long long>();
}

IntVec vec_from_json(const json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array of integers");
  IntVec out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number_integer(), what + " must be an array of integers");
    out[i] = j[i].get<long long>();
  }
  return out;
}

IntMatrix matrix_from_json(const json& j, const std::string& what) {
  require(j.is_array() && !j.empty(), what + " must be a nonempty array of rows");
  const std::size_t rows = j.size();
  require(j[0].is_array() && !j[0].empty(), what + " rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols, what + " must be rectangular");
    for (std::size_t c = 0; c < cols; ++c) {
      require(j[i][c].is_number_integer(), what + " entries must be integers");
      m(i, c) = j[i][c].get<long long>();
    }
  }
  return m;
}

json vec_to_json(const IntVec& v, const std::string& what) {
  json out = json::array();
  for (const Int& x : v) out.push_back(checked_ll(x, what));
  return out;
}

json matrix_to_json(const IntMatrix& m, const std::string& what) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(checked_ll(m(i, j), what));
    out.push_back(std::move(row));
  }
  return out;
}

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

Int int_from_token(const std::string& tok, const std::string& what) {
  std::string t = trimmed(tok);
  require(!t.empty(), what + ": empty entry");
  std::size_t digits = t[0] == '-' || t[0] == '+' ? 1 : 0;
  require(digits < t.size(), what + ": bad integer \"" + tok + "\"");
  for (std::size_t i = digits; i < t.size(); ++i)
    require(t[i] >= '0' && t[i] <= '9', what + ": bad integer \"" + tok + "\"");
  return Int(t);
}

}  // namespace

GroupSpec spec_from_json(const std::string& text) {
  json j = json::parse(text);
  GroupSpec s;
  long long k = int_field(j, "k");
  require(k >= 2, "spec: k must be at least 2");
  s.k = static_cast<std::size_t>(k);
  s.omega = matrix_from_json(field(j, "omega"), "spec: omega");
  s.parity_quadratic = matrix_from_json(field(j, "parity_quadratic"), "spec: parity_quadratic");
  s.parity_linear = vec_from_json(field(j, "parity_linear"), "spec: parity_linear");
  s.validate();
  return s;
}

std::string spec_to_json(const GroupSpec& s) {
  json j;
  j["k"] = s.k;
  j["omega"] = matrix_to_json(s.omega, "spec: omega");
  j["parity_quadratic"] = matrix_to_json(s.parity_quadratic, "spec: parity_quadratic");
  j["parity_linear"] = vec_to_json(s.parity_linear, "spec: parity_linear");
  return j.dump();
}

Automorphism automorphism_from_json(const GroupSpec& s, const std::string& text) {
  json j = json::parse(text);
  Automorphism psi;
  psi.m = matrix_from_json(field(j, "M"), "automorphism: M");
  long long eps = int_field(j, "eps");
  require(eps == 1 || eps == -1, "automorphism: eps must be +1 or -1");
  psi.eps = static_cast<int>(eps);
  psi.psi_prime = vec_from_json(field(j, "psi_prime"), "automorphism: psi_prime");
  require(psi.m.rows() == s.k && psi.m.cols() == s.k, "automorphism: M must be k×k");
  require(psi.psi_prime.size() == s.k, "automorphism: psi_prime must have length k");
  validate(s, psi);
  return psi;
}

std::string automorphism_to_json(const Automorphism& psi) {
  json j;
  j["M"] = matrix_to_json(psi.m, "automorphism: M");
  j["eps"] = psi.eps;
  j["psi_prime"] = vec_to_json(psi.psi_prime, "automorphism: psi_prime");
  return j.dump();
}

Element element_from_string(const GroupSpec& s, const std::string& text) {
  std::vector<std::string> toks;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    toks.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  require(toks.size() == s.k + 1,
          "element: expected " + std::to_string(s.k + 1) + " comma-separated integers");
  Element g;
  g.a.resize(s.k);
  for (std::size_t i = 0; i < s.k; ++i) g.a[i] = int_from_token(toks[i], "element");
  g.c = int_from_token(toks.back(), "element");
  require(s.in_g(g), "element: center parity does not match q(a); not in G");
  return g;
}

std::string element_to_string(const Element& g) {
  std::string out;
  for (const Int& x : g.a) out += x.str() + ",";
  return out + g.c.str();
}

}  // namespace tcg

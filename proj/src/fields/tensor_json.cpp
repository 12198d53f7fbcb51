#include "diraclab/tensor_json.hpp"

#include <limits>

namespace diraclab::fields {

namespace {

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw FormatError(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(path.empty() ? "<root>" : path, std::string("missing key '") + key + "'");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::size_t size_value(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw FormatError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

Json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

mpz_class integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw FormatError(path, "not an integer string");
    return z;
  }
  throw FormatError(path, "expected an integer");
}

template <TensorKind K>
Json tensor_to_json_impl(const Multi<K>& t) {
  Json comps = Json::array();
  for (const auto& [idx, p] : t.components()) {
    Json one_based = Json::array();
    for (auto i : idx) one_based.push_back(i + 1);
    comps.push_back({{"idx", one_based}, {"poly", poly_to_json(p)}});
  }
  return {{"chart", t.dim()}, {"degree", t.degree()}, {"kind", kind_name(K)}, {"components", comps}};
}

template <TensorKind K>
Multi<K> tensor_from_json_impl(const Json& j, const std::string& path) {
  const std::size_t n = size_value(member(j, "chart", path), join(path, "chart"));
  const std::size_t k = size_value(member(j, "degree", path), join(path, "degree"));
  const Json& kind = member(j, "kind", path);
  if (!kind.is_string() || kind.get<std::string>() != kind_name(K)) {
    throw FormatError(join(path, "kind"), std::string("expected \"") + kind_name(K) + "\"");
  }
  const Json& comps = member(j, "components", path);
  if (!comps.is_array()) throw FormatError(join(path, "components"), "expected an array");
  Multi<K> t(n, k);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string cp = join(path, "components[" + std::to_string(c) + "]");
    const Json& idx = member(comps[c], "idx", cp);
    if (!idx.is_array() || idx.size() != k) {
      throw FormatError(cp + ".idx", "expected " + std::to_string(k) + " indices");
    }
    Indices zero_based;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const std::string ip = cp + ".idx[" + std::to_string(a) + "]";
      std::size_t v = size_value(idx[a], ip);
      if (v < 1 || v > n) throw FormatError(ip, "index out of range 1.." + std::to_string(n));
      zero_based.push_back(static_cast<std::uint32_t>(v - 1));
    }
    Poly p = poly_from_json(member(comps[c], "poly", cp), n, cp + ".poly");
    Indices check = zero_based;
    if (sort_indices(check) == 0) {
      if (!p.is_zero()) throw FormatError(cp + ".idx", "repeated index with a nonzero value");
      continue;
    }
    t.add(zero_based, p);
  }
  return t;
}

}  // namespace

Json rational_to_json(const Rational& q) {
  return {{"num", integer_to_json(q.get_num())}, {"den", integer_to_json(q.get_den())}};
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(integer_from_json(j, path));
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw FormatError(path, "not a rational string");
    q.canonicalize();
    return q;
  }
  mpz_class num = integer_from_json(member(j, "num", path), join(path, "num"));
  mpz_class den(1);
  if (j.contains("den")) den = integer_from_json(j["den"], join(path, "den"));
  if (den == 0) throw FormatError(join(path, "den"), "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Json t = rational_to_json(it->second);
    t["exp"] = it->first;
    terms.push_back(t);
  }
  return terms;
}

Poly poly_from_json(const Json& j, std::size_t nvars, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected a term list");
  Poly p(nvars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    const Json& e = member(j[t], "exp", tp);
    if (!e.is_array() || e.size() != nvars) {
      throw FormatError(tp + ".exp", "expected " + std::to_string(nvars) + " exponents");
    }
    Exponents exps;
    for (std::size_t a = 0; a < e.size(); ++a) {
      std::size_t v = size_value(e[a], tp + ".exp[" + std::to_string(a) + "]");
      if (v > std::numeric_limits<std::uint32_t>::max()) throw FormatError(tp, "exponent too large");
      exps.push_back(static_cast<std::uint32_t>(v));
    }
    p.add_term(exps, rational_from_json(j[t], tp));
  }
  return p;
}

Json tensor_to_json(const PolyKVector& t) { return tensor_to_json_impl(t); }
Json tensor_to_json(const PolyKForm& t) { return tensor_to_json_impl(t); }

PolyKVector vector_from_json(const Json& j, const std::string& path) {
  return tensor_from_json_impl<TensorKind::Vector>(j, path);
}

PolyKForm form_from_json(const Json& j, const std::string& path) {
  return tensor_from_json_impl<TensorKind::Form>(j, path);
}

Poly scalar_from_json(const Json& j, const std::string& path) {
  const Json& kind = member(j, "kind", path);
  if (kind == "vector") {
    auto t = vector_from_json(j, path);
    if (t.degree() != 0) throw FormatError(join(path, "degree"), "expected degree 0");
    return t.get({});
  }
  auto t = form_from_json(j, path);
  if (t.degree() != 0) throw FormatError(join(path, "degree"), "expected degree 0");
  return t.get({});
}

Json map_to_json(const PolyMap& phi) {
  Json comps = Json::array();
  for (const auto& c : phi.components()) comps.push_back(poly_to_json(c));
  return {{"source", phi.source_dim()}, {"target", phi.target_dim()}, {"components", comps}};
}

PolyMap map_from_json(const Json& j, const std::string& path) {
  const std::size_t n = size_value(member(j, "source", path), join(path, "source"));
  const Json& comps = member(j, "components", path);
  if (!comps.is_array()) throw FormatError(join(path, "components"), "expected an array");
  if (j.contains("target") && size_value(j["target"], join(path, "target")) != comps.size()) {
    throw FormatError(join(path, "target"), "does not match the number of components");
  }
  std::vector<Poly> c;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    c.push_back(poly_from_json(comps[i], n, join(path, "components[" + std::to_string(i) + "]")));
  }
  return PolyMap(n, std::move(c));
}

}  // namespace diraclab::fields

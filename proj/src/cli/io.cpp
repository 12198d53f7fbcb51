#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/tensor_json.hpp"

namespace diraclab::cli {

namespace {

// Runs a conversion, attaching the file name to any format error.
template <class F>
auto in_file(const std::string& file, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const fields::FormatError& e) {
    throw InputError(file + ": " + e.what(), {{"kind", "format"}, {"file", file}, {"path", e.path()}});
  }
}

std::size_t size_member(const Json& j, const char* key, const std::string& file) {
  const Json v = load_member(file, j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(file + ": " + key + " must be a non-negative integer",
                     {{"kind", "format"}, {"file", file}, {"path", key}});
  }
  return v.get<std::size_t>();
}

}  // namespace

Json load_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open " + file, {{"kind", "io"}, {"file", file}});
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(file + ": " + e.what(), {{"kind", "parse"}, {"file", file}, {"byte", e.byte}});
  }
}

Json load_member(const std::string& file, const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(file + ": missing key '" + key + "'", {{"kind", "format"}, {"file", file}, {"path", key}});
  }
  return j[key];
}

poisson::PoissonBivector load_bivector(const std::string& file) {
  const Json j = load_json(file);
  auto t = in_file(file, [&] { return fields::vector_from_json(j); });
  if (t.degree() != 2) {
    throw InputError(file + ": expected a bivector (degree 2)", {{"kind", "format"}, {"file", file}, {"path", "degree"}});
  }
  return poisson::PoissonBivector(std::move(t));
}

fields::PolyKVector load_vector_field(const std::string& file) {
  const Json j = load_json(file);
  auto t = in_file(file, [&] { return fields::vector_from_json(j); });
  if (t.degree() != 1) {
    throw InputError(file + ": expected a vector field (degree 1)",
                     {{"kind", "format"}, {"file", file}, {"path", "degree"}});
  }
  return t;
}

fields::PolyKForm load_form(const std::string& file) {
  const Json j = load_json(file);
  return in_file(file, [&] { return fields::form_from_json(j); });
}

fields::Poly load_scalar(const std::string& file) {
  const Json j = load_json(file);
  return in_file(file, [&] { return fields::scalar_from_json(j); });
}

fields::PolyMap load_map(const std::string& file) {
  const Json j = load_json(file);
  return in_file(file, [&] { return fields::map_from_json(j); });
}

dirac::LagrangianFrame load_frame(const std::string& file) {
  const Json j = load_json(file);
  const std::size_t n = size_member(j, "chart", file);
  const Json sections = load_member(file, j, "sections");
  if (!sections.is_array()) {
    throw InputError(file + ": sections must be an array", {{"kind", "format"}, {"file", file}, {"path", "sections"}});
  }
  std::vector<dirac::GeneralizedSection> out;
  for (std::size_t s = 0; s < sections.size(); ++s) {
    const std::string path = "sections[" + std::to_string(s) + "]";
    auto v = in_file(file, [&] { return fields::vector_from_json(load_member(file, sections[s], "vector"), path + ".vector"); });
    auto a = in_file(file, [&] { return fields::form_from_json(load_member(file, sections[s], "form"), path + ".form"); });
    if (v.dim() != n || a.dim() != n || v.degree() != 1 || a.degree() != 1) {
      throw InputError(file + ": " + path + " must hold a vector field and a 1-form on the chart",
                       {{"kind", "format"}, {"file", file}, {"path", path}});
    }
    out.emplace_back(std::move(v), std::move(a));
  }
  return dirac::LagrangianFrame::symbolic(std::move(out));
}

poisson::FormFamily load_family(const std::string& file) {
  const Json j = load_json(file);
  const Json terms = load_member(file, j, "terms");
  if (!terms.is_array() || terms.empty()) {
    throw InputError(file + ": terms must be a non-empty array", {{"kind", "format"}, {"file", file}, {"path", "terms"}});
  }
  poisson::FormFamily family;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    auto t = in_file(file, [&] { return fields::form_from_json(terms[k], "terms[" + std::to_string(k) + "]"); });
    if (t.degree() != 1 || (!family.terms.empty() && t.dim() != family.terms.front().dim())) {
      throw InputError(file + ": every term must be a 1-form on one chart",
                       {{"kind", "format"}, {"file", file}, {"path", "terms[" + std::to_string(k) + "]"}});
    }
    family.terms.push_back(std::move(t));
  }
  return family;
}

maningroup::QMatrix columns_from_json(const Json& j, std::size_t rows, const std::string& file,
                                      const std::string& path) {
  if (!j.is_array()) {
    throw InputError(file + ": " + path + " must be a list of columns", {{"kind", "format"}, {"file", file}, {"path", path}});
  }
  maningroup::QMatrix m(rows, j.size());
  for (std::size_t c = 0; c < j.size(); ++c) {
    const std::string cp = path + "[" + std::to_string(c) + "]";
    if (!j[c].is_array() || j[c].size() != rows) {
      throw InputError(file + ": " + cp + " must have " + std::to_string(rows) + " entries",
                       {{"kind", "format"}, {"file", file}, {"path", cp}});
    }
    for (std::size_t r = 0; r < rows; ++r) {
      m(r, c) = in_file(file, [&] { return fields::rational_from_json(j[c][r], cp + "[" + std::to_string(r) + "]"); });
    }
  }
  return m;
}

LoadedTriple load_triple(const std::string& file, bool with_chart) {
  const Json j = load_json(file);
  if (j.is_object() && j.contains("builtin")) {
    if (!j["builtin"].is_string()) {
      throw InputError(file + ": builtin must be a name", {{"kind", "format"}, {"file", file}, {"path", "builtin"}});
    }
    auto b = maningroup::builtin_triple(j["builtin"].get<std::string>());
    return {std::move(b.triple), std::move(b.chart)};
  }
  const std::size_t dim = size_member(j, "dim", file);
  const Json c_list = load_member(file, j, "C");
  if (!c_list.is_array()) throw InputError(file + ": C must be an array", {{"kind", "format"}, {"file", file}, {"path", "C"}});
  poisson::StructureConstants c(dim);
  for (std::size_t e = 0; e < c_list.size(); ++e) {
    const std::string path = "C[" + std::to_string(e) + "]";
    std::size_t idx[3];
    const char* keys[3] = {"i", "j", "k"};
    for (int a = 0; a < 3; ++a) {
      const Json v = load_member(file, c_list[e], keys[a]);
      if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > static_cast<long long>(dim)) {
        throw InputError(file + ": " + path + "." + keys[a] + " must lie in 1.." + std::to_string(dim),
                         {{"kind", "format"}, {"file", file}, {"path", path + "." + keys[a]}});
      }
      idx[a] = v.get<std::size_t>() - 1;
    }
    const Json value = c_list[e].contains("value") ? c_list[e]["value"] : load_member(file, c_list[e], "poly_or_rational");
    const Rational q = in_file(file, [&] { return fields::rational_from_json(value, path + ".value"); });
    if (idx[0] == idx[1]) {
      if (sgn(q) != 0) {
        throw InputError(file + ": " + path + " sets [e_i, e_i] nonzero", {{"kind", "format"}, {"file", file}, {"path", path}});
      }
      continue;
    }
    c.set_antisymmetric(idx[0], idx[1], idx[2], q);
  }
  const Json b_rows = load_member(file, j, "B");
  // B is given row by row; symmetric input makes rows and columns agree.
  const maningroup::QMatrix b = columns_from_json(b_rows, dim, file, "B").transpose();
  if (b.rows() != dim || b.cols() != dim) {
    throw InputError(file + ": B must be " + std::to_string(dim) + " x " + std::to_string(dim),
                     {{"kind", "format"}, {"file", file}, {"path", "B"}});
  }
  auto g = columns_from_json(load_member(file, j, "g_basis"), dim, file, "g_basis");
  auto h = columns_from_json(load_member(file, j, "h_basis"), dim, file, "h_basis");
  maningroup::ManinTriple triple(maningroup::MetrizedLieAlgebra(std::move(c), b), std::move(g), std::move(h));
  const Json ad = j.value("builtin_ad", Json());
  if (!ad.is_null() && !ad.is_string()) {
    throw InputError(file + ": builtin_ad must be a name or null", {{"kind", "format"}, {"file", file}, {"path", "builtin_ad"}});
  }
  if (!with_chart) return {std::move(triple), std::nullopt};
  const auto res = maningroup::check_manin_triple(triple);
  if (!res.ok) {
    throw InputError(file + ": not a Manin triple (" + res.reason + ")", {{"kind", "input"}, {"file", file}});
  }
  if (ad.is_string()) {
    auto chart = maningroup::builtin_chart(ad.get<std::string>(), triple);
    return {std::move(triple), std::move(chart)};
  }
  auto chart = maningroup::GroupChart::adjoint(triple);
  return {std::move(triple), std::move(chart)};
}

std::vector<double> parse_point(const std::string& text, std::size_t dim, const std::string& option) {
  std::vector<double> p;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError(option + ": '" + item + "' is not a number", {{"kind", "usage"}, {"option", option}});
    }
  }
  if (p.size() != dim) {
    throw InputError(option + ": expected " + std::to_string(dim) + " comma-separated numbers",
                     {{"kind", "usage"}, {"option", option}});
  }
  return p;
}

std::vector<std::vector<double>> box_samples(std::size_t dim, std::size_t count, double half_width,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-half_width, half_width);
  std::vector<std::vector<double>> r(count, std::vector<double>(dim));
  for (auto& p : r)
    for (auto& v : p) v = u(rng);
  return r;
}

std::vector<std::vector<double>> ball_samples(std::size_t dim, std::size_t count, double radius,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> r;
  while (r.size() < count) {
    std::vector<double> p(dim);
    double norm2 = 0;
    for (auto& v : p) {
      v = u(rng);
      norm2 += v * v;
    }
    if (norm2 > 1.0) continue;
    for (auto& v : p) v *= radius;
    r.push_back(std::move(p));
  }
  return r;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace diraclab::cli

#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "diraclab/polymap.hpp"
#include "diraclab/tensor.hpp"

namespace diraclab::fields {

using Json = nlohmann::json;

// Malformed input; path locates the offending node, e.g. "components[2].idx".
class FormatError : public std::invalid_argument {
 public:
  FormatError(const std::string& path, const std::string& msg)
      : std::invalid_argument(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& path);

// Term list [{"exp": [...], "num": a, "den": b}, ...].
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j, std::size_t nvars, const std::string& path);

Json tensor_to_json(const PolyKVector& t);
Json tensor_to_json(const PolyKForm& t);
PolyKVector vector_from_json(const Json& j, const std::string& path = "");
PolyKForm form_from_json(const Json& j, const std::string& path = "");
// Degree-0 tensor of either kind.
Poly scalar_from_json(const Json& j, const std::string& path = "");

// {"source": n, "components": [term list, ...]}.
Json map_to_json(const PolyMap& phi);
PolyMap map_from_json(const Json& j, const std::string& path = "");

}  // namespace diraclab::fields

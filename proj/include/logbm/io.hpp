// JSON and CSV encodings of scalars, bodies, measures, reports, certificates
// and the self-contained bodies files the CLI reads.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "logbm/arith.hpp"
#include "logbm/bodies.hpp"
#include "logbm/equality.hpp"
#include "logbm/inequalities.hpp"
#include "logbm/mixedvol.hpp"

namespace logbm {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact values as "p/q" strings, floats as numbers (NaN as null).
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
Json to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

Json to_json(const Body& b);
Body body_from_json(const Json& j);

Json to_json(const AtomicSphericalMeasure& m);
Json to_json(const InequalityReport& r);
InequalityReport report_from_json(const Json& j);
Json to_json(const DecompositionCertificate& c);
Json to_json(const MeasureEqualityReport& r);

/// CSV columns: name, n, verdict, deficit (float), deficit (exact string).
std::string report_csv_header();
std::string report_csv_row(const InequalityReport& r);

/// The instance a bodies file binds: names of K and L (and optionally M for
/// f = h_L - h_M), plus parameters.
struct Task {
  std::string k;
  std::string l;
  std::optional<std::string> m;
  std::optional<Scalar> t;
  std::optional<Vec> u;
  std::optional<int> level;
  std::optional<std::size_t> grid;
};

struct BodiesFile {
  std::map<std::string, Body> bodies;
  Task task;

  const Body& get(const std::string& name) const;
};

BodiesFile bodies_file_from_json(const Json& j);
Json to_json(const BodiesFile& f);
/// Reads and validates a bodies file; every failure becomes a ParseError.
BodiesFile load_bodies_file(const std::string& path);

/// Bodies file for a check instance, bodies named "K" and "L".
BodiesFile bodies_file_for(const CheckInstance& inst);

}  // namespace logbm

#pragma once

#include "equidef/axioms.hpp"
#include "equidef/closure.hpp"
#include "equidef/verify.hpp"
#include "equidef/vogt.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace equidef {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Points are {x, y} records: strings "p/q" on the exact backend, numbers on
// the float backend. Reading accepts either form on either backend (numbers
// on the exact backend are read from their decimal text).

Json to_json(const Point& p);
Point point_from_json(const Json& j, const Space& space);

struct NamedPoint {
  std::string name;  // empty when the record has none
  Point point;
};

/// A JSON array of point records, or an object with a "points" array.
/// Records may carry a "name".
std::vector<NamedPoint> points_from_json(const Json& j, const Space& space);
Json points_to_json(const std::vector<NamedPoint>& pts);

/// {norm: "l1"|"l2"|"linf"|{"lp": "3/2"}, backend: "exact"|"float", tolerance}
Json to_json(const Space& space);
Space space_from_json(const Json& j);
Json to_json(const NormSpec& norm);
NormSpec norm_from_json(const Json& j);

Json to_json(const TruncationParams& t);
TruncationParams trunc_from_json(const Json& j, TruncationParams base = {});

/// {space, points: [{x, y, provenance}], complete, notes}
Json to_json(const Universe& u, bool complete = true, const std::vector<std::string>& notes = {});
Universe universe_from_json(const Json& j, const Space& space);

Json to_json(const LayerReport& r);
Json to_json(const AxiomReport& r);
Json to_json(const PreservationReport& r);
Json to_json(const MapSpec& m);
MapSpec map_from_json(const Json& j);
/// {maps: [...], similarities: bool, norms: [...], backend, tolerance,
/// quadruples, triples, seed}. The string "similarities" in `maps` sets the flag.
VogtConfig vogt_config_from_json(const Json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace equidef

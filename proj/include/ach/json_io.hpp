#ifndef ACH_JSON_IO_HPP
#define ACH_JSON_IO_HPP

#include "ach/frame_geometry.hpp"
#include "ach/heisenberg.hpp"
#include "ach/nc_normal.hpp"
#include "ach/op_poly.hpp"
#include "ach/report.hpp"
#include "ach/rho_series.hpp"
#include "ach/volume.hpp"

#include <json.hpp>

namespace ach {

using Json = nlohmann::ordered_json;

// Scalars render with arbitrary-length integers as decimal strings:
// {"re": ["p", "q"], "im": ["r", "s"]}.
Json to_json(const GaussianRational& v);
GaussianRational gaussian_from_json(const Json& j);

// {"n": N, "terms": [{"db": e1, "t": e2, "coeff": {...}}, ...]}
Json to_json(const OpPoly& p, int n);
OpPoly op_poly_from_json(const Json& j);

// Adds a shape tag per term:
// {"n": N, "channel": ..., "terms": [{"shape": "psi", "db": ...}, ...]}
Json to_json(const NcNormal& op);
NcNormal nc_normal_from_json(const Json& j);

Json to_json(const HeisPoly& p);
HeisPoly heis_poly_from_json(const Json& j, int n);

Json to_json(const RhoSeries<HeisPoly>& s);
Json to_json(const RhoSeries<GaussianRational>& s);

/// Nested map from index-tuple strings ("t,1,bt") to component series;
/// zero components are omitted.
Json to_json(const FrameTensor& t);

Json to_json(const Report& rep);

/// {"n": 2, "b": [[j, "p/q"], ...], "c": [...]}; series indices not listed
/// are zero, the constant term must be 1.
VolumeProfile profile_from_json(const Json& j, int min_order);
Json to_json(const VolumeProfile& p);

}  // namespace ach

#endif

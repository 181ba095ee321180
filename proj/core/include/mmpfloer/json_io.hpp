#ifndef MMPFLOER_JSON_IO_HPP
#define MMPFLOER_JSON_IO_HPP

#include <mmpfloer/ainfty.hpp>
#include <mmpfloer/mmp.hpp>
#include <mmpfloer/novikov.hpp>
#include <mmpfloer/polytope.hpp>
#include <mmpfloer/potential.hpp>

#include <json.hpp>

// JSON serialization for every report and input record.  Rationals are
// "p/q" strings throughout; series are {"terms":[{"exp":"p/q","re":..,
// "im":..}],"trunc":"p/q"}.  Serialization is deterministic and
// round-trips: from_json(to_json(x)) rebuilds x.

namespace mmpfloer::io {

using nlohmann::json;

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json series_to_json(const novikov::Series& s);
novikov::Series series_from_json(const json& j);

json polytope_to_json(const polytope::Polytope& P);
polytope::Polytope polytope_from_json(const json& j);

/// Tagged geometry spec: {"type":"toric"|"polygon"|"flat"|"flag", ...}.
json geometry_to_json(const mmp::Geometry& g);
mmp::Geometry geometry_from_json(const json& j);

json transition_to_json(const mmp::Transition& t);
mmp::Transition transition_from_json(const json& j);

json running_to_json(const mmp::MmpRunning& r);
mmp::MmpRunning running_from_json(const json& j);

json potential_to_json(const potential::LaurentPotential& W);
potential::LaurentPotential potential_from_json(const json& j);

json local_system_to_json(const novikov::LocalSystem& y);
novikov::LocalSystem local_system_from_json(const json& j);

json certificate_to_json(const potential::HFCertificate& c);

/// Algebra spec: generators with degrees, sparse map entries
/// {"arity":n,"in":[i..],"out":j,"coef":{series}}.
json algebra_to_json(const ainfty::CurvedAInftyAlgebra& A);
ainfty::CurvedAInftyAlgebra algebra_from_json(const json& j);

}  // namespace mmpfloer::io

#endif

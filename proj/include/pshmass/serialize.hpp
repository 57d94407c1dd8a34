#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "pshmass/approximation.hpp"
#include "pshmass/cantor_measure.hpp"
#include "pshmass/intersection_masses.hpp"
#include "pshmass/spherical_potential.hpp"

namespace pshmass {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// %.17g; "inf", "-inf" and "nan" for the non-finite values.
std::string format_double(double value);

/// JSON number, or the strings "inf" / "-inf" where JSON has no number.
Json json_double(double value);

Json to_json(const SpherePoint& point);
Json to_json(const BoundFit& fit);
Json to_json(const CrossCheckReport& report);
Json to_json(const ApproxMassSeq& seq);
Json to_json(const MassReport& report);

enum class CantorEmit { intervals, atoms, cdf };

CantorEmit parse_cantor_emit(const std::string& name);

/// CSV with header index,left,right,log_length,mass. `atoms` puts the atom in
/// both position columns; `cdf` reports the distribution function at each
/// interval's right end in the mass column.
void write_cantor_csv(std::ostream& out, const CantorApprox& approx, CantorEmit emit);

/// CSV with header m,e_n.
void write_sequence_csv(std::ostream& out, const ApproxMassSeq& seq);

}  // namespace pshmass

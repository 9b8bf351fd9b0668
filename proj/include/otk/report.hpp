#pragma once

#include <json.hpp>

#include "otk/families.hpp"
#include "otk/geometry.hpp"
#include "otk/rank.hpp"

namespace otk {

// ordered keys keep reports byte-identical for identical inputs
using Json = nlohmann::ordered_json;

Json json_poly(const ZPoly& p);
Json json_qpoly(const QPoly& p);
Json json_signature(Signature sig);
Json json_interval(const QInterval& iv);
Json json_galois(const GaloisCertificate& cert);
Json json_subfield(const SubfieldCertificate& cert);
Json json_exhaustion(const ExhaustionProof& proof);
Json json_rank_report(const RankReport& report);
Json json_unit(const UnitElement& u);
Json json_geometry(const GeometrySuiteReport& report);

std::string fixed_digits(double v);  // deterministic float rendering

std::string render(const Json& j, bool pretty);

}  // namespace otk

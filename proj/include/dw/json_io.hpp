#pragma once

#include <string>

#include "json.hpp"

#include "dw/closed_form.hpp"
#include "dw/darboux.hpp"
#include "dw/fisher.hpp"
#include "dw/numerics.hpp"
#include "dw/reduction.hpp"
#include "dw/waves.hpp"

namespace dw {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "dwv1";

/// {"exact": "<QuadExt text>", "value": double}.
Json to_json(const QuadExt& q);
/// {"value": double} plus "exact" when known.
Json to_json(const Number& n);
/// {"text": canonical form, "terms": [{"monomial", "coefficient"}...]} in graded-lex order.
Json to_json(const MultiPoly& p);
/// Non-finite doubles become null.
Json number_or_null(double v);

Json to_json(const ODESystemSpec& sys);
Json to_json(const PlanarSystem& sys);
Json to_json(const Equilibrium& eq);
Json to_json(const EigenData& e);
Json to_json(const CofactorCandidate& c);
Json to_json(const DarbouxResult& r);
Json to_json(const SearchReport& r);
Json to_json(const SpeedCertificate& s);
Json to_json(const StageStatus& s);
Json to_json(const CurveCertificate& c);
Json to_json(const TravelingWave& w);
Json to_json(const WaveResidual& r);
Json to_json(const BoundaryCheck& b);
Json to_json(const ShootingConfig& cfg);
/// Summary; samples only when `with_samples`.
Json to_json(const Orbit& orbit, bool with_samples = false);
Json to_json(const Approach& a);
Json to_json(const ShootResult& r, bool with_samples = false);
Json to_json(const CatalogEntry& e);

}  // namespace dw

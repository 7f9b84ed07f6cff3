#pragma once

#include <json.hpp>

#include "torcoh/fourier.hpp"

namespace torcoh::fourier {

// {"dim": d, "real": true, "coeffs": [{"k": [..], "re": f, "im": f}, ...]}
// Coefficients are written in lexicographic key order.
nlohmann::json to_json(const FourierSeries& s);

// Throws DomainError on schema violations (missing fields, wrong key length,
// a "real" series that is not conjugate-symmetric within 1e-12).
FourierSeries series_from_json(const nlohmann::json& j);

nlohmann::json grid_to_json(const GridFunction& g);
GridFunction grid_from_json(const nlohmann::json& j);

}  // namespace torcoh::fourier

#include "torcoh/fourier_json.hpp"

#include <string>

namespace torcoh::fourier {

using nlohmann::json;

json to_json(const FourierSeries& s) {
  json coeffs = json::array();
  for (const auto& [k, c] : s.coeffs()) coeffs.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  return {{"dim", s.dim()}, {"real", s.declared_real()}, {"coeffs", std::move(coeffs)}};
}

FourierSeries series_from_json(const json& j) {
  try {
    if (!j.is_object()) throw DomainError("Fourier series JSON must be an object");
    const auto dim = j.at("dim").get<long long>();
    if (dim < 1) throw DomainError("Fourier series JSON: dim must be >= 1");
    const bool real = j.value("real", true);
    FourierSeries s(static_cast<std::size_t>(dim), real);
    for (const auto& e : j.at("coeffs")) {
      auto k = e.at("k").get<Index>();
      if (k.size() != static_cast<std::size_t>(dim))
        throw DomainError("Fourier series JSON: key length differs from dim");
      s.add(k, Complex(e.value("re", 0.0), e.value("im", 0.0)));
    }
    s.check_real(1e-12);
    return s;
  } catch (const json::exception& e) {
    throw DomainError(std::string("Fourier series JSON: ") + e.what());
  }
}

json grid_to_json(const GridFunction& g) { return {{"sizes", g.sizes}, {"samples", g.samples}}; }

GridFunction grid_from_json(const json& j) {
  try {
    GridFunction g{j.at("sizes").get<std::vector<std::size_t>>(), j.at("samples").get<std::vector<double>>()};
    g.validate();
    return g;
  } catch (const json::exception& e) {
    throw DomainError(std::string("grid JSON: ") + e.what());
  }
}

}  // namespace torcoh::fourier

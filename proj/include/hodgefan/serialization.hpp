#ifndef HODGEFAN_SERIALIZATION_HPP
#define HODGEFAN_SERIALIZATION_HPP

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "hodgefan/model.hpp"

namespace hodgefan {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Basis words: {"word": [[holomorphic indices], [antiholomorphic indices],
// hasTheta], "re": ..., "im": ...}
// ---------------------------------------------------------------------------

inline json word_to_json(const BasisWord& w) {
  return json::array({mask_indices(w.holo), mask_indices(w.anti), w.theta});
}

inline BasisWord word_from_json(const json& j, int n) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("word_from_json: expected [I, I', hasTheta]");
  BasisWord w;
  w.n = n;
  for (int idx : j[0].get<std::vector<int>>()) {
    if (idx < 1 || idx > n) throw std::invalid_argument("word_from_json: index out of range");
    w.holo |= (1u << (idx - 1));
  }
  for (int idx : j[1].get<std::vector<int>>()) {
    if (idx < 1 || idx > n) throw std::invalid_argument("word_from_json: index out of range");
    w.anti |= (1u << (idx - 1));
  }
  w.theta = j[2].get<bool>();
  return w;
}

// ---------------------------------------------------------------------------
// Pointwise exterior forms
// ---------------------------------------------------------------------------

inline json form_to_json(const Form& f) {
  json terms = json::array();
  for (const auto& [w, c] : f.coeffs)
    terms.push_back({{"word", word_to_json(w)}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"n", f.n}, {"terms", terms}};
}

inline Form form_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  Form f(n);
  for (const auto& t : j.at("terms"))
    f.add(word_from_json(t.at("word"), n),
          cd(t.at("re").get<double>(), t.at("im").get<double>()));
  return f;
}

// ---------------------------------------------------------------------------
// Spectral fields: per-lambda coefficient arrays
// ---------------------------------------------------------------------------

inline json scalar_field_to_json(const ScalarField& f) {
  json slices = json::array();
  for (const auto& s : f.slices) {
    json coeffs = json::array();
    for (const cd& c : s.coeffs) coeffs.push_back({c.real(), c.imag()});
    slices.push_back({{"lambda", s.lambda}, {"coeffs", coeffs}});
  }
  return json{{"slices", slices}};
}

inline ScalarField scalar_field_from_json(const ModelPtr& model, const json& j) {
  ScalarField f(model);
  const auto& slices = j.at("slices");
  if (static_cast<int>(slices.size()) != model->num_slices())
    throw std::invalid_argument("scalar_field_from_json: slice count mismatch");
  for (int s = 0; s < model->num_slices(); ++s) {
    const auto& js = slices[s];
    if (std::abs(js.at("lambda").get<double>() - model->lambda(s)) > 0)
      throw std::invalid_argument("scalar_field_from_json: lambda grid mismatch");
    const auto& coeffs = js.at("coeffs");
    const size_t count = std::min(coeffs.size(), f.slices[s].coeffs.size());
    for (size_t i = 0; i < count; ++i)
      f.slices[s].coeffs[i] = cd(coeffs[i][0].get<double>(), coeffs[i][1].get<double>());
  }
  return f;
}

inline json form_field_to_json(const FormField& omega) {
  json comps = json::array();
  for (const auto& [w, f] : omega.comps)
    comps.push_back({{"word", word_to_json(w)}, {"field", scalar_field_to_json(f)}});
  return json{{"n", omega.model->n()}, {"M", omega.model->M()}, {"components", comps}};
}

inline FormField form_field_from_json(const ModelPtr& model, const json& j) {
  if (j.at("n").get<int>() != model->n())
    throw std::invalid_argument("form_field_from_json: rank mismatch with the model");
  FormField omega(model);
  for (const auto& c : j.at("components"))
    omega.add(word_from_json(c.at("word"), model->n()),
              scalar_field_from_json(model, c.at("field")));
  return omega;
}

}  // namespace hodgefan

#endif

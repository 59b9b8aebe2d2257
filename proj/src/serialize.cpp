#include "mpfock/serialize.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "mpfock/error.hpp"

namespace mpfock {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

ojson complex_to_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("complex value must be a number or a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

ojson state_to_json(const FockState& s) {
  ojson coeffs = ojson::array();
  for (int n = 0; n < s.dim(); ++n) coeffs.push_back(complex_to_json(s[n]));
  ojson out;
  out["dim"] = s.dim();
  out["coeffs"] = std::move(coeffs);
  out["norm"] = s.norm();
  out["tail_mass"] = s.tail_mass();
  return out;
}

FockState state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw ConfigError("state document needs a \"coeffs\" array");
  const auto& arr = j["coeffs"];
  CVector c(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t n = 0; n < arr.size(); ++n) c[static_cast<Eigen::Index>(n)] = complex_from_json(arr[n]);
  if (j.contains("dim") && j["dim"].get<std::size_t>() != arr.size())
    throw ConfigError("state document: \"dim\" does not match the coefficient count");
  if (c.size() < 2) throw ConfigError("state document: need at least two coefficients");
  return FockState(std::move(c));
}

ojson factors_to_json(const DisentangledFactors& f) {
  ojson out;
  out["prefactor"] = complex_to_json(f.prefactor);
  out["plus_exponent"] = complex_to_json(f.plus_exponent);
  out["h_exponent"] = complex_to_json(f.h_exponent);
  out["minus_exponent"] = complex_to_json(f.minus_exponent);
  return out;
}

ojson disentangle_report_to_json(const DisentangleReport& r) {
  ojson input;
  input["A"] = complex_to_json(r.input.a);
  input["B"] = complex_to_json(r.input.b);
  input["C"] = complex_to_json(r.input.c);

  ojson candidates;
  candidates["published"]["factors"] = factors_to_json(r.published);
  candidates["published"]["oracle_deviation"] = r.published_deviation;
  candidates["substituted"]["factors"] = factors_to_json(r.substituted);
  candidates["substituted"]["oracle_deviation"] = r.substituted_deviation;

  ojson out;
  out["input"] = std::move(input);
  out["delta"] = complex_to_json(r.delta);
  out["factors"] = factors_to_json(r.factors());
  out["oracle_deviation"] = r.oracle_deviation();
  out["branch_used"] = to_string(r.branch_used);
  out["degenerate"] = r.degenerate;
  out["closed_form_consistent"] = r.branch_used == BchBranch::published;
  out["candidates"] = std::move(candidates);
  return out;
}

ojson params_to_json(const PhysicalParams& p) {
  ojson out;
  out["p"] = p.p;
  out["m"] = p.m;
  out["eps"] = p.eps;
  return out;
}

ojson state_envelope(const PhysicalParams& params, const FockState& state, double residual,
                     ojson diagnostics) {
  ojson out;
  out["params"] = params_to_json(params);
  out["state"] = state_to_json(state);
  out["residual"] = residual;
  out["diagnostics"] = std::move(diagnostics);
  return out;
}

ojson summary_to_json(const NumberDistribution& d) {
  ojson out;
  out["mean"] = d.mean;
  out["variance"] = d.variance;
  out["mandel_q"] = d.mandel_q;
  out["odd_even_ratio"] = d.odd_even_ratio;
  return out;
}

void write_spectrum_csv(std::ostream& os, const NumberDistribution& d) {
  std::size_t last = 0;
  for (std::size_t n = 0; n < d.probability.size(); ++n)
    if (d.probability[n] > 0.0) last = n;
  os << "n,probability\n";
  for (std::size_t n = 0; n <= last && n < d.probability.size(); ++n)
    os << n << ',' << format_double(d.probability[n]) << '\n';
  os << summary_to_json(d).dump() << '\n';
}

void write_scan_csv(std::ostream& os, std::span<const ScanPoint> points) {
  os << "omega_abs,m,ratio\n";
  for (const ScanPoint& pt : points)
    for (const ScanRow& row : pt.rows)
      os << format_double(std::abs(pt.omega)) << ',' << row.level << ','
         << format_double(row.ratio) << '\n';
}

ojson scan_to_json(std::span<const ScanPoint> points) {
  ojson out = ojson::array();
  for (const ScanPoint& pt : points) {
    ojson rows = ojson::array();
    for (const ScanRow& row : pt.rows) rows.push_back(ojson::array({row.level, row.ratio}));
    ojson item;
    item["omega"] = complex_to_json(pt.omega);
    item["omega_abs"] = std::abs(pt.omega);
    item["dim"] = pt.dim;
    item["ratios"] = std::move(rows);
    item["summary"] = summary_to_json(pt.summary);
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace mpfock

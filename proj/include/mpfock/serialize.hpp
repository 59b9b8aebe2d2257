#pragma once

// JSON and CSV encodings used by the command-line tool. All writers emit a
// fixed field order and shortest round-trip decimal floats, so identical
// inputs give byte-identical output.

#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"
#include "mpfock/bargmann.hpp"
#include "mpfock/fock.hpp"
#include "mpfock/metaplectic.hpp"
#include "mpfock/params.hpp"

namespace mpfock {

using ojson = nlohmann::ordered_json;

// Shortest decimal that round-trips; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

ojson complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

/// {"dim": N, "coeffs": [[re, im], ...], "norm": r, "tail_mass": t}
ojson state_to_json(const FockState& s);
/// Accepts the object written by state_to_json; "norm" and "tail_mass" are
/// ignored on input. Throws ConfigError on malformed documents.
FockState state_from_json(const nlohmann::json& j);

ojson factors_to_json(const DisentangledFactors& f);

/// {"input": {A, B, C}, "delta": [re, im], "factors": {...},
///  "oracle_deviation": d, "branch_used": "published"|"substituted", ...}
ojson disentangle_report_to_json(const DisentangleReport& r);

ojson params_to_json(const PhysicalParams& p);

/// {"params": {p, m, eps}, "state": ..., "residual": r, "diagnostics": {...}}
ojson state_envelope(const PhysicalParams& params, const FockState& state, double residual,
                     ojson diagnostics);

ojson summary_to_json(const NumberDistribution& d);

/// Header `n,probability`, one row per level up to the last nonzero
/// probability, then the JSON summary object on its own line.
void write_spectrum_csv(std::ostream& os, const NumberDistribution& d);

/// Header `omega_abs,m,ratio`.
void write_scan_csv(std::ostream& os, std::span<const ScanPoint> points);

ojson scan_to_json(std::span<const ScanPoint> points);

}  // namespace mpfock

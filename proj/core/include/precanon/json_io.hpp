#pragma once

#include "precanon/qpoly.hpp"
#include "precanon/rootsys.hpp"
#include "precanon/spherical.hpp"
#include "precanon/theorems.hpp"

#include <string>
#include <vector>

namespace precanon {

enum class Format { Json, Csv, Pretty };

/// Parses "json" | "csv" | "pretty"; throws DomainError otherwise.
Format parse_format(const std::string& name);

/// Coefficient list of a polynomial, ascending degree; entries that fit in
/// 64 bits render as JSON numbers, larger ones as decimal strings.
std::string poly_json(const QPoly& p);

std::string render_root_system(const RootSystem& rs, Format f);
std::string render_element(const SphElement& e, Format f);

/// Transition rows (lam, mu, coeff) for one or more columns.
struct TransitionRow {
  Weight lam;
  Weight mu;
  QPoly coeff;
};
std::string render_transition_rows(const std::vector<TransitionRow>& rows, Format f);

/// One report per line (JSON-lines for Format::Json) followed by a summary
/// with per-claim pass/fail counts.
std::string render_reports(const std::vector<VerifyReport>& reports, Format f);

bool all_pass(const std::vector<VerifyReport>& reports);

}  // namespace precanon

#include "precanon/json_io.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <sstream>

namespace precanon {

namespace {

using nlohmann::json;

json weight_json(const Weight& w) { return json(w.c); }

json poly_coeffs(const QPoly& p) {
  json arr = json::array();
  static const Int kMax = Int(INT64_MAX), kMin = Int(INT64_MIN);
  for (const Int& c : p.coeffs()) {
    if (c > kMax || c < kMin) {
      arr.push_back(c.str());
    } else {
      arr.push_back(static_cast<int64_t>(c));
    }
  }
  return arr;
}

json element_json(const SphElement& e) {
  json terms = json::array();
  for (const auto& t : e.terms()) {
    terms.push_back(json{{"coeff", poly_coeffs(t.coeff)}, {"weight", weight_json(t.weight)}});
  }
  return json{{"basis", e.basis().tag()}, {"terms", terms}};
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

json report_json(const VerifyReport& r) {
  return json{{"claim", r.claim},
              {"detail", r.detail},
              {"instance", r.instance},
              {"status", r.pass ? "pass" : "fail"}};
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "pretty") return Format::Pretty;
  throw DomainError("unknown format \"" + name + "\" (expected json, csv or pretty)");
}

std::string poly_json(const QPoly& p) { return poly_coeffs(p).dump(); }

std::string render_root_system(const RootSystem& rs, Format f) {
  switch (f) {
    case Format::Json: {
      json roots = json::array();
      for (const Root& r : rs.positive_roots()) roots.push_back(json(r.c));
      json j{{"family", family_name(rs.family())},
             {"positive_roots", roots},
             {"rank", rs.rank()}};
      return j.dump() + "\n";
    }
    case Format::Csv: {
      std::string out = "index,root,height\n";
      const auto& roots = rs.positive_roots();
      for (size_t k = 0; k < roots.size(); ++k) {
        out += std::to_string(k) + "," + csv_quote(roots[k].to_string()) + "," +
               std::to_string(roots[k].height) + "\n";
      }
      return out;
    }
    case Format::Pretty: {
      std::ostringstream out;
      out << family_name(rs.family()) << rs.rank() << ": " << rs.positive_roots().size()
          << " positive roots, highest height " << rs.highest_root_height() << "\n";
      for (const Root& r : rs.positive_roots())
        out << "  " << r.to_string() << "  (height " << r.height << ")\n";
      return out.str();
    }
  }
  return "";
}

std::string render_element(const SphElement& e, Format f) {
  switch (f) {
    case Format::Json:
      return element_json(e).dump() + "\n";
    case Format::Csv: {
      std::string out = "weight,coeff\n";
      for (const auto& t : e.terms())
        out += csv_quote(t.weight.to_string()) + "," + csv_quote(t.coeff.to_string()) + "\n";
      return out;
    }
    case Format::Pretty:
      return e.to_string() + "\n";
  }
  return "";
}

std::string render_transition_rows(const std::vector<TransitionRow>& rows, Format f) {
  switch (f) {
    case Format::Json: {
      std::string out;
      for (const auto& r : rows) {
        json j{{"coeff", poly_coeffs(r.coeff)},
               {"lambda", weight_json(r.lam)},
               {"mu", weight_json(r.mu)}};
        out += j.dump() + "\n";
      }
      return out;
    }
    case Format::Csv: {
      std::string out = "lambda,mu,coeff\n";
      for (const auto& r : rows) {
        out += csv_quote(r.lam.to_string()) + "," + csv_quote(r.mu.to_string()) + "," +
               csv_quote(r.coeff.to_string()) + "\n";
      }
      return out;
    }
    case Format::Pretty: {
      std::string out;
      for (const auto& r : rows) {
        out += r.lam.to_string() + " -> " + r.mu.to_string() + ": " + r.coeff.to_string() + "\n";
      }
      return out;
    }
  }
  return "";
}

std::string render_reports(const std::vector<VerifyReport>& reports, Format f) {
  std::map<std::string, std::pair<long long, long long>> byclaim;  // claim -> (pass, fail)
  long long pass = 0, fail = 0;
  for (const auto& r : reports) {
    auto& slot = byclaim[r.claim];
    if (r.pass) {
      ++slot.first;
      ++pass;
    } else {
      ++slot.second;
      ++fail;
    }
  }
  switch (f) {
    case Format::Json: {
      std::string out;
      for (const auto& r : reports) out += report_json(r).dump() + "\n";
      json claims = json::object();
      for (const auto& [claim, counts] : byclaim)
        claims[claim] = json{{"fail", counts.second}, {"pass", counts.first}};
      json summary{{"summary", claims}, {"total", json{{"fail", fail}, {"pass", pass}}}};
      out += summary.dump() + "\n";
      return out;
    }
    case Format::Csv: {
      std::string out = "claim,instance,status,detail\n";
      for (const auto& r : reports) {
        out += csv_quote(r.claim) + "," + csv_quote(r.instance) + "," +
               (r.pass ? "pass" : "fail") + "," + csv_quote(r.detail) + "\n";
      }
      return out;
    }
    case Format::Pretty: {
      std::ostringstream out;
      for (const auto& r : reports) {
        out << (r.pass ? "PASS" : "FAIL") << " " << r.claim << " " << r.instance;
        if (!r.detail.empty()) out << " -- " << r.detail;
        out << "\n";
      }
      out << "summary:";
      for (const auto& [claim, counts] : byclaim) {
        out << " " << claim << "=" << counts.first << "/" << (counts.first + counts.second);
      }
      out << " total=" << pass << "/" << (pass + fail) << "\n";
      return out.str();
    }
  }
  return "";
}

bool all_pass(const std::vector<VerifyReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

}  // namespace precanon

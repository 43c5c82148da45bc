#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "quiverweyl/suites.hpp"

namespace quiverweyl {

struct ReportOptions {
  // Off for bit-for-bit reproducible output.
  bool timings = true;
  std::uint64_t seed = 0;
};

inline nlohmann::ordered_json report_json(const Report& rep, const ReportOptions& opts) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& r : rep.results) {
    nlohmann::ordered_json rec;
    rec["id"] = r.id;
    rec["anchor"] = r.anchor;
    rec["status"] = to_string(r.status);
    rec["witness"] = r.witness;
    rec["millis"] = opts.timings ? static_cast<long long>(r.millis + 0.5) : 0;
    checks.push_back(std::move(rec));
  }
  nlohmann::ordered_json out;
  out["seed"] = opts.seed;
  out["summary"] = {{"pass", rep.count(CheckStatus::pass)},
                    {"fail", rep.count(CheckStatus::fail)},
                    {"skip", rep.count(CheckStatus::skip)},
                    {"info", rep.count(CheckStatus::info)}};
  out["checks"] = std::move(checks);
  return out;
}

inline std::string report_table(const Report& rep, const ReportOptions& opts) {
  std::size_t id_width = 2;
  for (const auto& r : rep.results) id_width = std::max(id_width, r.id.size());
  std::string out;
  char line[64];
  auto row = [&](const std::string& status, const std::string& id, const std::string& ms,
                 const std::string& anchor) {
    out += status + std::string(8 - std::min<std::size_t>(8, status.size()), ' ');
    out += id + std::string(id_width + 2 - id.size(), ' ');
    out += std::string(9 - std::min<std::size_t>(9, ms.size()), ' ') + ms + "  " + anchor + "\n";
  };
  row("STATUS", "ID", "MILLIS", "IDENTITY");
  for (const auto& r : rep.results) {
    std::snprintf(line, sizeof line, "%.0f", opts.timings ? r.millis : 0.0);
    row(to_string(r.status), r.id, line, r.anchor);
    if (!r.witness.empty())
      out += "        " + std::string(r.status == CheckStatus::fail ? "witness: " : "note: ") +
             r.witness + "\n";
  }
  out += "\n" + std::to_string(rep.count(CheckStatus::pass)) + " passed, " +
         std::to_string(rep.count(CheckStatus::fail)) + " failed, " +
         std::to_string(rep.count(CheckStatus::skip)) + " skipped, " +
         std::to_string(rep.count(CheckStatus::info)) + " informational\n";
  return out;
}

}  // namespace quiverweyl

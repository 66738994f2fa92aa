#include "hmfs/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "hmfs/fidelity.hpp"

namespace hmfs {
namespace {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json config_json(const ExperimentConfig& c) {
  return json{{"experiment", std::string(to_string(c.experiment))},
              {"n_values", c.n_values},
              {"trials", c.trials},
              {"mc_samples", c.mc_samples},
              {"seed", c.seed},
              {"unitary_ensemble", std::string(to_string(c.unitary_ensemble))},
              {"output_format", std::string(to_string(c.output_format))},
              {"output_path", c.output_path}};
}

std::string emit_csv(const ExperimentReport& report) {
  const auto names = report.scalar_names();
  std::string out = "n,trial,stream_id";
  for (const auto& name : names) out += "," + csv_field(name);
  out += "\r\n";
  for (const auto& t : report.trials) {
    out += std::to_string(t.n) + "," + std::to_string(t.trial) + "," + std::to_string(t.stream_id);
    for (const auto& name : names) out += "," + format_double(t.get(name));
    out += "\r\n";
  }
  return out;
}

std::string emit_json(const ExperimentReport& report, bool include_metadata) {
  json doc;
  doc["config"] = config_json(report.config);

  json trials = json::array();
  for (const auto& t : report.trials) {
    json scalars = json::object();
    for (const auto& [name, value] : t.scalars) scalars[name] = number_or_null(value);
    trials.push_back({{"n", t.n}, {"trial", t.trial}, {"stream_id", t.stream_id},
                      {"scalars", std::move(scalars)}});
  }
  doc["trials"] = std::move(trials);

  json aggregates = json::array();
  for (const auto& a : report.aggregates) {
    aggregates.push_back({{"n", a.n},
                          {"scalar", a.scalar},
                          {"count", a.count},
                          {"mean", number_or_null(a.mean)},
                          {"std_error", number_or_null(a.std_error)},
                          {"min", number_or_null(a.min)},
                          {"max", number_or_null(a.max)}});
  }
  doc["aggregates"] = std::move(aggregates);

  json discrepancies = json::array();
  for (const auto& d : report.discrepancies) {
    discrepancies.push_back({{"quantity", d.quantity},
                             {"n", d.n},
                             {"printed", number_or_null(d.printed)},
                             {"oracle", number_or_null(d.oracle)},
                             {"max_abs_diff", number_or_null(d.max_abs_diff)},
                             {"note", d.note}});
  }
  doc["discrepancies"] = std::move(discrepancies);

  json invariants = json::array();
  for (const auto& c : report.invariants) {
    invariants.push_back({{"name", c.name},
                          {"checked", c.checked},
                          {"violations", c.violations},
                          {"informational", c.informational},
                          {"passed", c.passed()},
                          {"detail", c.detail}});
  }
  doc["invariants"] = std::move(invariants);

  if (include_metadata) {
    doc["metadata"] = {{"timestamp", report.metadata.timestamp},
                       {"host", report.metadata.host},
                       {"version", report.metadata.version}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace

void TrialRecord::set(const std::string& name, double value) {
  for (auto& [k, v] : scalars) {
    if (k == name) {
      v = value;
      return;
    }
  }
  scalars.emplace_back(name, value);
}

double TrialRecord::get(const std::string& name) const {
  for (const auto& [k, v] : scalars) {
    if (k == name) return v;
  }
  return std::nan("");
}

bool ExperimentReport::all_passed() const {
  return std::all_of(invariants.begin(), invariants.end(),
                     [](const InvariantCheck& c) { return c.passed(); });
}

std::vector<std::string> ExperimentReport::scalar_names() const {
  std::vector<std::string> names;
  for (const auto& t : trials) {
    for (const auto& [k, v] : t.scalars) {
      if (std::find(names.begin(), names.end(), k) == names.end()) names.push_back(k);
    }
  }
  return names;
}

const InvariantCheck* ExperimentReport::find_invariant(const std::string& name) const {
  for (const auto& c : invariants) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<Aggregate> aggregate_trials(const std::vector<TrialRecord>& trials) {
  std::vector<std::size_t> ns;
  for (const auto& t : trials) {
    if (std::find(ns.begin(), ns.end(), t.n) == ns.end()) ns.push_back(t.n);
  }
  std::vector<Aggregate> out;
  for (auto n : ns) {
    std::vector<std::string> names;
    for (const auto& t : trials) {
      if (t.n != n) continue;
      for (const auto& [k, v] : t.scalars) {
        if (std::find(names.begin(), names.end(), k) == names.end()) names.push_back(k);
      }
    }
    for (const auto& name : names) {
      MeanAccumulator acc;
      Aggregate a{n, name};
      a.min = std::numeric_limits<double>::infinity();
      a.max = -std::numeric_limits<double>::infinity();
      for (const auto& t : trials) {
        if (t.n != n) continue;
        const double v = t.get(name);
        if (std::isnan(v)) continue;
        acc.add(v);
        a.min = std::min(a.min, v);
        a.max = std::max(a.max, v);
      }
      a.count = acc.count();
      if (a.count >= 2) {
        const MCEstimate e = acc.estimate();
        a.mean = e.mean;
        a.std_error = e.std_error;
      } else if (a.count == 1) {
        a.mean = a.min;
        a.std_error = std::nan("");
      } else {
        a.mean = a.std_error = a.min = a.max = std::nan("");
      }
      out.push_back(std::move(a));
    }
  }
  return out;
}

std::string emit(const ExperimentReport& report, OutputFormat format, bool include_metadata) {
  return format == OutputFormat::csv ? emit_csv(report) : emit_json(report, include_metadata);
}

void write_report(const ExperimentReport& report, const std::string& path, OutputFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << emit(report, format);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace hmfs

#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "harness.hpp"

namespace selfheal::sim {

struct Preset {
  std::string name;
  std::vector<std::size_t> sizes;
  std::vector<std::string> healers;
  std::string attack;
  std::size_t reps;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> n{"degree-vs-n", "messages-vs-n", "stretch-vs-n", "timeline"};
  return n;
}

inline Preset make_preset(const std::string& name, std::size_t reps) {
  std::vector<std::string> dash_family{"dash", "sdash", "graphheal", "binheal", "line"};
  if (name == "degree-vs-n" || name == "messages-vs-n" || name == "stretch-vs-n")
    return {name, {50, 100, 200}, dash_family, "nmax", reps};
  if (name == "timeline") return {name, {100}, dash_family, "nmax", 1};
  throw BadParams("unknown preset " + name);
}

// One config per (n, healer, seed), in output order.
inline std::vector<SimConfig> expand(const Preset& p, const SimConfig& base) {
  std::vector<SimConfig> out;
  for (std::size_t n : p.sizes)
    for (auto& h : p.healers)
      for (std::size_t r = 0; r < p.reps; ++r) {
        SimConfig c = base;
        c.n0 = n;
        c.topology.kind = TopologyKind::PrefAttach;
        c.healer = h;
        c.attack.kind = p.attack;
        c.seed = base.seed + r;
        c.distances = p.name == "stretch-vs-n" || p.name == "timeline";
        out.push_back(c);
      }
  return out;
}

struct RunSummary {
  double max_delta = 0;
  double messages = 0;  // total over the run
  double id_changes = 0;
  double stretch = 1;
};

inline RunSummary summarize(const Trace& t) {
  RunSummary s;
  for (auto& r : t.rows) {
    s.max_delta = std::max(s.max_delta, double(r.max_delta_add));
    s.messages += double(r.msgs_total);
    s.id_changes = std::max(s.id_changes, double(r.id_changes_max));
    if (!std::isnan(r.stretch)) s.stretch = std::max(s.stretch, r.stretch);
  }
  return s;
}

struct MeanStd {
  double mean = 0, std = 0;
};

// Sample standard deviation; 0 for a single value.
inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= double(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(ss / double(xs.size() - 1));
  }
  return m;
}

struct PresetResult {
  std::vector<Violation> violations;
  std::vector<std::string> errors;
};

// Runs the preset and writes its aggregated CSV.
inline PresetResult run_preset(const Preset& p, const SimConfig& base, std::ostream& os) {
  PresetResult res;
  auto configs = expand(p, base);
  if (p.name == "timeline") {
    os << "algo," << kCsvHeader << '\n';
    for (auto& c : configs) {
      Trace t = run(c);
      std::string body = csv_string(t.rows);
      std::size_t pos = body.find('\n') + 1;
      while (pos < body.size()) {
        std::size_t end = body.find('\n', pos);
        os << c.healer << ',' << body.substr(pos, end - pos) << '\n';
        pos = end + 1;
      }
      res.violations.insert(res.violations.end(), t.violations.begin(), t.violations.end());
      if (!t.error.empty()) res.errors.push_back(t.error);
    }
    return res;
  }

  if (p.name == "degree-vs-n") os << "n,algo,mean_max_delta,std\n";
  if (p.name == "messages-vs-n") os << "n,algo,mean_messages,std,mean_id_changes,std_id_changes\n";
  if (p.name == "stretch-vs-n") os << "n,algo,mean_stretch,std\n";
  for (std::size_t i = 0; i < configs.size(); i += p.reps) {
    std::vector<double> deg, msg, ids, str;
    for (std::size_t r = 0; r < p.reps; ++r) {
      Trace t = run(configs[i + r]);
      auto s = summarize(t);
      deg.push_back(s.max_delta);
      msg.push_back(s.messages);
      ids.push_back(s.id_changes);
      str.push_back(s.stretch);
      res.violations.insert(res.violations.end(), t.violations.begin(), t.violations.end());
      if (!t.error.empty()) res.errors.push_back(t.error);
    }
    os << configs[i].n0 << ',' << configs[i].healer << ',';
    if (p.name == "degree-vs-n") {
      auto m = mean_std(deg);
      os << fmt_double(m.mean) << ',' << fmt_double(m.std) << '\n';
    } else if (p.name == "messages-vs-n") {
      auto m = mean_std(msg), d = mean_std(ids);
      os << fmt_double(m.mean) << ',' << fmt_double(m.std) << ',' << fmt_double(d.mean) << ',' << fmt_double(d.std) << '\n';
    } else {
      auto m = mean_std(str);
      os << fmt_double(m.mean) << ',' << fmt_double(m.std) << '\n';
    }
  }
  return res;
}

}  // namespace selfheal::sim

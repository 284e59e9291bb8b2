// Copyright 2026 The qvtlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <tuple>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>
#include <json.hpp>

#include "io.hpp"

namespace qvt::cli {

using nlohmann::json;

std::vector<double> default_eps_grid() {
  std::vector<double> g;
  for (int i = 0; i < 7; ++i) g.push_back(std::pow(10.0, -3.25 + 2.0 * i / 6));
  return g;
}

void SweepSpec::check() const {
  if (n_list.empty() || models.empty() || eps_list.empty() || levels.empty())
    throw InvalidArgument("sweep: n, model, eps and level lists must be non-empty");
  if (circuits < 1) throw InvalidArgument("sweep: circuits per point must be >= 1");
  for (int n : n_list)
    if (n < 2 || n > 9) throw InvalidArgument("sweep: N must be in [2, 9]");
  for (const auto& m : models) {
    const ErrorModelSpec& spec = find_model(m);
    for (double e : eps_list)
      if (!(e >= 0) || e > max_eps(spec)) throw InvalidArgument("sweep: eps " + format_double(e) + " invalid for " + m);
  }
}

std::string to_json(const SweepPoint& p) {
  json j{{"n", p.n},
         {"model", p.model},
         {"level", to_string(p.level)},
         {"eps", p.eps},
         {"circuits", p.circuits},
         {"mean_ideal", p.mean_ideal},
         {"mean_noisy", p.mean_noisy},
         {"std_noisy", p.std_noisy},
         {"mean_two_qubit_gates", p.mean_two_qubit_gates}};
  return j.dump();
}

SweepPoint sweep_point_from_json(const std::string& line) {
  try {
    const json j = json::parse(line);
    SweepPoint p;
    p.n = j.at("n").get<int>();
    p.model = j.at("model").get<std::string>();
    p.level = opt_level_from_string(j.at("level").get<std::string>());
    p.eps = j.at("eps").get<double>();
    p.circuits = j.at("circuits").get<int>();
    p.mean_ideal = j.at("mean_ideal").get<double>();
    p.mean_noisy = j.at("mean_noisy").get<double>();
    p.std_noisy = j.at("std_noisy").get<double>();
    p.mean_two_qubit_gates = j.value("mean_two_qubit_gates", 0.0);
    return p;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed sweep record: ") + e.what());
  }
}

SweepPoint evaluate_point(int n, const std::string& model, OptLevel level, double eps, int circuits,
                          std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.circuits = circuits;
  cfg.shots = 0;
  cfg.model = model;
  cfg.eps = eps;
  cfg.level = level;
  cfg.mirror = level == OptLevel::High;
  cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(n));
  const ExperimentResult r = run_experiment(cfg);
  SweepPoint p;
  p.n = n;
  p.model = find_model(model).name;
  p.level = level;
  p.eps = eps;
  p.circuits = circuits;
  p.mean_ideal = r.mean_ideal;
  p.mean_noisy = r.mean_noisy;
  p.std_noisy = r.std_noisy;
  for (const auto& rec : r.records) p.mean_two_qubit_gates += double(rec.two_qubit_gates) / circuits;
  return p;
}

std::optional<double> interpolate_crossing(const std::vector<double>& eps, const std::vector<double>& success,
                                           double target) {
  if (eps.size() != success.size() || eps.size() < 2)
    throw InvalidArgument("interpolate_crossing: need at least two (eps, success) pairs");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0)) throw InvalidArgument("interpolate_crossing: eps must be positive");
    pts.emplace_back(std::log10(eps[i]), success[i]);
  }
  std::sort(pts.begin(), pts.end());
  std::size_t k = pts.size();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i].second >= target && pts[i + 1].second < target) {
      k = i;
      break;
    }
  if (k == pts.size()) return std::nullopt;

  std::vector<double> x, y;
  for (const auto& [a, b] : pts) {
    x.push_back(a);
    y.push_back(b);
  }
  std::function<double(double)> f;
  if (x.size() >= 4) {
    auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(x), std::move(y));
    f = [spline](double t) { return (*spline)(t); };
  } else {
    const auto [x0, y0] = pts[k];
    const auto [x1, y1] = pts[k + 1];
    f = [=](double t) { return y0 + (y1 - y0) * (t - x0) / (x1 - x0); };
  }
  auto g = [&](double t) { return f(t) - target; };
  boost::math::tools::eps_tolerance<double> tol(40);
  auto [lo, hi] = boost::math::tools::bisect(g, pts[k].first, pts[k + 1].first, tol);
  return std::pow(10.0, 0.5 * (lo + hi));
}

std::vector<ThresholdRow> thresholds_for(const std::vector<SweepPoint>& points) {
  std::map<std::tuple<int, std::string, int>, std::vector<const SweepPoint*>> groups;
  for (const auto& p : points) groups[{p.n, p.model, static_cast<int>(p.level)}].push_back(&p);
  std::vector<ThresholdRow> rows;
  for (const auto& [key, pts] : groups) {
    ThresholdRow row;
    row.n = std::get<0>(key);
    row.model = std::get<1>(key);
    row.level = static_cast<OptLevel>(std::get<2>(key));
    std::vector<double> e, s;
    for (const auto* p : pts) {
      if (p->eps <= 0) continue;
      e.push_back(p->eps);
      s.push_back(p->mean_noisy);
    }
    if (e.size() >= 2) row.simulated = interpolate_crossing(e, s);
    const ErrorModelSpec& spec = find_model(row.model);
    for (auto [method, slot] : {std::pair{FidelityKind::Avg, &row.estimate_avg}, std::pair{FidelityKind::Proc, &row.estimate_proc}}) {
      try {
        *slot = passing_threshold(spec, row.n, row.level, method);
      } catch (const NumericError&) {
        *slot = std::nan("");
      }
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c)) : '-';
  return out;
}

std::filesystem::path point_path(const std::filesystem::path& dir, int n, const std::string& model, OptLevel level,
                                 double eps) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", eps);
  return dir / "points" / ("n" + std::to_string(n) + "_" + slug(model) + "_" + to_string(level) + "_" + buf + ".json");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

SweepSummary run_sweep(const SweepSpec& spec, bool quiet) {
  spec.check();
  std::filesystem::create_directories(spec.out_dir / "points");
  SweepSummary summary;
  std::ofstream jsonl(spec.out_dir / "results.jsonl", std::ios::app);
  if (!jsonl) throw DataError("cannot open " + (spec.out_dir / "results.jsonl").string());

  for (int n : spec.n_list)
    for (const auto& model : spec.models)
      for (OptLevel level : spec.levels)
        for (double eps : spec.eps_list) {
          const auto path = point_path(spec.out_dir, n, find_model(model).name, level, eps);
          SweepPoint p;
          if (std::filesystem::exists(path)) {
            p = sweep_point_from_json(read_file(path));
            if (p.circuits != spec.circuits)
              throw DataError("existing point " + path.string() + " has a different circuit count");
            ++summary.reused;
          } else {
            p = evaluate_point(n, model, level, eps, spec.circuits, spec.seed);
            const std::string line = to_json(p);
            write_file_atomic(path, line + "\n");
            jsonl << line << '\n';
            jsonl.flush();
            ++summary.computed;
            if (!quiet)
              std::cerr << "n=" << n << " model=" << p.model << " level=" << to_string(level) << " eps=" << fmt(eps)
                        << " heavy=" << fmt(p.mean_noisy) << '\n';
          }
          summary.points.push_back(p);
        }

  std::ostringstream csv;
  csv << "n,model,level,eps,circuits,mean_ideal,mean_noisy,std_noisy,mean_two_qubit_gates\n";
  for (const auto& p : summary.points)
    csv << p.n << ',' << p.model << ',' << to_string(p.level) << ',' << fmt(p.eps) << ',' << p.circuits << ','
        << fmt(p.mean_ideal) << ',' << fmt(p.mean_noisy) << ',' << fmt(p.std_noisy) << ','
        << fmt(p.mean_two_qubit_gates) << '\n';
  write_file_atomic(spec.out_dir / "summary.csv", csv.str());

  summary.thresholds = thresholds_for(summary.points);
  std::ostringstream th;
  th << "n,model,level,simulated,estimate_avg,estimate_proc\n";
  for (const auto& r : summary.thresholds)
    th << r.n << ',' << r.model << ',' << to_string(r.level) << ',' << (r.simulated ? fmt(*r.simulated) : "nan") << ','
       << fmt(r.estimate_avg) << ',' << fmt(r.estimate_proc) << '\n';
  write_file_atomic(spec.out_dir / "thresholds.csv", th.str());
  return summary;
}

}  // namespace qvt::cli

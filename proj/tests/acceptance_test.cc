// Copyright 2026 The enlg Authors.
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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "enlg/adapt.h"
#include "enlg/cli.h"
#include "enlg/construct.h"
#include "enlg/error.h"
#include "enlg/io.h"
#include "enlg/model.h"
#include "enlg/optimize.h"
#include "enlg/random.h"
#include "test_util.h"

namespace enlg {
namespace {

using testing::EigenSpectrum;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// n, m, s in {2, 3} unless pinned.
QcGame DrawGame(CounterRng& rng, std::size_t n = 0, std::size_t m = 0) {
  const std::size_t nn = n ? n : 2 + rng.UniformIndex(2);
  const std::size_t mm = m ? m : 2 + rng.UniformIndex(2);
  const std::size_t s = 2 + rng.UniformIndex(2);
  return RandomQcGame(nn, s, mm, 2, 2, rng);
}

double Loss(const Probability& p) { return 1.0 - p.raw; }

Verdict ConstructionValidity() {
  CounterRng rng(101, 0);
  double low = std::numeric_limits<double>::infinity();
  double high = -low;
  for (int t = 0; t < 200; ++t) {
    const ExtendedGame h = BuildExtendedGame(DrawGame(rng));
    for (const auto& p : h.ref_ops) {
      const Eigen::VectorXd ev = EigenSpectrum(p);
      low = std::min(low, ev.minCoeff());
      high = std::max(high, ev.maxCoeff());
    }
  }
  return {low >= -1e-9 && high <= 1.0 + 1e-9,
          "smallest eigenvalue " + Sci(low) + ", largest - 1 = " +
              Sci(high - 1.0)};
}

Verdict ForwardLossIdentity() {
  CounterRng rng(102, 0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const QcGame g = DrawGame(rng, 2, 2);
    const QcStrategy s = RandomQcStrategy(g, 1 + rng.UniformIndex(2),
                                          1 + rng.UniformIndex(2), rng);
    const ExtendedGame h = BuildExtendedGame(g);
    const auto adapted = AdaptQcToExtended(g, s);
    const double q_h = Loss(ExtendedWinProbability(h, adapted.strategy));
    const double q_g = Loss(QcWinProbability(g, s));
    worst = std::max(worst, std::abs(q_h - q_g / 4.0));
  }
  return {worst < 1e-9, "max |q_H - q_G/4| = " + Sci(worst)};
}

Verdict BackwardLossIdentity() {
  CounterRng rng(103, 0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const QcGame g = DrawGame(rng, 2, 2);
    const ExtendedGame h = BuildExtendedGame(g);
    const ExtendedStrategy s = RandomExtendedStrategy(
        h, 1 + rng.UniformIndex(2), 1 + rng.UniformIndex(2), rng);
    const auto adapted = AdaptExtendedToQc(g, s);
    const double q_g = Loss(QcWinProbability(g, adapted.strategy));
    const double q_h = Loss(ExtendedWinProbability(h, s));
    worst = std::max(worst, std::abs(q_g - 4.0 * q_h));
  }
  return {worst < 1e-9, "max |q_G - 4 q_H| = " + Sci(worst)};
}

Verdict LossCap() {
  CounterRng rng(104, 0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const ExtendedGame h = BuildExtendedGame(DrawGame(rng, 2, 2));
    const ExtendedStrategy s = RandomExtendedStrategy(
        h, 1 + rng.UniformIndex(2), 1 + rng.UniformIndex(2), rng);
    worst = std::max(worst, Loss(ExtendedWinProbability(h, s)));
  }
  return {worst <= 0.25 + 1e-9, "max losing probability " + Sci(worst)};
}

Verdict AnalysisOperators() {
  CounterRng rng(105, 0);
  double worst_fwd = 0.0, worst_bwd = 0.0;
  for (int t = 0; t < 25; ++t) {
    const QcGame g = DrawGame(rng, 2, 2);
    const QcStrategy s = RandomQcStrategy(g, 1 + rng.UniformIndex(2),
                                          1 + rng.UniformIndex(2), rng);
    const double r0 =
        Trace(ForwardLossOperator(g, s) * ForwardInitialState(g, s)).real();
    worst_fwd = std::max(
        worst_fwd, std::abs(r0 - Loss(QcWinProbability(g, s)) / 4.0));
  }
  for (int t = 0; t < 25; ++t) {
    const QcGame g = DrawGame(rng, 2, 2);
    const ExtendedGame h = BuildExtendedGame(g);
    const ExtendedStrategy s = RandomExtendedStrategy(
        h, 1 + rng.UniformIndex(2), 1 + rng.UniformIndex(2), rng);
    const double r0 =
        Trace(BackwardLossOperator(g, s) * BackwardInitialState(g, s)).real();
    worst_bwd = std::max(
        worst_bwd, std::abs(r0 - 4.0 * Loss(ExtendedWinProbability(h, s))));
  }
  return {worst_fwd <= 1e-10 && worst_bwd <= 1e-10,
          "forward " + Sci(worst_fwd) + ", backward " + Sci(worst_bwd)};
}

Verdict WeylBasisCheck() {
  double unitary = 0.0, ortho = 0.0;
  for (std::size_t d : {2, 3, 4}) {
    const WeylBasis basis = MakeWeylBasis(d);
    if (basis.size() != d * d) return {false, "wrong basis size"};
    const ComplexMatrix id = ComplexMatrix::Identity(d);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      unitary = std::max(unitary, testing::MaxAbsDiff(
                                      Adjoint(basis[i]) * basis[i], id));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex ip = Trace(Adjoint(basis[i]) * basis[j]);
        const double want = i == j ? static_cast<double>(d) : 0.0;
        ortho = std::max(ortho, std::abs(ip - want));
      }
    }
  }
  return {unitary <= 1e-12 && ortho <= 1e-10,
          "unitarity " + Sci(unitary) + ", inner products " + Sci(ortho)};
}

Verdict ChshSanity() {
  SeeSawConfig config;
  config.dim_u = 2;
  config.dim_v = 2;
  config.restarts = 20;
  config.seed = 7;
  const auto report = SeeSawExtended(BuildChshGame(), config);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", report.best_value);
  return {report.best_value >= 0.85345, std::string("value ") + buf};
}

struct SweepOutput {
  int status = -1;
  std::string csv;
};

std::string RvGamePath() {
  static const std::string path = [] {
    const std::string p = std::string(ENLG_BINARY_DIR) + "/rv_game.json";
    std::ostringstream out, err;
    RunCli({"catalog", "rv", "-o", p}, out, err);
    return p;
  }();
  return path;
}

SweepOutput RunRvSweep(const std::string& csv_path) {
  std::ostringstream out, err;
  SweepOutput r;
  r.status = RunCli({"sweep", RvGamePath(), "--dims", "1x1,2x2,3x3",
                     "--restarts", "20", "--seed", "2026", "--no-timing",
                     "-o", csv_path},
                    out, err);
  if (r.status == kExitOk) r.csv = ReadTextFile(csv_path);
  return r;
}

std::vector<double> LowerBounds(const std::string& csv) {
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<double> out;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string n, bound;
    std::getline(fields, n, ',');
    std::getline(fields, bound, ',');
    out.push_back(std::stod(bound));
  }
  return out;
}

std::string first_rv_csv;

Verdict RvDemo() {
  const SweepOutput r =
      RunRvSweep(std::string(ENLG_BINARY_DIR) + "/rv_sweep_a.csv");
  if (r.status != kExitOk) {
    return {false, "sweep exited with " + std::to_string(r.status)};
  }
  first_rv_csv = r.csv;
  const auto v = LowerBounds(r.csv);
  if (v.size() != 3) return {false, "expected 3 rows"};
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "bounds %.12f %.12f %.12f; steps %.3e %.3e", v[0], v[1], v[2],
                v[1] - v[0], v[2] - v[1]);
  const bool increasing = v[0] < v[1] && v[1] < v[2];
  bool below = true;
  for (double x : v) below = below && x < 1.0 - 1e-4;
  const bool gap = v[2] - v[0] >= 1e-3;
  return {increasing && below && gap, buf};
}

Verdict ValueRelation() {
  CounterRng rng(109, 0);
  int held = 0;
  double worst = 1.0;
  for (int t = 0; t < 20; ++t) {
    const QcGame g = DrawGame(rng, 2, 2);
    SeeSawConfig config;
    config.dim_u = 2;
    config.dim_v = 1;
    config.restarts = 5;
    config.seed = 900 + t;
    const RelationReport r = CheckValueRelation(g, config);
    held += r.holds ? 1 : 0;
    worst = std::min(worst, r.v_h - r.bound);
  }
  return {held == 20, std::to_string(held) + "/20 certified, min v_H - bound " +
                          Sci(worst)};
}

Verdict Determinism() {
  if (first_rv_csv.empty()) return {false, "criterion 8 produced no CSV"};
  const SweepOutput r =
      RunRvSweep(std::string(ENLG_BINARY_DIR) + "/rv_sweep_b.csv");
  if (r.status != kExitOk) {
    return {false, "sweep exited with " + std::to_string(r.status)};
  }
  return {r.csv == first_rv_csv,
          r.csv == first_rv_csv ? "CSV byte-identical" : "CSV differs"};
}

}  // namespace
}  // namespace enlg

int main() {
  using enlg::Verdict;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> checks =
      {{"construction validity", enlg::ConstructionValidity},
       {"forward loss identity", enlg::ForwardLossIdentity},
       {"backward loss identity", enlg::BackwardLossIdentity},
       {"loss cap", enlg::LossCap},
       {"analysis operators", enlg::AnalysisOperators},
       {"weyl basis", enlg::WeylBasisCheck},
       {"chsh embedding", enlg::ChshSanity},
       {"rv sweep growth", enlg::RvDemo},
       {"value relation witness", enlg::ValueRelation},
       {"sweep determinism", enlg::Determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = checks[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n",
                v.pass ? "PASS" : "FAIL", i + 1, checks[i].first,
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

/*
 * Copyright 2026 The coexplore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance checks. Prints one PASS/FAIL line per criterion; with
// --criterion N only that one runs. Exit status is non-zero when any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "coexplore/frontier.h"
#include "coexplore/metrics.h"
#include "coexplore/overlap.h"
#include "coexplore/pgm_io.h"
#include "coexplore/pose_graph.h"
#include "coexplore/run_log.h"
#include "coexplore/scenario_config.h"
#include "coexplore/simulation.h"
#include "fmt/core.h"
#include "oracles.h"
#include "test_maps.h"

namespace coexplore {
namespace {

// Pinned tolerances and thresholds.
constexpr double kIoUOracleSeconds = 5.0;
constexpr int kRandomTrials = 1000;
constexpr double kIdentityTol = 1e-12;
constexpr double kEigenTol = 1e-9;
constexpr double kRotationTol = 1e-8;
constexpr int kRotationTrials = 100;
constexpr double kObjectiveTol = 1e-12;
constexpr double kSafeFraction = 0.9;
constexpr double kRelocSeconds = 60.0;
constexpr double kMinFrontierReduction = 40.0;  // percent
constexpr double kIoUFreeAreaFraction = 0.10;
constexpr int kIoUWinsOverMexp = 7;
constexpr int kCoverageWinsOverMexp = 7;
constexpr int kCoverageWinsOverDcm = 6;
constexpr std::uint64_t kScenarioSeed = 1;
constexpr int kSeedCount = 10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ScenarioConfig Scenario(Policy policy, std::uint64_t seed, bool reloc = true) {
  ScenarioConfig c = LoadScenarioConfig(COEXPLORE_ACCEPTANCE_SCENARIO);
  c.policy = policy;
  c.seed = seed;
  c.reloc = reloc;
  return c;
}

// Seeded runs shared by the scenario criteria.
const MetricsLog& SeededRun(Policy policy, std::uint64_t seed) {
  static std::map<std::pair<Policy, std::uint64_t>, MetricsLog> cache;
  const auto key = std::make_pair(policy, seed);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, RunScenario(Scenario(policy, seed))).first;
  }
  return it->second;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::filesystem::path ScratchDir(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         fmt::format("coexplore_acceptance_{}_{}", name, ::getpid());
}

Outcome IoUOracle() {
  std::mt19937_64 rng(1);
  const auto start = Clock::now();
  int mismatches = 0;
  for (int trial = 0; trial < kRandomTrials; ++trial) {
    const OccupancyGrid m1 = testing::RandomGrid(rng, 8, 8);
    const OccupancyGrid m2 = testing::RandomGrid(rng, 8, 8);
    if (!oracle::SameAsFullFrame(ComputeIoU(m1, m2).map,
                                 oracle::IoUBruteForce(m1, m2))) {
      ++mismatches;
    }
  }
  const double seconds = SecondsSince(start);
  return {mismatches == 0 && seconds < kIoUOracleSeconds,
          fmt::format("{} mismatches in {} pairs, {:.3f} s", mismatches,
                      kRandomTrials, seconds)};
}

std::vector<FrontierPoint> RandomPoints(std::mt19937_64& rng, int n,
                                        FrontierSource source) {
  std::uniform_real_distribution<double> coord(0.0, 8.0);
  std::vector<FrontierPoint> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({{coord(rng), coord(rng)}, source, 0, 0.0});
  }
  return out;
}

Outcome FilterInvariants() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> count(0, 30);
  std::uniform_real_distribution<double> thresh(0.05, 2.0);
  int spacing = 0;
  int foreign = 0;
  int near_iou = 0;
  int verbatim = 0;
  for (int trial = 0; trial < kRandomTrials; ++trial) {
    const auto local = RandomPoints(rng, count(rng), FrontierSource::kLocal);
    const auto iou = RandomPoints(rng, count(rng), FrontierSource::kIou);
    const double d = thresh(rng);
    const auto out = FilterFrontiers(local, iou, {d});
    for (std::size_t i = 0; i < out.size(); ++i) {
      bool in_local = false;
      for (const FrontierPoint& p : local) {
        in_local |= p.position == out[i].position &&
                    out[i].source == FrontierSource::kLocal;
      }
      foreign += !in_local;
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        spacing += Distance(out[i].position, out[j].position) < d;
      }
      for (const FrontierPoint& q : iou) {
        near_iou += Distance(out[i].position, q.position) < d;
      }
    }
    const auto zero = FilterFrontiers(local, iou, {0.0});
    bool same = zero.size() == local.size();
    for (std::size_t i = 0; same && i < zero.size(); ++i) {
      same = zero[i].position == local[i].position;
    }
    verbatim += !same;
  }
  return {spacing + foreign + near_iou + verbatim == 0,
          fmt::format("violations: spacing {}, not from local {}, near IoU {}, "
                      "zero threshold {}",
                      spacing, foreign, near_iou, verbatim)};
}

Outcome DOptimality() {
  const double identity = EdgeDOptimality(Matrix6::Identity());
  Vector6 diag;
  diag << 1, 2, 3, 4, 5, 6;
  const Matrix6 d = diag.asDiagonal();
  const double eigen = oracle::GeometricMeanEigenvalue(d);
  const double diag_error = std::abs(EdgeDOptimality(d) - eigen);
  const double closed_form_error = std::abs(eigen - std::pow(720.0, 1.0 / 6.0));
  std::mt19937_64 rng(3);
  double worst_rotation = 0.0;
  for (int trial = 0; trial < kRotationTrials; ++trial) {
    const Matrix6 omega = oracle::RandomSpd(rng);
    const Matrix6 q = oracle::RandomRotation(rng);
    const Matrix6 rotated = q * omega * q.transpose();
    worst_rotation = std::max(
        worst_rotation,
        std::abs(EdgeDOptimality(0.5 * (rotated + rotated.transpose())) -
                 EdgeDOptimality(omega)));
  }
  return {std::abs(identity - 1.0) <= kIdentityTol && diag_error <= kEigenTol &&
              closed_form_error <= kEigenTol && worst_rotation <= kRotationTol,
          fmt::format("identity error {:.2e}, diag(1..6) error {:.2e}, "
                      "worst rotation error {:.2e}",
                      std::abs(identity - 1.0), diag_error, worst_rotation)};
}

std::vector<Pose3> RandomTrajectory(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> step(-1.0, 1.0);
  std::vector<Pose3> poses(1);
  for (int i = 1; i < n; ++i) {
    Pose3 p = poses.back();
    p.x += step(rng);
    p.y += step(rng);
    p.z += 0.1 * step(rng);
    p.yaw = NormalizeAngle(p.yaw + step(rng));
    poses.push_back(p);
  }
  return poses;
}

Outcome GraphObjective() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  double worst_zero = 0.0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Pose3> truth = RandomTrajectory(rng, 25);
    PoseGraph exact;
    PoseGraph once;
    PoseGraph twice;
    for (const Pose3& p : truth) {
      exact.AddNode(p);
      once.AddNode(p);
      twice.AddNode(p);
    }
    for (int i = 0; i + 1 < 25; ++i) {
      const Pose3 m = Between(truth[i], truth[i + 1]);
      const Matrix6 omega = oracle::RandomSpd(rng);
      exact.AddEdge({i, i + 1, m, omega});
      const double n[6] = {noise(rng), noise(rng), noise(rng),
                           noise(rng), noise(rng), noise(rng)};
      const auto perturbed = [&](double k) {
        return Pose3{m.x + k * n[0],     m.y + k * n[1],
                     m.z + k * n[2],     m.roll + k * n[3],
                     m.pitch + k * n[4], m.yaw + k * n[5]};
      };
      once.AddEdge({i, i + 1, perturbed(1.0), omega});
      twice.AddEdge({i, i + 1, perturbed(2.0), omega});
    }
    worst_zero = std::max(worst_zero, std::abs(Objective(exact, truth)));
    worst_ratio = std::max(
        worst_ratio,
        std::abs(Objective(twice, truth) / Objective(once, truth) - 4.0));
  }
  return {worst_zero <= kObjectiveTol && worst_ratio <= kObjectiveTol,
          fmt::format("worst objective at truth {:.2e}, worst |ratio - 4| {:.2e}",
                      worst_zero, worst_ratio)};
}

bool Safe(double d_opti, const RelocPolicy& policy) {
  return policy.trigger == RelocTrigger::kBelow ? d_opti >= policy.d_max
                                                : d_opti <= policy.d_max;
}

Outcome Relocalization() {
  const auto start = Clock::now();
  const ScenarioConfig with = Scenario(Policy::kOurs, kScenarioSeed, true);
  const ScenarioConfig without = Scenario(Policy::kOurs, kScenarioSeed, false);
  const RelocPolicy policy = with.EffectiveRelocPolicy();
  const MetricsLog on = RunScenario(with);
  const MetricsLog off = RunScenario(without);

  const std::size_t begin = static_cast<std::size_t>(
      std::floor(with.transient_fraction * on.rows.size()));
  int safe = 0;
  int samples = 0;
  for (std::size_t t = begin; t < on.rows.size(); ++t) {
    for (double d : on.rows[t].d_opti) {
      safe += Safe(d, policy);
      ++samples;
    }
  }
  const double fraction = samples ? static_cast<double>(safe) / samples : 0.0;

  // Without re-localization: some robot leaves the safe side, and no robot
  // that left it is ever back on it.
  int crossed = 0;
  int recovered = 0;
  for (int r = 0; r < off.robot_count; ++r) {
    bool left = false;
    bool back = false;
    for (const MetricsRow& row : off.rows) {
      const bool ok = Safe(row.d_opti[r], policy);
      if (!ok) left = true;
      if (left && ok) back = true;
    }
    crossed += left;
    recovered += back;
  }
  const double seconds = SecondsSince(start);
  return {fraction >= kSafeFraction && crossed > 0 && recovered == 0 &&
              seconds < kRelocSeconds,
          fmt::format("safe fraction with re-localization {:.3f}; without: {} "
                      "robots crossed, {} recovered; {:.1f} s",
                      fraction, crossed, recovered, seconds)};
}

Outcome FrontierReductionCheck() {
  const MetricsLog& log = SeededRun(Policy::kOurs, kScenarioSeed);
  const double mean = log.summary.mean_frontier_reduction;
  return {mean >= kMinFrontierReduction,
          fmt::format("mean per-tick reduction {:.1f}%", mean)};
}

Outcome IoUBounding() {
  double ratio_sum = 0.0;
  int wins = 0;
  for (int s = 1; s <= kSeedCount; ++s) {
    const RunSummary& ours = SeededRun(Policy::kOurs, s).summary;
    const RunSummary& mexp = SeededRun(Policy::kMexp, s).summary;
    ratio_sum += ours.mean_iou_area / ours.free_area;
    wins += ours.mean_iou_area < mexp.mean_iou_area;
  }
  const double mean_ratio = ratio_sum / kSeedCount;
  return {mean_ratio <= kIoUFreeAreaFraction && wins >= kIoUWinsOverMexp,
          fmt::format("mean IoU area / free area {:.3f} (limit {:.2f}); "
                      "below mexp on {}/{} seeds",
                      mean_ratio, kIoUFreeAreaFraction, wins, kSeedCount)};
}

Outcome CoverageDominance() {
  int over_mexp = 0;
  int over_dcm = 0;
  for (int s = 1; s <= kSeedCount; ++s) {
    const double ours = SeededRun(Policy::kOurs, s).summary.final_coverage;
    over_mexp += ours >= SeededRun(Policy::kMexp, s).summary.final_coverage;
    over_dcm += ours >= SeededRun(Policy::kDcm, s).summary.final_coverage;
  }
  return {over_mexp >= kCoverageWinsOverMexp && over_dcm >= kCoverageWinsOverDcm,
          fmt::format("ours >= mexp on {}/{}, ours >= dcm on {}/{}", over_mexp,
                      kSeedCount, over_dcm, kSeedCount)};
}

Outcome MapQualityIdentities() {
  std::mt19937_64 rng(9);
  int identity_failures = 0;
  int asymmetric = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = RenderIntensity(testing::RandomGrid(rng, 17, 11));
    const auto b = RenderIntensity(testing::RandomGrid(rng, 17, 11));
    const MapQuality q = CompareImages(a, a, 17, 11);
    identity_failures +=
        !(q.mse == 0.0 && q.ssim == 1.0 && q.ncc == 1.0 && q.cs == 1.0);
    asymmetric += MeanSquaredError(a, b) != MeanSquaredError(b, a);
  }
  return {identity_failures == 0 && asymmetric == 0,
          fmt::format("identity failures {}, asymmetric MSE {}",
                      identity_failures, asymmetric)};
}

Outcome Determinism() {
  int differing = 0;
  std::string detail;
  for (Policy policy : {Policy::kOurs, Policy::kMexp, Policy::kDcm}) {
    const ScenarioConfig c = Scenario(policy, 3);
    const auto a = ScratchDir("a");
    const auto b = ScratchDir("b");
    RunScenario(c, a);
    RunScenario(c, b);
    for (const char* name : {"metrics.csv", "events.csv"}) {
      const std::string first = ReadFile(a / name);
      if (first.empty() || first != ReadFile(b / name)) {
        ++differing;
        detail += fmt::format(" {}/{}", ToString(policy), name);
      }
    }
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
  }
  return {differing == 0,
          fmt::format("{} differing files across ours, mexp, dcm{}", differing,
                      detail)};
}

Outcome ParameterFidelity() {
  const std::string command =
      fmt::format("\"{}\" validate --config \"{}\"", COEXPLORE_CLI_PATH,
                  COEXPLORE_DEFAULT_SCENARIO);
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return {false, "cannot start validate"};
  std::string output;
  char buffer[256];
  while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) output += buffer;
  const int status = ::pclose(pipe);

  std::map<std::string, std::string> echoed;
  std::istringstream lines(output);
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) echoed[line.substr(0, eq)] = line.substr(eq + 3);
  }
  const std::vector<std::pair<std::string, double>> expected{
      {"PRC_UNK", 0.6}, {"RAD", 1.0},         {"MIN_PTS", 0.0},
      {"MAX_PTS", 5.0}, {"DIST_THRESH", 1.0}, {"D_MAX", 1.5}};
  std::string wrong;
  for (const auto& [key, value] : expected) {
    const auto it = echoed.find(key);
    if (it == echoed.end() || std::strtod(it->second.c_str(), nullptr) != value) {
      wrong += " " + key;
    }
  }
  return {status == 0 && wrong.empty(),
          fmt::format("validate exit status {}, mismatched:{}", status,
                      wrong.empty() ? " none" : wrong)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

int Main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      fmt::print(stderr, "usage: {} [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "IoU oracle equivalence", IoUOracle},
      {2, "frontier filter invariants", FilterInvariants},
      {3, "D-optimality", DOptimality},
      {4, "pose-graph objective", GraphObjective},
      {5, "re-localization efficacy", Relocalization},
      {6, "frontier reduction", FrontierReductionCheck},
      {7, "IoU bounding", IoUBounding},
      {8, "coverage dominance", CoverageDominance},
      {9, "map-quality identities", MapQualityIdentities},
      {10, "determinism", Determinism},
      {11, "parameter fidelity", ParameterFidelity},
  };
  int failures = 0;
  int ran = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, fmt::format("exception: {}", e.what())};
    }
    failures += !outcome.pass;
    fmt::print("criterion {:2d} {} {}: {}\n", c.id,
               outcome.pass ? "PASS" : "FAIL", c.name, outcome.detail);
    std::fflush(stdout);
  }
  if (ran == 0) {
    fmt::print(stderr, "no criterion {}\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace coexplore

int main(int argc, char** argv) { return coexplore::Main(argc, argv); }

// Copyright 2026 The mqtele Authors
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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mqtele/capacity.hpp"
#include "mqtele/cli.hpp"
#include "mqtele/corpus.hpp"
#include "mqtele/io.hpp"
#include "mqtele/random.hpp"
#include "mqtele/teleport.hpp"
#include "oracles.hpp"

using namespace mqtele;

namespace {

constexpr double kFloor = 1.0 - 1e-9;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::vector<int> range(int begin, int end) {
  std::vector<int> v(static_cast<std::size_t>(end - begin));
  std::iota(v.begin(), v.end(), begin);
  return v;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

ChannelState scrambled(const ComplexMatrix& amp, int m, int n, std::uint64_t seed) {
  const ComplexMatrix va = haar_unitary(detail::pow2(m), derive_seed(seed, "acc.va"));
  const ComplexMatrix vb = haar_unitary(detail::pow2(n), derive_seed(seed, "acc.vb"));
  return ChannelState::from_amplitude_matrix(va * amp * vb.transpose(), range(0, m),
                                             range(m, m + n));
}

// 1. Every branch of n-pair Bell teleportation is faithful and uniform.
Verdict bell_faithfulness() {
  Verdict v;
  double worst_fid = 1, worst_prob = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto channel = n_bell_channel(n);
    const auto report = analyze(channel);
    v.require(report.capacity == n, "capacity of " + std::to_string(n) + " pairs");
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto payload = random_pure_state(n, derive_seed(1, "acc.c1", 100 * n + k));
      const auto branches = teleport_bell(channel, payload, report, Mode::exhaustive);
      v.require(branches.size() == detail::pow2(2 * n), "branch count");
      for (const auto& b : branches) {
        worst_fid = std::min(worst_fid, b.payload_fidelity);
        worst_prob = std::max(worst_prob,
                              std::abs(b.branch_probability - std::pow(4.0, -n)));
      }
    }
  }
  v.require(worst_fid >= kFloor, "fidelity " + fmt("%.3e", 1 - worst_fid));
  v.require(worst_prob <= 1e-9, "probability deviation " + fmt("%.3e", worst_prob));
  if (v.pass)
    v.detail = "min fidelity 1-" + fmt("%.1e", 1 - worst_fid) + ", max |p-4^-n| " +
               fmt("%.1e", worst_prob);
  return v;
}

// 2. Expansion identity for random payloads.
Verdict expansion_identity() {
  Verdict v;
  double worst = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const int n = 1 + static_cast<int>(k % 4);
    worst = std::max(worst, expansion_identity_check(
                                random_pure_state(n, derive_seed(2, "acc.c2", k))));
  }
  v.require(worst < 1e-10, "deviation " + fmt("%.3e", worst));
  if (v.pass) v.detail = "max deviation " + fmt("%.1e", worst);
  return v;
}

// 3. GHZ entropy, capacity and CNOT-chain canonical form.
Verdict ghz_reproduction() {
  Verdict v;
  int splits = 0;
  double worst_entropy = 0, worst_fid = 1;
  for (int n = 2; n <= 10; ++n)
    for (int m = 1; m < n; ++m) {
      const auto c = ghz_channel(n, m);
      const auto r = analyze(c);
      worst_entropy = std::max(worst_entropy, std::abs(r.entropy_bits - 1.0));
      v.require(r.capacity == 1, "capacity at n=" + std::to_string(n) + " m=" +
                                     std::to_string(m));
      const auto chain = ghz_cnot_chain(n, m);
      const ComplexMatrix moved = chain.u_a * c.amplitude_matrix() * chain.u_b.transpose();
      const auto reached = ChannelState::from_amplitude_matrix(moved, c.alice(), c.bob());
      worst_fid = std::min(worst_fid, fidelity(reached.state(), ghz_canonical_form(n)));
      ++splits;
    }
  v.require(worst_entropy <= 1e-9, "entropy deviation " + fmt("%.3e", worst_entropy));
  v.require(worst_fid >= kFloor, "canonical fidelity " + fmt("%.3e", worst_fid));
  if (v.pass)
    v.detail = std::to_string(splits) + " bipartitions, max |E-1| " +
               fmt("%.1e", worst_entropy);
  return v;
}

// Suite of 200 channels with m, n <= 3: planted, degenerate Schmidt
// families, GHZ and Bell constructions, and Haar-random states.
std::vector<ChannelState> small_suite() {
  std::vector<ChannelState> out;
  std::uint64_t seed = 0;
  const std::vector<std::vector<double>> families{
      {1}, {1, 1}, {1, 1, 1}, {1, 1, 1, 1}, {2, 1, 1}, {3, 3, 1, 1}, {1, 1, 1, 1, 1, 1},
      {1, 1, 1, 1, 1, 1, 1, 1}, {2, 2, 2, 2, 1, 1, 1, 1}, {3, 3, 2, 2, 1, 1}, {4, 1, 1, 1, 1},
      {1, 1, 1, 1, 1}};
  while (out.size() < 200) {
    for (int m = 1; m <= 3 && out.size() < 200; ++m)
      for (int n = 1; n <= 3 && out.size() < 200; ++n) {
        ++seed;
        switch (seed % 4) {
          case 0: {
            const int d = static_cast<int>(seed / 4 % static_cast<std::uint64_t>(std::min(m, n) + 1));
            out.push_back(generate_planted(m, n, d, seed).channel);
            break;
          }
          case 1: {
            const auto& w = families[seed / 4 % families.size()];
            if (static_cast<Eigen::Index>(w.size()) > std::min(detail::pow2(m), detail::pow2(n))) {
              out.push_back(ChannelState(random_pure_state(m + n, seed), range(0, m),
                                         range(m, m + n)));
              break;
            }
            ComplexMatrix amp = ComplexMatrix::Zero(detail::pow2(m), detail::pow2(n));
            const double total = std::accumulate(w.begin(), w.end(), 0.0);
            for (std::size_t k = 0; k < w.size(); ++k)
              amp(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
                  std::sqrt(w[k] / total);
            out.push_back(scrambled(amp, m, n, seed));
            break;
          }
          case 2:
            if (m + n >= 2 && m + n <= 6) {
              out.push_back(ghz_channel(m + n, m));
              break;
            }
            [[fallthrough]];
          default:
            out.push_back(
                ChannelState(random_pure_state(m + n, seed), range(0, m), range(m, m + n)));
        }
      }
  }
  return out;
}

// 4. Capacity matches the spectral-divisibility oracle; the condition holds
// at d and fails at d + 1.
Verdict criterion_oracle() {
  Verdict v;
  const auto suite = small_suite();
  std::map<int, int> histogram;
  for (std::size_t k = 0; k < suite.size(); ++k) {
    const auto& c = suite[k];
    const auto r = analyze(c);
    const int expected = oracle::capacity(c.amplitude_matrix(), c.m(), c.n(), kDefaultEps);
    ++histogram[r.capacity];
    const std::string where = "channel " + std::to_string(k);
    v.require(r.capacity == expected, where + ": capacity " + std::to_string(r.capacity) +
                                          " vs oracle " + std::to_string(expected));
    v.require(verify_condition(c, r.u_b, r.capacity), where + ": condition fails at d");
    v.require(!verify_condition(c, r.u_b, r.capacity + 1), where + ": condition holds at d+1");
    for (std::uint64_t t = 0; t < 2; ++t)
      v.require(!verify_condition(c, haar_unitary(detail::pow2(c.n()), derive_seed(k, "acc.c4", t)),
                                  r.capacity + 1),
                where + ": random U_B passes at d+1");
  }
  if (v.pass) {
    v.detail = std::to_string(suite.size()) + " channels, capacities";
    for (const auto& [d, count] : histogram)
      v.detail += " " + std::to_string(d) + ":" + std::to_string(count);
  }
  return v;
}

// 5. Planted capacities are recovered exactly.
Verdict planted_roundtrip() {
  Verdict v;
  int runs = 0;
  for (int m = 1; m <= 9; ++m)
    for (int n = 1; m + n <= 10; ++n)
      for (int d = 0; d <= std::min(m, n); ++d)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
          const auto p = generate_planted(m, n, d, derive_seed(5, "acc.c5", seed));
          const int got = analyze(p.channel).capacity;
          v.require(got == d, "(" + std::to_string(m) + "," + std::to_string(n) + "," +
                                  std::to_string(d) + ") seed " + std::to_string(seed) +
                                  " gave " + std::to_string(got));
          ++runs;
        }
  if (v.pass) v.detail = std::to_string(runs) + " planted channels recovered";
  return v;
}

// 6. Circuit and Bell protocols agree branch by branch.
Verdict circuit_equivalence() {
  Verdict v;
  const auto channel = n_bell_channel(1);
  const auto report = analyze(channel);
  double worst_prob = 0, worst_fid = 1;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const auto payload = random_pure_state(1, derive_seed(6, "acc.c6", k));
    const auto bell = teleport_bell(channel, payload, report, Mode::exhaustive);
    const auto circ = teleport_circuit(channel, payload, report, Mode::exhaustive);
    v.require(bell.size() == 4 && circ.size() == 4, "branch count");
    for (std::size_t b = 0; b < std::min(bell.size(), circ.size()); ++b) {
      v.require(bell[b].messages == circ[b].messages, "branch labels differ");
      worst_prob = std::max(worst_prob,
                            std::abs(bell[b].branch_probability - circ[b].branch_probability));
      worst_fid = std::min(worst_fid, fidelity(bell[b].receiver_state, circ[b].receiver_state));
      worst_fid = std::min(worst_fid, circ[b].payload_fidelity);
    }
  }
  v.require(worst_prob <= 1e-9, "probability gap " + fmt("%.3e", worst_prob));
  v.require(worst_fid >= kFloor, "state fidelity " + fmt("%.3e", worst_fid));
  if (v.pass) v.detail = "max probability gap " + fmt("%.1e", worst_prob);
  return v;
}

// 7. Entropy symmetry and bounds.
Verdict entropy_symmetry() {
  Verdict v;
  double worst = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const int total = 2 + static_cast<int>(k % 11);
    Rng rng(derive_seed(7, "acc.c7.split", k));
    const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(total - 1));
    const ChannelState c(random_pure_state(total, derive_seed(7, "acc.c7", k)), range(0, m),
                         range(m, total));
    const double ea = entanglement_entropy(c, Party::alice);
    const double eb = entanglement_entropy(c, Party::bob);
    worst = std::max(worst, std::abs(ea - eb));
    v.require(eb >= -1e-12 && eb <= std::min(m, total - m) + 1e-9,
              "entropy out of bounds for channel " + std::to_string(k));
  }
  v.require(worst <= 1e-9, "side gap " + fmt("%.3e", worst));
  if (v.pass) v.detail = "100 channels, max side gap " + fmt("%.1e", worst);
  return v;
}

// 8. Sampled outcome frequencies.
Verdict sampling_statistics() {
  Verdict v;
  const auto channel = n_bell_channel(1);
  const auto report = analyze(channel);
  const auto payload = random_pure_state(1, derive_seed(8, "acc.c8.payload"));
  const int trials = 10000;
  std::map<int, int> counts;
  for (int t = 0; t < trials; ++t) {
    const auto out = teleport_bell(channel, payload, report, Mode::sample,
                                   derive_seed(8, "acc.c8", static_cast<std::uint64_t>(t)));
    ++counts[out.front().messages.front().value()];
    v.require(out.front().payload_fidelity >= kFloor, "sampled branch fidelity");
  }
  const double sigma = std::sqrt(0.25 * 0.75 / trials);
  double worst = 0;
  for (int i = 1; i <= 4; ++i)
    worst = std::max(worst, std::abs(counts[i] / static_cast<double>(trials) - 0.25) / sigma);
  v.require(worst <= 3.0, "frequency off by " + fmt("%.2f", worst) + " sigma");
  if (v.pass) {
    v.detail = "counts";
    for (int i = 1; i <= 4; ++i) v.detail += " " + std::to_string(counts[i]);
    v.detail += ", max " + fmt("%.2f", worst) + " sigma";
  }
  return v;
}

// 9. CLI exit codes for verify and byte-stable file round trips.
Verdict cli_contract() {
  Verdict v;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mqtele_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto save = [&](const std::string& name, const ChannelState& c) {
    const auto p = (dir / name).string();
    write_state_file(p, to_state_file(c));
    return p;
  };
  const auto run = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    return cli::run(args, out, err);
  };
  const auto bell2 = save("bell2.json", n_bell_channel(2));
  const auto ghz4 = save("ghz4.json", ghz_channel(4, 2));
  const auto planted = save("planted.json", generate_planted(3, 3, 1, 4).channel);
  v.require(run({"verify", bell2, "2"}) == 0, "2 Bell pairs, d=2");
  v.require(run({"verify", ghz4, "2"}) == 1, "GHZ(4) 2|2, d=2");
  for (const auto& p : {bell2, ghz4, planted}) v.require(run({"verify", p, "0"}) == 0, "d=0");
  {
    std::ofstream(dir / "bad.json") << "{\"n_qubits\": 2";
  }
  v.require(run({"verify", (dir / "bad.json").string(), "1"}) == 2, "malformed file");

  const auto read = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (const auto& p : {bell2, ghz4, planted}) {
    const std::string before = read(p);
    const StateFile f = read_state_file(p);
    const auto again = (dir / "again.json").string();
    write_state_file(again, f);
    v.require(read(again) == before, "round trip changed bytes");
    const StateFile g = read_state_file(again);
    v.require((g.amplitudes.array() == f.amplitudes.array()).all(), "round trip changed values");
  }
  fs::remove_all(dir);
  if (v.pass) v.detail = "verify exit codes 0/1/0/2 as expected, round trips byte-identical";
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0: no runtime requirement
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Bell-pair faithfulness", 30, bell_faithfulness},
      {2, "expansion identity", 0, expansion_identity},
      {3, "GHZ reproduction", 10, ghz_reproduction},
      {4, "capacity vs spectral oracle", 60, criterion_oracle},
      {5, "planted roundtrip", 120, planted_roundtrip},
      {6, "circuit-Bell equivalence", 0, circuit_equivalence},
      {7, "entropy symmetry and bounds", 0, entropy_symmetry},
      {8, "sampling statistics", 0, sampling_statistics},
      {9, "CLI contract", 0, cli_contract},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0 && seconds >= c.budget_seconds) {
      v.pass = false;
      v.detail += " (over the " + fmt("%.0f", c.budget_seconds) + " s budget)";
    }
    failures += !v.pass;
    std::printf("criterion %d %s: %s [%.2f s] %s\n", c.id, c.name, v.pass ? "PASS" : "FAIL",
                seconds, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

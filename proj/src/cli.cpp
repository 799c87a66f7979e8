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

#include "mqtele/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>

#include "mqtele/capacity.hpp"
#include "mqtele/corpus.hpp"
#include "mqtele/io.hpp"
#include "mqtele/random.hpp"
#include "mqtele/teleport.hpp"

namespace mqtele::cli {
namespace {

constexpr double kFidelityFloor = 1.0 - 1e-9;

std::string fixed(double x, int digits) {
  const double tiny = 0.5 * std::pow(10.0, -digits);
  if (std::abs(x) < tiny) x = 0.0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string messages_key(const TeleportOutcome& o) {
  std::string bits = o.message_bits();
  std::replace(bits.begin(), bits.end(), ' ', ',');
  return bits;
}

void print_clusters(const AnalysisReport& report, std::ostream& out) {
  out << "side=" << (report.roles_swapped ? "alice" : "bob")
      << " clusters=" << report.clusters.clusters.size() << '\n';
  for (const auto& c : report.clusters.clusters)
    out << "cluster value=" << fixed(c.value, 12) << " multiplicity=" << c.multiplicity
        << " valuation=" << two_adic_valuation(c.multiplicity) << '\n';
}

ChannelState load_channel(const std::string& path, std::ostream& err) {
  return to_channel(read_state_file(path, &err));
}

struct Options {
  std::string path;
  std::string payload_path;
  std::string report_path;
  std::string out_path;
  std::string method = "bell";
  std::string mode = "exhaustive";
  double eps = kDefaultEps;
  std::uint64_t seed = 0;
  int trials = 1000;
  int m = 0;
  int n = 0;
  int d = 0;
};

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const ChannelState channel = load_channel(o.path, err);
  const AnalysisReport report = analyze(channel, o.eps);
  out << "entropy=" << fixed(std::max(report.entropy_bits, 0.0), 6)
      << " capacity=" << report.capacity << '\n';
  print_clusters(report, out);
  if (!o.report_path.empty()) {
    std::ofstream f(o.report_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.report_path << '\n';
      return kMalformed;
    }
    f << format_report(report);
    out << "report=" << o.report_path << '\n';
  }
  return kOk;
}

int cmd_teleport(const Options& o, std::ostream& out, std::ostream& err) {
  const ChannelState channel = load_channel(o.path, err);
  const PureState payload = to_pure_state(read_state_file(o.payload_path, &err));
  const AnalysisReport report = analyze(channel, o.eps);
  if (report.capacity < 1 || payload.n_qubits() != report.capacity) {
    err << "error: payload has " << payload.n_qubits()
        << " qubits but the channel capacity is " << report.capacity << '\n';
    return kInfeasible;
  }
  if (payload.n_qubits() + channel.state().n_qubits() > kMaxQubits) {
    err << "error: payload plus channel exceed " << kMaxQubits << " qubits\n";
    return kInfeasible;
  }
  const Method method = o.method == "bell" ? Method::bell : Method::circuit;
  out << "method=" << o.method << " mode=" << o.mode << " capacity=" << report.capacity
      << '\n';

  double min_fidelity = 1.0;
  if (o.mode == "exhaustive") {
    const auto branches = teleport(method, channel, payload, report, Mode::exhaustive);
    double total = 0;
    for (const auto& b : branches) {
      out << "branch messages=" << messages_key(b)
          << " probability=" << fixed(b.branch_probability, 12)
          << " fidelity=" << fixed(b.payload_fidelity, 12) << '\n';
      total += b.branch_probability;
      min_fidelity = std::min(min_fidelity, b.payload_fidelity);
    }
    out << "branches=" << branches.size() << " total_probability=" << fixed(total, 12)
        << '\n';
  } else {
    if (o.trials < 1) {
      err << "error: --trials must be positive\n";
      return kMalformed;
    }
    std::map<std::string, int> counts;
    std::map<std::string, double> worst;
    for (int t = 0; t < o.trials; ++t) {
      const auto b = teleport(method, channel, payload, report, Mode::sample,
                              derive_seed(o.seed, "trial", static_cast<std::uint64_t>(t)))
                         .front();
      const std::string key = messages_key(b);
      ++counts[key];
      auto [it, inserted] = worst.try_emplace(key, b.payload_fidelity);
      if (!inserted) it->second = std::min(it->second, b.payload_fidelity);
      min_fidelity = std::min(min_fidelity, b.payload_fidelity);
    }
    out << "trials=" << o.trials << " seed=" << o.seed << '\n';
    for (const auto& [key, count] : counts)
      out << "frequency messages=" << key << " count=" << count
          << " fraction=" << fixed(static_cast<double>(count) / o.trials, 6)
          << " fidelity=" << fixed(worst[key], 12) << '\n';
  }
  out << "min_fidelity=" << fixed(min_fidelity, 12) << '\n';
  return min_fidelity >= kFidelityFloor ? kOk : kFidelity;
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const PlantedChannel planted = generate_planted(o.m, o.n, o.d, o.seed, o.eps);
  write_state_file(o.out_path, to_state_file(planted.channel));
  out << "planted_capacity=" << planted.planted_capacity << " m=" << o.m << " n=" << o.n
      << " seed=" << o.seed << '\n';
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.d < 0) {
    err << "error: d must be non-negative\n";
    return kMalformed;
  }
  const ChannelState channel = load_channel(o.path, err);
  const AnalysisReport report = analyze(channel, o.eps);
  print_clusters(report, out);
  const bool ok = report.capacity >= o.d;
  out << "capacity=" << report.capacity << " requested=" << o.d
      << " result=" << (ok ? "ok" : "shortfall") << '\n';
  return ok ? kOk : kShortfall;
}

std::string cnot_product(int control, int first, int last) {
  if (first > last) return "I";
  std::string s;
  for (int t = first; t <= last; ++t) {
    if (!s.empty()) s += ' ';
    s += "C^" + std::to_string(control) + "_" + std::to_string(t);
  }
  return s;
}

int cmd_demo_ghz(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const int n = o.n;
  const int m = o.m;
  const ChannelState channel = ghz_channel(n, m);
  bool pass = true;
  out << "GHZ(" << n << ") with Alice on qubits 1.." << m << " and Bob on qubits "
      << m + 1 << ".." << n << '\n';

  const LocalUnitaries chain = ghz_cnot_chain(n, m);
  out << "U_A = " << cnot_product(1, 2, m) << '\n';
  out << "U_B = " << cnot_product(n, m + 1, n - 1) << '\n';
  const ComplexMatrix moved = chain.u_a * channel.amplitude_matrix() * chain.u_b.transpose();
  const PureState reached =
      ChannelState::from_amplitude_matrix(moved, channel.alice(), channel.bob()).state();
  const double canon_fid = fidelity(reached, ghz_canonical_form(n));
  pass = pass && canon_fid >= kFidelityFloor;
  out << "canonical form phi4(1," << n << ")";
  if (n > 2) out << " (x) |0> on qubits 2.." << n - 1;
  out << " fidelity=" << fixed(canon_fid, 12) << '\n';

  const AnalysisReport report = analyze(channel, o.eps);
  pass = pass && std::abs(report.entropy_bits - 1.0) <= 1e-9 && report.capacity == 1;
  out << "entropy=" << fixed(report.entropy_bits, 6) << " capacity=" << report.capacity
      << '\n';

  const PureState payload = random_pure_state(1, derive_seed(o.seed, "demo.payload"));
  out << "payload=(" << fixed(payload[0].real(), 6) << "," << fixed(payload[0].imag(), 6)
      << ") (" << fixed(payload[1].real(), 6) << "," << fixed(payload[1].imag(), 6)
      << ")\n";
  double min_fidelity = 1.0;
  double total = 0;
  for (const auto& b : teleport_bell(channel, payload, report, Mode::exhaustive)) {
    out << "branch messages=" << messages_key(b)
        << " probability=" << fixed(b.branch_probability, 12)
        << " fidelity=" << fixed(b.payload_fidelity, 12) << '\n';
    min_fidelity = std::min(min_fidelity, b.payload_fidelity);
    total += b.branch_probability;
  }
  pass = pass && min_fidelity >= kFidelityFloor && std::abs(total - 1.0) <= 1e-9;
  out << "min_fidelity=" << fixed(min_fidelity, 12) << '\n';
  out << "checks=" << (pass ? "pass" : "fail") << '\n';
  return pass ? kOk : kFidelity;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Faithful teleportation capacity of bipartite pure states", "mqtele"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "Entropy, capacity and local unitaries");
  analyze_cmd->add_option("channel", o.path, "Channel state file")->required();
  analyze_cmd->add_option("--eps", o.eps, "Eigenvalue clustering tolerance");
  analyze_cmd->add_option("--report", o.report_path, "Write U_A, U_B and eta as JSON");

  auto* teleport_cmd = app.add_subcommand("teleport", "Simulate teleportation");
  teleport_cmd->add_option("channel", o.path, "Channel state file")->required();
  teleport_cmd->add_option("payload", o.payload_path, "Payload state file")->required();
  teleport_cmd->add_option("--method", o.method, "bell or circuit")
      ->check(CLI::IsMember({"bell", "circuit"}));
  teleport_cmd->add_option("--mode", o.mode, "exhaustive or sample")
      ->check(CLI::IsMember({"exhaustive", "sample"}));
  teleport_cmd->add_option("--seed", o.seed, "Sampling seed");
  teleport_cmd->add_option("--trials", o.trials, "Samples in sample mode");
  teleport_cmd->add_option("--eps", o.eps, "Eigenvalue clustering tolerance");

  auto* generate_cmd = app.add_subcommand("generate", "Write a channel with planted capacity");
  generate_cmd->add_option("m", o.m, "Alice's qubits")->required();
  generate_cmd->add_option("n", o.n, "Bob's qubits")->required();
  generate_cmd->add_option("d", o.d, "Planted capacity")->required();
  generate_cmd->add_option("--seed", o.seed, "Generator seed");
  generate_cmd->add_option("--eps", o.eps, "Minimum spectral gap scale");
  generate_cmd->add_option("-o", o.out_path, "Output state file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check that a channel reaches capacity d");
  verify_cmd->add_option("channel", o.path, "Channel state file")->required();
  verify_cmd->add_option("d", o.d, "Required capacity")->required();
  verify_cmd->add_option("--eps", o.eps, "Eigenvalue clustering tolerance");

  auto* demo_cmd = app.add_subcommand("demo-ghz", "Walk through the GHZ(n) example");
  demo_cmd->add_option("n", o.n, "Total qubits")->required();
  demo_cmd->add_option("m", o.m, "Alice's qubits")->required();
  demo_cmd->add_option("--seed", o.seed, "Payload seed");
  demo_cmd->add_option("--eps", o.eps, "Eigenvalue clustering tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kMalformed;
  }

  const std::map<CLI::App*, std::function<int(const Options&, std::ostream&, std::ostream&)>>
      commands{{analyze_cmd, cmd_analyze},   {teleport_cmd, cmd_teleport},
               {generate_cmd, cmd_generate}, {verify_cmd, cmd_verify},
               {demo_cmd, cmd_demo_ghz}};
  try {
    for (const auto& [cmd, fn] : commands)
      if (cmd->parsed()) return fn(o, out, err);
  } catch (const FormatError& e) {
    err << "error: malformed state file: " << e.what() << '\n';
    return kMalformed;
  } catch (const NormalizationError& e) {
    err << "error: " << e.what() << '\n';
    return kNotNormalized;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUnsupported;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kMalformed;
}

}  // namespace mqtele::cli

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

#include "mqtele/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mqtele {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<int> read_qubit_list(const json& j, const char* key) {
  if (!j.is_array()) throw FormatError(std::string("'") + key + "' must be an array");
  std::vector<int> out;
  for (const auto& q : j) {
    if (!q.is_number_integer())
      throw FormatError(std::string("'") + key + "' must hold integers");
    out.push_back(q.get<int>());
  }
  return out;
}

std::string number(double x) { return json(x).dump(); }

std::string qubit_list(const std::vector<int>& qubits) {
  std::string out = "[";
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(qubits[i]);
  }
  return out + "]";
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

StateFile parse_state_file(std::string_view text, std::ostream* warnings) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("state file must be a JSON object");
  if (!j.contains("n_qubits") || !j["n_qubits"].is_number_integer())
    throw FormatError("missing integer 'n_qubits'");
  StateFile file;
  file.n_qubits = j["n_qubits"].get<int>();
  if (file.n_qubits < 1 || file.n_qubits > kMaxQubits)
    throw FormatError("'n_qubits' must be between 1 and 16");

  if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
    throw FormatError("missing array 'amplitudes'");
  const auto& amps = j["amplitudes"];
  const auto dim = static_cast<std::size_t>(detail::pow2(file.n_qubits));
  if (amps.size() != dim)
    throw FormatError("expected " + std::to_string(dim) + " amplitudes, found " +
                      std::to_string(amps.size()));
  file.amplitudes.resize(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& a = amps[i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw FormatError("amplitude " + std::to_string(i) + " is not a [real, imag] pair");
    file.amplitudes(static_cast<Eigen::Index>(i)) = {a[0].get<double>(), a[1].get<double>()};
  }
  if (!file.amplitudes.allFinite()) throw FormatError("amplitudes must be finite");

  const bool has_alice = j.contains("alice");
  const bool has_bob = j.contains("bob");
  if (has_alice != has_bob) throw FormatError("'alice' and 'bob' must appear together");
  if (has_alice) {
    file.alice = read_qubit_list(j["alice"], "alice");
    file.bob = read_qubit_list(j["bob"], "bob");
  }

  const double norm = file.amplitudes.norm();
  const double deviation = std::abs(norm - 1.0);
  if (deviation > kFileNormTolerance)
    throw NormalizationError("amplitude norm " + number(norm) + " is not 1");
  if (deviation > kCheckTol) {
    if (warnings)
      *warnings << "warning: renormalizing amplitudes (norm deviation " << deviation
                << ")\n";
    file.amplitudes /= norm;
  }
  return file;
}

StateFile read_state_file(const std::filesystem::path& path, std::ostream* warnings) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_state_file(buffer.str(), warnings);
}

std::string format_state_file(const StateFile& file) {
  std::string out = "{\n  \"n_qubits\": " + std::to_string(file.n_qubits) + ",\n";
  if (file.alice && file.bob) {
    out += "  \"alice\": " + qubit_list(*file.alice) + ",\n";
    out += "  \"bob\": " + qubit_list(*file.bob) + ",\n";
  }
  out += "  \"amplitudes\": [\n";
  for (Eigen::Index i = 0; i < file.amplitudes.size(); ++i) {
    out += "    [" + number(file.amplitudes(i).real()) + ", " +
           number(file.amplitudes(i).imag()) + "]";
    out += i + 1 < file.amplitudes.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

void write_state_file(const std::filesystem::path& path, const StateFile& file) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw std::runtime_error("cannot write " + path.string());
  outf << format_state_file(file);
}

StateFile to_state_file(const ChannelState& channel) {
  StateFile file = to_state_file(channel.state());
  file.alice = channel.alice();
  file.bob = channel.bob();
  return file;
}

StateFile to_state_file(const PureState& state) {
  return {state.n_qubits(), std::nullopt, std::nullopt, state.amplitudes()};
}

PureState to_pure_state(const StateFile& file) {
  try {
    return PureState(file.n_qubits, file.amplitudes);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

ChannelState to_channel(const StateFile& file) {
  if (!file.alice || !file.bob) throw FormatError("channel file needs 'alice' and 'bob'");
  try {
    return ChannelState(PureState(file.n_qubits, file.amplitudes), *file.alice, *file.bob);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string format_report(const AnalysisReport& report) {
  ordered_json j;
  j["entropy_bits"] = report.entropy_bits;
  j["capacity"] = report.capacity;
  j["roles_swapped"] = report.roles_swapped;
  j["relabeling"] = report.relabeling;
  ordered_json clusters = ordered_json::array();
  for (const auto& c : report.clusters.clusters)
    clusters.push_back({{"value", c.value},
                        {"multiplicity", c.multiplicity},
                        {"two_adic_valuation", two_adic_valuation(c.multiplicity)}});
  j["clusters"] = std::move(clusters);
  j["u_a"] = matrix_json(report.u_a);
  j["u_b"] = matrix_json(report.u_b);
  j["eta"] = report.eta ? matrix_json(*report.eta) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace mqtele

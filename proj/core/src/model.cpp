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

#include "qvt/model.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qvt/kernels.hpp"

namespace qvt {

using nlohmann::json;

std::size_t QvtCircuit::block_count() const {
  std::size_t n = 0;
  for (const auto& r : rounds) n += r.blocks.size();
  return n;
}

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::SQ: return "SQ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::RXX: return "RXX";
    case GateKind::RYY: return "RYY";
    case GateKind::RZZ: return "RZZ";
    case GateKind::MEASURE_ALL: return "MEASURE_ALL";
  }
  return "?";
}

GateKind gate_kind_from_string(const std::string& s) {
  for (GateKind k : {GateKind::SQ, GateKind::CNOT, GateKind::RXX, GateKind::RYY, GateKind::RZZ,
                     GateKind::MEASURE_ALL})
    if (s == to_string(k)) return k;
  throw DataError("unknown gate kind '" + s + "'");
}

GateOp GateOp::sq(int q, const Mat2& m) {
  GateOp g;
  g.kind = GateKind::SQ;
  g.qubits = {q, -1};
  g.matrix = m;
  return g;
}

GateOp GateOp::cnot(int control, int target) {
  GateOp g;
  g.kind = GateKind::CNOT;
  g.qubits = {control, target};
  return g;
}

namespace {
GateOp rotation(GateKind kind, int a, int b, double theta) {
  GateOp g;
  g.kind = kind;
  g.qubits = {a, b};
  g.theta = theta;
  return g;
}
}  // namespace

GateOp GateOp::rxx(int a, int b, double theta) { return rotation(GateKind::RXX, a, b, theta); }
GateOp GateOp::ryy(int a, int b, double theta) { return rotation(GateKind::RYY, a, b, theta); }
GateOp GateOp::rzz(int a, int b, double theta) { return rotation(GateKind::RZZ, a, b, theta); }

GateOp GateOp::measure_all() {
  GateOp g;
  g.kind = GateKind::MEASURE_ALL;
  return g;
}

bool GateOp::is_two_qubit() const {
  return kind == GateKind::CNOT || kind == GateKind::RXX || kind == GateKind::RYY || kind == GateKind::RZZ;
}

Mat4 GateOp::two_qubit_matrix() const {
  switch (kind) {
    case GateKind::CNOT: return cnot_matrix();
    case GateKind::RXX: return interaction(theta, 0, 0);
    case GateKind::RYY: return interaction(0, theta, 0);
    case GateKind::RZZ: return interaction(0, 0, theta);
    default: throw InvalidArgument("two_qubit_matrix: not a two-qubit gate");
  }
}

std::size_t count_two_qubit_gates(const CompiledCircuit& c) {
  std::size_t n = 0;
  for (const auto& g : c.gates) n += g.is_two_qubit();
  return n;
}

std::size_t count_single_qubit_gates(const CompiledCircuit& c) {
  std::size_t n = 0;
  for (const auto& g : c.gates) n += g.kind == GateKind::SQ;
  return n;
}

namespace {

void check_dense_width(int width) {
  if (width < 1 || width > kMaxDenseWidth)
    throw InvalidArgument("circuit_unitary: width " + std::to_string(width) + " outside [1, " +
                          std::to_string(kMaxDenseWidth) + "]");
}

void apply_columns(MatX& u, int q0, int q1, const Mat4& m) {
  for (Eigen::Index c = 0; c < u.cols(); ++c)
    kernels::apply_2q(std::span<cplx>(u.col(c).data(), static_cast<std::size_t>(u.rows())), q0, q1, m);
}

void apply_columns(MatX& u, int q, const Mat2& m) {
  for (Eigen::Index c = 0; c < u.cols(); ++c)
    kernels::apply_1q(std::span<cplx>(u.col(c).data(), static_cast<std::size_t>(u.rows())), q, m);
}

}  // namespace

MatX circuit_unitary(const QvtCircuit& circuit) {
  check_dense_width(circuit.width);
  const Eigen::Index dim = Eigen::Index{1} << circuit.width;
  MatX u = MatX::Identity(dim, dim);
  for (const auto& round : circuit.rounds) {
    if (round.pairs.size() != round.blocks.size()) throw DataError("round pairs/blocks length mismatch");
    for (std::size_t i = 0; i < round.pairs.size(); ++i) {
      const auto [a, b] = round.pairs[i];
      if (a < 0 || b < 0 || a >= circuit.width || b >= circuit.width || a == b)
        throw DataError("malformed pair in round");
      apply_columns(u, a, b, round.blocks[i]);
    }
  }
  return u;
}

std::uint64_t physical_to_logical(std::uint64_t phys, const std::vector<int>& relabeling) {
  std::uint64_t logical = 0;
  for (std::size_t l = 0; l < relabeling.size(); ++l)
    logical |= ((phys >> relabeling[l]) & 1ULL) << l;
  return logical;
}

MatX circuit_unitary(const CompiledCircuit& circuit) {
  check_dense_width(circuit.width);
  if (auto v = validate(circuit); !v.empty()) throw DataError("malformed compiled circuit: " + v.front());
  const Eigen::Index dim = Eigen::Index{1} << circuit.width;
  MatX u = MatX::Identity(dim, dim);
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::SQ: apply_columns(u, g.qubits[0], g.matrix); break;
      case GateKind::MEASURE_ALL: break;
      default: apply_columns(u, g.qubits[0], g.qubits[1], g.two_qubit_matrix()); break;
    }
  }
  if (circuit.output_relabeling.empty()) return u;
  MatX out(dim, dim);
  for (Eigen::Index phys = 0; phys < dim; ++phys)
    out.row(static_cast<Eigen::Index>(physical_to_logical(static_cast<std::uint64_t>(phys), circuit.output_relabeling))) =
        u.row(phys);
  return out;
}

std::vector<std::string> validate(const QvtCircuit& circuit, const ValidateOptions& opts) {
  std::vector<std::string> out;
  const int n = circuit.width;
  if (n < 2) out.push_back("width must be >= 2");
  if (opts.require_square && static_cast<int>(circuit.rounds.size()) != n)
    out.push_back("expected " + std::to_string(n) + " rounds, found " + std::to_string(circuit.rounds.size()));
  for (std::size_t r = 0; r < circuit.rounds.size(); ++r) {
    const Round& round = circuit.rounds[r];
    const std::string where = "round " + std::to_string(r) + ": ";
    std::set<int> seen;
    bool disjoint = true;
    for (const auto& [a, b] : round.pairs) {
      for (int q : {a, b})
        if (q < 0 || q >= n) out.push_back(where + "qubit index " + std::to_string(q) + " out of range");
      if (a == b || !seen.insert(a).second || !seen.insert(b).second) disjoint = false;
    }
    if (!disjoint) out.push_back(where + "pair not disjoint");
    if (round.pairs.size() != round.blocks.size()) out.push_back(where + "blocks and pairs differ in length");
    if (opts.require_full_rounds && static_cast<int>(round.pairs.size()) != n / 2)
      out.push_back(where + "expected " + std::to_string(n / 2) + " pairs, found " + std::to_string(round.pairs.size()));
    if (n % 2 == 1) {
      const bool all_paired = static_cast<int>(seen.size()) >= n;
      if (!round.idle || all_paired) {
        out.push_back(where + "odd N requires one idle qubit");
      } else if (*round.idle < 0 || *round.idle >= n || seen.count(*round.idle)) {
        out.push_back(where + "idle qubit must be an unpaired index in range");
      }
    } else if (round.idle) {
      out.push_back(where + "even N must not have an idle qubit");
    }
    for (std::size_t i = 0; i < round.blocks.size(); ++i)
      if (!is_unitary(round.blocks[i], kUnitaryTol))
        out.push_back(where + "block " + std::to_string(i) + " is not unitary");
  }
  return out;
}

std::vector<std::string> validate(const CompiledCircuit& circuit) {
  std::vector<std::string> out;
  const int n = circuit.width;
  if (n < 1) out.push_back("width must be >= 1");
  auto in_range = [n](int q) { return q >= 0 && q < n; };
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const GateOp& g = circuit.gates[i];
    const std::string where = "gate " + std::to_string(i) + ": ";
    switch (g.kind) {
      case GateKind::SQ:
        if (!in_range(g.qubits[0])) out.push_back(where + "qubit out of range");
        if (!is_unitary(g.matrix, kUnitaryTol)) out.push_back(where + "SQ matrix is not unitary");
        break;
      case GateKind::MEASURE_ALL:
        if (i + 1 != circuit.gates.size()) out.push_back(where + "MEASURE_ALL must be the last gate");
        break;
      default:
        if (!in_range(g.qubits[0]) || !in_range(g.qubits[1])) out.push_back(where + "qubit out of range");
        if (g.qubits[0] == g.qubits[1]) out.push_back(where + "two-qubit gate on a repeated qubit");
        if (!std::isfinite(g.theta)) out.push_back(where + "theta is not finite");
        break;
    }
  }
  if (!circuit.output_relabeling.empty()) {
    std::set<int> s(circuit.output_relabeling.begin(), circuit.output_relabeling.end());
    const bool perm = static_cast<int>(circuit.output_relabeling.size()) == n && static_cast<int>(s.size()) == n &&
                      *s.begin() == 0 && *s.rbegin() == n - 1;
    if (!perm) out.push_back("output_relabeling is not a permutation");
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

std::string format_double(double x) {
  if (!std::isfinite(x)) throw DataError("cannot serialize non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_complex(std::ostringstream& os, cplx z) {
  os << '[' << format_double(z.real()) << ',' << format_double(z.imag()) << ']';
}

template <class M>
void write_matrix(std::ostringstream& os, const M& m) {
  os << '[';
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r || c) os << ',';
      write_complex(os, m(r, c));
    }
  os << ']';
}

template <class M>
M read_matrix(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim * dim)
    throw DataError("matrix must have " + std::to_string(dim * dim) + " entries");
  M m;
  for (int k = 0; k < dim * dim; ++k) {
    const json& e = j[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2) throw DataError("matrix entry must be [re, im]");
    m(k / dim, k % dim) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  const double err = unitarity_error(m);
  if (err > kReprojectTol) throw DataError("matrix is not unitary (error " + format_double(err) + ")");
  // Only re-project when needed so exact round trips stay byte-identical.
  if (err > 1e-12) m = project_unitary(m);
  return m;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const QvtCircuit& circuit) {
  std::ostringstream os;
  os << "{\"width\":" << circuit.width << ",\"seed\":" << circuit.seed << ",\"rounds\":[";
  for (std::size_t r = 0; r < circuit.rounds.size(); ++r) {
    const Round& round = circuit.rounds[r];
    if (r) os << ',';
    os << "{\"pairs\":[";
    for (std::size_t i = 0; i < round.pairs.size(); ++i)
      os << (i ? "," : "") << '[' << round.pairs[i].first << ',' << round.pairs[i].second << ']';
    os << "],\"idle\":";
    if (round.idle)
      os << *round.idle;
    else
      os << "null";
    os << ",\"blocks\":[";
    for (std::size_t i = 0; i < round.blocks.size(); ++i) {
      if (i) os << ',';
      write_matrix(os, round.blocks[i]);
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

std::string to_json(const CompiledCircuit& circuit) {
  std::ostringstream os;
  os << "{\"width\":" << circuit.width << ",\"source_seed\":" << circuit.source_seed << ",\"relabel\":[";
  for (std::size_t i = 0; i < circuit.output_relabeling.size(); ++i)
    os << (i ? "," : "") << circuit.output_relabeling[i];
  os << "],\"gates\":[";
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const GateOp& g = circuit.gates[i];
    if (i) os << ',';
    os << "{\"kind\":\"" << to_string(g.kind) << "\",\"qubits\":[";
    if (g.kind == GateKind::SQ)
      os << g.qubits[0];
    else if (g.kind != GateKind::MEASURE_ALL)
      os << g.qubits[0] << ',' << g.qubits[1];
    os << ']';
    if (g.kind == GateKind::SQ) {
      os << ",\"matrix\":";
      write_matrix(os, g.matrix);
    } else if (g.kind == GateKind::RXX || g.kind == GateKind::RYY || g.kind == GateKind::RZZ) {
      os << ",\"theta\":" << format_double(g.theta);
    }
    os << '}';
  }
  os << "]}";
  return os.str();
}

QvtCircuit qvt_circuit_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    QvtCircuit c;
    c.width = j.at("width").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    for (const json& jr : j.at("rounds")) {
      Round r;
      for (const json& p : jr.at("pairs")) {
        if (!p.is_array() || p.size() != 2) throw DataError("pair must have two entries");
        r.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
      }
      if (jr.contains("idle") && !jr.at("idle").is_null()) r.idle = jr.at("idle").get<int>();
      for (const json& b : jr.at("blocks")) r.blocks.push_back(read_matrix<Mat4>(b, 4));
      c.rounds.push_back(std::move(r));
    }
    return c;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed circuit JSON: ") + e.what());
  }
}

CompiledCircuit compiled_circuit_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    CompiledCircuit c;
    c.width = j.at("width").get<int>();
    c.source_seed = j.value("source_seed", std::uint64_t{0});
    if (j.contains("relabel")) c.output_relabeling = j.at("relabel").get<std::vector<int>>();
    for (const json& jg : j.at("gates")) {
      GateOp g;
      g.kind = gate_kind_from_string(jg.at("kind").get<std::string>());
      const auto qs = jg.value("qubits", std::vector<int>{});
      const std::size_t want = g.kind == GateKind::SQ ? 1 : (g.kind == GateKind::MEASURE_ALL ? 0 : 2);
      if (qs.size() != want) throw DataError(std::string("gate ") + to_string(g.kind) + " has wrong qubit count");
      for (std::size_t k = 0; k < qs.size(); ++k) g.qubits[k] = qs[k];
      if (g.kind == GateKind::SQ) g.matrix = read_matrix<Mat2>(jg.at("matrix"), 2);
      if (g.kind == GateKind::RXX || g.kind == GateKind::RYY || g.kind == GateKind::RZZ)
        g.theta = jg.at("theta").get<double>();
      c.gates.push_back(g);
    }
    return c;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed compiled circuit JSON: ") + e.what());
  }
}

bool is_compiled_json(const std::string& text) { return parse(text).contains("gates"); }

}  // namespace qvt

// Copyright 2026 The mobqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mobqc/protocol.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "mobqc/errors.h"
#include "mobqc/graph_states.h"

namespace mobqc {
namespace {

constexpr std::array<std::pair<ProgramKind, std::string_view>, 5> kProgramNames{{
    {ProgramKind::Computation, "Computation"},
    {ProgramKind::TestA, "TestA"},
    {ProgramKind::TestB, "TestB"},
    {ProgramKind::StarTestA, "StarTestA"},
    {ProgramKind::StarTestB, "StarTestB"},
}};

void check_send_order(const std::array<int, kProtocolQubits>& order) {
  std::array<int, kProtocolQubits> seen{};
  for (int q : order) {
    if (q < 0 || q >= kProtocolQubits || seen[q]++) {
      throw std::invalid_argument("send order must be a permutation of the protocol qubits");
    }
  }
}

StateVector purify(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho.matrix());
  if (eig.info() != Eigen::Success) throw NumericalError("purification: eigensolver failed");
  const Eigen::Index d = rho.matrix().rows();
  CVector amps = CVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double w = std::sqrt(std::max(eig.eigenvalues()[i], 0.0));
    for (Eigen::Index p = 0; p < d; ++p) amps[p * d + i] = w * eig.eigenvectors()(p, i);
  }
  return StateVector::normalized(std::move(amps));
}

CMatrix dephase_in_basis(const CMatrix& rho, int n, int qubit, const MeasurementBasis& basis) {
  return apply_local_sandwich(rho, n, qubit, basis.projector(Outcome::Plus)) +
         apply_local_sandwich(rho, n, qubit, basis.projector(Outcome::Minus));
}

}  // namespace

std::string_view resource_name(Resource r) { return r == Resource::Linear ? "linear" : "star"; }

Resource parse_resource(std::string_view text) {
  if (text == "linear") return Resource::Linear;
  if (text == "star") return Resource::Star;
  throw ConfigError("resource must be 'linear' or 'star', got '" + std::string(text) + "'");
}

StateVector resource_state(Resource r) {
  return r == Resource::Linear ? linear_cluster4() : star_cluster4();
}

const std::pair<TrapTest, TrapTest>& resource_tests(Resource r) {
  return r == Resource::Linear ? linear_tests() : star_tests();
}

std::string HonestServer::name() const {
  return "honest-" + std::string(resource_name(resource_));
}

StateVector HonestServer::prepare(Rng&) const { return resource_state(resource_); }

NoisyHonestServer::NoisyHonestServer(Resource resource, NoiseConfig noise)
    : resource_(resource),
      noise_(std::move(noise)),
      noisy_(apply_noise(DensityMatrix(resource_state(resource)), noise_)),
      purified_(purify(noisy_)) {}

std::string NoisyHonestServer::name() const {
  return "noisy-" + std::string(resource_name(resource_));
}

StateVector NoisyHonestServer::prepare(Rng&) const { return purified_; }

AdversarialServer::AdversarialServer(AdversaryParams params,
                                     std::array<int, kProtocolQubits> order)
    : params_(std::move(params)), order_(order), state_(build_adversary_state(params_)) {
  check_send_order(order_);
}

std::string AdversarialServer::name() const { return "adversary"; }

StateVector AdversarialServer::prepare(Rng&) const { return state_; }

RandomAdversaryServer::RandomAdversaryServer(int num_ancilla_qubits)
    : num_ancilla_qubits_(num_ancilla_qubits) {
  if (num_ancilla_qubits < 1 || num_ancilla_qubits > 4) {
    throw ConfigError("adversary: ancilla width must be in [1, 4]");
  }
}

std::string RandomAdversaryServer::name() const { return "random-adversary"; }

StateVector RandomAdversaryServer::prepare(Rng& server_rng) const {
  AdversaryParams p;
  for (double& t : p.thetas) t = 2.0 * std::numbers::pi * uniform01(server_rng);
  for (int j = 0; j < 4; ++j) p.ancillas.push_back(random_pure_state(num_ancilla_qubits_, server_rng));
  return build_adversary_state(p);
}

FixedStateServer::FixedStateServer(std::string label, StateVector state)
    : label_(std::move(label)), state_(std::move(state)) {
  if (state_.num_qubits() < kProtocolQubits) {
    throw std::invalid_argument("FixedStateServer: state must cover the protocol qubits");
  }
}

StateVector FixedStateServer::prepare(Rng&) const { return state_; }

ClientProgram ClientProgram::computation(std::string gate_name) {
  gate_by_name(gate_name);
  return {ProgramKind::Computation, std::move(gate_name)};
}

ClientProgram ClientProgram::test(ProgramKind kind) {
  if (kind == ProgramKind::Computation) {
    throw std::invalid_argument("ClientProgram::test: computation is not a test");
  }
  return {kind, {}};
}

std::vector<ClientProgram> ClientProgram::all() {
  return {test(ProgramKind::TestA), test(ProgramKind::TestB), test(ProgramKind::StarTestA),
          test(ProgramKind::StarTestB), computation("Y2X3")};
}

std::string ClientProgram::name() const {
  if (kind == ProgramKind::Computation) return "Computation:" + gate;
  for (const auto& [k, n] : kProgramNames) {
    if (k == kind) return std::string(n);
  }
  throw std::logic_error("unknown program kind");
}

ClientProgram ClientProgram::parse(std::string_view text) {
  if (text == "Computation") return computation("Y2X3");
  constexpr std::string_view prefix = "Computation:";
  if (text.starts_with(prefix)) {
    const std::string gate(text.substr(prefix.size()));
    try {
      return computation(gate);
    } catch (const std::invalid_argument&) {
      throw ConfigError("unknown gate '" + gate + "'");
    }
  }
  for (const auto& [k, n] : kProgramNames) {
    if (k != ProgramKind::Computation && n == text) return test(k);
  }
  throw ConfigError("unknown program '" + std::string(text) + "'");
}

const TrapTest* ClientProgram::trap_test() const {
  switch (kind) {
    case ProgramKind::TestA: return &linear_tests().first;
    case ProgramKind::TestB: return &linear_tests().second;
    case ProgramKind::StarTestA: return &star_tests().first;
    case ProgramKind::StarTestB: return &star_tests().second;
    case ProgramKind::Computation: return nullptr;
  }
  return nullptr;
}

const GateSpec* ClientProgram::gate_spec() const {
  return kind == ProgramKind::Computation ? &gate_by_name(gate) : nullptr;
}

std::array<std::optional<MeasurementBasis>, kProtocolQubits> ClientProgram::bases() const {
  std::array<std::optional<MeasurementBasis>, kProtocolQubits> out;
  if (const TrapTest* t = trap_test()) {
    for (int q = 0; q < kProtocolQubits; ++q) out[q] = t->bases[q];
  } else {
    for (const MeasurementStep& step : gate_spec()->pattern.steps) out[step.qubit] = step.basis;
  }
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Abort: return "abort";
    case Verdict::NotApplicable: return "n/a";
  }
  return "n/a";
}

SharedRegister::SharedRegister(StateVector joint)
    : state_(std::move(joint)), owners_(static_cast<std::size_t>(state_.num_qubits()), Party::Server) {}

void SharedRegister::check_index(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits()) throw std::out_of_range("SharedRegister: bad qubit");
}

Party SharedRegister::owner(int qubit) const {
  check_index(qubit);
  return owners_[static_cast<std::size_t>(qubit)];
}

void SharedRegister::hand_to_client(int qubit) {
  if (owner(qubit) != Party::Server) {
    throw ChannelViolation("qubit " + std::to_string(qubit + 1) + " was already sent");
  }
  owners_[static_cast<std::size_t>(qubit)] = Party::Client;
}

Outcome SharedRegister::client_measure(int qubit, const MeasurementBasis& basis, Rng& rng) {
  if (owner(qubit) != Party::Client) {
    throw ChannelViolation("client cannot measure qubit " + std::to_string(qubit + 1) +
                           " before receiving it");
  }
  Measured<StateVector> m = measure(state_, qubit, basis, rng);
  state_ = std::move(m.state);
  return m.outcome;
}

void SharedRegister::server_apply(int qubit, const Matrix2& gate) {
  if (owner(qubit) != Party::Server) {
    throw ChannelViolation("server cannot act on qubit " + std::to_string(qubit + 1) +
                           " after sending it");
  }
  state_ = apply_1q_gate(std::move(state_), qubit, gate);
}

std::string Transcript::server_view_bytes() const {
  std::string out;
  for (const QubitSent& e : server_view) out += "sent " + std::to_string(e.position + 1) + "\n";
  return out;
}

void Channel::send(SharedRegister& reg, int qubit, Transcript& transcript) const {
  reg.hand_to_client(qubit);
  transcript.server_view.push_back({qubit});
}

void Channel::after_client_measurement(int, const MeasurementBasis&, Outcome, Transcript&) const {}

const Channel& one_way_channel() {
  static const Channel channel;
  return channel;
}

Session run_session(const ServerStrategy& server, const ClientProgram& program, Rng& server_rng,
                    Rng& client_rng, const Channel& channel) {
  StateVector joint = server.prepare(server_rng);
  if (joint.num_qubits() < kProtocolQubits || joint.num_qubits() > kProtocolQubits + 4) {
    throw std::invalid_argument("server state must hold 4 protocol qubits and at most 4 ancillas");
  }
  const auto order = server.send_order();
  check_send_order(order);

  SharedRegister reg(std::move(joint));
  Session session{{program, {}, Verdict::NotApplicable, std::nullopt, std::nullopt}, {}};
  const auto bases = program.bases();
  for (int position : order) {
    channel.send(reg, position, session.transcript);
    session.transcript.client_view.emplace_back(QubitReceived{position});
    if (!bases[position]) continue;
    const Outcome o = reg.client_measure(position, *bases[position], client_rng);
    session.result.outcomes[position] = o;
    session.transcript.client_view.emplace_back(MeasurementPerformed{position, *bases[position], o});
    channel.after_client_measurement(position, *bases[position], o, session.transcript);
  }

  SessionResult& result = session.result;
  if (const TrapTest* test = program.trap_test()) {
    std::array<Outcome, kProtocolQubits> all{};
    for (int q = 0; q < kProtocolQubits; ++q) all[q] = *result.outcomes[q];
    result.verdict = trap_verdict(*test, all) ? Verdict::Accept : Verdict::Abort;
  } else {
    const GateSpec& spec = *program.gate_spec();
    OutcomeMap outcomes;
    for (const MeasurementStep& step : spec.pattern.steps) outcomes[step.qubit] = *result.outcomes[step.qubit];
    const DensityMatrix residual = reduced_density_matrix(reg.joint_state(), spec.frame.output_qubits);
    result.output = apply_byproduct(spec.frame, outcomes, residual);
    const Outcome s2 = outcomes.at(spec.pattern.steps[0].qubit);
    const Outcome s3 = outcomes.at(spec.pattern.steps[1].qubit);
    result.output_fidelity = fidelity(*result.output, spec.ideal(s2, s3));
  }
  return session;
}

Session run_session(const ServerStrategy& server, const ClientProgram& program, std::uint64_t seed,
                    const Channel& channel) {
  Rng server_rng = make_stream(seed, "server");
  Rng client_rng = make_stream(seed, "client");
  return run_session(server, program, server_rng, client_rng, channel);
}

bool blindness_check(const ServerStrategy& server, std::span<const ClientProgram> programs,
                     std::uint64_t seed, const Channel& channel) {
  if (programs.size() < 2) throw std::invalid_argument("blindness_check: need two programs");
  std::optional<std::string> reference;
  bool identical = true;
  for (const ClientProgram& program : programs) {
    const std::string view = run_session(server, program, seed, channel).transcript.server_view_bytes();
    if (!reference) {
      reference = view;
    } else if (view != *reference) {
      identical = false;
    }
  }
  return identical;
}

NoSignalingReport no_signaling_check(const ServerStrategy& server,
                                     std::span<const ClientProgram> programs, std::uint64_t seed,
                                     double tol) {
  Rng server_rng = make_stream(seed, "server");
  const StateVector joint = server.prepare(server_rng);
  const int n = joint.num_qubits();
  NoSignalingReport report;
  report.num_ancilla_qubits = n - kProtocolQubits;
  if (report.num_ancilla_qubits == 0) return report;

  std::vector<int> ancillas;
  for (int q = kProtocolQubits; q < n; ++q) ancillas.push_back(q);
  const CMatrix rho0 = DensityMatrix(joint).matrix();
  std::optional<CMatrix> reference;
  for (const ClientProgram& program : programs) {
    CMatrix rho = rho0;
    const auto bases = program.bases();
    for (int q = 0; q < kProtocolQubits; ++q) {
      if (bases[q]) rho = dephase_in_basis(rho, n, q, *bases[q]);
    }
    const CMatrix marginal = partial_trace(DensityMatrix(n, rho), ancillas).matrix();
    if (!reference) {
      reference = marginal;
      continue;
    }
    report.max_deviation = std::max(report.max_deviation, (marginal - *reference).cwiseAbs().maxCoeff());
  }
  report.holds = report.max_deviation <= tol;
  return report;
}

void SessionMix::validate() const {
  for (double p : {test_a, test_b, compute}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("session mix entries must lie in [0, 1]");
  }
  if (std::abs(test_a + test_b + compute - 1.0) > 1e-9) {
    throw ConfigError("session mix must sum to 1");
  }
}

double BatchReport::acceptance_rate() const {
  const std::uint64_t tests = test_a_sessions + test_b_sessions;
  return tests ? static_cast<double>(accepted) / tests : std::numeric_limits<double>::quiet_NaN();
}

BatchReport run_batch(const ServerStrategy& server, const SessionMix& mix, std::uint64_t sessions,
                      std::uint64_t seed, Resource resource, std::string gate) {
  mix.validate();
  gate_by_name(gate);
  const bool linear = resource == Resource::Linear;
  const ClientProgram test_a = ClientProgram::test(linear ? ProgramKind::TestA : ProgramKind::StarTestA);
  const ClientProgram test_b = ClientProgram::test(linear ? ProgramKind::TestB : ProgramKind::StarTestB);
  const ClientProgram compute = ClientProgram::computation(gate);

  BatchReport report;
  report.seed = seed;
  report.resource = resource;
  report.gate = gate;
  report.mix = mix;
  report.sessions = sessions;
  for (std::uint64_t i = 0; i < sessions; ++i) {
    Rng program_rng = make_stream(seed, "program", i);
    const double u = uniform01(program_rng);
    const ClientProgram& program = u < mix.test_a ? test_a : u < mix.test_a + mix.test_b ? test_b : compute;
    const std::uint64_t session_seed = derive_seed(seed, "session", i);
    SessionResult result = run_session(server, program, session_seed).result;
    if (&program == &test_a) ++report.test_a_sessions;
    if (&program == &test_b) ++report.test_b_sessions;
    if (&program == &compute) ++report.computation_sessions;
    report.accepted += result.verdict == Verdict::Accept;
    report.aborted += result.verdict == Verdict::Abort;
    report.results.push_back(std::move(result));
    report.session_seeds.push_back(session_seed);
  }
  return report;
}

AcceptanceEstimate run_amplified(const ServerStrategy& server, Resource resource,
                                 const TestMix& mix, int n_rounds, std::uint64_t trials,
                                 std::uint64_t seed) {
  mix.validate();
  if (n_rounds < 1) throw ConfigError("amplification needs at least one round");
  const bool linear = resource == Resource::Linear;
  const ClientProgram test_a = ClientProgram::test(linear ? ProgramKind::TestA : ProgramKind::StarTestA);
  const ClientProgram test_b = ClientProgram::test(linear ? ProgramKind::TestB : ProgramKind::StarTestB);
  AcceptanceEstimate est{0, trials};
  const auto rounds = static_cast<std::uint64_t>(n_rounds);
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool accepted = true;
    for (std::uint64_t r = 0; r < rounds && accepted; ++r) {
      const std::uint64_t index = t * rounds + r;
      Rng program_rng = make_stream(seed, "program", index);
      const ClientProgram& program = uniform01(program_rng) < mix.test_a ? test_a : test_b;
      const Session s = run_session(server, program, derive_seed(seed, "session", index));
      accepted = s.result.verdict == Verdict::Accept;
    }
    est.accepted += accepted;
  }
  return est;
}

}  // namespace mobqc

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

#pragma once

// Two-party session engine for measurement-only blind computation.
//
// The server prepares a joint state over the four protocol qubits plus any
// ancillas it keeps, and hands protocol qubits to the client one at a time.
// Handing over is an ownership transfer inside a SharedRegister: after it,
// only the client may touch that qubit. The client measures each qubit on
// arrival. Nothing flows back, so the server's record of a session is just
// the sequence of qubits it sent.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mobqc/mbqc.h"
#include "mobqc/noise.h"
#include "mobqc/state.h"
#include "mobqc/verification.h"

namespace mobqc {

enum class Resource : std::uint8_t { Linear, Star };

std::string_view resource_name(Resource r);
/// "linear" or "star"; throws ConfigError otherwise.
Resource parse_resource(std::string_view text);
StateVector resource_state(Resource r);
/// linear_tests() or star_tests().
const std::pair<TrapTest, TrapTest>& resource_tests(Resource r);

class ServerStrategy {
 public:
  virtual ~ServerStrategy() = default;

  virtual std::string name() const = 0;
  /// Joint state: protocol qubits 0..3 first, then server-held ancillas.
  virtual StateVector prepare(Rng& server_rng) const = 0;
  /// Order in which protocol qubits are handed over.
  virtual std::array<int, kProtocolQubits> send_order() const { return {0, 1, 2, 3}; }
};

class HonestServer : public ServerStrategy {
 public:
  explicit HonestServer(Resource resource) : resource_(resource) {}
  std::string name() const override;
  StateVector prepare(Rng& server_rng) const override;

 private:
  Resource resource_;
};

/// Prepares the noisy resource as a purification: the mixed protocol state
/// is entangled with four ancilla qubits the server keeps.
class NoisyHonestServer : public ServerStrategy {
 public:
  NoisyHonestServer(Resource resource, NoiseConfig noise);
  std::string name() const override;
  StateVector prepare(Rng& server_rng) const override;
  const DensityMatrix& noisy_resource() const { return noisy_; }

 private:
  Resource resource_;
  NoiseConfig noise_;
  DensityMatrix noisy_;
  StateVector purified_;
};

/// Sends the cheating state built from AdversaryParams.
class AdversarialServer : public ServerStrategy {
 public:
  explicit AdversarialServer(AdversaryParams params,
                             std::array<int, kProtocolQubits> order = {0, 1, 2, 3});
  std::string name() const override;
  StateVector prepare(Rng& server_rng) const override;
  std::array<int, kProtocolQubits> send_order() const override { return order_; }
  const AdversaryParams& params() const { return params_; }

 private:
  AdversaryParams params_;
  std::array<int, kProtocolQubits> order_;
  StateVector state_;
};

/// Draws fresh phases and ancillas from the server stream every session.
class RandomAdversaryServer : public ServerStrategy {
 public:
  explicit RandomAdversaryServer(int num_ancilla_qubits = 1);
  std::string name() const override;
  StateVector prepare(Rng& server_rng) const override;

 private:
  int num_ancilla_qubits_;
};

/// Sends a fixed state (e.g. |0000>) with no ancillas, or with the ancillas
/// included in `state` after the protocol qubits.
class FixedStateServer : public ServerStrategy {
 public:
  FixedStateServer(std::string label, StateVector state);
  std::string name() const override { return label_; }
  StateVector prepare(Rng& server_rng) const override;

 private:
  std::string label_;
  StateVector state_;
};

enum class ProgramKind : std::uint8_t { Computation, TestA, TestB, StarTestA, StarTestB };

struct ClientProgram {
  ProgramKind kind = ProgramKind::TestA;
  std::string gate;  // Computation only

  static ClientProgram computation(std::string gate_name);
  static ClientProgram test(ProgramKind kind);
  /// TestA, TestB, StarTestA, StarTestB, Computation(Y2X3).
  static std::vector<ClientProgram> all();

  /// "TestA", ..., "Computation:Y2X3"
  std::string name() const;
  /// Inverse of name(); bare "Computation" means Y2X3. Throws ConfigError.
  static ClientProgram parse(std::string_view text);

  /// Basis per protocol qubit; nullopt for a computation's output qubits.
  std::array<std::optional<MeasurementBasis>, kProtocolQubits> bases() const;
  /// nullptr for a computation.
  const TrapTest* trap_test() const;
  const GateSpec* gate_spec() const;

  friend bool operator==(const ClientProgram&, const ClientProgram&) = default;
};

enum class Verdict : std::uint8_t { Accept, Abort, NotApplicable };
std::string_view verdict_name(Verdict v);

enum class Party : std::uint8_t { Server, Client };

class SharedRegister {
 public:
  /// Every qubit starts with the server.
  explicit SharedRegister(StateVector joint);

  int num_qubits() const { return state_.num_qubits(); }
  Party owner(int qubit) const;
  /// Server-to-client handover; throws ChannelViolation if the client already
  /// holds the qubit.
  void hand_to_client(int qubit);
  /// Throws ChannelViolation unless the client owns the qubit.
  Outcome client_measure(int qubit, const MeasurementBasis& basis, Rng& rng);
  /// Throws ChannelViolation unless the server owns the qubit.
  void server_apply(int qubit, const Matrix2& gate);

  /// Global view for analysis; not available to either party in the protocol.
  const StateVector& joint_state() const { return state_; }

 private:
  void check_index(int qubit) const;

  StateVector state_;
  std::vector<Party> owners_;
};

struct QubitSent {
  int position;  // protocol qubit index
  friend bool operator==(const QubitSent&, const QubitSent&) = default;
};
struct QubitReceived {
  int position;
};
struct MeasurementPerformed {
  int qubit;
  MeasurementBasis basis;
  Outcome outcome;
};
using ClientEvent = std::variant<QubitReceived, MeasurementPerformed>;

struct Transcript {
  std::vector<QubitSent> server_view;
  std::vector<ClientEvent> client_view;

  /// Canonical byte form of server_view, one "sent <label>" line per event
  /// with 1-based labels.
  std::string server_view_bytes() const;
};

/// Carries a qubit from server to client. The default is one-way: the client
/// side hook does nothing.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(SharedRegister& reg, int qubit, Transcript& transcript) const;
  virtual void after_client_measurement(int qubit, const MeasurementBasis& basis, Outcome outcome,
                                        Transcript& transcript) const;
};

const Channel& one_way_channel();

struct SessionResult {
  ClientProgram program;
  std::array<std::optional<Outcome>, kProtocolQubits> outcomes;
  Verdict verdict = Verdict::NotApplicable;
  /// Computation only: frame-corrected output on qubits 1 and 4, and its
  /// fidelity to the tabulated row state of the observed (s2, s3).
  std::optional<DensityMatrix> output;
  std::optional<double> output_fidelity;
};

struct Session {
  SessionResult result;
  Transcript transcript;
};

/// Client outcomes use `client_rng`; `server_rng` only feeds prepare().
Session run_session(const ServerStrategy& server, const ClientProgram& program, Rng& server_rng,
                    Rng& client_rng, const Channel& channel = one_way_channel());
/// Streams "server" and "client" derived from `seed`.
Session run_session(const ServerStrategy& server, const ClientProgram& program,
                    std::uint64_t seed, const Channel& channel = one_way_channel());

/// True iff the server views of all programs are byte-identical when the
/// server stream is seeded identically. Needs at least two programs.
bool blindness_check(const ServerStrategy& server, std::span<const ClientProgram> programs,
                     std::uint64_t seed, const Channel& channel = one_way_channel());

struct NoSignalingReport {
  bool holds = true;
  double max_deviation = 0.0;  // max entry of |rho_anc(program) - rho_anc(first)|
  int num_ancilla_qubits = 0;
};

/// The server's ancilla marginal after the client's non-selective
/// measurements must not depend on the program.
NoSignalingReport no_signaling_check(const ServerStrategy& server,
                                     std::span<const ClientProgram> programs, std::uint64_t seed,
                                     double tol = kAlgebraicTol);

struct SessionMix {
  double test_a = 0.5;
  double test_b = 0.5;
  double compute = 0.0;

  /// Throws ConfigError unless each is in [0, 1] and they sum to 1 within 1e-9.
  void validate() const;
};

struct BatchReport {
  std::uint64_t seed = 0;
  Resource resource = Resource::Linear;
  std::string gate;
  SessionMix mix;
  std::uint64_t sessions = 0;
  std::uint64_t test_a_sessions = 0;
  std::uint64_t test_b_sessions = 0;
  std::uint64_t computation_sessions = 0;
  std::uint64_t accepted = 0;
  std::uint64_t aborted = 0;
  std::vector<SessionResult> results;
  std::vector<std::uint64_t> session_seeds;

  /// accepted / test sessions; NaN without test sessions.
  double acceptance_rate() const;
};

/// Session i uses seed derive_seed(seed, "session", i); its program is drawn
/// from derive_seed(seed, "program", i).
BatchReport run_batch(const ServerStrategy& server, const SessionMix& mix, std::uint64_t sessions,
                      std::uint64_t seed, Resource resource, std::string gate = "Y2X3");

/// n-round amplification driven by real sessions: a trial accepts iff every
/// one of its n test sessions accepts. Rejected trials stop early.
AcceptanceEstimate run_amplified(const ServerStrategy& server, Resource resource,
                                 const TestMix& mix, int n_rounds, std::uint64_t trials,
                                 std::uint64_t seed);

}  // namespace mobqc

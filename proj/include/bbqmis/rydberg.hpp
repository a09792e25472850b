#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bbqmis/graph.hpp"
#include "bbqmis/mis.hpp"

namespace bbqmis::rydberg {

// Units: time in microseconds, distance in micrometres, frequencies in
// rad/us (hbar = 1). A laser spec quoted in MHz is converted with 2*pi.
inline constexpr double mhz_to_rad_per_us(double mhz) { return 2.0 * std::numbers::pi * mhz; }
inline constexpr double kDefaultC6 = 5420158.53;  // rad/us * um^6

class EmulatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmbeddingError : public EmulatorError {
 public:
  using EmulatorError::EmulatorError;
};

struct DeviceSpec {
  double max_amp = mhz_to_rad_per_us(12.0);
  double max_det = mhz_to_rad_per_us(12.0);
  double max_duration = 3.0;
  double c6 = kDefaultC6;

  void validate() const;
};

/// Atom positions plus the Rabi frequency that fixes the blockade radius.
class Register {
 public:
  Register(std::vector<Point> positions, double omega, double c6);

  std::size_t size() const { return positions_.size(); }
  const std::vector<Point>& positions() const { return positions_; }
  double omega() const { return omega_; }
  double c6() const { return c6_; }
  /// (c6 / omega)^(1/6)
  double blockade_radius() const;
  /// c6 / d^6 between atoms i and j.
  double interaction(std::size_t i, std::size_t j) const;

  /// Unit-disk graph the atoms induce at the blockade radius.
  Graph induced_graph() const;

 private:
  std::vector<Point> positions_;
  double omega_;
  double c6_;
};

struct EmbedOptions {
  /// Uniform factor applied to the graph coordinates before placement.
  double coordinate_scale = 1.0;
  std::size_t max_qubits = 15;
};

/// Places the atoms of a coordinate-carrying unit-disk graph and picks a Rabi
/// frequency within device caps whose blockade radius separates edge
/// distances from non-edge distances.
Register embed(const Graph& g, const DeviceSpec& spec, const EmbedOptions& opts = {});

struct PulseSegment {
  double omega = 0.0;
  double delta = 0.0;
  double duration = 0.0;
};

/// Piecewise-constant drive. Only legal schedules can be constructed.
class PulseSchedule {
 public:
  PulseSchedule(std::vector<PulseSegment> segments, const DeviceSpec& spec);

  const std::vector<PulseSegment>& segments() const { return segments_; }
  double total_duration() const;

 private:
  std::vector<PulseSegment> segments_;
};

using Amplitude = std::complex<double>;

class QuantumState {
 public:
  /// All atoms in the ground state |0...0>.
  static QuantumState ground(std::size_t qubits);
  static QuantumState basis(std::size_t qubits, std::uint64_t index);
  explicit QuantumState(std::vector<Amplitude> amplitudes);

  std::size_t qubits() const { return qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
  std::vector<Amplitude>& amplitudes() { return amplitudes_; }
  double norm() const;
  double probability(std::uint64_t index) const { return std::norm(amplitudes_[index]); }

 private:
  std::size_t qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// Largest register for which hamiltonian() builds a dense matrix.
inline constexpr std::size_t kDenseQubitLimit = 10;

/// Diagonal of H in the computational basis: -(delta/2) sum_i z_i + sum_{i<j} U_ij n_i n_j,
/// where z_i = +1 when qubit i is in the Rydberg state |1>.
std::vector<double> diagonal_energies(const Register& reg, double delta);

/// H/hbar = sum_i (omega/2) X_i - sum_i (delta/2) Z_i + sum_{i<j} (c6/d_ij^6) n_i n_j,
/// n_i = (1 + Z_i)/2. Qubit i is bit i of the basis index; |1> is the Rydberg state.
Eigen::MatrixXd hamiltonian(const Register& reg, double omega, double delta);

/// exp(-i H t) for one constant (omega, delta), reusable across durations.
class SegmentPropagator {
 public:
  SegmentPropagator(const Register& reg, double omega, double delta);
  ~SegmentPropagator();
  SegmentPropagator(SegmentPropagator&&) noexcept;
  SegmentPropagator& operator=(SegmentPropagator&&) noexcept;

  void apply(QuantumState& state, double duration) const;
  /// <psi|H|psi>
  double expectation(const QuantumState& state) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

QuantumState evolve(QuantumState state, const Register& reg, const PulseSchedule& schedule);

/// Seeded multinomial sampling of |amplitude|^2. Keys use qubit indices as
/// labels: qubit i set means atom i was measured in |1>.
SampleHistogram measure(const QuantumState& state, std::size_t shots, std::uint64_t seed);

/// Mean of C(z) = -|z| + penalty * (edges inside z) over the histogram.
double qaoa_energy(const SampleHistogram& h, const Graph& g, double penalty);

}  // namespace bbqmis::rydberg

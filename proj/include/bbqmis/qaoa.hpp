#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbqmis/mis.hpp"
#include "bbqmis/nelder_mead.hpp"
#include "bbqmis/rydberg.hpp"

namespace bbqmis {

enum class QaoaObjective { MisCost, IsingEnergy };

/// Single-layer QAOA over pulse durations.
struct QaoaConfig {
  int layers = 1;
  std::size_t eval_shots = 50;
  std::size_t max_evals = 100;
  std::size_t final_shots = 100;
  /// Weight of each violated edge in the MIS cost; unset means 2 * max degree.
  std::optional<double> penalty;
  rydberg::DeviceSpec device;
  QaoaObjective objective = QaoaObjective::MisCost;
  /// Cost-segment detuning as a fraction of the device detuning cap.
  double cost_detuning_fraction = 0.75;
  /// Keep the Rabi drive on during the cost segment. Without it the cost
  /// segment is diagonal and cannot change measured populations.
  bool drive_during_cost = true;
  /// Shortest segment the optimiser may propose, in us.
  double min_segment = 0.01;
  rydberg::EmbedOptions embed;

  void validate() const;
};

struct QaoaRun {
  rydberg::Register reg;
  std::vector<double> durations;  // (mixing, cost)
  NelderMeadResult optimisation;
  SampleHistogram final_histogram;
};

/// The two-segment schedule for the given durations on an embedded register.
rydberg::PulseSchedule qaoa_schedule(const rydberg::Register& reg, const QaoaConfig& cfg, double t_mix, double t_cost);

/// Embed, optimise the two durations with Nelder-Mead on shot-estimated
/// energies, then sample the optimised schedule. `shots` overrides
/// final_shots when nonzero. Deterministic in seed.
QaoaRun run_qaoa(const Graph& g, std::size_t shots, std::uint64_t seed, const QaoaConfig& cfg);

class QaoaSampler final : public MisSampler {
 public:
  explicit QaoaSampler(QaoaConfig cfg = {});
  SampleHistogram sample(const Graph& g, std::size_t shots, std::uint64_t seed) const override;
  std::string name() const override { return "qaoa"; }
  const QaoaConfig& config() const { return cfg_; }

 private:
  QaoaConfig cfg_;
};

}  // namespace bbqmis

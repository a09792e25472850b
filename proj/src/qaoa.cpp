#include "bbqmis/qaoa.hpp"

#include <stdexcept>

#include "bbqmis/rng.hpp"

namespace bbqmis {

using rydberg::PulseSchedule;
using rydberg::QuantumState;
using rydberg::Register;
using rydberg::SegmentPropagator;

void QaoaConfig::validate() const {
  if (layers != 1) throw std::invalid_argument("only single-layer QAOA is supported");
  if (eval_shots == 0 || final_shots == 0) throw std::invalid_argument("shot counts must be positive");
  if (max_evals == 0) throw std::invalid_argument("max_evals must be positive");
  if (cost_detuning_fraction < 0.0 || cost_detuning_fraction > 1.0)
    throw std::invalid_argument("cost_detuning_fraction must lie in [0, 1]");
  if (!(min_segment > 0.0) || 2.0 * min_segment > device.max_duration)
    throw std::invalid_argument("min_segment incompatible with max_duration");
  device.validate();
}

namespace {

double cost_detuning(const QaoaConfig& cfg) { return cfg.cost_detuning_fraction * cfg.device.max_det; }

double cost_omega(const Register& reg, const QaoaConfig& cfg) { return cfg.drive_during_cost ? reg.omega() : 0.0; }

// Keeps t_mix + t_cost within the sequence budget.
std::vector<double> project_durations(std::vector<double> t, const QaoaConfig& cfg) {
  const double total = t[0] + t[1];
  if (total > cfg.device.max_duration) {
    const double s = cfg.device.max_duration / total;
    t[0] *= s;
    t[1] *= s;
  }
  return t;
}

SampleHistogram relabel(const SampleHistogram& by_qubit, const Graph& g) {
  SampleHistogram out;
  out.backend = "qaoa";
  out.seed = by_qubit.seed;
  out.shots_requested = by_qubit.shots_requested;
  for (const auto& [bits, count] : by_qubit.entries) out.add(g.to_labels(bits.bits()), count);
  return out;
}

}  // namespace

PulseSchedule qaoa_schedule(const Register& reg, const QaoaConfig& cfg, double t_mix, double t_cost) {
  return PulseSchedule({{reg.omega(), 0.0, t_mix}, {cost_omega(reg, cfg), cost_detuning(cfg), t_cost}}, cfg.device);
}

QaoaRun run_qaoa(const Graph& g, std::size_t shots, std::uint64_t seed, const QaoaConfig& cfg) {
  cfg.validate();
  Register reg = rydberg::embed(g, cfg.device, cfg.embed);
  const double penalty = cfg.penalty.value_or(2.0 * static_cast<double>(degrees(g).max_degree));

  const SegmentPropagator mixer(reg, reg.omega(), 0.0);
  const SegmentPropagator cost(reg, cost_omega(reg, cfg), cost_detuning(cfg));
  const std::vector<double> cost_diagonal = rydberg::diagonal_energies(reg, cost_detuning(cfg));

  auto prepare = [&](const std::vector<double>& t) {
    auto state = QuantumState::ground(reg.size());
    // Validates the durations against the device caps.
    (void)qaoa_schedule(reg, cfg, t[0], t[1]);
    mixer.apply(state, t[0]);
    cost.apply(state, t[1]);
    return state;
  };

  std::uint64_t eval_index = 0;
  auto objective = [&](const std::vector<double>& raw) {
    const auto t = project_durations(raw, cfg);
    const auto state = prepare(t);
    const auto by_qubit = rydberg::measure(state, cfg.eval_shots, derive_seed(seed, eval_index++));
    if (cfg.objective == QaoaObjective::IsingEnergy) {
      double e = 0.0;
      for (const auto& [bits, count] : by_qubit.entries) e += cost_diagonal[bits.bits()] * static_cast<double>(count);
      return e / static_cast<double>(by_qubit.shots);
    }
    return rydberg::qaoa_energy(relabel(by_qubit, g), g, penalty);
  };

  const double t_max = cfg.device.max_duration;
  NelderMeadOptions opts;
  opts.max_evals = cfg.max_evals;
  opts.bounds = Box{{cfg.min_segment, cfg.min_segment}, {t_max - cfg.min_segment, t_max - cfg.min_segment}};
  auto result = nelder_mead(objective, {t_max / 4.0, t_max / 4.0}, opts);

  const auto best = project_durations(result.best_point, cfg);
  const std::size_t final_shots = shots != 0 ? shots : cfg.final_shots;
  auto hist = relabel(rydberg::measure(prepare(best), final_shots, derive_seed(seed, ~std::uint64_t{0})), g);
  hist.seed = seed;
  hist.shots_requested = final_shots;
  hist.shots_consumed = result.evaluations * cfg.eval_shots + final_shots;
  return {std::move(reg), best, std::move(result), std::move(hist)};
}

QaoaSampler::QaoaSampler(QaoaConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

SampleHistogram QaoaSampler::sample(const Graph& g, std::size_t shots, std::uint64_t seed) const {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  if (g.empty()) {
    SampleHistogram h;
    h.backend = name();
    h.seed = seed;
    h.shots_requested = shots;
    h.add(VertexSet{}, shots);
    h.shots_consumed = shots;
    return h;
  }
  return run_qaoa(g, shots, seed, cfg_).final_histogram;
}

}  // namespace bbqmis

#include "bbqmis/rydberg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "bbqmis/rng.hpp"

namespace bbqmis::rydberg {

void DeviceSpec::validate() const {
  if (!(max_amp > 0.0 && max_det > 0.0 && max_duration > 0.0 && c6 > 0.0))
    throw EmulatorError("device limits and c6 must be strictly positive");
}

Register::Register(std::vector<Point> positions, double omega, double c6)
    : positions_(std::move(positions)), omega_(omega), c6_(c6) {
  if (!(omega_ > 0.0) || !(c6_ > 0.0)) throw EmulatorError("register needs positive omega and c6");
  for (std::size_t i = 0; i < positions_.size(); ++i)
    for (std::size_t j = i + 1; j < positions_.size(); ++j)
      if (distance(positions_[i], positions_[j]) == 0.0)
        throw EmulatorError("atoms " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

double Register::blockade_radius() const { return std::pow(c6_ / omega_, 1.0 / 6.0); }

double Register::interaction(std::size_t i, std::size_t j) const {
  const double d = distance(positions_[i], positions_[j]);
  return c6_ / std::pow(d, 6);
}

Graph Register::induced_graph() const { return unit_disk_graph(positions_, blockade_radius()); }

Register embed(const Graph& g, const DeviceSpec& spec, const EmbedOptions& opts) {
  spec.validate();
  if (g.size() > opts.max_qubits)
    throw EmbeddingError("graph has " + std::to_string(g.size()) + " vertices, emulator limit is " +
                         std::to_string(opts.max_qubits));
  if (!g.has_coords()) throw EmbeddingError("graph has no coordinates to place atoms at");
  if (!(opts.coordinate_scale > 0.0)) throw EmbeddingError("coordinate scale must be positive");

  std::vector<Point> pos = g.coords();
  for (auto& p : pos) {
    p.x *= opts.coordinate_scale;
    p.y *= opts.coordinate_scale;
  }

  double max_edge = 0.0;
  double min_non_edge = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      const double d = distance(pos[i], pos[j]);
      if (d == 0.0) throw EmbeddingError("coincident atoms");
      if (g.adjacent_local(i, j))
        max_edge = std::max(max_edge, d);
      else
        min_non_edge = std::min(min_non_edge, d);
    }
  }

  // omega <= max_amp  <=>  r_b >= (c6 / max_amp)^(1/6)
  const double r_min = std::pow(spec.c6 / spec.max_amp, 1.0 / 6.0);
  double r_b = 0.0;
  if (std::isinf(min_non_edge)) {
    r_b = std::max(r_min, 1.25 * max_edge);
  } else {
    const double lo = std::max(max_edge, r_min);
    if (!(lo < min_non_edge))
      throw EmbeddingError("no Rabi frequency within device caps separates edges (max " + std::to_string(max_edge) +
                           " um) from non-edges (min " + std::to_string(min_non_edge) + " um)");
    // Geometric midpoint of the admissible interval. When lo == max_edge the
    // midpoint is strictly above it, so the threshold stays strict.
    r_b = std::sqrt(lo * min_non_edge);
  }
  const double omega = std::min(spec.c6 / std::pow(r_b, 6), spec.max_amp);
  Register reg(std::move(pos), omega, spec.c6);

  auto induced = reg.induced_graph();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (induced.adjacent_local(i, j) != g.adjacent_local(i, j))
        throw EmbeddingError("register does not reproduce the graph at its blockade radius");
  return reg;
}

PulseSchedule::PulseSchedule(std::vector<PulseSegment> segments, const DeviceSpec& spec)
    : segments_(std::move(segments)) {
  spec.validate();
  double total = 0.0;
  for (const auto& s : segments_) {
    if (!(s.duration > 0.0)) throw EmulatorError("segment durations must be positive");
    if (std::abs(s.omega) > spec.max_amp) throw EmulatorError("Rabi frequency exceeds device cap");
    if (std::abs(s.delta) > spec.max_det) throw EmulatorError("detuning exceeds device cap");
    total += s.duration;
  }
  // Allow for round-off when durations are rescaled to fill the budget exactly.
  if (total > spec.max_duration * (1.0 + 1e-12)) throw EmulatorError("schedule exceeds the maximum sequence duration");
}

double PulseSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments_) t += s.duration;
  return t;
}

QuantumState::QuantumState(std::vector<Amplitude> amplitudes) : amplitudes_(std::move(amplitudes)) {
  const std::size_t d = amplitudes_.size();
  if (d == 0 || !std::has_single_bit(d)) throw EmulatorError("state dimension must be a power of two");
  qubits_ = static_cast<std::size_t>(std::countr_zero(d));
}

QuantumState QuantumState::ground(std::size_t qubits) { return basis(qubits, 0); }

QuantumState QuantumState::basis(std::size_t qubits, std::uint64_t index) {
  if (qubits > 30) throw EmulatorError("too many qubits for a state vector");
  std::vector<Amplitude> a(std::size_t{1} << qubits, Amplitude{0.0, 0.0});
  if (index >= a.size()) throw EmulatorError("basis index out of range");
  a[index] = 1.0;
  return QuantumState(std::move(a));
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> diagonal_energies(const Register& reg, double delta) {
  const std::size_t n = reg.size();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> u(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) u[i * n + j] = reg.interaction(i, j);

  std::vector<double> diag(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) {
    const int ones = std::popcount(x);
    // sum_i z_i with z = +1 on |1>, -1 on |0>
    double e = -0.5 * delta * static_cast<double>(2 * ones - static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (!((x >> i) & 1U)) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if ((x >> j) & 1U) e += u[i * n + j];
    }
    diag[x] = e;
  }
  return diag;
}

Eigen::MatrixXd hamiltonian(const Register& reg, double omega, double delta) {
  const std::size_t n = reg.size();
  if (n > kDenseQubitLimit) throw EmulatorError("dense Hamiltonian requested above the dense qubit limit");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const auto diag = diagonal_energies(reg, delta);
  for (Eigen::Index x = 0; x < dim; ++x) {
    h(x, x) = diag[static_cast<std::size_t>(x)];
    for (std::size_t i = 0; i < n; ++i) h(x, x ^ (Eigen::Index{1} << i)) += 0.5 * omega;
  }
  return h;
}

namespace {

using CVector = Eigen::VectorXcd;

// Matrix-free H for registers beyond the dense limit.
struct SparseHamiltonian {
  std::vector<double> diag;
  double half_omega = 0.0;
  std::size_t qubits = 0;

  void apply(const CVector& in, CVector& out) const {
    const auto dim = in.size();
    for (Eigen::Index x = 0; x < dim; ++x) {
      Amplitude acc = diag[static_cast<std::size_t>(x)] * in[x];
      if (half_omega != 0.0) {
        Amplitude flips{0.0, 0.0};
        for (std::size_t i = 0; i < qubits; ++i) flips += in[x ^ (Eigen::Index{1} << i)];
        acc += half_omega * flips;
      }
      out[x] = acc;
    }
  }
};

// Lanczos approximation of exp(-i H t) v with full reorthogonalisation. The
// Krylov basis is orthonormal and the small propagator unitary, so the norm
// is preserved to round-off; the step is shrunk until the standard a
// posteriori error estimate is below tolerance.
void krylov_propagate(const SparseHamiltonian& h, CVector& psi, double duration) {
  constexpr Eigen::Index kMaxDim = 30;
  constexpr double kTol = 1e-12;
  const auto dim = psi.size();
  double remaining = duration;
  double step = duration;
  CVector w(dim);

  while (remaining > 0.0) {
    const double beta0 = psi.norm();
    if (beta0 == 0.0) return;
    std::vector<CVector> basis;
    basis.push_back(psi / beta0);
    std::vector<double> alpha;
    std::vector<double> beta;
    double tail = 0.0;
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(kMaxDim, dim); ++k) {
      h.apply(basis.back(), w);
      alpha.push_back(basis.back().dot(w).real());
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) w -= b.dot(w) * b;
      const double b = w.norm();
      if (b < 1e-13 * std::max(1.0, std::abs(alpha.back()))) {
        tail = 0.0;
        break;
      }
      tail = b;
      if (k + 1 == std::min<Eigen::Index>(kMaxDim, dim)) break;
      beta.push_back(b);
      basis.push_back(w / b);
    }

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);

    step = std::min(step * 2.0, remaining);
    CVector y(m);
    for (;;) {
      CVector phase(m);
      for (Eigen::Index i = 0; i < m; ++i)
        phase[i] = std::exp(Amplitude(0.0, -es.eigenvalues()[i] * step)) * es.eigenvectors()(0, i);
      y = es.eigenvectors().cast<Amplitude>() * phase;
      const double err = tail * std::abs(y[m - 1]);
      if (err <= kTol || step < 1e-12 * duration) break;
      step *= 0.5;
    }
    CVector next = CVector::Zero(dim);
    for (Eigen::Index i = 0; i < m; ++i) next += y[i] * basis[static_cast<std::size_t>(i)];
    psi = beta0 * next;
    remaining -= step;
  }
}

}  // namespace

struct SegmentPropagator::Impl {
  std::size_t qubits = 0;
  bool diagonal_only = false;
  bool dense = false;
  std::vector<double> diag;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  SparseHamiltonian sparse;
};

SegmentPropagator::SegmentPropagator(const Register& reg, double omega, double delta) : impl_(std::make_unique<Impl>()) {
  impl_->qubits = reg.size();
  if (omega == 0.0) {
    impl_->diagonal_only = true;
    impl_->diag = diagonal_energies(reg, delta);
  } else if (reg.size() <= kDenseQubitLimit) {
    impl_->dense = true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian(reg, omega, delta));
    impl_->eigenvalues = es.eigenvalues();
    impl_->eigenvectors = es.eigenvectors();
    impl_->diag = diagonal_energies(reg, delta);
  } else {
    impl_->sparse.diag = diagonal_energies(reg, delta);
    impl_->sparse.half_omega = 0.5 * omega;
    impl_->sparse.qubits = reg.size();
  }
}

SegmentPropagator::~SegmentPropagator() = default;
SegmentPropagator::SegmentPropagator(SegmentPropagator&&) noexcept = default;
SegmentPropagator& SegmentPropagator::operator=(SegmentPropagator&&) noexcept = default;

void SegmentPropagator::apply(QuantumState& state, double duration) const {
  if (state.qubits() != impl_->qubits) throw EmulatorError("state and register sizes differ");
  auto& amp = state.amplitudes();
  if (impl_->diagonal_only) {
    for (std::size_t x = 0; x < amp.size(); ++x) amp[x] *= std::exp(Amplitude(0.0, -impl_->diag[x] * duration));
    return;
  }
  Eigen::Map<CVector> psi(amp.data(), static_cast<Eigen::Index>(amp.size()));
  if (impl_->dense) {
    // V diag(e^{-i lambda t}) V^T psi with real V: transform real and
    // imaginary parts separately to stay in real arithmetic.
    const Eigen::VectorXd psi_re = psi.real();
    const Eigen::VectorXd psi_im = psi.imag();
    const Eigen::VectorXd re = impl_->eigenvectors.transpose() * psi_re;
    const Eigen::VectorXd im = impl_->eigenvectors.transpose() * psi_im;
    Eigen::VectorXd out_re(re.size());
    Eigen::VectorXd out_im(re.size());
    for (Eigen::Index k = 0; k < re.size(); ++k) {
      const double c = std::cos(impl_->eigenvalues[k] * duration);
      const double s = -std::sin(impl_->eigenvalues[k] * duration);
      out_re[k] = c * re[k] - s * im[k];
      out_im[k] = s * re[k] + c * im[k];
    }
    const Eigen::VectorXd new_re = impl_->eigenvectors * out_re;
    const Eigen::VectorXd new_im = impl_->eigenvectors * out_im;
    for (Eigen::Index x = 0; x < psi.size(); ++x) psi[x] = Amplitude(new_re[x], new_im[x]);
    return;
  }
  CVector v = psi;
  krylov_propagate(impl_->sparse, v, duration);
  psi = v;
}

double SegmentPropagator::expectation(const QuantumState& state) const {
  const auto& amp = state.amplitudes();
  Eigen::Map<const CVector> psi(amp.data(), static_cast<Eigen::Index>(amp.size()));
  if (impl_->diagonal_only) {
    double e = 0.0;
    for (std::size_t x = 0; x < amp.size(); ++x) e += impl_->diag[x] * std::norm(amp[x]);
    return e;
  }
  if (impl_->dense) {
    const Eigen::VectorXd psi_re = psi.real();
    const Eigen::VectorXd psi_im = psi.imag();
    const Eigen::VectorXd re = impl_->eigenvectors.transpose() * psi_re;
    const Eigen::VectorXd im = impl_->eigenvectors.transpose() * psi_im;
    double e = 0.0;
    for (Eigen::Index k = 0; k < re.size(); ++k) e += impl_->eigenvalues[k] * (re[k] * re[k] + im[k] * im[k]);
    return e;
  }
  CVector hv(psi.size());
  impl_->sparse.apply(psi, hv);
  return psi.dot(hv).real();
}

QuantumState evolve(QuantumState state, const Register& reg, const PulseSchedule& schedule) {
  if (state.qubits() != reg.size()) throw EmulatorError("state and register sizes differ");
  for (const auto& seg : schedule.segments()) SegmentPropagator(reg, seg.omega, seg.delta).apply(state, seg.duration);
  return state;
}

SampleHistogram measure(const QuantumState& state, std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  std::vector<double> probs(state.dimension());
  for (std::size_t x = 0; x < probs.size(); ++x) probs[x] = state.probability(x);

  SampleHistogram h;
  h.backend = "emulator";
  h.seed = seed;
  h.shots_requested = shots;
  Rng rng(seed);
  std::discrete_distribution<std::uint64_t> pick(probs.begin(), probs.end());
  for (std::size_t i = 0; i < shots; ++i) h.add(VertexSet(pick(rng)));
  h.shots_consumed = shots;
  return h;
}

double qaoa_energy(const SampleHistogram& h, const Graph& g, double penalty) {
  if (h.shots == 0) throw std::invalid_argument("empty histogram");
  double total = 0.0;
  for (const auto& [s, count] : h.entries) {
    const std::uint64_t local = g.to_local(s);
    std::size_t violations = 0;
    for (std::uint64_t b = local; b != 0; b &= b - 1)
      violations += static_cast<std::size_t>(std::popcount(g.local_neighbors(static_cast<std::size_t>(std::countr_zero(b))) & local));
    violations /= 2;
    const double c = -static_cast<double>(s.size()) + penalty * static_cast<double>(violations);
    total += c * static_cast<double>(count);
  }
  return total / static_cast<double>(h.shots);
}

}  // namespace bbqmis::rydberg

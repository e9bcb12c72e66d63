#include "solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "errors.hpp"

namespace csaudio {

namespace {

constexpr double kPi = 3.14159265358979323846;

double abs_sq(double v) { return v * v; }
double abs_sq(const std::complex<double>& v) { return std::norm(v); }

template <typename S>
double l2_norm(const std::vector<S>& v) {
  double sum = 0.0;
  for (const S& x : v) sum += abs_sq(x);
  return std::sqrt(sum);
}

// Proximal map of the l1 norm: shrinks the magnitude by t, keeps the
// sign (real) or phase (complex).
template <typename S>
S soft_threshold(const S& v, double t) {
  const double mag = std::abs(v);
  if (mag <= t) return S{};
  return v * ((mag - t) / mag);
}

// Entry (i, j) of Omega, i.e. B[q_i, j] of the inverse-transform matrix.
double dct_operator_entry(std::size_t n, std::uint32_t t, std::size_t j) {
  if (j == 0) return std::sqrt(1.0 / static_cast<double>(n));
  const std::uint64_t arg = ((2 * static_cast<std::uint64_t>(t) + 1) * j) %
                            (4 * static_cast<std::uint64_t>(n));
  return std::sqrt(2.0 / static_cast<double>(n)) *
         std::cos(kPi * static_cast<double>(arg) / (2.0 * static_cast<double>(n)));
}

std::complex<double> dft_operator_entry(std::size_t n, std::uint32_t t, std::size_t j) {
  const std::uint64_t arg = (static_cast<std::uint64_t>(t) * j) % n;
  return std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                    2.0 * kPi * static_cast<double>(arg) / static_cast<double>(n));
}

template <typename S>
void operator_column(const CsOperator& op, std::size_t j, std::vector<S>& col) {
  const auto& idx = op.pattern().indices;
  col.resize(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if constexpr (std::is_same_v<S, double>)
      col[i] = dct_operator_entry(op.cols(), idx[i], j);
    else
      col[i] = dft_operator_entry(op.cols(), idx[i], j);
  }
}

void check_measurements(const MeasurementSet& ms) {
  if (ms.y.size() != ms.pattern.m())
    fail(Errc::Mismatch, "solver: measurement count does not match pattern");
  if (ms.basis.n != ms.pattern.n)
    fail(Errc::Mismatch, "solver: basis length does not match pattern");
  for (const double v : ms.y)
    if (!std::isfinite(v)) fail(Errc::InvalidArgument, "solver: non-finite measurement");
}

void check_config(const SolverConfig& cfg) {
  if (cfg.max_iters < 1) fail(Errc::InvalidArgument, "solver: max_iters must be at least 1");
  if (!(cfg.residual_tol > 0.0 && cfg.residual_tol < 1.0))
    fail(Errc::InvalidArgument, "solver: residual_tol must lie in (0, 1)");
  if (!(cfg.change_tol > 0.0 && cfg.change_tol < 1.0))
    fail(Errc::InvalidArgument, "solver: change_tol must lie in (0, 1)");
  if (!(cfg.admm_rho > 0.0)) fail(Errc::InvalidArgument, "solver: admm_rho must be positive");
}

template <typename S>
Reconstruction finish(const MeasurementSet& ms, std::vector<S>&& z, std::size_t iterations,
                      double final_residual, bool converged, std::vector<double>&& history,
                      const char* origin) {
  Reconstruction rec;
  rec.coeffs.basis = ms.basis;
  rec.coeffs.values.assign(z.begin(), z.end());
  InverseOutcome inv = inverse(rec.coeffs);
  rec.frame = std::move(inv.frame);
  rec.frame.sample_rate = ms.sample_rate;
  rec.frame.origin = origin;
  rec.discarded_imag_energy = inv.discarded_imag_energy;
  rec.iterations = iterations;
  rec.final_residual = final_residual;
  rec.converged = converged;
  rec.primal_residual_history = std::move(history);
  return rec;
}

template <typename S>
Reconstruction solve_bp_impl(const MeasurementSet& ms, const SolverConfig& cfg) {
  const std::size_t n = ms.basis.n;
  const std::size_t m = ms.pattern.m();
  const CsOperator op(ms.pattern, ms.basis.kind);

  std::vector<S> y(ms.y.begin(), ms.y.end());
  const double y_norm = l2_norm(y);
  std::vector<double> history;

  if (y_norm == 0.0) {
    // Zero is feasible and has minimal norm.
    return finish<S>(ms, std::vector<S>(n), 0, 0.0, true, {}, "bp");
  }

  std::vector<S> x(n), z(n), u(n), v(n), w(m), corr(n);

  auto residual_of = [&](const std::vector<S>& c) {
    op.apply(std::span<const S>(c), std::span<S>(w));
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += abs_sq(w[i] - y[i]);
    return std::sqrt(sum) / y_norm;
  };

  if (m == n) {
    // Full observation: Omega is square and unitary, the feasible set is
    // the single point Omega^H y, which is the solution regardless of the
    // objective.
    op.adjoint(std::span<const S>(y), std::span<S>(x));
    const double res = residual_of(x);
    return finish<S>(ms, std::move(x), 0, res, res <= cfg.residual_tol, {}, "bp");
  }

  const double kappa = 1.0 / cfg.admm_rho;
  history.reserve(std::min<std::size_t>(cfg.max_iters, 16384));

  std::size_t it = 0;
  bool converged = false;
  double final_residual = -1.0;

  for (it = 1; it <= cfg.max_iters; ++it) {
    // x-step: project z - u onto {x : Omega x = y}. Exact because
    // Omega Omega^H = I.
    for (std::size_t i = 0; i < n; ++i) v[i] = z[i] - u[i];
    op.apply(std::span<const S>(v), std::span<S>(w));
    for (std::size_t i = 0; i < m; ++i) w[i] -= y[i];
    op.adjoint(std::span<const S>(w), std::span<S>(corr));
    for (std::size_t i = 0; i < n; ++i) x[i] = v[i] - corr[i];

    // z-step and u-step, fused.
    double change_sq = 0.0, z_norm_sq = 0.0, primal_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const S znew = soft_threshold<S>(x[i] + u[i], kappa);
      change_sq += abs_sq(znew - z[i]);
      z_norm_sq += abs_sq(znew);
      primal_sq += abs_sq(x[i] - znew);
      u[i] += x[i] - znew;
      z[i] = znew;
    }
    const double primal = std::sqrt(primal_sq);
    history.push_back(primal);
    const double rel_change =
        std::sqrt(change_sq) / std::max(std::sqrt(z_norm_sq), std::numeric_limits<double>::min());

    // ||Omega z - y|| = ||Omega (z - x)|| <= ||z - x||, so the primal
    // residual is a free upper bound; the exact residual is only computed
    // once the bound clears the tolerance.
    if (primal / y_norm <= cfg.residual_tol && rel_change <= cfg.change_tol) {
      final_residual = residual_of(z);
      if (final_residual <= cfg.residual_tol) {
        converged = true;
        break;
      }
    }
  }
  if (it > cfg.max_iters) it = cfg.max_iters;
  // A residual computed during an earlier bound check is stale once the
  // loop has moved z; recompute against the returned iterate.
  if (!converged) final_residual = residual_of(z);

  return finish<S>(ms, std::move(z), it, final_residual, converged, std::move(history), "bp");
}

template <typename S>
Reconstruction solve_omp_impl(const MeasurementSet& ms, std::size_t k_max, double residual_tol) {
  using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

  const std::size_t n = ms.basis.n;
  const std::size_t m = ms.pattern.m();
  const CsOperator op(ms.pattern, ms.basis.kind);

  std::vector<S> y(ms.y.begin(), ms.y.end());
  const double y_norm = l2_norm(y);
  if (y_norm == 0.0) return finish<S>(ms, std::vector<S>(n), 0, 0.0, true, {}, "omp");

  Vector y_vec(m);
  for (std::size_t i = 0; i < m; ++i) y_vec(static_cast<Eigen::Index>(i)) = y[i];

  std::vector<S> residual(y), corr(n), column(m);
  std::vector<std::size_t> active;
  std::vector<char> in_active(n, 0);
  Matrix atoms(m, static_cast<Eigen::Index>(k_max));
  Vector fit;
  double rel_residual = 1.0;

  while (active.size() < k_max) {
    op.adjoint(std::span<const S>(residual), std::span<S>(corr));
    std::size_t best = n;
    double best_mag = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_active[j]) continue;
      const double mag = std::abs(corr[j]);
      if (mag > best_mag) {  // strict: ties resolve to the lowest index
        best_mag = mag;
        best = j;
      }
    }
    if (best == n || best_mag == 0.0) break;

    operator_column<S>(op, best, column);
    const auto k = static_cast<Eigen::Index>(active.size());
    for (std::size_t i = 0; i < m; ++i) atoms(static_cast<Eigen::Index>(i), k) = column[i];
    active.push_back(best);
    in_active[best] = 1;

    fit = atoms.leftCols(k + 1).householderQr().solve(y_vec);
    Vector r = y_vec - atoms.leftCols(k + 1) * fit;
    for (std::size_t i = 0; i < m; ++i) residual[i] = r(static_cast<Eigen::Index>(i));
    rel_residual = r.norm() / y_norm;
    if (rel_residual <= residual_tol) break;
  }

  std::vector<S> z(n, S{});
  for (std::size_t k = 0; k < active.size(); ++k)
    z[active[k]] = fit(static_cast<Eigen::Index>(k));

  return finish<S>(ms, std::move(z), active.size(), rel_residual,
                   rel_residual <= residual_tol, {}, "omp");
}

}  // namespace

double l1_norm(const CoefficientVector& coeffs) {
  double sum = 0.0;
  for (const auto& v : coeffs.values) sum += std::abs(v);
  return sum;
}

Reconstruction solve_bp(const MeasurementSet& measurements, const SolverConfig& config) {
  check_measurements(measurements);
  check_config(config);
  if (measurements.basis.kind == BasisKind::Dct)
    return solve_bp_impl<double>(measurements, config);
  return solve_bp_impl<std::complex<double>>(measurements, config);
}

Reconstruction solve_omp(const MeasurementSet& measurements, std::size_t k_max,
                         double residual_tol) {
  check_measurements(measurements);
  if (k_max < 1 || k_max > measurements.pattern.m())
    fail(Errc::InvalidArgument, "solve_omp: k_max must lie in [1, M]");
  if (!(residual_tol > 0.0 && residual_tol < 1.0))
    fail(Errc::InvalidArgument, "solve_omp: residual_tol must lie in (0, 1)");
  if (measurements.basis.kind == BasisKind::Dct)
    return solve_omp_impl<double>(measurements, k_max, residual_tol);
  return solve_omp_impl<std::complex<double>>(measurements, k_max, residual_tol);
}

}  // namespace csaudio

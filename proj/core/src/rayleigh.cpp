#include "aniso/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "aniso/errors.hpp"
#include "aniso/parallel.hpp"
#include "aniso/random.hpp"
#include "aniso/rearrange.hpp"
#include "power_mean.hpp"

namespace aniso {

namespace {

constexpr double kArmijo = 1e-4;
constexpr std::size_t kHatStarts = 5;

std::optional<double> quotient_of(const PiecewiseAffine& phi, const AnisotropicNorm& norm,
                                  const WeightFunction& m, double kappa) {
  const double den = weighted_p_integral(phi, m, norm.p());
  if (!(den > 0.0)) return std::nullopt;
  const double p = norm.p();
  const double boundary =
      std::pow(std::max(phi.front(), 0.0), p) + std::pow(std::max(phi.back(), 0.0), p);
  return (anisotropic_energy(phi, norm) + kappa * boundary) / den;
}

// Tridiagonal H^1 Gram matrix (stiffness + lumped mass) on the uniform grid,
// factored once; solve() applies its inverse to a gradient.
class SobolevPreconditioner {
 public:
  explicit SobolevPreconditioner(std::size_t nodes) : n_{nodes}, c_(nodes), inv_(nodes) {
    const double h = 1.0 / static_cast<double>(nodes - 1);
    const double off = -1.0 / h;
    std::vector<double> diag(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      const bool end = i == 0 || i + 1 == nodes;
      diag[i] = (end ? 1.0 : 2.0) / h + (end ? 0.5 : 1.0) * h;
    }
    off_ = off;
    double prev_c = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
      const double denom = diag[i] - (i > 0 ? off * prev_c : 0.0);
      inv_[i] = 1.0 / denom;
      c_[i] = off * inv_[i];
      prev_c = c_[i];
    }
  }

  void solve(std::span<const double> rhs, std::span<double> out) const {
    double prev = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = (rhs[i] - (i > 0 ? off_ * prev : 0.0)) * inv_[i];
      prev = out[i];
    }
    for (std::size_t i = n_ - 1; i-- > 0;) out[i] -= c_[i] * out[i + 1];
  }

 private:
  std::size_t n_;
  double off_ = 0.0;
  std::vector<double> c_;
  std::vector<double> inv_;
};

struct Descent {
  std::vector<double> x;
  double q = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;
  bool feasible = false;
};

bool normalize(const DiscreteQuotient& dq, std::vector<double>& x, double p) {
  for (double& v : x) v = std::max(v, 0.0);
  const double den = dq.denominator(x);
  if (!(den > 0.0) || !std::isfinite(den)) return false;
  const double s = std::pow(den, -1.0 / p);
  for (double& v : x) v *= s;
  return true;
}

Descent descend(const DiscreteQuotient& dq, const SobolevPreconditioner& pre,
                std::vector<double> x, double p, const MinimizeOptions& opt) {
  Descent out;
  if (!normalize(dq, x, p)) return out;
  out.feasible = true;
  const std::size_t n = x.size();
  std::vector<double> grad(n);
  std::vector<double> dir(n);
  std::vector<double> trial(n);
  std::vector<double> history;
  history.reserve(opt.max_iterations + 1);

  double q = dq.value_and_gradient(x, grad);
  history.push_back(q);
  double eta = 1.0;
  std::size_t it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (q == 0.0) {
      out.converged = true;
      break;
    }
    pre.solve(grad, dir);
    double scale_x = 0.0;
    double scale_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      scale_x = std::max(scale_x, std::abs(x[i]));
      scale_d = std::max(scale_d, std::abs(dir[i]));
    }
    if (!(scale_d > 0.0) || !std::isfinite(scale_d)) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    double q_trial = q;
    while (eta * scale_d > 1e-16 * scale_x) {
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = std::max(x[i] - eta * dir[i], 0.0);
        decrease += grad[i] * (x[i] - trial[i]);
      }
      const double den = dq.denominator(trial);
      if (den > 0.0) {
        q_trial = dq.numerator(trial) / den;
        if (q_trial <= q - kArmijo * decrease) {
          accepted = true;
          break;
        }
      }
      eta *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    x.swap(trial);
    normalize(dq, x, p);
    q = dq.value_and_gradient(x, grad);
    history.push_back(q);
    eta *= 2.0;
    if (history.size() > opt.window) {
      const double old = history[history.size() - 1 - opt.window];
      if (old - q <= opt.tolerance * std::abs(old)) {
        out.converged = true;
        ++it;
        break;
      }
    }
  }
  out.x = std::move(x);
  out.q = q;
  out.iterations = it;
  return out;
}

std::vector<std::vector<double>> initial_iterates(const QuotientProblem& prob,
                                                  std::uint64_t seed) {
  const std::size_t n = prob.grid_size() + 1;
  const double h = 1.0 / static_cast<double>(prob.grid_size());
  std::vector<std::vector<double>> starts;
  for (std::size_t k = 1; k <= kHatStarts; ++k) {
    const double centre = static_cast<double>(k) / static_cast<double>(kHatStarts + 1);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::max(0.0, 1.0 - 4.0 * std::abs(static_cast<double>(i) * h - centre));
    }
    starts.push_back(std::move(x));
  }
  {
    Rng rng(derive_seed(seed, kHatStarts));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = unit(rng);
    starts.push_back(std::move(x));
  }
  {
    // indicator of the positive weight piece with the largest mass
    const WeightFunction& m = prob.weight();
    std::size_t best = 0;
    double best_mass = -1.0;
    for (std::size_t k = 0; k < m.pieces(); ++k) {
      const double mass = m.values()[k] * m.width(k);
      if (m.values()[k] > 0.0 && mass > best_mass) {
        best = k;
        best_mass = mass;
      }
    }
    const double lo = m.breakpoints()[best];
    const double hi = m.breakpoints()[best + 1];
    std::vector<double> x(n, 0.0);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) * h;
      if (t >= lo && t <= hi) {
        x[i] = 1.0;
        any = true;
      }
    }
    if (!any) {
      const auto nearest = static_cast<std::size_t>(std::lround(0.5 * (lo + hi) / h));
      x[std::min(nearest, n - 1)] = 1.0;
    }
    starts.push_back(std::move(x));
  }
  return starts;
}

}  // namespace

QuotientProblem::QuotientProblem(AnisotropicNorm norm, WeightFunction weight, double kappa,
                                 std::size_t grid_size)
    : norm_{norm}, weight_{std::move(weight)}, kappa_{kappa}, grid_size_{grid_size} {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("boundary parameter kappa must be >= 0");
  }
  if (grid_size < 8) throw std::invalid_argument("grid size must be at least 8");
  if (!weight_.has_positive_part()) {
    throw InfeasibleError("weight is nonpositive everywhere: int m phi^p > 0 is unattainable");
  }
}

std::string to_string(const Structure& s) {
  switch (s.kind) {
    case StructureKind::Increasing: return "increasing";
    case StructureKind::Decreasing: return "decreasing";
    case StructureKind::Constant: return "constant";
    case StructureKind::Other: return "other";
    case StructureKind::Unimodal: {
      std::ostringstream os;
      os.precision(6);
      os << "unimodal(" << s.alpha << ")";
      return os.str();
    }
  }
  return "other";
}

Structure classify_structure(const PiecewiseAffine& phi, double relative_tol) {
  double top_slope = 0.0;
  double top_value = 0.0;
  for (double v : phi.values()) top_value = std::max(top_value, std::abs(v));
  for (std::size_t i = 0; i < phi.pieces(); ++i) {
    top_slope = std::max(top_slope, std::abs(phi.slope(i)));
  }
  // slopes at rounding level of the values are flat whatever their relative size
  const double tol = std::max(relative_tol * top_slope, 1e-12 * top_value);
  bool rising = false;
  bool falling = false;
  bool reversal = false;
  for (std::size_t i = 0; i < phi.pieces(); ++i) {
    if (phi.widths()[i] == 0.0) continue;
    const double s = phi.slope(i);
    if (s > tol) {
      if (falling) reversal = true;
      rising = true;
    } else if (s < -tol) {
      falling = true;
    }
  }
  if (reversal) return {StructureKind::Other, 0.0};
  if (rising && falling) return {StructureKind::Unimodal, first_global_max(phi)};
  if (rising) return {StructureKind::Increasing, 0.0};
  if (falling) return {StructureKind::Decreasing, 0.0};
  return {StructureKind::Constant, 0.0};
}

double rayleigh_quotient(const PiecewiseAffine& phi, const QuotientProblem& prob) {
  const auto q = quotient_of(phi, prob.norm(), prob.weight(), prob.kappa());
  if (!q) throw InfeasibleError("candidate has int m phi^p <= 0");
  return *q;
}

double first_global_max(const PiecewiseAffine& phi) {
  const auto vs = phi.values();
  const auto it = std::max_element(vs.begin(), vs.end());
  return phi.breakpoints()[static_cast<std::size_t>(it - vs.begin())];
}

Competitor unimodal_competitor(const PiecewiseAffine& phi, const WeightFunction& m,
                               double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError("unimodal competitor needs 0 < alpha < 1");
  }
  PiecewiseAffine left = increasing_rearrangement(phi.restricted(0.0, alpha));
  PiecewiseAffine right = decreasing_rearrangement(phi.restricted(alpha, 1.0));
  WeightFunction m_left = m.restricted(0.0, alpha).increasing_rearrangement();
  WeightFunction m_right = m.restricted(alpha, 1.0).decreasing_rearrangement();
  return {PiecewiseAffine::concatenate(left, right, alpha),
          WeightFunction::concatenate(m_left, m_right, alpha)};
}

InequalityReport competitor_improves(const PiecewiseAffine& phi, const QuotientProblem& prob,
                                     CompetitorMode mode) {
  const AnisotropicNorm& norm = prob.norm();
  const WeightFunction& m = prob.weight();
  InequalityReport r;
  r.monotone = is_monotone(phi, 1e-9);
  r.lhs = rayleigh_quotient(phi, prob);

  std::optional<Competitor> comp;
  if (mode == CompetitorMode::Monotone) {
    if (prob.kappa() != 0.0) {
      throw PreconditionError("monotone competitor is only defined for kappa = 0");
    }
    if (norm.a() >= norm.b()) {
      r.orientation = Orientation::Down;
      comp = Competitor{decreasing_rearrangement(phi), m.decreasing_rearrangement()};
    } else {
      r.orientation = Orientation::Up;
      comp = Competitor{increasing_rearrangement(phi), m.increasing_rearrangement()};
    }
  } else {
    const double alpha = first_global_max(phi);
    if (alpha <= 0.0) {
      r.orientation = Orientation::Down;
      comp = Competitor{decreasing_rearrangement(phi), m.decreasing_rearrangement()};
    } else if (alpha >= 1.0) {
      r.orientation = Orientation::Up;
      comp = Competitor{increasing_rearrangement(phi), m.increasing_rearrangement()};
    } else {
      comp = unimodal_competitor(phi, m, alpha);
    }
  }

  const auto q = quotient_of(comp->phi, norm, comp->weight, prob.kappa());
  if (!q) {
    r.conclusive = false;
    r.rhs = r.lhs;
    r.gap = 0.0;
    return r;
  }
  r.rhs = *q;
  r.gap = r.lhs - r.rhs;
  r.equality = std::abs(r.gap) <= kEqualityTol * r.scale();
  r.holds = r.gap >= -kInequalitySlack * r.scale();
  return r;
}

DiscreteQuotient::DiscreteQuotient(const QuotientProblem& prob)
    : norm_{prob.norm()},
      kappa_{prob.kappa()},
      grid_{prob.grid_size()},
      h_{1.0 / static_cast<double>(prob.grid_size())} {
  const WeightFunction& m = prob.weight();
  const auto mb = m.breakpoints();
  const double n = static_cast<double>(grid_);
  std::size_t j = 0;
  for (std::size_t i = 0; i < grid_; ++i) {
    const double t0 = static_cast<double>(i) / n;
    const double t1 = static_cast<double>(i + 1) / n;
    while (j + 1 < m.pieces() && mb[j + 1] <= t0) ++j;
    double lo = t0;
    std::size_t k = j;
    while (lo < t1) {
      const double hi = k + 1 < m.pieces() ? std::min(mb[k + 1], t1) : t1;
      if (hi > lo && m.values()[k] != 0.0) {
        slices_.push_back({i, m.values()[k], (lo - t0) * n, (hi - t0) * n});
      }
      lo = hi;
      if (k + 1 < m.pieces()) ++k;
    }
  }
}

double DiscreteQuotient::numerator(std::span<const double> x) const {
  const double p = norm_.p();
  double rising = 0.0;
  double falling = 0.0;
  for (std::size_t i = 0; i < grid_; ++i) {
    const double s = (x[i + 1] - x[i]) / h_;
    if (s > 0.0) rising += std::pow(s, p);
    if (s < 0.0) falling += std::pow(-s, p);
  }
  const double boundary = std::pow(std::max(x[0], 0.0), p) + std::pow(std::max(x[grid_], 0.0), p);
  return h_ * (norm_.a_pow() * rising + norm_.b_pow() * falling) + kappa_ * boundary;
}

double DiscreteQuotient::denominator(std::span<const double> x) const {
  const double p = norm_.p();
  double acc = 0.0;
  for (const Slice& s : slices_) {
    const double x0 = std::max(x[s.cell], 0.0);
    const double x1 = std::max(x[s.cell + 1], 0.0);
    const double y0 = x0 + (x1 - x0) * s.theta0;
    const double y1 = x0 + (x1 - x0) * s.theta1;
    acc += s.weight * h_ * (s.theta1 - s.theta0) * detail::power_mean(y0, y1, p);
  }
  return acc;
}

double DiscreteQuotient::value(std::span<const double> x) const {
  const double den = denominator(x);
  if (!(den > 0.0)) throw InfeasibleError("discrete candidate has int m phi^p <= 0");
  return numerator(x) / den;
}

double DiscreteQuotient::value_and_gradient(std::span<const double> x,
                                            std::span<double> grad) const {
  const double p = norm_.p();
  std::vector<double> d_num(x.size(), 0.0);
  std::vector<double> d_den(x.size(), 0.0);
  for (std::size_t i = 0; i < grid_; ++i) {
    const double s = (x[i + 1] - x[i]) / h_;
    double ds = 0.0;
    if (s > 0.0) ds = p * norm_.a_pow() * std::pow(s, p - 1.0);
    if (s < 0.0) ds = -p * norm_.b_pow() * std::pow(-s, p - 1.0);
    // h * density(s) differentiated through s = (x[i+1] - x[i]) / h
    d_num[i + 1] += ds;
    d_num[i] -= ds;
  }
  d_num[0] += kappa_ * p * std::pow(std::max(x[0], 0.0), p - 1.0);
  d_num[grid_] += kappa_ * p * std::pow(std::max(x[grid_], 0.0), p - 1.0);

  double den = 0.0;
  for (const Slice& sl : slices_) {
    const double x0 = std::max(x[sl.cell], 0.0);
    const double x1 = std::max(x[sl.cell + 1], 0.0);
    const double y0 = x0 + (x1 - x0) * sl.theta0;
    const double y1 = x0 + (x1 - x0) * sl.theta1;
    const double len = h_ * (sl.theta1 - sl.theta0);
    const detail::PowerMean pm = detail::power_mean_with_gradient(y0, y1, p);
    den += sl.weight * len * pm.value;
    const double c = sl.weight * len;
    d_den[sl.cell] += c * (pm.d_y0 * (1.0 - sl.theta0) + pm.d_y1 * (1.0 - sl.theta1));
    d_den[sl.cell + 1] += c * (pm.d_y0 * sl.theta0 + pm.d_y1 * sl.theta1);
  }
  if (!(den > 0.0)) throw InfeasibleError("discrete candidate has int m phi^p <= 0");
  const double q = numerator(x) / den;
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = (d_num[i] - q * d_den[i]) / den;
  return q;
}

PiecewiseAffine DiscreteQuotient::to_function(std::span<const double> x) const {
  std::vector<double> bps(grid_ + 1);
  for (std::size_t i = 0; i <= grid_; ++i) {
    bps[i] = static_cast<double>(i) / static_cast<double>(grid_);
  }
  return {std::move(bps), std::vector<double>(x.begin(), x.end())};
}

MinimizerReport minimize_quotient(const QuotientProblem& prob, std::uint64_t seed,
                                  const MinimizeOptions& options) {
  const DiscreteQuotient dq(prob);
  const SobolevPreconditioner pre(dq.nodes());
  const auto starts = initial_iterates(prob, seed);
  std::vector<Descent> runs(starts.size());
  parallel_for(starts.size(), options.threads, [&](std::size_t k) {
    runs[k] = descend(dq, pre, starts[k], prob.norm().p(), options);
  });
  std::size_t best = runs.size();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (!runs[k].feasible) continue;
    if (best == runs.size() || runs[k].q < runs[best].q) best = k;
  }
  if (best == runs.size()) {
    throw InfeasibleError("no feasible start: int m phi^p <= 0 for every initial iterate");
  }
  PiecewiseAffine phi = dq.to_function(runs[best].x);
  const double lambda = rayleigh_quotient(phi, prob);
  Structure structure = classify_structure(phi);
  return {std::move(phi),       lambda, structure, runs[best].iterations, runs[best].converged,
          best,                 seed};
}

}  // namespace aniso

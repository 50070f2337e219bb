#include "coulomb/shellmatch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "coulomb/numeval.hpp"

namespace coulomb {

namespace {

using State = std::array<double, 2>;

constexpr double kRichardsonTol = 1e-8;
constexpr int kScanPoints = 64;

// Classical RK4 over [r0, r1] in `steps` equal steps (r1 < r0 integrates inward).
template <class Rhs>
State rk4(const Rhs& rhs, double r0, State y, double r1, long steps) {
  const double h = (r1 - r0) / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const double r = r0 + static_cast<double>(i) * h;
    const State k1 = rhs(r, y);
    const State k2 = rhs(r + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const State k3 = rhs(r + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const State k4 = rhs(r + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  }
  return y;
}

long step_count(double length, double grid_step, long minimum) {
  return std::max(minimum, static_cast<long>(std::ceil(length / grid_step)));
}

// Regular free solution R = r^l w(r), with w the even power series
// w = sum c_k r^{2k}, c_0 = 1, c_k = c_{k-1} kappa^2 / (2k (2k + 2l + 1)).
State interior_series(int l, double kappa, double r) {
  double term = 1.0;
  double w = 1.0;
  double dw = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= kappa * kappa * r * r / (2.0 * k * (2.0 * k + 2.0 * l + 1.0));
    w += term;
    dw += 2.0 * k * term / r;
    if (term < 1e-18 * w) break;
  }
  return {w, dw};
}

// (w, w') at a, from the series start at a/8.
State interior_w(int l, double kappa, double a, long steps) {
  const double r0 = a / 8.0;
  const double l1 = 2.0 * (l + 1.0);
  auto rhs = [&](double r, const State& y) -> State { return {y[1], kappa * kappa * y[0] - l1 / r * y[1]}; };
  return rk4(rhs, r0, interior_series(l, kappa, r0), a, steps);
}

RadialValue to_radial(int l, double r, const State& w) {
  const double rl = std::pow(r, l);
  const double drl = l == 0 ? 0.0 : l * std::pow(r, l - 1);
  return {rl * w[0], drl * w[0] + rl * w[1]};
}

// Leading large-r form of the decaying solution: e^{-kappa r}/r (1 + l(l+1)/(2 kappa r)).
State exterior_start(int l, double kappa, double r) {
  const double c = l * (l + 1.0) / (2.0 * kappa);
  const double g = 1.0 + c / r;
  const double logd = -kappa - 1.0 / r + (-c / (r * r)) / g;
  return {1.0, logd};
}

auto exterior_rhs(int l, double kappa) {
  const double cent = l * (l + 1.0);
  return [=](double r, const State& y) -> State {
    return {y[1], -2.0 / r * y[1] + (kappa * kappa + cent / (r * r)) * y[0]};
  };
}

struct ShellForms {
  ExpEiForm r1, r2, dr1, dr2;
  explicit ShellForms(const QuantumNumbers& qn)
      : r1(assemble_R1(qn)), r2(assemble_R2(qn)), dr1(derivative(r1)), dr2(derivative(r2)) {}

  RadialValue value(const Mixing& mix, double r) const {
    return {mix.c1 * eval_form(r1, r).value + mix.c2 * eval_form(r2, r).value,
            mix.c1 * eval_form(dr1, r).value + mix.c2 * eval_form(dr2, r).value};
  }
};

// Pole-free form of the outer condition: sine of the angle between (S, S')
// and (1, L_ext).
double outer_angle(const RadialValue& s, double l_ext) {
  return (s.derivative - s.value * l_ext) / (std::hypot(s.value, s.derivative) * std::hypot(1.0, l_ext));
}

}  // namespace

void ShellConfig::validate() const {
  if (!(a > 0.0 && a < b_min && b_min < b_max)) {
    throw std::invalid_argument("shell geometry must satisfy 0 < a < b_min < b_max");
  }
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
}

RadialValue integrate_interior(const QuantumNumbers& qn, double a, double grid_step) {
  if (!(a > 0.0)) throw DomainError("interior radius must be positive");
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
  const double kappa = qn.kappa().get_d();
  const long steps = step_count(a - a / 8.0, grid_step, 2048);
  const State coarse = interior_w(qn.l(), kappa, a, steps);
  const State fine = interior_w(qn.l(), kappa, a, 2 * steps);
  const double ld_coarse = coarse[1] / coarse[0];
  const double ld_fine = fine[1] / fine[0];
  if (std::fabs(ld_coarse - ld_fine) > kRichardsonTol * (std::fabs(ld_fine) + kappa)) {
    throw StepSizeTooCoarse("interior integration not converged at a=" + std::to_string(a));
  }
  const State extrapolated = {(16.0 * fine[0] - coarse[0]) / 15.0, (16.0 * fine[1] - coarse[1]) / 15.0};
  return to_radial(qn.l(), a, extrapolated);
}

double exterior_logderiv(const QuantumNumbers& qn, double b, double grid_step, double start_offset) {
  if (!(b > 0.0)) throw DomainError("exterior radius must be positive");
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
  const double kappa = qn.kappa().get_d();
  const double start = b + start_offset / kappa;
  const State y0 = exterior_start(qn.l(), kappa, start);
  // Uniform steps in r down to r = 1, then uniform steps in t = ln r, where the
  // centrifugal term no longer stiffens the equation as r -> 0.
  const double r_switch = std::max(b, 1.0);
  const double cent = qn.l() * (qn.l() + 1.0);
  auto log_rhs = [=](double t, const State& y) -> State {
    const double r = std::exp(t);
    return {y[1], -y[1] + (kappa * kappa * r * r + cent) * y[0]};
  };
  auto sweep = [&](long factor) {
    const State at_switch =
        rk4(exterior_rhs(qn.l(), kappa), start, y0, r_switch, factor * step_count(start - r_switch, grid_step, 64));
    if (r_switch == b) return at_switch[1] / at_switch[0];
    const State v0{at_switch[0], r_switch * at_switch[1]};
    const double t0 = std::log(r_switch), t1 = std::log(b);
    const State v = rk4(log_rhs, t0, v0, t1, factor * step_count(t0 - t1, grid_step, 16));
    return v[1] / (b * v[0]);
  };
  const double ld_coarse = sweep(1);
  const double ld_fine = sweep(2);
  if (std::fabs(ld_coarse - ld_fine) > kRichardsonTol * std::fabs(ld_fine)) {
    throw StepSizeTooCoarse("exterior integration not converged at b=" + std::to_string(b));
  }
  return (16.0 * ld_fine - ld_coarse) / 15.0;
}

Mixing match_inner(const QuantumNumbers& qn, double a, const RadialValue& interior) {
  const ShellForms forms(qn);
  const double r1 = eval_form(forms.r1, a).value;
  const double dr1 = eval_form(forms.dr1, a).value;
  const double r2 = eval_form(forms.r2, a).value;
  const double dr2 = eval_form(forms.dr2, a).value;
  // c1 (R1' u - R1 u') + c2 (R2' u - R2 u') = 0, independent of the scale of u.
  const double alpha1 = dr1 * interior.value - r1 * interior.derivative;
  const double alpha2 = dr2 * interior.value - r2 * interior.derivative;
  const double norm = std::hypot(alpha1, alpha2);
  if (norm == 0.0) throw std::runtime_error("degenerate inner matching");
  Mixing mix{alpha2 / norm, -alpha1 / norm};
  if (mix.c1 < 0.0) mix = {-mix.c1, -mix.c2};
  return mix;
}

double inner_mismatch(const QuantumNumbers& qn, double a, const Mixing& mixing, const RadialValue& interior) {
  const RadialValue s = ShellForms(qn).value(mixing, a);
  return s.derivative / s.value - interior.derivative / interior.value;
}

double outer_mismatch(const ShellConfig& config, const Mixing& mixing, double b) {
  const RadialValue s = ShellForms(config.qn).value(mixing, b);
  return s.derivative / s.value - exterior_logderiv(config.qn, b, config.grid_step);
}

MatchResult match_shell(const ShellConfig& config) {
  config.validate();
  const ShellForms forms(config.qn);
  const RadialValue interior = integrate_interior(config.qn, config.a, config.grid_step);
  const Mixing mix = match_inner(config.qn, config.a, interior);

  struct Sample {
    double b;
    double angle;
    double mismatch;
  };
  auto sample = [&](double b) {
    const RadialValue s = forms.value(mix, b);
    const double l_ext = exterior_logderiv(config.qn, b, config.grid_step);
    return Sample{b, outer_angle(s, l_ext), s.derivative / s.value - l_ext};
  };

  MismatchScan scan;
  std::optional<std::pair<Sample, Sample>> bracket;
  Sample prev = sample(config.b_min);
  scan.emplace_back(prev.b, prev.mismatch);
  for (int i = 1; i <= kScanPoints && !bracket; ++i) {
    const double b = config.b_min + (config.b_max - config.b_min) * i / kScanPoints;
    const Sample cur = sample(b);
    scan.emplace_back(cur.b, cur.mismatch);
    if (prev.angle == 0.0) {
      bracket = {{prev, prev}};
    } else if (std::signbit(prev.angle) != std::signbit(cur.angle)) {
      bracket = {{prev, cur}};
    }
    prev = cur;
  }
  if (!bracket) {
    std::ostringstream msg;
    msg << "outer mismatch does not change sign over [" << config.b_min << ", " << config.b_max << "]";
    throw NoRootInRange(msg.str(), std::move(scan));
  }

  auto [lo, hi] = *bracket;
  for (int it = 0; it < 200 && hi.b - lo.b > 1e-14 * hi.b; ++it) {
    const Sample mid = sample(0.5 * (lo.b + hi.b));
    if (mid.angle == 0.0) {
      lo = hi = mid;
      break;
    }
    (std::signbit(mid.angle) == std::signbit(lo.angle) ? lo : hi) = mid;
  }
  const Sample root = std::fabs(lo.angle) <= std::fabs(hi.angle) ? lo : hi;
  return {root.b, mix.c1, mix.c2, root.mismatch};
}

ContinuityResiduals continuity_residuals(const ShellConfig& config, const MatchResult& result) {
  const ShellForms forms(config.qn);
  const Mixing mix{result.c1, result.c2};
  const double kappa = config.qn.kappa().get_d();
  ContinuityResiduals out;

  const RadialValue u = integrate_interior(config.qn, config.a, config.grid_step);
  const RadialValue sa = forms.value(mix, config.a);
  const double scale_a = sa.value / u.value;
  const double jump_a = std::fabs(scale_a * u.derivative - sa.derivative);
  out.at_a = jump_a / (std::fabs(scale_a * u.derivative) + std::fabs(sa.derivative) + kappa * std::fabs(sa.value));

  const RadialValue sb = forms.value(mix, result.b_star);
  const double l_ext = exterior_logderiv(config.qn, result.b_star, config.grid_step);
  const double jump_b = std::fabs(sb.value * l_ext - sb.derivative);
  out.at_b = jump_b / (std::fabs(sb.value * l_ext) + std::fabs(sb.derivative) + kappa * std::fabs(sb.value));
  return out;
}

std::vector<WavefunctionSample> piecewise_wavefunction(const ShellConfig& config, const MatchResult& result,
                                                      const std::vector<double>& radii) {
  const ShellForms forms(config.qn);
  const Mixing mix{result.c1, result.c2};
  const double kappa = config.qn.kappa().get_d();
  const int l = config.qn.l();

  const RadialValue ua = integrate_interior(config.qn, config.a, config.grid_step);
  const double interior_scale = forms.value(mix, config.a).value / ua.value;

  // Exterior: one inward sweep from beyond the largest radius down to b_star,
  // recording values at the requested points.
  std::vector<double> outside;
  for (double r : radii) {
    if (r > result.b_star) outside.push_back(r);
  }
  std::vector<double> exterior_values(outside.size());
  if (!outside.empty()) {
    const auto rhs = exterior_rhs(l, kappa);
    double r = outside.back() + 40.0 / kappa;
    State y = exterior_start(l, kappa, r);
    for (std::size_t i = outside.size(); i-- > 0;) {
      y = rk4(rhs, r, y, outside[i], step_count(r - outside[i], config.grid_step, 1));
      r = outside[i];
      exterior_values[i] = y[0];
    }
    y = rk4(rhs, r, y, result.b_star, step_count(r - result.b_star, config.grid_step, 1));
    const double exterior_scale = forms.value(mix, result.b_star).value / y[0];
    for (double& v : exterior_values) v *= exterior_scale;
  }

  std::vector<WavefunctionSample> out;
  out.reserve(radii.size());
  std::size_t next_outside = 0;
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("wavefunction radii must be positive");
    if (r < config.a) {
      out.push_back({r, interior_scale * integrate_interior(config.qn, r, config.grid_step).value, 0});
    } else if (r <= result.b_star) {
      out.push_back({r, forms.value(mix, r).value, 1});
    } else {
      out.push_back({r, exterior_values[next_outside++], 2});
    }
  }
  return out;
}

}  // namespace coulomb

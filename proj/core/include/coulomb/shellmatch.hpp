#pragma once

#include <utility>
#include <vector>

#include "coulomb/closedform.hpp"
#include "coulomb/errors.hpp"

namespace coulomb {

/// Coulomb potential on the shell [a, b], zero potential inside a and outside
/// b, energy fixed at the hydrogenic E_n of `qn`. Demonstration-grade.
struct ShellConfig {
  QuantumNumbers qn{1, 0};
  double a = 0.5;
  double b_min = 1.0;
  double b_max = 2.0;
  double grid_step = 0.01;

  /// Throws std::invalid_argument unless 0 < a < b_min < b_max and grid_step > 0.
  void validate() const;
};

/// Radial function value and derivative at a point, up to an overall scale.
struct RadialValue {
  double value = 0.0;
  double derivative = 0.0;
};

struct Mixing {
  double c1 = 1.0;  ///< weight of R1; c1 >= 0
  double c2 = 0.0;  ///< weight of R2; c1^2 + c2^2 = 1
};

struct MatchResult {
  double b_star = 0.0;
  double c1 = 1.0;
  double c2 = 0.0;
  double mismatch = 0.0;  ///< S'/S - (exterior log-derivative) at b_star
};

struct ContinuityResiduals {
  double at_a = 0.0;
  double at_b = 0.0;
};

/// (b, log-derivative mismatch) pairs from the bracket scan.
using MismatchScan = std::vector<std::pair<double, double>>;

class NoRootInRange : public Error {
 public:
  NoRootInRange(const std::string& what, MismatchScan scan) : Error(what), scan_(std::move(scan)) {}
  const MismatchScan& scan() const { return scan_; }

 private:
  MismatchScan scan_;
};

/// Regular zero-potential solution at E_n (behaves as r^l at the origin),
/// integrated outward to r = a with fixed-step RK4 plus one step halving.
/// Throws StepSizeTooCoarse if the two runs disagree by more than 1e-8.
RadialValue integrate_interior(const QuantumNumbers& qn, double a, double grid_step);

/// u'/u at b of the decaying zero-potential solution, integrated inward from
/// b + start_offset/kappa. Throws StepSizeTooCoarse as above.
double exterior_logderiv(const QuantumNumbers& qn, double b, double grid_step = 0.01, double start_offset = 40.0);

/// Shell mixing c1 R1 + c2 R2 whose log-derivative at `a` equals the interior one.
Mixing match_inner(const QuantumNumbers& qn, double a, const RadialValue& interior);

/// S'/S - u'/u at a for a given mixing; zero for the matched mixing.
double inner_mismatch(const QuantumNumbers& qn, double a, const Mixing& mixing, const RadialValue& interior);

/// Log-derivative mismatch at b for a given mixing.
double outer_mismatch(const ShellConfig& config, const Mixing& mixing, double b);

/// Scans b_range for the first sign change of the outer mismatch and bisects it.
/// Throws NoRootInRange (with the scan) when no sign change is found.
MatchResult match_shell(const ShellConfig& config);

/// Relative derivative jumps of the assembled piecewise solution at a and b_star.
ContinuityResiduals continuity_residuals(const ShellConfig& config, const MatchResult& result);

struct WavefunctionSample {
  double r = 0.0;
  double value = 0.0;
  int region = 0;  ///< 0 interior, 1 shell, 2 exterior
};

/// Piecewise solution on the given increasing radii, scaled so the shell part
/// is c1 R1 + c2 R2.
std::vector<WavefunctionSample> piecewise_wavefunction(const ShellConfig& config, const MatchResult& result,
                                                      const std::vector<double>& radii);

}  // namespace coulomb

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whitney/differences.hpp"
#include "whitney/functions.hpp"
#include "whitney/smoother.hpp"

namespace whitney {

struct KFunctionalConfig {
  QuadratureSpec quad{};
  int h_grid = kDefaultHGrid;
  /// Combine per-subdomain smoother values into the Q-level bracket. When
  /// false the smoother values are only reported per subdomain.
  bool combine_subdomains = true;
};

/// Value of one candidate g in ||f - g||_{p,D} + sum_{e != 0} (prod_{i in e} t_i^{r_i}) ||g^{(r(e))}||_{p,D}.
struct KCandidate {
  std::string name;
  double value = 0.0;
};

/// Two-sided bracket for K_r(f, t^r)_{p,Q}.
struct KBracket {
  /// Omega_r(f, t)_{p,Q} and its terms omega_{r(e)}, in SubsetMask::all_nonempty order.
  double omega = 0.0;
  std::vector<double> omega_terms;
  double lower = 0.0;
  double upper = 0.0;
  /// Candidate attaining `upper`.
  std::string witness;
  std::vector<KCandidate> candidates;
  /// Per-subdomain smoother values, ordered like SubsetMask::all(d).
  std::vector<double> subdomain_smoother;
};

/// sum over all e (including the empty set) of prod_{i in e} 2^{r_i}.
double whitney_lower_constant(const MultiIndex& r);

/// Q_e = prod_i I^i_{chi_e(i)} with I_1 = [a, d], I_0 = [c, b],
/// c = a + delta/4, d = b - delta/4.
Box quarter_subdomain(const Box& q, const SubsetMask& e);

/// Breakdown of the smoother candidate g_t = P^r_t(f) on a subdomain.
struct SmootherTerms {
  /// ||f - g_t||_{p,D}.
  double residual = 0.0;
  /// (prod_{i in e} t_i^{r_i}) ||g_t^{(r(e))}||_{p,D} for every non-empty e, in SubsetMask::all_nonempty order.
  std::vector<double> weighted_derivatives;
  double total() const;
};

/// Smoother candidate on the subdomain Q_e of Q (forward on the axes of e,
/// backward elsewhere), with t-bar taken from Q. Requires 0 < t <= t-bar.
SmootherTerms smoother_terms(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p,
                             const Box& q, const SubsetMask& e, const QuadratureSpec& quad);

/// Bracket for K_r(f, t^r)_{p,Q}.
///
/// lower = Omega_r(f,t)_{p,Q} / whitney_lower_constant(r). upper is the least
/// value over the candidates g = 0, g = f (Sobolev f), the per-subdomain
/// smoother sum (t <= t-bar), and, once some t_i exceeds t-bar, polynomial
/// candidates T_r(f) and the L2 projection onto P_r.
KBracket k_functional_bracket(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p,
                              const Box& q, const KFunctionalConfig& cfg = {});

struct SubdivisionReport {
  std::vector<Box> subdomains;
  /// Upper K value on each Q_e.
  std::vector<double> subdomain_upper;
  /// Upper K value on Q from candidates defined on all of Q.
  double upper = 0.0;
  /// upper / sum(subdomain_upper); empty when both vanish.
  std::optional<double> ratio;
};

/// Empirical constant of K(Q) <= C sum_e K(Q_e). Requires t_i <= delta_i / 2.
SubdivisionReport subdivision_check(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p,
                                    const Box& q, const KFunctionalConfig& cfg = {});

}  // namespace whitney

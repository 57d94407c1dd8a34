#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pshmass/cantor_measure.hpp"
#include "pshmass/intersection_masses.hpp"
#include "pshmass/rational.hpp"

namespace pshmass {

/// The two-dimensional example built from the Cantor-measure potential.
struct Cantor2 {
  CantorParams params{3.0};
};

/// Its extension to C^n with the twisting degree gamma >= 2.
struct CantorHighDim {
  int n = 3;
  int gamma = 2;
};

/// Analytic singularities described by an intersection table.
struct Analytic {
  IntersectionData data;
};

class PshFamily {
 public:
  using Kind = std::variant<Cantor2, CantorHighDim, Analytic>;

  static PshFamily cantor2(const CantorParams& params = CantorParams(3.0));
  static PshFamily cantor_highdim(int n, int gamma);
  static PshFamily analytic(const IntersectionData& data);

  const Kind& kind() const { return kind_; }
  int n() const;
  /// "cantor2", "cantor-hd" or "analytic".
  std::string label() const;

 private:
  explicit PshFamily(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// ceil(lambda) - 1, the vanishing order cutting out J(lambda phi) in dimension 2.
Integer multiplier_order(const Rational& lambda);

/// Whether degree-k homogeneous polynomials lie in J(lambda phi) (n = 2).
bool homogeneous_membership(int k, const Rational& lambda);

/// e_2(phi_lambda) = ((ceil(lambda) - 1) / lambda)^2.
Rational multiplier_mass(const Rational& lambda);

/// max(0, m - n + 1). Inferred from the mass formula in higher dimension,
/// not stated as a multiplier-ideal computation.
int inferred_multiplier_order(int m, int n);

/// e_1(phi_m) = (m - n + 1) / m, the Lelong number of the approximant,
/// read off from the inferred ideal order.
Rational approx_lelong(int m, int n);

enum class MassClamp { clamp, raw };

/// ((m - n + 1)/m)^n; with MassClamp::clamp, 0 for m < n.
Rational approx_mass(int m, int n, MassClamp clamp = MassClamp::clamp);

/// Residual mass e_n(phi). For cantor2 this is 1 + mu(C), with the total mass
/// of the Cantor measure taken from its deepest configured approximation.
Rational true_mass(const PshFamily& family);

struct SandwichReport {
  int m = 0;
  int n = 0;
  Rational lower;   // e_1(phi) - n/m
  Rational approx;  // e_1(phi_m)
  Rational upper;   // e_1(phi)
};

/// Checks e_1(phi) - n/m <= e_1(phi_m) <= e_1(phi) exactly for the Cantor
/// family; throws CrossCheckFailure if the chain breaks.
SandwichReport lelong_sandwich_check(int m, int n);

struct ApproxMassSeq {
  int n = 0;
  std::vector<std::pair<int, Rational>> values;
  Rational limit;
};

ApproxMassSeq approx_mass_sequence(int n, int m_max, MassClamp clamp = MassClamp::clamp);

struct ValuativeTwin {
  std::string potential = "log|z|^2";
  Rational mass{1};
  bool same_multiplier_ideals = false;
};

struct MassReport {
  std::string family;
  int n = 0;
  std::optional<int> gamma;
  std::optional<Rational> cantor_total_mass;
  Rational true_mass;
  /// Absent when the approximant masses are not modelled for the family.
  std::optional<ApproxMassSeq> sequence;
  std::optional<Rational> limit;
  std::optional<Rational> gap;
  std::string verdict;
  std::optional<ValuativeTwin> twin;
};

inline constexpr const char* kVerdictRefuted = "conjecture refuted";
inline constexpr const char* kVerdictNone = "no counterexample";
inline constexpr const char* kVerdictUndetermined = "not determined";

/// Compares e_n(phi) with the masses of its multiplier-ideal approximants.
MassReport counterexample_report(const PshFamily& family, int m_max);

}  // namespace pshmass

#include "pshmass/approximation.hpp"

#include <algorithm>
#include <stdexcept>

namespace pshmass {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(const Rational& lambda) {
  if (lambda <= 0) throw std::invalid_argument("lambda must be positive, got " + to_string(lambda));
}

}  // namespace

PshFamily PshFamily::cantor2(const CantorParams& params) { return PshFamily(Cantor2{params}); }

PshFamily PshFamily::cantor_highdim(int n, int gamma) {
  if (n < 2) throw std::invalid_argument("higher-dimensional family needs n >= 2");
  if (gamma < 2) throw std::invalid_argument("gamma must be an integer >= 2");
  return PshFamily(CantorHighDim{n, gamma});
}

PshFamily PshFamily::analytic(const IntersectionData& data) { return PshFamily(Analytic{data}); }

int PshFamily::n() const {
  return std::visit(Overloaded{[](const Cantor2&) { return 2; }, [](const CantorHighDim& f) { return f.n; },
                               [](const Analytic& f) { return f.data.n(); }},
                    kind_);
}

std::string PshFamily::label() const {
  return std::visit(Overloaded{[](const Cantor2&) { return std::string("cantor2"); },
                               [](const CantorHighDim&) { return std::string("cantor-hd"); },
                               [](const Analytic&) { return std::string("analytic"); }},
                    kind_);
}

Integer multiplier_order(const Rational& lambda) {
  require_positive(lambda);
  return ceil(lambda) - 1;
}

bool homogeneous_membership(int k, const Rational& lambda) {
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  return Integer(k) >= multiplier_order(lambda);
}

Rational multiplier_mass(const Rational& lambda) {
  const Rational ratio = Rational(multiplier_order(lambda)) / lambda;
  return ratio * ratio;
}

int inferred_multiplier_order(int m, int n) {
  if (m < 1 || n < 2) throw std::invalid_argument("need m >= 1 and n >= 2");
  return std::max(0, m - n + 1);
}

Rational approx_lelong(int m, int n) { return Rational(inferred_multiplier_order(m, n), m); }

Rational approx_mass(int m, int n, MassClamp clamp) {
  if (m < 1 || n < 2) throw std::invalid_argument("need m >= 1 and n >= 2");
  if (clamp == MassClamp::clamp && m < n) return Rational(0);
  Rational base(m - n + 1, m);
  base.canonicalize();
  return pow(base, n);
}

Rational true_mass(const PshFamily& family) {
  return std::visit(Overloaded{[](const Cantor2& f) {
                                 const CantorApprox approx = build_level(f.params, f.params.k_max());
                                 return Rational(1 + approx.total_mass().to_rational());
                               },
                               [](const CantorHighDim& f) {
                                 return Rational(1 + 1 / pow(Rational(f.gamma), f.n - 1));
                               },
                               [](const Analytic& f) { return residual_mass(f.data); }},
                    family.kind());
}

SandwichReport lelong_sandwich_check(int m, int n) {
  if (n < 2 || m < n) throw std::invalid_argument("sandwich check needs n >= 2 and m >= n");
  SandwichReport report;
  report.m = m;
  report.n = n;
  report.upper = 1;
  report.lower = report.upper - Rational(n, m);
  report.lower.canonicalize();
  report.approx = approx_lelong(m, n);
  report.approx.canonicalize();
  if (!(report.lower <= report.approx && report.approx <= report.upper)) {
    throw CrossCheckFailure("Lelong sandwich fails at m = " + std::to_string(m) + ", n = " + std::to_string(n));
  }
  return report;
}

ApproxMassSeq approx_mass_sequence(int n, int m_max, MassClamp clamp) {
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  ApproxMassSeq seq;
  seq.n = n;
  seq.limit = 1;
  for (int m = 1; m <= m_max; ++m) seq.values.emplace_back(m, approx_mass(m, n, clamp));
  return seq;
}

MassReport counterexample_report(const PshFamily& family, int m_max) {
  const int n = family.n();
  if (m_max < n) throw std::invalid_argument("m_max must be >= n");
  MassReport report;
  report.family = family.label();
  report.n = n;
  report.true_mass = true_mass(family);

  // Approximant masses ((m - n + 1)/m)^n hold when J(m phi) = J(m log|z|^2):
  // the Cantor families and analytic data without defect (phi ~ log|z|^2).
  bool modelled = true;
  if (const auto* c2 = std::get_if<Cantor2>(&family.kind())) {
    report.cantor_total_mass = build_level(c2->params, c2->params.k_max()).total_mass().to_rational();
    ValuativeTwin twin;
    twin.same_multiplier_ideals = true;
    for (int m = 1; m <= m_max; ++m) {
      // Integer lambda: both ideals are m^{m-1}.
      if (multiplier_order(Rational(m)) != m - 1) twin.same_multiplier_ideals = false;
    }
    report.twin = twin;
  } else if (const auto* hd = std::get_if<CantorHighDim>(&family.kind())) {
    report.gamma = hd->gamma;
  } else {
    modelled = is_full_mass(std::get<Analytic>(family.kind()).data);
  }

  if (!modelled) {
    report.verdict = kVerdictUndetermined;
    return report;
  }
  report.sequence = approx_mass_sequence(n, m_max);
  report.limit = report.sequence->limit;
  report.gap = report.true_mass - *report.limit;
  report.verdict = *report.gap > 0 ? kVerdictRefuted : kVerdictNone;
  return report;
}

}  // namespace pshmass

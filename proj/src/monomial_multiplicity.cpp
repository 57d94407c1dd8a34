#include "pshmass/monomial_multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pshmass {

namespace {

// Phase-one simplex for
//   sum_g lambda_g = 1,  sum_g lambda_g g_i + s_i = x_i,  lambda, s >= 0,
// with an artificial variable on the first row. Bland's rule keeps it finite.
class ConvexCombinationLP {
 public:
  ConvexCombinationLP(const std::vector<ExponentVector>& generators, std::span<const Rational> x)
      : m_(generators.size()), n_(x.size()), cols_(m_ + n_ + 1), rows_(n_ + 1) {
    tableau_.assign(rows_, std::vector<Rational>(cols_ + 1));
    basis_.resize(rows_);
    for (std::size_t g = 0; g < m_; ++g) tableau_[0][g] = 1;
    tableau_[0][m_ + n_] = 1;
    tableau_[0][cols_] = 1;
    basis_[0] = m_ + n_;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t g = 0; g < m_; ++g) tableau_[i + 1][g] = generators[g][i];
      tableau_[i + 1][m_ + i] = 1;
      tableau_[i + 1][cols_] = x[i];
      basis_[i + 1] = m_ + i;
    }
    // Reduced costs for minimising the artificial variable.
    cost_.assign(cols_ + 1, Rational(0));
    for (std::size_t g = 0; g < m_; ++g) cost_[g] = -1;
    cost_[cols_] = -1;
  }

  bool feasible() {
    for (;;) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (cost_[j] < 0) {
          entering = j;
          break;
        }
      }
      if (entering == cols_) break;
      std::size_t pivot_row = rows_;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tableau_[r][entering] <= 0) continue;
        Rational ratio = tableau_[r][cols_] / tableau_[r][entering];
        if (pivot_row == rows_ || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[pivot_row])) {
          pivot_row = r;
          best_ratio = ratio;
        }
      }
      if (pivot_row == rows_) break;  // unbounded direction; cannot happen in phase one
      pivot(pivot_row, entering);
    }
    return cost_[cols_] == 0;
  }

  // After an infeasible solve, the slack reduced costs are a nonnegative
  // normal w with w.x < min_g w.g. Returned scaled to integers.
  std::vector<Integer> separating_normal() const {
    Integer scale = 1;
    for (std::size_t i = 0; i < n_; ++i) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), cost_[m_ + i].get_den_mpz_t());
    std::vector<Integer> w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = cost_[m_ + i].get_num() * (scale / cost_[m_ + i].get_den());
    return w;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    auto& row = tableau_[r];
    const Rational inv = 1 / row[c];
    for (auto& value : row) value *= inv;
    for (std::size_t other = 0; other < rows_; ++other) {
      if (other == r || tableau_[other][c] == 0) continue;
      const Rational factor = tableau_[other][c];
      for (std::size_t j = 0; j <= cols_; ++j) tableau_[other][j] -= factor * row[j];
    }
    if (cost_[c] != 0) {
      const Rational factor = cost_[c];
      for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= factor * row[j];
    }
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_;
  std::size_t rows_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

void check_family_args(int n, int p, int q) {
  if (n < 2) throw std::invalid_argument("family ideals need n >= 2");
  if (p < 1) throw std::invalid_argument("family ideals need p >= 1");
  if (p > q) throw std::invalid_argument("family ideals need p <= q");
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Count of grid cells (pitch B/R) whose centres miss the Newton polyhedron.
// Membership of the grid centres ((2 k_i + 1) B / (2 R))_i in the Newton
// polyhedron. Exact shortcuts first: domination of a generator proves
// membership, and any separating inequality found by an earlier solve is
// reused to prove non-membership. Everything else goes to the rational LP.
class GridMembership {
 public:
  GridMembership(const MonomialIdeal& ideal, int resolution)
      : ideal_(ideal), n_(ideal.dimension()), resolution_(resolution), bound_(ideal.max_pure_power()) {
    centres_.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
      centres_[i] = Rational(Integer(2 * i + 1) * bound_, Integer(2 * resolution));
      centres_[i].canonicalize();
    }
  }

  bool contains(const std::vector<int>& index) {
    for (const auto& g : ideal_.generators()) {
      bool above = true;
      for (int i = 0; i < n_ && above; ++i) above = (2 * index[i] + 1) * bound_ >= 2L * resolution_ * g[i];
      if (above) return true;
    }
    for (const auto& cut : cuts_) {
      long lhs = 0;
      for (int i = 0; i < n_; ++i) lhs += cut.normal[i] * (2 * index[i] + 1) * bound_;
      if (lhs < 2L * resolution_ * cut.offset) return false;
    }
    std::vector<Rational> point(n_);
    for (int i = 0; i < n_; ++i) point[i] = centres_[index[i]];
    ConvexCombinationLP lp(ideal_.generators(), point);
    if (lp.feasible()) return true;
    remember(lp.separating_normal());
    return false;
  }

 private:
  struct Cut {
    std::vector<long> normal;
    long offset = 0;  // min over generators of normal . g

    bool operator==(const Cut&) const = default;
  };

  void remember(const std::vector<Integer>& w) {
    // Keeps every product in contains() and below inside 62 bits.
    const long kLimit = (1L << 60) / (4L * resolution_ * bound_ * n_);
    Cut cut;
    for (const auto& wi : w) {
      if (wi < 0 || wi > kLimit) return;
      cut.normal.push_back(wi.get_si());
    }
    bool first = true;
    for (const auto& g : ideal_.generators()) {
      long dot = 0;
      for (int i = 0; i < n_; ++i) dot += cut.normal[i] * static_cast<long>(g[i]);
      cut.offset = first ? dot : std::min(cut.offset, dot);
      first = false;
    }
    if (std::find(cuts_.begin(), cuts_.end(), cut) == cuts_.end()) cuts_.push_back(std::move(cut));
  }

  const MonomialIdeal& ideal_;
  int n_;
  int resolution_;
  long bound_;
  std::vector<Rational> centres_;
  std::vector<Cut> cuts_;
};

std::uint64_t count_outside_cells(const MonomialIdeal& ideal, int resolution) {
  const int n = ideal.dimension();
  GridMembership oracle(ideal, resolution);
  std::uint64_t outside = 0;
  std::vector<int> index(n, 0);
  int previous = resolution;
  for (;;) {
    // The polyhedron is upward closed, so membership along the last axis is a
    // threshold, and the threshold cannot grow when another coordinate grows.
    // Gallop down from the previous column's threshold, then bisect.
    int lo = 0;
    int hi = index[n - 2] == 0 ? resolution : previous;
    for (int step = 1; hi > 0; step *= 2) {
      index[n - 1] = std::max(0, hi - step);
      if (!oracle.contains(index)) {
        lo = index[n - 1] + 1;
        break;
      }
      hi = index[n - 1];
    }
    while (lo < hi) {
      index[n - 1] = (lo + hi) / 2;
      if (oracle.contains(index)) {
        hi = index[n - 1];
      } else {
        lo = index[n - 1] + 1;
      }
    }
    outside += static_cast<std::uint64_t>(lo);
    previous = lo;

    int axis = n - 2;
    while (axis >= 0 && ++index[axis] == resolution) {
      index[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return outside;
}

}  // namespace

unsigned ExponentVector::total_degree() const { return std::accumulate(entries_.begin(), entries_.end(), 0U); }

bool ExponentVector::divides(const ExponentVector& other) const {
  if (other.size() != size()) throw std::invalid_argument("exponent vectors of different dimension");
  for (std::size_t i = 0; i < size(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

void DeskGuard::check(int n, int q) const {
  if (allow_large) return;
  if (n > 4 || q > 8) {
    throw std::invalid_argument("input exceeds desk-scale limits n <= 4, q <= 8 (override with allow_large)");
  }
}

MonomialIdeal::MonomialIdeal(int n, std::vector<ExponentVector> generators) : n_(n) {
  if (n < 1) throw std::invalid_argument("monomial ideal needs n >= 1 variables");
  for (const auto& g : generators) {
    if (g.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("generator dimension does not match n");
  }
  generators_ = minimalize(std::move(generators));
  pure_powers_.assign(n, 0);
  for (int axis = 0; axis < n; ++axis) {
    bool found = false;
    for (const auto& g : generators_) {
      bool pure = true;
      for (int i = 0; i < n; ++i) {
        if (i != axis && g[i] != 0) pure = false;
      }
      if (pure && (!found || g[axis] < pure_powers_[axis])) {
        pure_powers_[axis] = g[axis];
        found = true;
      }
    }
    if (!found) {
      throw std::invalid_argument("monomial ideal is not m-primary: no pure power of z_" + std::to_string(axis + 1));
    }
  }
}

unsigned MonomialIdeal::max_pure_power() const { return *std::max_element(pure_powers_.begin(), pure_powers_.end()); }

std::string to_string(Family family) { return family == Family::hyperplane ? "hyperplane" : "point"; }

Family parse_family(const std::string& name) {
  if (name == "hyperplane") return Family::hyperplane;
  if (name == "point") return Family::point;
  throw std::invalid_argument("unknown family '" + name + "' (expected hyperplane or point)");
}

std::vector<ExponentVector> minimalize(std::vector<ExponentVector> generators) {
  std::sort(generators.begin(), generators.end(),
            [](const ExponentVector& a, const ExponentVector& b) {
              const unsigned da = a.total_degree();
              const unsigned db = b.total_degree();
              return da != db ? da < db : a < b;
            });
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  // A divisor has total degree <= its multiple, so scanning in degree order
  // only needs to look back at already accepted generators.
  std::vector<ExponentVector> minimal;
  for (auto& g : generators) {
    const bool dominated =
        std::any_of(minimal.begin(), minimal.end(), [&](const ExponentVector& h) { return h.divides(g); });
    if (!dominated) minimal.push_back(std::move(g));
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

std::vector<ExponentVector> monomials_of_degree(int n, unsigned d, int support) {
  if (support < 0 || support > n) throw std::invalid_argument("support exceeds dimension");
  std::vector<ExponentVector> out;
  if (support == 0) {
    if (d == 0) out.emplace_back(std::vector<unsigned>(n, 0));
    return out;
  }
  std::vector<unsigned> e(n, 0);
  // Enumerate compositions of d into `support` parts.
  auto rec = [&](auto&& self, int i, unsigned remaining) -> void {
    if (i == support - 1) {
      e[i] = remaining;
      out.emplace_back(e);
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      e[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  rec(rec, 0, d);
  return out;
}

MonomialIdeal power_of_maximal(int n, unsigned d) { return MonomialIdeal(n, monomials_of_degree(n, d, n)); }

namespace {

std::vector<ExponentVector> product(const std::vector<ExponentVector>& lhs, const std::vector<ExponentVector>& rhs) {
  std::vector<ExponentVector> out;
  out.reserve(lhs.size() * rhs.size());
  for (const auto& a : lhs) {
    for (const auto& b : rhs) {
      std::vector<unsigned> e(a.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
      out.emplace_back(std::move(e));
    }
  }
  return out;
}

}  // namespace

MonomialIdeal family_hyperplane(int n, int p, int q, DeskGuard guard) {
  check_family_args(n, p, q);
  guard.check(n, q);
  std::vector<unsigned> z1(n, 0);
  z1[0] = static_cast<unsigned>(p);
  auto gens = product({ExponentVector(z1)}, monomials_of_degree(n, q - p, n));
  auto tail = monomials_of_degree(n, 2 * q, n);
  gens.insert(gens.end(), tail.begin(), tail.end());
  return MonomialIdeal(n, std::move(gens));
}

MonomialIdeal family_point(int n, int p, int q, DeskGuard guard) {
  check_family_args(n, p, q);
  guard.check(n, q);
  auto gens = product(monomials_of_degree(n, p, n - 1), monomials_of_degree(n, q - p, n));
  auto tail = monomials_of_degree(n, 2 * q, n);
  gens.insert(gens.end(), tail.begin(), tail.end());
  return MonomialIdeal(n, std::move(gens));
}

MonomialIdeal family_ideal(Family family, int n, int p, int q, DeskGuard guard) {
  return family == Family::hyperplane ? family_hyperplane(n, p, q, guard) : family_point(n, p, q, guard);
}

bool membership(const MonomialIdeal& ideal, const ExponentVector& v) {
  if (v.size() != static_cast<std::size_t>(ideal.dimension())) throw std::invalid_argument("dimension mismatch");
  return std::any_of(ideal.generators().begin(), ideal.generators().end(),
                     [&](const ExponentVector& g) { return g.divides(v); });
}

std::uint64_t colength(const MonomialIdeal& ideal, DeskGuard guard) {
  const int n = ideal.dimension();
  // Standard monomials lie in the box prod [0, N_i).
  double box = 1.0;
  for (int i = 0; i < n; ++i) box *= ideal.pure_power_degree(i);
  if (!guard.allow_large && box > 1e8) throw std::invalid_argument("colength enumeration box exceeds 1e8 points");
  if (box == 0.0) return 0;

  std::vector<unsigned> e(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    if (!membership(ideal, ExponentVector(e))) ++count;
    int axis = n - 1;
    while (axis >= 0 && ++e[axis] == ideal.pure_power_degree(axis)) {
      e[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return count;
}

Integer multiplicity_closed_form(Family family, int n, int p, int q) {
  check_family_args(n, p, q);
  const Integer P(p);
  const Integer Q(q);
  if (family == Family::point) return pow(P, n - 1) * Q + pow(Q, n);
  const Integer diff = Q - P;
  const Integer twice = 2 * Q;
  Integer sum = 0;
  for (int k = 0; k <= n - 1; ++k) sum += pow(diff, k) * pow(twice, n - 1 - k);
  return pow(diff, n) + P * sum;
}

bool newton_membership(const MonomialIdeal& ideal, std::span<const Rational> x) {
  if (x.size() != static_cast<std::size_t>(ideal.dimension())) throw std::invalid_argument("dimension mismatch");
  for (const auto& xi : x) {
    if (xi < 0) throw std::invalid_argument("Newton membership needs a nonnegative point");
  }
  // Cheap certificate: x dominates a generator.
  for (const auto& g : ideal.generators()) {
    bool above = true;
    for (std::size_t i = 0; i < x.size() && above; ++i) above = x[i] >= g[i];
    if (above) return true;
  }
  ConvexCombinationLP lp(ideal.generators(), x);
  return lp.feasible();
}

double covolume_grid(const MonomialIdeal& ideal, int resolution) {
  if (resolution < 16) throw std::invalid_argument("grid resolution must be >= 16");
  const int n = ideal.dimension();
  const std::uint64_t outside = count_outside_cells(ideal, resolution);
  const double pitch = static_cast<double>(ideal.max_pure_power()) / resolution;
  return static_cast<double>(outside) * std::pow(pitch, n) * static_cast<double>(factorial(n));
}

CovolumeEstimate covolume_with_error(const MonomialIdeal& ideal, int resolution) {
  CovolumeEstimate est;
  est.estimate = covolume_grid(ideal, resolution);
  est.refined = covolume_grid(ideal, 2 * resolution);
  est.error_bar = std::abs(est.refined - est.estimate);
  return est;
}

}  // namespace pshmass

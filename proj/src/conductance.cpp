#include "revmc/conductance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "revmc/dirichlet.hpp"
#include "revmc/errors.hpp"
#include "revmc/spectral.hpp"

namespace revmc {

StateSet::StateSet(StateIndex n) : members_(static_cast<std::size_t>(n), false) {}

StateSet::StateSet(StateIndex n, std::initializer_list<StateIndex> members) : StateSet(n) {
  for (StateIndex i : members) insert(i);
}

StateSet StateSet::from_mask(StateIndex n, std::uint64_t mask) {
  if (n > 64) throw ArgumentError("bitmask sets hold at most 64 states");
  if (n < 64 && (mask >> n) != 0) throw ArgumentError("bitmask selects states beyond n");
  StateSet set(n);
  for (StateIndex i = 0; i < n; ++i) set.members_[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
  return set;
}

void StateSet::insert(StateIndex i) {
  if (i < 0 || i >= universe_size()) {
    throw ArgumentError("state " + std::to_string(i) + " outside a universe of " +
                        std::to_string(universe_size()));
  }
  members_[static_cast<std::size_t>(i)] = true;
}

StateIndex StateSet::count() const {
  return static_cast<StateIndex>(std::count(members_.begin(), members_.end(), true));
}

bool StateSet::proper() const {
  const StateIndex k = count();
  return k > 0 && k < universe_size();
}

StateSet StateSet::complement() const {
  StateSet out(universe_size());
  for (std::size_t i = 0; i < members_.size(); ++i) out.members_[i] = !members_[i];
  return out;
}

std::vector<StateIndex> StateSet::indices() const {
  std::vector<StateIndex> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i]) out.push_back(static_cast<StateIndex>(i));
  }
  return out;
}

std::uint64_t StateSet::mask() const {
  if (members_.size() > 64) throw ArgumentError("bitmask sets hold at most 64 states");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

bool operator<(const StateSet& a, const StateSet& b) {
  if (a.members_.size() != b.members_.size()) return a.members_.size() < b.members_.size();
  for (std::size_t i = a.members_.size(); i-- > 0;) {
    if (a.members_[i] != b.members_[i]) return b.members_[i];
  }
  return false;
}

namespace {

struct Split {
  double flow_out = 0.0;  // mu(A x A^c)
  double flow_in = 0.0;   // mu(A^c x A)
  double mass_in = 0.0;   // pi(A)
  double mass_out = 0.0;  // pi(A^c)
};

Split split_flows(const ReversiblePair& pair, const std::vector<StateIndex>& inside,
                  const std::vector<StateIndex>& outside) {
  const auto& P = pair.matrix();
  const auto& pi = pair.pi();
  Split s;
  for (StateIndex x : inside) {
    s.mass_in += pi[x];
    for (StateIndex y : outside) s.flow_out += pi[x] * P(x, y);
  }
  for (StateIndex x : outside) {
    s.mass_out += pi[x];
    for (StateIndex y : inside) s.flow_in += pi[x] * P(x, y);
  }
  return s;
}

Split split_flows(const ReversiblePair& pair, const StateSet& A) {
  return split_flows(pair, A.indices(), A.complement().indices());
}

constexpr double kHalfSlack = 1e-12;

// Running minimum with ties broken towards the smaller bitmask. The set is
// only materialized when it can become the new minimum.
struct Best {
  double value = std::numeric_limits<double>::infinity();
  StateSet set;

  template <class MakeSet>
  void offer(double candidate, MakeSet&& make_set) {
    if (candidate < value) {
      value = candidate;
      set = make_set();
    } else if (candidate == value) {
      StateSet other = make_set();
      if (other < set) set = std::move(other);
    }
  }
};

struct Sweep {
  StateIndex n = 0;
  Best kappa;
  Best kappa_star;
  std::uint64_t examined = 0;
  std::vector<StateIndex> inside;
  std::vector<StateIndex> outside;

  // `inside` must contain state 0; the complement is covered at the same time.
  void visit(const ReversiblePair& pair) {
    const Split s = split_flows(pair, inside, outside);
    const auto as_set = [this](const std::vector<StateIndex>& members) {
      return [this, &members] {
        StateSet A(n);
        for (StateIndex i : members) A.insert(i);
        return A;
      };
    };
    kappa_star.offer(s.flow_out / (s.mass_in * s.mass_out), as_set(inside));
    if (s.mass_in <= 0.5 + kHalfSlack) kappa.offer(s.flow_out / s.mass_in, as_set(inside));
    if (s.mass_out <= 0.5 + kHalfSlack) kappa.offer(s.flow_in / s.mass_out, as_set(outside));
    examined += 2;
  }

  void visit(const ReversiblePair& pair, const StateSet& A) {
    inside = A.indices();
    outside = A.complement().indices();
    visit(pair);
  }

  void visit_mask(const ReversiblePair& pair, std::uint64_t mask) {
    inside.clear();
    outside.clear();
    for (StateIndex i = 0; i < n; ++i) ((mask >> i) & 1U ? inside : outside).push_back(i);
    visit(pair);
  }

  ConductanceReport report(ConductanceMode mode) const {
    ConductanceReport r;
    r.kappa = kappa.value;
    r.kappa_star = kappa_star.value;
    r.argmin_kappa = kappa.set;
    r.argmin_kappa_star = kappa_star.set;
    r.mode = mode;
    r.sets_examined = examined;
    return r;
  }
};

void require_positive_pi(const ReversiblePair& pair) {
  if (!pair.pi().strictly_positive()) {
    throw ArgumentError("conductance sweep needs pi > 0 on every state");
  }
}

}  // namespace

SetConductance set_conductance(const ReversiblePair& pair, const StateSet& A) {
  if (A.universe_size() != pair.size()) {
    throw ArgumentError("state set universe does not match the kernel");
  }
  if (!A.proper()) throw ArgumentError("conductance needs a nonempty proper subset");
  const Split s = split_flows(pair, A);
  if (s.mass_in <= 0.0 || s.mass_out <= 0.0) {
    throw ArgumentError("conductance needs pi(A) and pi(A^c) positive");
  }
  return {s.flow_out / s.mass_in, s.flow_out / (s.mass_in * s.mass_out)};
}

ConductanceReport kernel_conductance(const ReversiblePair& pair, ConductanceMode mode,
                                     int samples, RngSeed seed) {
  require_positive_pi(pair);
  const StateIndex n = pair.size();
  Sweep sweep;
  sweep.n = n;

  if (mode == ConductanceMode::exact) {
    if (n > kMaxExactConductanceStates) {
      throw SizeError("exact conductance enumerates 2^(n-1) splits and is limited to n <= " +
                      std::to_string(kMaxExactConductanceStates) + " (n = " +
                      std::to_string(n) + "); use sampled mode");
    }
    const std::uint64_t splits = std::uint64_t{1} << (n - 1);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t r = 0; r < splits; ++r) {
      const std::uint64_t m = (r << 1) | 1U;
      if (m == full) continue;
      sweep.visit_mask(pair, m);
    }
    return sweep.report(mode);
  }

  if (samples < 1) throw ArgumentError("sampled conductance needs at least one sample");
  auto rng = make_stream(seed);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < samples; ++k) {
    StateSet A(n);
    do {
      A = StateSet(n);
      for (StateIndex i = 0; i < n; ++i) {
        if (coin(rng)) A.insert(i);
      }
    } while (!A.proper());
    sweep.visit(pair, A.contains(0) ? A : A.complement());
  }
  return sweep.report(mode);
}

Observable indicator_function(const ProbabilityVector& pi, const StateSet& A) {
  if (A.universe_size() != pi.size()) {
    throw ArgumentError("state set universe does not match pi");
  }
  double mass = 0.0;
  for (StateIndex i : A.indices()) mass += pi[i];
  const double scale = std::sqrt(mass * (1.0 - mass));
  if (!(scale > 0.0)) throw ArgumentError("indicator function needs 0 < pi(A) < 1");
  Observable f(pi.size());
  for (StateIndex i = 0; i < pi.size(); ++i) f[i] = ((A.contains(i) ? 1.0 : 0.0) - mass) / scale;
  return f;
}

bool IndicatorCheck::holds(double tol) const { return std::abs(dirichlet - kappa_star) <= tol; }

IndicatorCheck indicator_dirichlet_check(const ReversiblePair& pair, const StateSet& A) {
  const SetConductance sc = set_conductance(pair, A);
  return {dirichlet_form(pair, indicator_function(pair.pi(), A)), sc.kappa_star};
}

CheegerVerdict cheeger_check(const ReversiblePair& pair) {
  const ConductanceReport cond = kernel_conductance(pair, ConductanceMode::exact);
  CheegerVerdict v;
  v.rho_right = gaps(decompose(pair)).rho_right;
  v.kappa = cond.kappa;
  v.kappa_star = cond.kappa_star;
  v.gap_below_kappa_star = v.kappa_star - v.rho_right;
  v.kappa_star_below_two_kappa = 2.0 * v.kappa - v.kappa_star;
  v.gap_above_half_kappa_star_sq = v.rho_right - 0.5 * v.kappa_star * v.kappa_star;
  v.gap_above_half_kappa_sq = v.rho_right - 0.5 * v.kappa * v.kappa;
  constexpr double slack = -1e-8;
  v.pass = v.kappa <= v.kappa_star + 1e-8 && v.gap_below_kappa_star >= slack &&
           v.kappa_star_below_two_kappa >= slack && v.gap_above_half_kappa_star_sq >= slack &&
           v.gap_above_half_kappa_sq >= slack;
  return v;
}

LawlerSokalDiagnostic lawler_sokal_diagnostic(const ReversiblePair& pair, const Observable& f,
                                              double c) {
  return lawler_sokal_diagnostic(pair, f, c,
                                 kernel_conductance(pair, ConductanceMode::exact).kappa_star);
}

LawlerSokalDiagnostic lawler_sokal_diagnostic(const ReversiblePair& pair, const Observable& f,
                                              double c, double kappa_star) {
  const auto& pi = pair.pi();
  const auto& P = pair.matrix();
  if (std::abs(mean(pi, f)) > 1e-8 || std::abs(norm(pi, f) - 1.0) > 1e-8) {
    throw ArgumentError("Lawler-Sokal diagnostic needs f mean-zero with unit norm");
  }
  const Eigen::ArrayXd g_sq = (f.array() + c).square();
  const Eigen::Index n = pair.size();

  double edge = 0.0;
  double product = 0.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      const double jump = std::abs(g_sq[x] - g_sq[y]);
      edge += pi[x] * P(x, y) * jump;
      product += pi[x] * pi[y] * jump;
    }
  }
  const double second_moment = (pi.weights().array() * g_sq).sum();

  LawlerSokalDiagnostic d;
  d.dirichlet = dirichlet_form(pair, f);
  d.standard_bound = edge * edge / (8.0 * second_moment);
  d.beautiful_lhs = edge;
  d.beautiful_rhs = product;
  d.kappa_star = kappa_star;
  d.standard_holds = d.dirichlet >= d.standard_bound - 1e-8;
  d.beautiful_holds = d.beautiful_lhs >= kappa_star * d.beautiful_rhs - 1e-8;
  return d;
}

MomentInequality moment_inequality_check(const ProbabilityVector& pi, const Observable& f) {
  const Observable f0 = center(pi, f);
  const double var = inner(pi, f0, f0);
  const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
  if (!(var > 1e-24 * scale * scale)) {
    throw ArgumentError("moment inequality needs an observable with positive variance");
  }
  const Observable s = f0 / std::sqrt(var);

  MomentInequality m;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    for (Eigen::Index j = 0; j < s.size(); ++j) {
      const double w = pi[i] * pi[j];
      m.abs_square_gap += w * std::abs(s[i] * s[i] - s[j] * s[j]);
      m.abs_gap += w * std::abs(s[i] - s[j]);
    }
  }
  m.lhs = m.abs_square_gap + 4.0 * m.abs_gap * m.abs_gap;
  m.holds = m.lhs >= 2.0 - 1e-10;
  return m;
}

}  // namespace revmc

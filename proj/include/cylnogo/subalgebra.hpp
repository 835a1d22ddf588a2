#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cylnogo/classical.hpp"

namespace cylnogo {

// Finite observation window: monomials e^r_m with 0 <= r <= maxdeg and
// |m| <= maxharm.
struct Cutoff {
  int maxdeg = 0;
  int maxharm = 0;

  bool contains(int r, int m) const {
    return r >= 0 && r <= maxdeg && m >= -maxharm && m <= maxharm;
  }
  bool contains(const ClassicalElement& f) const {
    for (const auto& [k, v] : f.terms())
      if (!contains(k.r, k.m)) return false;
    return true;
  }
  int size() const { return (maxdeg + 1) * (2 * maxharm + 1); }
};

enum class ClosureMode { bracket_only, bracket_and_product };

// Reduced echelon basis for a constant-coefficient subspace of the monomial
// box. The pivot of each vector is its first monomial in (r, m) order, scaled
// to 1 and eliminated from every other vector.
class FilteredBasis {
 public:
  explicit FilteredBasis(Cutoff box) : box_(box) {}

  const Cutoff& box() const { return box_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  // Sorted by pivot monomial.
  const std::vector<ClassicalElement>& vectors() const { return rows_; }
  std::vector<CMono> pivots() const {
    std::vector<CMono> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.terms().begin()->first);
    return out;
  }

  // Remainder of v after subtracting the unique pivot-matching combination.
  ClassicalElement reduce(const ClassicalElement& v) const {
    ClassicalElement rem = check_constant(v);
    for (const auto& row : rows_) {
      const CMono p = row.terms().begin()->first;
      const Scalar c = rem.coeff(p.r, p.m);
      if (!c.is_zero()) rem -= c * row;
    }
    return rem;
  }

  // Adds v to the span. Returns false when v was already in the span.
  bool insert(const ClassicalElement& v) {
    if (!box_.contains(v))
      throw std::invalid_argument("vector leaves the monomial box: " + v.str());
    ClassicalElement rem = reduce(v);
    if (rem.is_zero()) return false;
    const auto& lead = *rem.terms().begin();
    rem = Scalar(lead.second.constant_value().inverse()) * rem;
    const CMono pivot = lead.first;
    for (auto& row : rows_) {
      const Scalar c = row.coeff(pivot.r, pivot.m);
      if (!c.is_zero()) row -= c * rem;
    }
    rows_.push_back(rem);
    std::sort(rows_.begin(), rows_.end(), [](const ClassicalElement& a,
                                             const ClassicalElement& b) {
      return a.terms().begin()->first < b.terms().begin()->first;
    });
    return true;
  }

  struct MemberResult {
    enum class Status { certified_in, not_found_at_cutoff };
    Status status = Status::not_found_at_cutoff;
    // Index into vectors() -> coefficient, valid when certified.
    std::map<int, GRat> combination;

    bool certified() const { return status == Status::certified_in; }
  };

  MemberResult member(const ClassicalElement& f) const {
    MemberResult res;
    if (!box_.contains(f)) return res;
    ClassicalElement rem = check_constant(f);
    for (int idx = 0; idx < dim(); ++idx) {
      const CMono p = rows_[idx].terms().begin()->first;
      const Scalar c = rem.coeff(p.r, p.m);
      if (c.is_zero()) continue;
      rem -= c * rows_[idx];
      res.combination[idx] = c.constant_value();
    }
    if (!rem.is_zero()) {
      res.combination.clear();
      return res;
    }
    res.status = MemberResult::Status::certified_in;
    return res;
  }

 private:
  static const ClassicalElement& check_constant(const ClassicalElement& v) {
    for (const auto& [k, c] : v.terms())
      if (!c.is_constant())
        throw std::domain_error("basis arithmetic needs constant coefficients: " +
                                v.str());
    return v;
  }

  Cutoff box_;
  std::vector<ClassicalElement> rows_;
};

// Smallest subspace of the box containing the generators and closed under the
// selected operations, with the convention that any bracket or product whose
// result has a term outside the box is discarded whole (never truncated).
// Generators outside the box are discarded the same way.
inline FilteredBasis closure(const std::vector<ClassicalElement>& gens, Cutoff box,
                             ClosureMode mode = ClosureMode::bracket_only) {
  FilteredBasis basis(box);
  std::vector<ClassicalElement> reps;  // snapshots, in insertion order
  std::deque<std::pair<int, int>> pending;

  auto offer = [&](const ClassicalElement& v) {
    if (v.is_zero() || !box.contains(v)) return;
    ClassicalElement rem = basis.reduce(v);
    if (rem.is_zero()) return;
    basis.insert(rem);
    const int idx = static_cast<int>(reps.size());
    reps.push_back(rem);
    for (int j = 0; j <= idx; ++j) pending.emplace_back(j, idx);
  };

  for (const auto& g : gens) offer(g);
  while (!pending.empty()) {
    const auto [a, b] = pending.front();
    pending.pop_front();
    if (a != b) offer(poisson_bracket(reps[a], reps[b]));
    if (mode == ClosureMode::bracket_and_product) offer(reps[a] * reps[b]);
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Generator presets.
// ---------------------------------------------------------------------------

// 1, e^{i theta}, e^{-i theta}, l.
inline std::vector<ClassicalElement> preset_B() {
  return {ClassicalElement::one(), ClassicalElement::harmonic(1),
          ClassicalElement::harmonic(-1), ClassicalElement::ell()};
}

// The basic set together with g_a = e^2_a + 2 alpha e^1_a for odd |a| <= maxharm.
inline std::vector<ClassicalElement> preset_walpha(const GRat& alpha, int maxharm) {
  std::vector<ClassicalElement> gens = preset_B();
  const Scalar two_alpha = Scalar(2) * Scalar(alpha);
  for (int a = -maxharm; a <= maxharm; ++a) {
    if (a % 2 == 0) continue;
    gens.push_back(ClassicalElement::monomial(2, a) +
                   two_alpha * ClassicalElement::monomial(1, a));
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Structure probes.
// ---------------------------------------------------------------------------

// Breadth-first reachability between harmonics at fixed l-degree r, where the
// step m -> m+k exists iff the engine's ladder action on e^r_m is nonzero.
struct ProbeReport {
  int r = 0;
  int seed_m = 0;
  int cutoff_m = 0;
  bool degenerate_seed = false;  // no ladder step leaves the seed
  std::vector<int> reached;      // sorted
  bool all_reached = false;      // every |m| <= cutoff_m reached
};

inline ProbeReport irreducibility_probe(int r, int seed_m, int cutoff_m) {
  ProbeReport rep;
  rep.r = r;
  rep.seed_m = seed_m;
  rep.cutoff_m = cutoff_m;
  if (seed_m < -cutoff_m || seed_m > cutoff_m)
    throw std::invalid_argument("probe seed outside the harmonic window");
  std::set<int> seen = {seed_m};
  std::deque<int> queue = {seed_m};
  while (!queue.empty()) {
    const int m = queue.front();
    queue.pop_front();
    for (int k = -cutoff_m; k <= cutoff_m; ++k) {
      if (k == 0) continue;
      const int tgt = m + k;
      if (tgt < -cutoff_m || tgt > cutoff_m || seen.count(tgt)) continue;
      if (ClassicalElement::monomial(r, m).ladder(k).is_zero()) continue;
      seen.insert(tgt);
      queue.push_back(tgt);
    }
  }
  rep.reached.assign(seen.begin(), seen.end());
  rep.degenerate_seed = seen.size() == 1 && cutoff_m > 0;
  rep.all_reached =
      static_cast<int>(seen.size()) == 2 * cutoff_m + 1;
  return rep;
}

// For every opposite-parity slot (r, N) in the box (r + N odd), ask for a
// combination of basis vectors whose l-degree-r layer is exactly e^r_N, whose
// layer r-1 is exactly r*alpha*e^{r-1}_N when r >= 2, and which vanishes in
// all layers above r. Lower layers are unconstrained.
struct LeadingScanEntry {
  int r = 0;
  int m = 0;
  bool found = false;
};

struct LeadingScanReport {
  std::vector<LeadingScanEntry> entries;
  int found_count = 0;
  bool all_found = false;
};

inline LeadingScanReport leading_term_scan(const FilteredBasis& basis,
                                           const GRat& alpha) {
  const Cutoff box = basis.box();
  const auto& vecs = basis.vectors();
  LeadingScanReport rep;

  for (int r = 0; r <= box.maxdeg; ++r)
    for (int N = -box.maxharm; N <= box.maxharm; ++N) {
      if (((r + N) % 2 + 2) % 2 != 1) continue;
      // Constrained monomial rows: all layers >= r, plus layer r-1 if r >= 2.
      const int low = r >= 2 ? r - 1 : r;
      std::vector<CMono> rows;
      for (int rr = low; rr <= box.maxdeg; ++rr)
        for (int mm = -box.maxharm; mm <= box.maxharm; ++mm)
          rows.push_back({rr, mm});
      const std::size_t R = rows.size(), C = vecs.size();
      std::vector<std::vector<GRat>> A(R, std::vector<GRat>(C, GRat(0)));
      std::vector<GRat> rhs(R, GRat(0));
      for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < C; ++j)
          A[i][j] = vecs[j].coeff(rows[i].r, rows[i].m).constant_value();
        if (rows[i].r == r && rows[i].m == N) rhs[i] = GRat(1);
        if (r >= 2 && rows[i].r == r - 1 && rows[i].m == N)
          rhs[i] = GRat(r) * alpha;
      }
      // Gaussian elimination; the slot is found iff the system is consistent.
      std::size_t prow = 0;
      for (std::size_t col = 0; col < C && prow < R; ++col) {
        std::size_t sel = R;
        for (std::size_t i = prow; i < R; ++i)
          if (!A[i][col].is_zero()) {
            sel = i;
            break;
          }
        if (sel == R) continue;
        std::swap(A[prow], A[sel]);
        std::swap(rhs[prow], rhs[sel]);
        const GRat inv = A[prow][col].inverse();
        for (std::size_t j = col; j < C; ++j) A[prow][j] = A[prow][j] * inv;
        rhs[prow] = rhs[prow] * inv;
        for (std::size_t i = 0; i < R; ++i) {
          if (i == prow || A[i][col].is_zero()) continue;
          const GRat f = A[i][col];
          for (std::size_t j = col; j < C; ++j) A[i][j] = A[i][j] - f * A[prow][j];
          rhs[i] = rhs[i] - f * rhs[prow];
        }
        ++prow;
      }
      bool ok = true;
      for (std::size_t i = prow; i < R; ++i)
        if (!rhs[i].is_zero()) ok = false;
      rep.entries.push_back({r, N, ok});
      if (ok) ++rep.found_count;
    }
  rep.all_found = rep.found_count == static_cast<int>(rep.entries.size());
  return rep;
}

}  // namespace cylnogo

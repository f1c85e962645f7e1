#include "hermoa/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hermoa {

bool next_tuple(std::vector<Fe>& t, std::uint64_t radix) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < radix) return true;
    t[i] = 0;
  }
  return false;
}

bool VarietyCensus::meets_allowed(unsigned q) const {
  const std::uint64_t qq = std::uint64_t(q) * q;
  for (const auto& [size, count] : line_meet_histogram) {
    (void)count;
    if (size != 1 && size != q + 1 && size != qq + 1) return false;
  }
  return true;
}

HermitianGeometry::HermitianGeometry(const Field& field, unsigned n)
    : field_(&field), n_(n) {
  if (n < 2) throw std::invalid_argument("dimension n must be at least 2");
  q_ = field.q();  // also rejects odd extension degree
  traces_ = field.trace_data();
  subfield_ = field.subfield_q();

  // First multiplicative generator in enumeration order.
  eps_ = 0;
  for (Fe x = 2; x < field.size(); ++x) {
    Fe y = x;
    std::uint64_t order = 1;
    while (y != 1) {
      y = field.mul(y, x);
      ++order;
    }
    if (order == field.size() - 1) {
      eps_ = x;
      break;
    }
  }
  if (eps_ == 0) throw std::logic_error("no multiplicative generator found");

  split_.assign(field.size(), {0, 0});
  std::vector<bool> seen(field.size(), false);
  for (Fe a1 : subfield_) {
    for (Fe a2 : subfield_) {
      Fe a = field.add(a1, field.mul(eps_, a2));
      if (seen[a]) throw std::logic_error("basis split is not unique");
      seen[a] = true;
      split_[a] = {a1, a2};
    }
  }
}

unsigned HermitianGeometry::symbol_of(Fe x) const {
  auto it = std::lower_bound(subfield_.begin(), subfield_.end(), x);
  if (it == subfield_.end() || *it != x)
    throw std::domain_error("element does not lie in the subfield GF(q)");
  return static_cast<unsigned>(it - subfield_.begin());
}

Fe HermitianGeometry::eval_canonical(std::span<const Fe> x) const {
  if (x.size() != n_) throw std::invalid_argument("point dimension mismatch");
  const Field& F = *field_;
  Fe acc = 0;
  for (unsigned t = 0; t + 1 < n_; ++t) acc = F.add(acc, F.rel_norm(x[t]));
  return F.add(acc, F.rel_trace(x[n_ - 1]));
}

Fe HermitianGeometry::eval_translated(const TranslatedForm& f, std::span<const Fe> x) const {
  if (f.a.size() != n_ - 1) throw std::invalid_argument("form dimension mismatch");
  const Field& F = *field_;
  Fe dot = 0;
  for (unsigned t = 0; t + 1 < n_; ++t) dot = F.add(dot, F.mul(x[t], f.a[t]));
  return F.add(F.add(eval_canonical(x), F.rel_trace(dot)), f.c);
}

TranslatedForm HermitianGeometry::reduce(const GroupElement& g) const {
  if (g.i.size() != n_ || g.j.size() != n_ - 1)
    throw std::invalid_argument("group element dimension mismatch");
  const Field& F = *field_;
  TranslatedForm f;
  f.a.resize(n_ - 1);
  Fe c = 0;
  for (unsigned t = 0; t + 1 < n_; ++t) {
    f.a[t] = F.add(F.frobenius_q(g.i[t]), g.j[t]);
    c = F.add(c, F.rel_norm(g.i[t]));
  }
  f.c = F.add(c, F.rel_trace(g.i[n_ - 1]));
  if (!F.in_subfield_q(f.c)) throw std::logic_error("reduced constant not in GF(q)");
  return f;
}

Fe HermitianGeometry::solve_special_coordinate(std::span<const Fe> prefix) const {
  if (prefix.size() != n_ - 1) throw std::invalid_argument("prefix dimension mismatch");
  const Field& F = *field_;
  Fe target = 0;
  for (Fe it : prefix) target = F.add(target, F.rel_norm(it));
  target = F.neg(target);
  Fe found = 0;
  unsigned hits = 0;
  for (Fe c : traces_.coset_reps) {
    if (F.rel_trace(c) == target) {
      found = c;
      ++hits;
    }
  }
  if (hits != 1) throw std::logic_error("trace transversal lost uniqueness");
  return found;
}

std::vector<TranslatedForm> HermitianGeometry::enumerate_representatives() const {
  const Field& F = *field_;
  std::vector<TranslatedForm> forms;
  std::vector<Fe> prefix(n_ - 1, 0);
  do {
    GroupElement g;
    g.i = prefix;
    g.i.push_back(solve_special_coordinate(prefix));
    g.j.assign(n_ - 1, 0);
    forms.push_back(reduce(g));
    if (forms.back().c != 0) throw std::logic_error("representative form must have c = 0");
  } while (next_tuple(prefix, F.size()));
  return forms;
}

Fe HermitianGeometry::cone_value(std::span<const Fe> omega, std::span<const Fe> x) const {
  if (omega.size() != n_ - 1) throw std::invalid_argument("omega dimension mismatch");
  if (x.size() != n_ - 1 && x.size() != n_)
    throw std::invalid_argument("point dimension mismatch");
  if (std::all_of(omega.begin(), omega.end(), [](Fe w) { return w == 0; }))
    throw std::invalid_argument("omega must not be the zero vector");
  const Field& F = *field_;
  Fe acc = 0;
  for (unsigned t = 0; t + 1 < n_; ++t) {
    Fe conj = F.mul(F.frobenius_q(omega[t]), F.frobenius_q(x[t]));
    acc = F.add(acc, F.sub(conj, F.mul(omega[t], x[t])));
  }
  if (F.rel_trace(acc) != 0) throw std::logic_error("cone value escaped T0");
  return acc;
}

std::vector<Fe> HermitianGeometry::normalize_omega(std::span<const Fe> omega) const {
  const Field& F = *field_;
  std::vector<Fe> best;
  for (Fe lambda : subfield_) {
    if (lambda == 0) continue;
    std::vector<Fe> cand(omega.size());
    for (std::size_t t = 0; t < omega.size(); ++t) cand[t] = F.mul(lambda, omega[t]);
    if (best.empty() || cand < best) best = std::move(cand);
  }
  return best;
}

std::vector<ConeSpec> HermitianGeometry::enumerate_cones() const {
  std::set<std::vector<Fe>> classes;
  std::vector<Fe> omega(n_ - 1, 0);
  do {
    if (std::all_of(omega.begin(), omega.end(), [](Fe w) { return w == 0; })) continue;
    classes.insert(normalize_omega(omega));
  } while (next_tuple(omega, field_->size()));

  std::vector<ConeSpec> cones;
  for (const auto& w : classes)
    for (Fe v : traces_.t0) cones.push_back(ConeSpec{w, v});
  return cones;
}

std::vector<Fe> HermitianGeometry::theta(std::span<const Fe> x) const {
  if (x.size() != n_ - 1) throw std::invalid_argument("theta expects n-1 coordinates");
  std::vector<Fe> y;
  y.reserve(2 * (n_ - 1));
  for (Fe a : x) {
    y.push_back(split_[a].first);
    y.push_back(split_[a].second);
  }
  return y;
}

std::vector<Fe> HermitianGeometry::theta_inv(std::span<const Fe> y) const {
  if (y.size() != 2 * (n_ - 1)) throw std::invalid_argument("theta_inv dimension mismatch");
  const Field& F = *field_;
  std::vector<Fe> x(n_ - 1);
  for (unsigned t = 0; t + 1 < n_; ++t)
    x[t] = F.add(y[2 * t], F.mul(eps_, y[2 * t + 1]));
  return x;
}

VarietyCensus HermitianGeometry::variety_census(std::uint64_t line_sample_cap) const {
  const Field& F = *field_;
  const std::uint64_t qq = F.size();

  // Canonical projective representatives: last nonzero coordinate is 1.
  std::vector<std::vector<Fe>> points;
  for (unsigned pos = 0; pos <= n_; ++pos) {
    std::vector<Fe> head(pos, 0);
    do {
      std::vector<Fe> pt(n_ + 1, 0);
      std::copy(head.begin(), head.end(), pt.begin());
      pt[pos] = 1;
      points.push_back(std::move(pt));
    } while (next_tuple(head, qq));
  }

  auto on_variety = [&](const std::vector<Fe>& pt) {
    Fe acc = 0;
    for (unsigned t = 0; t + 1 < n_; ++t) acc = F.add(acc, F.rel_norm(pt[t]));
    acc = F.add(acc, F.rel_trace(F.mul(pt[n_ - 1], F.frobenius_q(pt[n_]))));
    return acc == 0;
  };

  std::map<std::vector<Fe>, std::uint32_t> index_of;
  for (std::uint32_t i = 0; i < points.size(); ++i) index_of[points[i]] = i;

  VarietyCensus census;
  std::vector<bool> member(points.size(), false);
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    if (!on_variety(points[i])) continue;
    member[i] = true;
    ++census.total_points;
    if (points[i][n_] == 1) ++census.affine_points;
  }

  auto canonicalize = [&](std::vector<Fe> pt) {
    unsigned last = 0;
    for (unsigned t = 0; t <= n_; ++t)
      if (pt[t] != 0) last = t;
    Fe scale = F.inv(pt[last]);
    for (unsigned t = 0; t <= n_; ++t) pt[t] = F.mul(pt[t], scale);
    return pt;
  };

  // The line through points with ids a, b, as a sorted id list.
  auto line_members = [&](std::uint32_t a, std::uint32_t b) {
    std::vector<std::uint32_t> ids;
    ids.push_back(b);
    for (Fe lambda = 0; lambda < qq; ++lambda) {
      std::vector<Fe> pt(n_ + 1);
      for (unsigned t = 0; t <= n_; ++t)
        pt[t] = F.add(points[a][t], F.mul(lambda, points[b][t]));
      ids.push_back(index_of.at(canonicalize(std::move(pt))));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  };

  // All lines when the space is small, otherwise lines through a
  // prefix sample of base points.
  census.exhaustive_lines = points.size() <= 2048;
  std::uint64_t base_count =
      census.exhaustive_lines ? points.size()
                              : std::min<std::uint64_t>(line_sample_cap, points.size());
  std::vector<std::uint32_t> bases(base_count);
  for (std::uint32_t i = 0; i < base_count; ++i) bases[i] = i;

  std::set<std::vector<std::uint32_t>> seen_lines;
  for (std::uint32_t a : bases) {
    for (std::uint32_t b = 0; b < points.size(); ++b) {
      if (b == a) continue;
      auto line = line_members(a, b);
      if (!seen_lines.insert(line).second) continue;
      std::uint64_t meet = 0;
      for (std::uint32_t id : line) meet += member[id] ? 1 : 0;
      ++census.line_meet_histogram[meet];
    }
  }
  return census;
}

}  // namespace hermoa

#include "hermoa/design.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hermoa {

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : w_) c += std::popcount(w);
  return c;
}

std::size_t Bitset::intersection_count(const Bitset& a, const Bitset& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.w_.size(); ++i) c += std::popcount(a.w_[i] & b.w_[i]);
  return c;
}

bool Bitset::intersects(const Bitset& other) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & other.w_[i]) return true;
  return false;
}

void Bitset::or_with(const Bitset& other) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= other.w_[i];
}

bool Bitset::all() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (!test(i)) return false;
  return true;
}

DesignPoint canonical_point(const HermitianGeometry& geo, std::span<const Fe> x) {
  if (x.size() != geo.n()) throw std::invalid_argument("point dimension mismatch");
  const Field& F = geo.field();
  DesignPoint p;
  p.prefix.assign(x.begin(), x.end() - 1);
  for (Fe c : geo.traces().coset_reps) {
    if (F.rel_trace(F.sub(x.back(), c)) == 0) {
      p.last = c;
      return p;
    }
  }
  throw std::logic_error("transversal does not cover the coset");
}

std::uint32_t point_index(const HermitianGeometry& geo, const DesignPoint& p) {
  const std::uint64_t qq = geo.field().size();
  std::uint64_t rank = 0;
  for (Fe x : p.prefix) rank = rank * qq + x;
  const auto& reps = geo.traces().coset_reps;
  auto it = std::find(reps.begin(), reps.end(), p.last);
  if (it == reps.end()) throw std::invalid_argument("point is not canonical");
  return static_cast<std::uint32_t>(rank * reps.size() + (it - reps.begin()));
}

std::vector<DesignPoint> build_points(const HermitianGeometry& geo) {
  std::vector<DesignPoint> points;
  std::vector<Fe> prefix(geo.n() - 1, 0);
  do {
    for (Fe c : geo.traces().coset_reps) points.push_back(DesignPoint{prefix, c});
  } while (next_tuple(prefix, geo.field().size()));
  return points;
}

IncidenceStructure build_design(const HermitianGeometry& geo, std::uint64_t cap) {
  IncidenceStructure s;
  s.q = geo.q();
  s.n = geo.n();
  s.points = build_points(geo);

  // Coordinates of each point representative, prefix + last.
  std::vector<std::vector<Fe>> coords;
  coords.reserve(s.points.size());
  for (const auto& p : s.points) {
    std::vector<Fe> x = p.prefix;
    x.push_back(p.last);
    coords.push_back(std::move(x));
  }

  auto add_block = [&](Block blk, auto&& membership) {
    Bitset bits(s.points.size());
    for (std::uint32_t i = 0; i < coords.size(); ++i) {
      if (membership(coords[i])) {
        blk.members.push_back(i);
        bits.set(i);
      }
    }
    s.blocks.push_back(std::move(blk));
    s.incidence.push_back(std::move(bits));
  };

  // Hermitian-kind blocks, one per reduced pair (a, c).
  std::vector<Fe> a(geo.n() - 1, 0);
  do {
    for (Fe c : geo.subfield()) {
      TranslatedForm f{a, c};
      add_block(Block{BlockKind::hermitian, a, c, {}},
                [&](const std::vector<Fe>& x) { return geo.eval_translated(f, x) == 0; });
    }
  } while (next_tuple(a, geo.field().size()));

  // Cone-kind blocks, one per normalized (omega, v).
  for (const ConeSpec& cone : geo.enumerate_cones()) {
    add_block(Block{BlockKind::cone, cone.omega, cone.v, {}},
              [&](const std::vector<Fe>& x) {
                return geo.cone_value(cone.omega, x) == cone.v;
              });
  }

  if (s.v() * s.b() > cap) throw std::length_error("design exceeds the cell cap");
  return s;
}

namespace {

void note(std::vector<std::string>& out, std::string msg) {
  if (out.size() < 32) out.push_back(std::move(msg));
}

TwoDesignReport finish_2design(const IncidenceStructure& s,
                               const std::vector<std::uint64_t>& pair_counts,
                               TwoDesignReport report) {
  const std::uint64_t v = s.v();
  report.v = v;
  report.b = s.b();
  report.ok = true;

  report.block_size = s.blocks.empty() ? 0 : s.blocks[0].members.size();
  for (std::size_t i = 0; i < s.blocks.size(); ++i)
    if (s.blocks[i].members.size() != report.block_size) {
      report.ok = false;
      note(report.violations, "block " + std::to_string(i) + " has deviant size");
    }

  std::vector<std::uint64_t> repl(v, 0);
  for (const auto& bits : s.incidence)
    for (std::uint64_t p = 0; p < v; ++p)
      if (bits.test(p)) ++repl[p];
  report.replication = v ? repl[0] : 0;
  for (std::uint64_t p = 0; p < v; ++p)
    if (repl[p] != report.replication) {
      report.ok = false;
      note(report.violations, "point " + std::to_string(p) + " has deviant replication");
    }

  report.lambda = v >= 2 ? pair_counts[1] : 0;  // pair (0,1)
  for (std::uint64_t p1 = 0; p1 < v; ++p1)
    for (std::uint64_t p2 = p1 + 1; p2 < v; ++p2)
      if (pair_counts[p1 * v + p2] != report.lambda) {
        report.ok = false;
        note(report.violations, "pair (" + std::to_string(p1) + "," +
                                    std::to_string(p2) + ") lies on " +
                                    std::to_string(pair_counts[p1 * v + p2]) +
                                    " blocks, expected " + std::to_string(report.lambda));
      }

  if (report.replication * (report.block_size - 1) != report.lambda * (v - 1)) {
    report.ok = false;
    note(report.violations, "r(k-1) = lambda(v-1) fails");
  }
  return report;
}

}  // namespace

TwoDesignReport verify_2design_serial(const IncidenceStructure& s) {
  const std::uint64_t v = s.v();
  // Reference route: accumulate member pairs block by block.
  std::vector<std::uint64_t> pair_counts(v * v, 0);
  for (const Block& blk : s.blocks)
    for (std::size_t i = 0; i < blk.members.size(); ++i)
      for (std::size_t j = i + 1; j < blk.members.size(); ++j) {
        std::uint32_t a = blk.members[i], b = blk.members[j];
        if (a > b) std::swap(a, b);
        ++pair_counts[std::uint64_t(a) * v + b];
      }
  return finish_2design(s, pair_counts, {});
}

TwoDesignReport verify_2design(const IncidenceStructure& s, int threads) {
  const std::uint64_t v = s.v();
  const std::uint64_t b = s.b();
  // Parallel route: per-point block bitsets, popcount per point pair.
  std::vector<Bitset> point_blocks(v, Bitset(b));
  for (std::uint64_t blk = 0; blk < b; ++blk)
    for (std::uint32_t p : s.blocks[blk].members) point_blocks[p].set(blk);

  std::vector<std::uint64_t> pair_counts(v * v, 0);
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
#else
  (void)threads;
#endif
  for (std::int64_t p1 = 0; p1 < static_cast<std::int64_t>(v); ++p1)
    for (std::uint64_t p2 = p1 + 1; p2 < v; ++p2)
      pair_counts[std::uint64_t(p1) * v + p2] =
          Bitset::intersection_count(point_blocks[p1], point_blocks[p2]);
  return finish_2design(s, pair_counts, {});
}

AffineReport verify_affine(const IncidenceStructure& s) {
  AffineReport report;
  report.ok = true;
  const std::uint64_t b = s.b();
  const std::uint64_t v = s.v();
  const std::uint64_t expected =
      v / (std::uint64_t(s.q) * s.q);  // q^{2n-3} for v = q^{2n-1}

  report.small_intersection = expected;
  std::vector<std::vector<bool>> disjoint(b, std::vector<bool>(b, false));
  for (std::uint64_t i = 0; i < b; ++i) {
    for (std::uint64_t j = i + 1; j < b; ++j) {
      std::size_t meet = Bitset::intersection_count(s.incidence[i], s.incidence[j]);
      if (meet == 0) {
        disjoint[i][j] = disjoint[j][i] = true;
        if (s.blocks[i].kind != s.blocks[j].kind) {
          report.ok = false;
          note(report.violations, "mixed-kind blocks " + std::to_string(i) + "," +
                                      std::to_string(j) + " are disjoint");
        }
      } else if (meet != expected) {
        report.ok = false;
        note(report.violations, "blocks " + std::to_string(i) + "," + std::to_string(j) +
                                    " meet in " + std::to_string(meet) + " points");
      }
    }
  }

  // Parallel classes from the disjointness data alone.
  std::vector<bool> assigned(b, false);
  for (std::uint64_t i = 0; i < b; ++i) {
    if (assigned[i]) continue;
    std::vector<std::uint32_t> cls{static_cast<std::uint32_t>(i)};
    assigned[i] = true;
    for (std::uint64_t j = i + 1; j < b; ++j)
      if (disjoint[i][j]) {
        cls.push_back(static_cast<std::uint32_t>(j));
        assigned[j] = true;
      }
    // Transitivity of parallelism is checked, not assumed.
    for (std::size_t x = 0; x < cls.size(); ++x)
      for (std::size_t y = x + 1; y < cls.size(); ++y)
        if (!disjoint[cls[x]][cls[y]]) {
          report.ok = false;
          note(report.violations, "parallelism is not transitive at blocks " +
                                      std::to_string(cls[x]) + "," +
                                      std::to_string(cls[y]));
        }
    // Each class must partition the point set.
    Bitset cover(v);
    std::uint64_t total = 0;
    for (std::uint32_t blk : cls) {
      cover.or_with(s.incidence[blk]);
      total += s.incidence[blk].count();
    }
    if (total != v || !cover.all()) {
      report.ok = false;
      note(report.violations, "class of block " + std::to_string(i) +
                                  " does not partition the points");
    }
    report.parallel_classes.push_back(std::move(cls));
  }
  if (report.parallel_classes.size() * s.q != b) {
    report.ok = false;
    note(report.violations, "expected b/q parallel classes");
  }

  // Unique disjoint parallel block through every external point.
  std::vector<std::vector<std::uint32_t>> blocks_of_point(v);
  for (std::uint64_t blk = 0; blk < b; ++blk)
    for (std::uint32_t p : s.blocks[blk].members)
      blocks_of_point[p].push_back(static_cast<std::uint32_t>(blk));
  for (std::uint64_t blk = 0; blk < b; ++blk) {
    for (std::uint64_t p = 0; p < v; ++p) {
      if (s.incidence[blk].test(p)) continue;
      unsigned hits = 0;
      for (std::uint32_t other : blocks_of_point[p])
        if (disjoint[blk][other]) ++hits;
      if (hits != 1) {
        report.ok = false;
        note(report.violations, "point " + std::to_string(p) + " outside block " +
                                    std::to_string(blk) + " has " + std::to_string(hits) +
                                    " disjoint blocks");
      }
    }
  }
  return report;
}

std::vector<std::uint32_t> line_through(const IncidenceStructure& s, std::uint32_t p1,
                                        std::uint32_t p2) {
  if (p1 == p2) throw std::invalid_argument("line requires two distinct points");
  const std::uint64_t v = s.v();
  std::vector<bool> in_line(v, true);
  for (std::uint64_t blk = 0; blk < s.b(); ++blk) {
    if (!s.incidence[blk].test(p1) || !s.incidence[blk].test(p2)) continue;
    for (std::uint64_t p = 0; p < v; ++p)
      if (!s.incidence[blk].test(p)) in_line[p] = false;
  }
  std::vector<std::uint32_t> line;
  for (std::uint64_t p = 0; p < v; ++p)
    if (in_line[p]) line.push_back(static_cast<std::uint32_t>(p));
  return line;
}

LineReport verify_lines(const IncidenceStructure& s, bool assert_q) {
  LineReport report;
  report.ok = true;
  const std::uint64_t v = s.v();
  for (std::uint32_t p1 = 0; p1 < v; ++p1)
    for (std::uint32_t p2 = p1 + 1; p2 < v; ++p2) {
      std::uint64_t size = line_through(s, p1, p2).size();
      ++report.size_histogram[size];
      if (assert_q && size != s.q) report.ok = false;
    }
  return report;
}

CorrespondenceReport oa_design_correspondence(const IncidenceStructure& s,
                                              const OrthogonalArray& a0,
                                              const HermitianGeometry& geo) {
  CorrespondenceReport report;
  report.ok = true;
  if (a0.col_keys.size() != a0.runs || a0.runs != s.v()) {
    report.ok = false;
    note(report.violations, "column keys do not label the points");
    return report;
  }
  // Column j must label point j.
  for (std::uint64_t j = 0; j < a0.runs; ++j) {
    if (point_index(geo, canonical_point(geo, a0.col_keys[j])) != j) {
      report.ok = false;
      note(report.violations, "column " + std::to_string(j) + " mislabels its point");
    }
  }

  // Hermitian-kind blocks grouped into parallel classes by their a-vector.
  std::map<std::vector<Fe>, std::vector<std::uint32_t>> class_of;
  for (std::uint32_t blk = 0; blk < s.b(); ++blk)
    if (s.blocks[blk].kind == BlockKind::hermitian)
      class_of[s.blocks[blk].params].push_back(blk);

  const auto forms = geo.enumerate_representatives();
  if (forms.size() != a0.k) {
    report.ok = false;
    note(report.violations, "row count does not match the representative set");
    return report;
  }
  for (unsigned r = 0; r < a0.k; ++r) {
    auto it = class_of.find(forms[r].a);
    if (it == class_of.end() || it->second.size() != a0.q) {
      report.ok = false;
      note(report.violations, "row " + std::to_string(r) + " has no parallel class");
      continue;
    }
    std::vector<bool> used(it->second.size(), false);
    for (unsigned sym = 0; sym < a0.q; ++sym) {
      std::vector<std::uint32_t> fiber;
      for (std::uint64_t j = 0; j < a0.runs; ++j)
        if (a0.at(r, j) == sym) fiber.push_back(static_cast<std::uint32_t>(j));
      bool matched = false;
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        if (used[i]) continue;
        if (s.blocks[it->second[i]].members == fiber) {
          used[i] = true;
          matched = true;
          break;
        }
      }
      if (!matched) {
        report.ok = false;
        note(report.violations, "row " + std::to_string(r) + " symbol " +
                                    std::to_string(sym) + " fiber matches no block");
      }
    }
  }
  return report;
}

namespace {

std::string element_string(const Field& f, Fe x) {
  std::string s;
  for (unsigned c : f.coeffs(x)) {
    if (!s.empty()) s += ',';
    s += std::to_string(c);
  }
  return s;
}

std::string coords_string(const Field& f, std::span<const Fe> xs) {
  std::string s;
  for (Fe x : xs) {
    if (!s.empty()) s += ';';
    s += element_string(f, x);
  }
  return s;
}

}  // namespace

std::string design_to_json(const IncidenceStructure& s, const HermitianGeometry& geo) {
  const Field& f = geo.field();
  nlohmann::json j;
  j["q"] = s.q;
  j["n"] = s.n;
  j["v"] = s.v();
  j["b"] = s.b();
  j["points"] = nlohmann::json::array();
  for (const auto& p : s.points) {
    std::vector<Fe> x = p.prefix;
    x.push_back(p.last);
    j["points"].push_back(coords_string(f, x));
  }
  j["blocks"] = nlohmann::json::array();
  for (const auto& blk : s.blocks) {
    nlohmann::json jb;
    jb["kind"] = blk.kind == BlockKind::hermitian ? "hermitian" : "cone";
    jb["params"] = coords_string(f, blk.params) + "|" + element_string(f, blk.shift);
    jb["members"] = blk.members;
    j["blocks"].push_back(std::move(jb));
  }
  j["parallel_classes"] = verify_affine(s).parallel_classes;
  return j.dump(2) + "\n";
}

IncidenceStructure design_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  IncidenceStructure s;
  s.q = j.at("q").get<unsigned>();
  s.n = j.at("n").get<unsigned>();
  std::uint64_t v = j.at("v").get<std::uint64_t>();
  if (j.at("points").size() != v) throw std::runtime_error("point count mismatch");
  s.points.resize(v);
  for (const auto& jb : j.at("blocks")) {
    Block blk;
    std::string kind = jb.at("kind").get<std::string>();
    if (kind != "hermitian" && kind != "cone") throw std::runtime_error("unknown block kind");
    blk.kind = kind == "hermitian" ? BlockKind::hermitian : BlockKind::cone;
    Bitset bits(v);
    for (std::uint64_t m : jb.at("members").get<std::vector<std::uint64_t>>()) {
      if (m >= v) throw std::runtime_error("member index out of range");
      blk.members.push_back(static_cast<std::uint32_t>(m));
      bits.set(m);
    }
    s.blocks.push_back(std::move(blk));
    s.incidence.push_back(std::move(bits));
  }
  if (s.blocks.size() != j.at("b").get<std::uint64_t>())
    throw std::runtime_error("block count mismatch");
  return s;
}

}  // namespace hermoa

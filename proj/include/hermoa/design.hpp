#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hermoa/geometry.hpp"
#include "hermoa/oa.hpp"

namespace hermoa {

// Dense bitset sized at construction.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  std::size_t count() const;
  static std::size_t intersection_count(const Bitset& a, const Bitset& b);
  bool intersects(const Bitset& other) const;
  void or_with(const Bitset& other);
  bool all() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Orbit representative of a point class: prefix coordinates plus a
// last coordinate drawn from the trace transversal C.
struct DesignPoint {
  std::vector<Fe> prefix;
  Fe last = 0;
};

enum class BlockKind { hermitian, cone };

struct Block {
  BlockKind kind = BlockKind::hermitian;
  std::vector<Fe> params;  // a (hermitian) or normalized omega (cone)
  Fe shift = 0;            // c in GF(q) (hermitian) or v in T0 (cone)
  std::vector<std::uint32_t> members;  // sorted point indices
};

struct IncidenceStructure {
  unsigned q = 0;
  unsigned n = 0;
  std::vector<DesignPoint> points;
  std::vector<Block> blocks;
  std::vector<Bitset> incidence;  // one bitset over points per block

  std::uint64_t v() const { return points.size(); }
  std::uint64_t b() const { return blocks.size(); }
};

// Canonical orbit representative of an arbitrary affine point: the last
// coordinate is replaced by the transversal element of its T0-coset.
DesignPoint canonical_point(const HermitianGeometry& geo, std::span<const Fe> x);
// Index of a canonical point in build order.
std::uint32_t point_index(const HermitianGeometry& geo, const DesignPoint& p);

std::vector<DesignPoint> build_points(const HermitianGeometry& geo);
IncidenceStructure build_design(const HermitianGeometry& geo,
                                std::uint64_t cap = cell_cap());

struct TwoDesignReport {
  bool ok = false;
  std::uint64_t v = 0, b = 0, block_size = 0;
  std::uint64_t lambda = 0;       // common blocks per point pair
  std::uint64_t replication = 0;  // blocks per point
  std::vector<std::string> violations;
};

// Counts common blocks over every unordered point pair; checks constant
// lambda, constant block size, constant replication and the standard
// consistency relation r(k-1) = lambda(v-1).
TwoDesignReport verify_2design(const IncidenceStructure& s, int threads = 0);
TwoDesignReport verify_2design_serial(const IncidenceStructure& s);

struct AffineReport {
  bool ok = false;
  std::uint64_t small_intersection = 0;  // the nonzero intersection size
  std::vector<std::vector<std::uint32_t>> parallel_classes;
  std::vector<std::string> violations;
};

// Pairwise block intersections, the unique-disjoint-block axiom, and
// the parallel classes recovered from the disjointness relation.
AffineReport verify_affine(const IncidenceStructure& s);

// Intersection of all blocks containing both points.
std::vector<std::uint32_t> line_through(const IncidenceStructure& s,
                                        std::uint32_t p1, std::uint32_t p2);

struct LineReport {
  bool ok = false;
  std::map<std::uint64_t, std::uint64_t> size_histogram;
};

// Line sizes over all point pairs; asserts size q when assert_q is set.
LineReport verify_lines(const IncidenceStructure& s, bool assert_q);

struct CorrespondenceReport {
  bool ok = false;
  std::vector<std::string> violations;
};

// Columns of the restricted array label the points bijectively and the
// symbol fibers of each row enumerate one parallel class of
// hermitian-kind blocks.
CorrespondenceReport oa_design_correspondence(const IncidenceStructure& s,
                                              const OrthogonalArray& a0,
                                              const HermitianGeometry& geo);

std::string design_to_json(const IncidenceStructure& s, const HermitianGeometry& geo);
// Loads enough of the JSON export (v, blocks, members) to re-run the
// verifiers; point coordinates are not reconstructed.
IncidenceStructure design_from_json(const std::string& text);

}  // namespace hermoa

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradlab {

// ---------------------------------------------------------------------------
// The discrete torus of side L^N in d dimensions, represented by the centered
// fundamental domain
//
//   { x in Z^d : |x_i| <= (L^N - 1)/2 }
//
// with the periodic quotient metric.  L must be odd so the domain is
// symmetric around the origin and blocks at every scale k center cleanly.
// Points are enumerated row-major over coordinates, slowest axis first:
// index 0 is (-h,...,-h), index volume-1 is (h,...,h) with h = (side-1)/2.
// ---------------------------------------------------------------------------

class TorusGeometry {
 public:
  static TorusGeometry make(int d, int L, int N,
                            std::int64_t volume_budget = (std::int64_t{1} << 26));

  int d() const { return d_; }
  int L() const { return L_; }
  int N() const { return N_; }
  std::int64_t side() const { return side_; }
  std::int64_t volume() const { return volume_; }
  std::int64_t half() const { return (side_ - 1) / 2; }

  // Canonical representative in [-(side-1)/2, (side-1)/2].
  std::int64_t wrap(std::int64_t c) const;

  std::int64_t index(const std::vector<std::int64_t>& coords) const;
  std::vector<std::int64_t> coords(std::int64_t index) const;

  // Index of the site shifted by +/- e_dir, using the precomputed tables.
  std::int64_t neighbor_up(std::int64_t index, int dir) const {
    return up_[static_cast<std::size_t>(dir) * volume_ + index];
  }
  std::int64_t neighbor_down(std::int64_t index, int dir) const {
    return down_[static_cast<std::size_t>(dir) * volume_ + index];
  }

  // Index of the site at offset `off` from the origin (offsets share the
  // site enumeration; used for translation-invariant kernels).
  std::int64_t index_of_offset(const std::vector<std::int64_t>& off) const {
    return index(off);
  }

  bool operator==(const TorusGeometry& o) const {
    return d_ == o.d_ && L_ == o.L_ && N_ == o.N_;
  }

 private:
  TorusGeometry() = default;
  void build_tables();

  int d_ = 0, L_ = 0, N_ = 0;
  std::int64_t side_ = 0, volume_ = 0;
  // Shared so copies of the geometry stay cheap.
  std::vector<std::int64_t> strides_;
  std::vector<std::int64_t> up_, down_;
};

struct LatticePoint {
  std::vector<std::int64_t> coords;
};

enum class Norm { euclid, inf };

// Quotient distance on the torus; symmetric, zero iff x == y.
double periodic_dist(const LatticePoint& x, const LatticePoint& y,
                     const TorusGeometry& geom, Norm norm);

// Canonicalised difference x - y with every coordinate wrapped.
std::vector<std::int64_t> periodic_diff(const LatticePoint& x, const LatticePoint& y,
                                        const TorusGeometry& geom);

// ---------------------------------------------------------------------------
// A real-valued configuration on the torus.  The mean_zero flag marks
// membership in the vanishing-average subspace; it is enforced by
// project_mean_zero, not by a reduced coordinate system.
// ---------------------------------------------------------------------------

struct Field {
  TorusGeometry geom;
  std::vector<double> values;
  bool mean_zero = false;

  static Field zeros(const TorusGeometry& g) {
    return Field{g, std::vector<double>(static_cast<std::size_t>(g.volume()), 0.0), true};
  }
  double& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
  double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }

  double mean() const;
  double max_abs() const;
};

// (nabla_i f)(x) = f(x + e_i) - f(x), periodic wrap.  Output sums to zero.
Field forward_diff(const Field& f, int dir);

// (nabla_i^* f)(x) = f(x - e_i) - f(x).  Adjoint of forward_diff under the
// lattice inner product.
Field backward_diff(const Field& f, int dir);

// Subtracts the spatial mean.  Idempotent.
Field project_mean_zero(const Field& f);

double inner(const Field& f, const Field& g);

// --- serialization ---------------------------------------------------------
// Flat binary record: magic 'GRDL', kind byte (0 field, 1 kernel),
// mean_zero byte, then d, L, N as int32, then row-major little-endian doubles.

void write_field_binary(const Field& f, std::ostream& os, std::uint8_t kind = 0);
Field read_field_binary(std::istream& is, std::uint8_t* kind_out = nullptr);
void write_field_csv(const Field& f, std::ostream& os);

}  // namespace gradlab

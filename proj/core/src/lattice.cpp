#include "gradlab/lattice.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

namespace gradlab {

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

namespace {

std::int64_t checked_pow(std::int64_t base, int exp, std::int64_t limit) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > limit / base) {
      throw std::invalid_argument("torus volume exceeds the configured budget");
    }
    r *= base;
  }
  return r;
}

}  // namespace

TorusGeometry TorusGeometry::make(int d, int L, int N, std::int64_t volume_budget) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (L < 3 || L % 2 == 0) throw std::invalid_argument("base L must be an odd integer >= 3");
  if (N < 1) throw std::invalid_argument("scale exponent N must be >= 1");
  TorusGeometry g;
  g.d_ = d;
  g.L_ = L;
  g.N_ = N;
  g.side_ = checked_pow(L, N, volume_budget);
  g.volume_ = checked_pow(g.side_, d, volume_budget);
  g.strides_.assign(static_cast<std::size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i) {
    g.strides_[static_cast<std::size_t>(i)] =
        g.strides_[static_cast<std::size_t>(i + 1)] * g.side_;
  }
  g.build_tables();
  return g;
}

std::int64_t TorusGeometry::wrap(std::int64_t c) const {
  const std::int64_t h = half();
  std::int64_t m = (c + h) % side_;
  if (m < 0) m += side_;
  return m - h;
}

std::int64_t TorusGeometry::index(const std::vector<std::int64_t>& coords) const {
  if (static_cast<int>(coords.size()) != d_) {
    throw std::invalid_argument("coordinate arity does not match dimension");
  }
  const std::int64_t h = half();
  std::int64_t idx = 0;
  for (int i = 0; i < d_; ++i) {
    idx += (wrap(coords[static_cast<std::size_t>(i)]) + h) *
           strides_[static_cast<std::size_t>(i)];
  }
  return idx;
}

std::vector<std::int64_t> TorusGeometry::coords(std::int64_t index) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(d_));
  const std::int64_t h = half();
  for (int i = 0; i < d_; ++i) {
    c[static_cast<std::size_t>(i)] = index / strides_[static_cast<std::size_t>(i)] % side_ - h;
  }
  return c;
}

void TorusGeometry::build_tables() {
  up_.resize(static_cast<std::size_t>(d_) * volume_);
  down_.resize(static_cast<std::size_t>(d_) * volume_);
  for (int dir = 0; dir < d_; ++dir) {
    const std::int64_t st = strides_[static_cast<std::size_t>(dir)];
    for (std::int64_t idx = 0; idx < volume_; ++idx) {
      const std::int64_t c = idx / st % side_;
      up_[static_cast<std::size_t>(dir) * volume_ + idx] =
          (c + 1 < side_) ? idx + st : idx - (side_ - 1) * st;
      down_[static_cast<std::size_t>(dir) * volume_ + idx] =
          (c > 0) ? idx - st : idx + (side_ - 1) * st;
    }
  }
}

std::vector<std::int64_t> periodic_diff(const LatticePoint& x, const LatticePoint& y,
                                        const TorusGeometry& geom) {
  std::vector<std::int64_t> diff(static_cast<std::size_t>(geom.d()));
  for (int i = 0; i < geom.d(); ++i) {
    diff[static_cast<std::size_t>(i)] =
        geom.wrap(x.coords[static_cast<std::size_t>(i)] - y.coords[static_cast<std::size_t>(i)]);
  }
  return diff;
}

double periodic_dist(const LatticePoint& x, const LatticePoint& y,
                     const TorusGeometry& geom, Norm norm) {
  const auto diff = periodic_diff(x, y, geom);
  if (norm == Norm::inf) {
    std::int64_t m = 0;
    for (auto c : diff) m = std::max(m, std::abs(c));
    return static_cast<double>(m);
  }
  double s = 0;
  for (auto c : diff) s += static_cast<double>(c) * static_cast<double>(c);
  return std::sqrt(s);
}

double Field::mean() const {
  double s = 0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double Field::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

Field forward_diff(const Field& f, int dir) {
  if (dir < 0 || dir >= f.geom.d()) throw std::invalid_argument("direction out of range");
  Field out{f.geom, std::vector<double>(f.values.size()), true};
  const std::int64_t v = f.geom.volume();
  for (std::int64_t i = 0; i < v; ++i) {
    out[i] = f[f.geom.neighbor_up(i, dir)] - f[i];
  }
  return out;
}

Field backward_diff(const Field& f, int dir) {
  if (dir < 0 || dir >= f.geom.d()) throw std::invalid_argument("direction out of range");
  Field out{f.geom, std::vector<double>(f.values.size()), true};
  const std::int64_t v = f.geom.volume();
  for (std::int64_t i = 0; i < v; ++i) {
    out[i] = f[f.geom.neighbor_down(i, dir)] - f[i];
  }
  return out;
}

Field project_mean_zero(const Field& f) {
  Field out = f;
  const double m = f.mean();
  for (double& v : out.values) v -= m;
  out.mean_zero = true;
  return out;
}

double inner(const Field& f, const Field& g) {
  double s = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * g.values[i];
  return s;
}

// --- serialization ---------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'G', 'R', 'D', 'L'};
}

void write_field_binary(const Field& f, std::ostream& os, std::uint8_t kind) {
  os.write(kMagic, 4);
  std::uint8_t mz = f.mean_zero ? 1 : 0;
  os.write(reinterpret_cast<const char*>(&kind), 1);
  os.write(reinterpret_cast<const char*>(&mz), 1);
  const std::int32_t hdr[3] = {f.geom.d(), f.geom.L(), f.geom.N()};
  os.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

Field read_field_binary(std::istream& is, std::uint8_t* kind_out) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("not a gradlab binary field record");
  }
  std::uint8_t kind = 0, mz = 0;
  is.read(reinterpret_cast<char*>(&kind), 1);
  is.read(reinterpret_cast<char*>(&mz), 1);
  std::int32_t hdr[3];
  is.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
  Field f;
  f.geom = TorusGeometry::make(hdr[0], hdr[1], hdr[2]);
  f.mean_zero = mz != 0;
  f.values.resize(static_cast<std::size_t>(f.geom.volume()));
  is.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!is) throw std::runtime_error("truncated field record");
  if (kind_out) *kind_out = kind;
  return f;
}

void write_field_csv(const Field& f, std::ostream& os) {
  for (int i = 0; i < f.geom.d(); ++i) os << "x" << i + 1 << ",";
  os << "value\n";
  char buf[32];
  for (std::int64_t idx = 0; idx < f.geom.volume(); ++idx) {
    for (auto c : f.geom.coords(idx)) os << c << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", f[idx]);
    os << buf << "\n";
  }
}

}  // namespace gradlab

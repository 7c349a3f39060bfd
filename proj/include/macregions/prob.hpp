#pragma once

// Exact discrete probability kernels on dense tensors: joint pmfs over named
// finite variables, entropies, conditional mutual information, and the binary
// entropy utilities used throughout the rate-region evaluators.
//
// Conventions: all information quantities are in bits (log base 2) and
// 0*log(0) == 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace macregions {

struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::size_t max_tensor_cells() {
  if (const char* s = std::getenv("MACREGIONS_MAX_CELLS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;  // desk scale
}

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

inline double binary_entropy(double a) {
  if (a < 0.0 || a > 1.0) throw validation_error("binary_entropy: argument outside [0,1]");
  return -xlog2x(a) - xlog2x(1.0 - a);
}

inline double binary_convolve(double p, double q) {
  if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
    throw validation_error("binary_convolve: argument outside [0,1]");
  return p * (1.0 - q) + q * (1.0 - p);
}

// Unique p in [0,1/2] with h2(p) == t, by bisection to 1e-10.
inline double inverse_binary_entropy(double t) {
  if (t < 0.0 || t > 1.0) throw validation_error("inverse_binary_entropy: argument outside [0,1]");
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < t)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct Axis {
  std::string name;
  int size = 0;
};

// Dense joint pmf over an ordered list of named finite variables.
// Row-major storage, first axis slowest.
class JointPmf {
 public:
  JointPmf(std::vector<Axis> axes, std::vector<double> values)
      : axes_(std::move(axes)), v_(std::move(values)) {
    init_strides();
    validate();
  }

  // Zero tensor to be filled in by a builder; call validate() when done.
  static JointPmf zeros(std::vector<Axis> axes) {
    JointPmf p;
    p.axes_ = std::move(axes);
    p.init_strides();
    p.v_.assign(p.cells_, 0.0);
    return p;
  }

  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t cells() const { return cells_; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  int axis_index(const std::string& name) const {
    for (std::size_t i = 0; i < axes_.size(); ++i)
      if (axes_[i].name == name) return static_cast<int>(i);
    throw validation_error("unknown variable name: " + name);
  }

  bool has_axis(const std::string& name) const {
    for (const auto& a : axes_)
      if (a.name == name) return true;
    return false;
  }

  std::size_t stride(int axis) const { return stride_[static_cast<std::size_t>(axis)]; }

  void validate() const {
    double sum = 0.0;
    for (double x : v_) {
      if (x < -1e-12) throw validation_error("JointPmf: negative cell");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw validation_error("JointPmf: cells do not sum to 1");
    for (std::size_t i = 0; i < axes_.size(); ++i)
      for (std::size_t j = i + 1; j < axes_.size(); ++j)
        if (axes_[i].name == axes_[j].name) throw validation_error("JointPmf: duplicate axis name");
  }

  // Marginal probability vector over the given variables (in their axis order).
  std::vector<double> marginal_values(const std::vector<std::string>& vars) const {
    std::vector<int> sel = select(vars);
    std::size_t msize = 1;
    for (int a : sel) msize *= static_cast<std::size_t>(axes_[static_cast<std::size_t>(a)].size);
    // contribution of each full-tensor axis digit to the marginal index
    std::vector<std::size_t> contrib(axes_.size(), 0);
    {
      std::size_t s = 1;
      for (auto it = sel.rbegin(); it != sel.rend(); ++it) {
        contrib[static_cast<std::size_t>(*it)] = s;
        s *= static_cast<std::size_t>(axes_[static_cast<std::size_t>(*it)].size);
      }
    }
    std::vector<double> marg(msize, 0.0);
    std::vector<int> digit(axes_.size(), 0);
    std::size_t midx = 0;
    for (std::size_t flat = 0; flat < cells_; ++flat) {
      marg[midx] += v_[flat];
      // odometer increment
      for (int a = static_cast<int>(axes_.size()) - 1; a >= 0; --a) {
        auto ua = static_cast<std::size_t>(a);
        ++digit[ua];
        midx += contrib[ua];
        if (digit[ua] < axes_[ua].size) break;
        midx -= contrib[ua] * static_cast<std::size_t>(axes_[ua].size);
        digit[ua] = 0;
      }
    }
    return marg;
  }

  double entropy(const std::vector<std::string>& vars) const {
    if (vars.empty()) return 0.0;
    double h = 0.0;
    if (vars.size() == axes_.size()) {
      // full-joint fast path (still validates names)
      select(vars);
      for (double x : v_) h -= xlog2x(x);
      return h;
    }
    for (double x : marginal_values(vars)) h -= xlog2x(x);
    return h;
  }

  // Entropies of several variable subsets in one pass over the tensor.
  std::vector<double> entropies(const std::vector<std::vector<std::string>>& sets) const {
    std::vector<std::vector<double>> margs(sets.size());
    std::vector<std::vector<std::size_t>> contribs(sets.size());
    for (std::size_t k = 0; k < sets.size(); ++k) {
      std::vector<int> sel = select(sets[k]);
      std::size_t msize = 1;
      contribs[k].assign(axes_.size(), 0);
      for (auto it = sel.rbegin(); it != sel.rend(); ++it) {
        contribs[k][static_cast<std::size_t>(*it)] = msize;
        msize *= static_cast<std::size_t>(axes_[static_cast<std::size_t>(*it)].size);
      }
      margs[k].assign(msize, 0.0);
    }
    std::vector<int> digit(axes_.size(), 0);
    std::vector<std::size_t> midx(sets.size(), 0);
    for (std::size_t flat = 0; flat < cells_; ++flat) {
      for (std::size_t k = 0; k < sets.size(); ++k) margs[k][midx[k]] += v_[flat];
      for (int a = static_cast<int>(axes_.size()) - 1; a >= 0; --a) {
        auto ua = static_cast<std::size_t>(a);
        ++digit[ua];
        for (std::size_t k = 0; k < sets.size(); ++k) midx[k] += contribs[k][ua];
        if (digit[ua] < axes_[ua].size) break;
        for (std::size_t k = 0; k < sets.size(); ++k)
          midx[k] -= contribs[k][ua] * static_cast<std::size_t>(axes_[ua].size);
        digit[ua] = 0;
      }
    }
    std::vector<double> out(sets.size(), 0.0);
    for (std::size_t k = 0; k < sets.size(); ++k)
      for (double x : margs[k]) out[k] -= xlog2x(x);
    return out;
  }

  // I(A;B|C) in bits; C may be empty. Clamped into [0, inf).
  double cond_mutual_info(const std::vector<std::string>& A, const std::vector<std::string>& B,
                          const std::vector<std::string>& C = {}) const {
    check_disjoint(A, B);
    check_disjoint(A, C);
    check_disjoint(B, C);
    std::vector<std::string> AC = join(A, C), BC = join(B, C), ABC = join(join(A, B), C);
    double i = entropy(AC) + entropy(BC) - entropy(ABC) - entropy(C);
    return i < 0.0 ? 0.0 : i;  // round-off only; formulas are exact sums
  }

 private:
  JointPmf() = default;

  void init_strides() {
    cells_ = 1;
    stride_.assign(axes_.size(), 0);
    for (int a = static_cast<int>(axes_.size()) - 1; a >= 0; --a) {
      auto ua = static_cast<std::size_t>(a);
      if (axes_[ua].size <= 0) throw validation_error("JointPmf: axis size must be positive");
      stride_[ua] = cells_;
      cells_ *= static_cast<std::size_t>(axes_[ua].size);
      if (cells_ > max_tensor_cells()) throw resource_error("JointPmf: tensor exceeds cell cap");
    }
  }

  std::vector<int> select(const std::vector<std::string>& vars) const {
    std::vector<int> sel;
    sel.reserve(vars.size());
    for (const auto& n : vars) {
      int a = axis_index(n);
      if (std::find(sel.begin(), sel.end(), a) != sel.end())
        throw validation_error("duplicate variable in set: " + n);
      sel.push_back(a);
    }
    return sel;
  }

  static void check_disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    for (const auto& x : a)
      for (const auto& y : b)
        if (x == y) throw validation_error("variable sets overlap on: " + x);
  }

  static std::vector<std::string> join(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  std::vector<Axis> axes_;
  std::vector<double> v_;
  std::vector<std::size_t> stride_;
  std::size_t cells_ = 0;
};

// Deterministic 64-bit hashing for seeds and digests.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(s);
}

// Small deterministic PRNG stream; statistically adequate for Monte Carlo at
// desk scale and cheap enough to re-seed per codeword.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64() { return splitmix64(state_); }
  // uniform in [0,1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  // index into a pmf given as contiguous doubles
  int sample(const double* pmf, int k) {
    double u = next_double();
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
      acc += pmf[i];
      if (u < acc) return i;
    }
    return k - 1;
  }
  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace macregions

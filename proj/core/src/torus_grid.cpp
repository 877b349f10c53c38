#include "ktcy/torus_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ktcy/errors.hpp"

namespace ktcy {

NonZeroMeanInput::NonZeroMeanInput(double mean, double tol)
    : Error([&] {
        std::ostringstream os;
        os << "invert_laplacian: input mean " << mean << " exceeds tolerance " << tol;
        return os.str();
      }()),
      mean_(mean) {}

DegenerateMetric::DegenerateMetric(double min_nu)
    : Error([&] {
        std::ostringstream os;
        os << "degenerate reduced metric: min nu = " << min_nu;
        return os.str();
      }()),
      min_nu_(min_nu) {}

Grid::Grid(int n) : n_(n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("grid size must be even and >= 4, got " + std::to_string(n));
}

TorusField::TorusField(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("TorusField: expected " + std::to_string(grid_.size()) + " samples, got " +
                                std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("TorusField: non-finite sample");
}

TorusField TorusField::constant(Grid grid, double value) {
  return TorusField(grid, std::vector<double>(grid.size(), value));
}

double TorusField::operator()(int i, int j) const {
  const int n = grid_.n();
  i = ((i % n) + n) % n;
  j = ((j % n) + n) % n;
  return values_[static_cast<std::size_t>(i) * n + j];
}

double TorusField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double TorusField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double TorusField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double TorusField::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s / static_cast<double>(values_.size()));
}

TorusField TorusField::operator-() const { return map(*this, [](double v) { return -v; }); }

namespace {

void require_same_grid(const TorusField& a, const TorusField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

template <typename Op>
TorusField zip(const TorusField& a, const TorusField& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> v(a.values().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = op(a.at(k), b.at(k));
  return TorusField(a.grid(), std::move(v));
}

}  // namespace

TorusField& TorusField::operator+=(const TorusField& other) {
  *this = zip(*this, other, std::plus<>{});
  return *this;
}

TorusField& TorusField::operator-=(const TorusField& other) {
  *this = zip(*this, other, std::minus<>{});
  return *this;
}

TorusField operator+(TorusField a, const TorusField& b) { return a += b; }
TorusField operator-(TorusField a, const TorusField& b) { return a -= b; }
TorusField operator*(const TorusField& a, const TorusField& b) { return zip(a, b, std::multiplies<>{}); }
TorusField operator/(const TorusField& a, const TorusField& b) { return zip(a, b, std::divides<>{}); }
TorusField operator*(double s, const TorusField& a) { return map(a, [s](double v) { return s * v; }); }
TorusField operator*(const TorusField& a, double s) { return s * a; }
TorusField operator+(const TorusField& a, double s) { return map(a, [s](double v) { return v + s; }); }
TorusField operator-(const TorusField& a, double s) { return map(a, [s](double v) { return v - s; }); }
TorusField operator+(double s, const TorusField& a) { return a + s; }
TorusField operator-(double s, const TorusField& a) { return map(a, [s](double v) { return s - v; }); }

TorusField exp(const TorusField& f) { return map(f, [](double v) { return std::exp(v); }); }
TorusField log(const TorusField& f) { return map(f, [](double v) { return std::log(v); }); }
TorusField square(const TorusField& f) { return map(f, [](double v) { return v * v; }); }

Spectrum::Spectrum(Grid grid)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.n()) * (grid.n() / 2 + 1)) {}

namespace {

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

// Plans are created once per n under a lock; the new-array execute
// functions are thread-safe, so callers run them concurrently.
struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    const std::size_t real_size = static_cast<std::size_t>(n) * n;
    const std::size_t cplx_size = static_cast<std::size_t>(n) * (n / 2 + 1);
    std::unique_ptr<double, FftwDeleter> r(fftw_alloc_real(real_size));
    std::unique_ptr<fftw_complex, FftwDeleter> c(fftw_alloc_complex(cplx_size));
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_2d(n, n, r.get(), c.get(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.c2r = fftw_plan_dft_c2r_2d(n, n, c.get(), r.get(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.r2c || !p.c2r) throw std::runtime_error("FFTW planning failed");
    plans_.emplace(n, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

}  // namespace

Spectrum forward(const TorusField& f) {
  const int n = f.n();
  const auto plans = PlanCache::instance().get(n);
  Spectrum s(f.grid());
  std::vector<double> in(f.values().begin(), f.values().end());
  fftw_execute_dft_r2c(plans.r2c, in.data(), reinterpret_cast<fftw_complex*>(&s(0, 0)));
  return s;
}

TorusField inverse(const Spectrum& s) {
  const Grid grid = s.grid();
  const int n = grid.n();
  const auto plans = PlanCache::instance().get(n);
  // c2r overwrites its input.
  std::vector<std::complex<double>> in(&s(0, 0), &s(0, 0) + static_cast<std::size_t>(n) * s.half());
  std::vector<double> out(grid.size());
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(in.data()), out.data());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : out) v *= scale;
  return TorusField(grid, std::move(out));
}

namespace {

std::complex<double> derivative_factor(int k, bool nyquist, int order) {
  if (order == 0) return 1.0;
  if (nyquist && order % 2 == 1) return 0.0;
  const std::complex<double> ik(0.0, 2.0 * std::numbers::pi * k);
  std::complex<double> r = 1.0;
  for (int p = 0; p < order; ++p) r *= ik;
  return r;
}

}  // namespace

TorusField derivative(const TorusField& f, int order_x, int order_y) {
  if (order_x < 0 || order_y < 0) throw std::invalid_argument("derivative orders must be non-negative");
  if (order_x == 0 && order_y == 0) return f;
  const Grid& g = f.grid();
  Spectrum s = forward(f);
  const int n = g.n();
  std::vector<std::complex<double>> fy(s.half());
  for (int l = 0; l < s.half(); ++l) fy[l] = derivative_factor(l, g.is_nyquist(l), order_y);
  for (int k = 0; k < n; ++k) {
    const auto fx = derivative_factor(g.wavenumber(k), g.is_nyquist(k), order_x);
    for (int l = 0; l < s.half(); ++l) s(k, l) *= fx * fy[l];
  }
  return inverse(s);
}

TorusField derivative(const TorusField& f, Partial which) {
  switch (which) {
    case Partial::x: return derivative(f, 1, 0);
    case Partial::y: return derivative(f, 0, 1);
    case Partial::xx: return derivative(f, 2, 0);
    case Partial::yy: return derivative(f, 0, 2);
    case Partial::xy: return derivative(f, 1, 1);
  }
  throw std::invalid_argument("unknown partial");
}

Hessian hessian(const TorusField& f) {
  const Grid& g = f.grid();
  const Spectrum s = forward(f);
  Spectrum sxx(g), syy(g), sxy(g);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < g.n(); ++k) {
    const double kx = two_pi * g.wavenumber(k);
    const bool nyq_x = g.is_nyquist(k);
    for (int l = 0; l < s.half(); ++l) {
      const double ky = two_pi * l;
      const auto c = s(k, l);
      sxx(k, l) = -kx * kx * c;
      syy(k, l) = -ky * ky * c;
      sxy(k, l) = (nyq_x || g.is_nyquist(l)) ? 0.0 : -kx * ky * c;
    }
  }
  return {inverse(sxx), inverse(syy), inverse(sxy)};
}

double integrate(const TorusField& f) {
  // Compensated summation.
  double sum = 0.0, comp = 0.0;
  for (double v : f.values()) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(f.values().size());
}

TorusField remove_mean(const TorusField& f) { return f - integrate(f); }

TorusField invert_laplacian(const TorusField& f, double mean_tol) {
  const double mean = integrate(f);
  if (std::abs(mean) > mean_tol) throw NonZeroMeanInput(mean, mean_tol);
  const Grid& g = f.grid();
  Spectrum s = forward(f);
  const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  for (int k = 0; k < g.n(); ++k) {
    const double kx = g.wavenumber(k);
    for (int l = 0; l < s.half(); ++l) {
      const double ky = l;
      if (k == 0 && l == 0) {
        s(k, l) = 0.0;
        continue;
      }
      s(k, l) /= -four_pi2 * (kx * kx + ky * ky);
    }
  }
  return inverse(s);
}

}  // namespace ktcy

#include "swkb/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "swkb/errors.hpp"
#include "swkb/numerics.hpp"

namespace swkb {

struct Potential::Spline {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> m;  // second derivatives at the knots

  Spline(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)), m(x.size(), 0.0) {
    const std::size_t n = x.size();
    std::vector<double> h(n - 1);
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x[i + 1] - x[i];
      d[i] = (y[i + 1] - y[i]) / h[i];
    }
    // Tridiagonal system for M_1..M_{n-2}; not-a-knot eliminates M_0 and M_{n-1}.
    const std::size_t k = n - 2;
    std::vector<double> sub(k, 0.0), diag(k, 0.0), sup(k, 0.0), rhs(k, 0.0);
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t i = r + 1;
      sub[r] = h[i - 1];
      diag[r] = 2.0 * (h[i - 1] + h[i]);
      sup[r] = h[i];
      rhs[r] = 6.0 * (d[i] - d[i - 1]);
    }
    diag[0] = 3.0 * h[0] + 2.0 * h[1] + h[0] * h[0] / h[1];
    sup[0] = h[1] - h[0] * h[0] / h[1];
    const double hl = h[n - 2];
    const double hp = h[n - 3];
    sub[k - 1] = hp - hl * hl / hp;
    diag[k - 1] = 2.0 * hp + 3.0 * hl + hl * hl / hp;
    // Thomas algorithm.
    for (std::size_t r = 1; r < k; ++r) {
      const double w = sub[r] / diag[r - 1];
      diag[r] -= w * sup[r - 1];
      rhs[r] -= w * rhs[r - 1];
    }
    std::vector<double> sol(k);
    sol[k - 1] = rhs[k - 1] / diag[k - 1];
    for (std::size_t r = k - 1; r-- > 0;) {
      sol[r] = (rhs[r] - sup[r] * sol[r + 1]) / diag[r];
    }
    for (std::size_t r = 0; r < k; ++r) m[r + 1] = sol[r];
    m[0] = (1.0 + h[0] / h[1]) * m[1] - (h[0] / h[1]) * m[2];
    m[n - 1] = (1.0 + hl / hp) * m[n - 2] - (hl / hp) * m[n - 3];
  }

  double eval(double xv, int order) const {
    auto it = std::upper_bound(x.begin(), x.end(), xv);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    i = std::min(i, x.size() - 2);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - xv) / h;
    const double b = (xv - x[i]) / h;
    switch (order) {
      case 0:
        return a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
      case 1:
        return (y[i + 1] - y[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m[i] + (3.0 * b * b - 1.0) / 6.0 * h * m[i + 1];
      default:
        return a * m[i] + b * m[i + 1];
    }
  }
};

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void require_domain(const Domain& d) {
  if (!(d.hi > d.lo) || !std::isfinite(d.lo) || !std::isfinite(d.hi)) {
    throw DomainError("potential domain must be a finite interval with lo < hi");
  }
}

}  // namespace

Potential::Potential(PotentialKind kind, Domain domain) : kind_(std::move(kind)), domain_(domain) {
  require_domain(domain_);
  if (auto* t = std::get_if<Tabulated>(&kind_)) {
    spline_ = std::make_shared<const Spline>(t->x, t->v);
  }
  locate_minimum();
}

Potential Potential::harmonic(double omega, double center, double mass, Domain domain) {
  require_positive(omega, "harmonic omega");
  require_positive(mass, "harmonic mass");
  return Potential(Harmonic{omega, center, mass}, domain);
}

Potential Potential::linear(double force, bool hard_wall, Domain domain) {
  require_positive(force, "linear force");
  return Potential(Linear{force, hard_wall}, domain);
}

Potential Potential::quartic(double lambda, Domain domain) {
  require_positive(lambda, "quartic lambda");
  return Potential(Quartic{lambda}, domain);
}

Potential Potential::morse(double depth, double width, double center, Domain domain) {
  require_positive(depth, "morse depth");
  require_positive(width, "morse width");
  return Potential(Morse{depth, width, center}, domain);
}

Potential Potential::tabulated(std::vector<double> x, std::vector<double> v) {
  if (x.size() != v.size()) {
    throw DomainError("tabulated potential: x and V columns differ in length");
  }
  if (x.size() < 4) {
    throw DomainError("tabulated potential needs at least 4 samples");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(v[i])) {
      throw DomainError("tabulated potential: non-finite sample");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw DomainError("tabulated potential: x must be strictly increasing");
    }
  }
  Domain d{x.front(), x.back()};
  return Potential(Tabulated{std::move(x), std::move(v)}, d);
}

Potential Potential::tabulated_from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open tabulated potential file " + path.string());
  }
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double xv = 0.0, vv = 0.0;
    if (!(row >> xv >> vv)) continue;  // header or malformed line
    xs.push_back(xv);
    vs.push_back(vv);
  }
  return tabulated(std::move(xs), std::move(vs));
}

std::string_view Potential::kind_name() const noexcept {
  constexpr std::string_view names[] = {"harmonic", "linear", "quartic", "morse", "tabulated"};
  return names[kind_.index()];
}

int Potential::max_derivative_order() const noexcept { return is_tabulated() ? 2 : 3; }

bool Potential::has_hard_wall() const noexcept {
  const auto* lin = std::get_if<Linear>(&kind_);
  return lin != nullptr && lin->hard_wall;
}

double Potential::distance_to_knot(double x) const noexcept {
  if (!spline_) return std::numeric_limits<double>::infinity();
  const auto& xs = spline_->x;
  double best = std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(xs.begin() + 1, xs.end() - 1, x);
  if (it != xs.end() - 1) best = std::min(best, std::abs(*it - x));
  if (it != xs.begin() + 1) best = std::min(best, std::abs(*(it - 1) - x));
  return best;
}

double Potential::eval(double x, int derivative_order) const {
  if (derivative_order < 0 || derivative_order > 3) {
    throw UnsupportedOrderError("potential derivative order must be 0..3");
  }
  if (derivative_order > max_derivative_order()) {
    throw UnsupportedOrderError("third derivative is not available for tabulated potentials");
  }
  if (!domain_.contains(x)) {
    throw DomainError("potential evaluated outside its domain at x = " + std::to_string(x));
  }
  return eval_unchecked(x, derivative_order);
}

double Potential::eval_unchecked(double x, int k) const {
  struct Visitor {
    double x;
    int k;
    const Spline* spline;

    double operator()(const Harmonic& h) const {
      const double c = h.mass * h.omega * h.omega;
      const double u = x - h.center;
      switch (k) {
        case 0: return 0.5 * c * u * u;
        case 1: return c * u;
        case 2: return c;
        default: return 0.0;
      }
    }
    double operator()(const Linear& l) const {
      switch (k) {
        case 0: return l.force * x;
        case 1: return l.force;
        default: return 0.0;
      }
    }
    double operator()(const Quartic& q) const {
      switch (k) {
        case 0: return q.lambda * x * x * x * x;
        case 1: return 4.0 * q.lambda * x * x * x;
        case 2: return 12.0 * q.lambda * x * x;
        default: return 24.0 * q.lambda * x;
      }
    }
    double operator()(const Morse& m) const {
      const double e = std::exp(-m.width * (x - m.center));
      const double a = m.width;
      switch (k) {
        case 0: return m.depth * (1.0 - e) * (1.0 - e);
        case 1: return 2.0 * m.depth * a * e * (1.0 - e);
        case 2: return 2.0 * m.depth * a * a * e * (2.0 * e - 1.0);
        default: return 2.0 * m.depth * a * a * a * e * (1.0 - 4.0 * e);
      }
    }
    double operator()(const Tabulated&) const { return spline->eval(x, k); }
  };
  return std::visit(Visitor{x, k, spline_.get()}, kind_);
}

void Potential::locate_minimum() {
  const int n = kTurningPointScan;
  const double h = domain_.width() / (n - 1);
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double x = i == n - 1 ? domain_.hi : domain_.lo + i * h;
    const double v = eval_unchecked(x, 0);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double a = std::max(domain_.lo, domain_.lo + (best - 1) * h);
  const double b = std::min(domain_.hi, domain_.lo + (best + 1) * h);
  auto [x, v] = boost::math::tools::brent_find_minima([this](double t) { return eval_unchecked(t, 0); }, a, b,
                                                      std::numeric_limits<double>::digits / 2);
  if (v <= best_v) {
    min_x_ = x;
    min_v_ = v;
  } else {
    min_x_ = best == n - 1 ? domain_.hi : domain_.lo + best * h;
    min_v_ = best_v;
  }
}

std::vector<double> turning_points(const Potential& potential, double energy) {
  std::vector<double> roots;
  if (!(energy > potential.minimum_value())) return roots;

  const Domain& d = potential.domain();
  const int n = kTurningPointScan;
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (int i = 0; i < n; ++i) grid.push_back(i == n - 1 ? d.hi : d.lo + d.width() * i / (n - 1));
  // The minimiser guarantees a sign change is seen for energies just above the minimum.
  grid.insert(std::upper_bound(grid.begin(), grid.end(), potential.minimum_location()), potential.minimum_location());

  auto gap = [&](double x) { return energy - potential.value(x); };
  const bool wall = potential.has_hard_wall();
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = gap(grid[i]);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (f[i] == 0.0) {
      if (!(wall && i == 0) && (roots.empty() || roots.back() != grid[i])) roots.push_back(grid[i]);
      continue;
    }
    if (i + 1 < grid.size() && f[i + 1] != 0.0 && ((f[i] > 0.0) != (f[i + 1] > 0.0))) {
      roots.push_back(numerics::find_root(gap, grid[i], grid[i + 1], 1e-13, d.width()).root);
    }
  }
  return roots;
}

}  // namespace swkb

#include "contexture/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

namespace contexture {

Mat identity(std::size_t n) {
  Mat m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat operator+(const Mat& x, const Mat& y) {
  Mat m(x.n);
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
  return m;
}

Mat operator-(const Mat& x, const Mat& y) {
  Mat m(x.n);
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
  return m;
}

Mat operator*(const Mat& x, const Mat& y) {
  Mat m(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      double v = x.at(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < x.n; ++j) m.at(i, j) += v * y.at(k, j);
    }
  return m;
}

Mat scale(double c, const Mat& x) {
  Mat m = x;
  for (auto& v : m.a) v *= c;
  return m;
}

Mat kron(const Mat& x, const Mat& y) {
  Mat m(x.n * y.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j)
      for (std::size_t k = 0; k < y.n; ++k)
        for (std::size_t l = 0; l < y.n; ++l)
          m.at(i * y.n + k, j * y.n + l) = x.at(i, j) * y.at(k, l);
  return m;
}

double max_abs(const Mat& x) {
  double m = 0;
  for (double v : x.a) m = std::max(m, std::fabs(v));
  return m;
}

double trace(const Mat& x) {
  double t = 0;
  for (std::size_t i = 0; i < x.n; ++i) t += x.at(i, i);
  return t;
}

Mat sigma(double theta) {
  Mat m(2);
  m.at(0, 0) = std::cos(theta);
  m.at(0, 1) = std::sin(theta);
  m.at(1, 0) = std::sin(theta);
  m.at(1, 1) = -std::cos(theta);
  return m;
}

namespace {

Mat half_up(double theta) {  // 1/2 [I + sigma(theta)]
  return scale(0.5, identity(2) + sigma(theta));
}

}  // namespace

Mat q1(double theta) { return kron(half_up(theta), identity(2)); }
Mat q3(double theta) { return kron(identity(2), half_up(theta)); }
Mat q13(double theta, double theta_p) {
  return kron(half_up(theta), half_up(theta_p));
}

Mat ch_operator(const AngleSet& s) {
  return q13(s.alpha, s.gamma) + q13(s.alpha, s.delta) +
         q13(s.beta, s.gamma) - q13(s.beta, s.delta) - q1(s.alpha) -
         q3(s.gamma);
}

std::vector<double> jacobi_eigenvalues(Mat m) {
  const std::size_t n = m.n;
  for (int sweep = 0; sweep < 30; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += m.at(i, j) * m.at(i, j);
    if (std::sqrt(2 * off) < 1e-13) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = m.at(p, q);
        if (apq == 0.0) continue;
        double theta = 0.5 * (m.at(q, q) - m.at(p, p)) / apq;
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = m.at(k, p), akq = m.at(k, q);
          m.at(k, p) = c * akp - s * akq;
          m.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = m.at(p, k), aqk = m.at(q, k);
          m.at(p, k) = c * apk - s * aqk;
          m.at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig;
  for (std::size_t i = 0; i < n; ++i) eig.push_back(m.at(i, i));
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::array<double, 4> ch_closed_eigenvalues(const AngleSet& a) {
  double s = std::sin(a.alpha - a.beta) * std::sin(a.gamma - a.delta);
  std::array<double, 4> eig = {
      0.5 * (std::sqrt(1.0 + s) - 1.0), 0.5 * (-std::sqrt(1.0 + s) - 1.0),
      0.5 * (std::sqrt(1.0 - s) - 1.0), 0.5 * (-std::sqrt(1.0 - s) - 1.0)};
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::array<double, 4> ch_eigenvalues(const AngleSet& a) {
  auto numeric = jacobi_eigenvalues(ch_operator(a));
  auto closed = ch_closed_eigenvalues(a);
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::fabs(numeric[i] - closed[i]) > 1e-8)
      throw std::logic_error(
          "ch_eigenvalues: closed form and Jacobi disagree");
    out[i] = numeric[i];
  }
  return out;
}

namespace {

double objective(double u, double v) {
  AngleSet a;
  a.alpha = u;
  a.gamma = v;
  return ch_eigenvalues(a)[3];
}

// Golden-section maximization of f on [lo, hi].
template <class F>
double golden(F f, double lo, double hi, double* argmax) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    }
  }
  double x = 0.5 * (lo + hi);
  if (argmax) *argmax = x;
  return f(x);
}

}  // namespace

BoundResult ch_bound_free(unsigned threads) {
  // The eigenvalues depend on the angles only through u = alpha - beta
  // and v = gamma - delta, so a 2-d grid suffices.
  const int N = 64;
  const double pi = std::acos(-1.0);
  struct Cell {
    double val;
    int i, j;
  };
  auto scan_rows = [&](int lo, int hi) {
    Cell best{-1e300, 0, 0};
    for (int i = lo; i < hi; ++i)
      for (int j = 0; j < N; ++j) {
        double u = 2 * pi * i / N, v = 2 * pi * j / N;
        double f = objective(u, v);
        if (f > best.val + 1e-15 ||
            (std::fabs(f - best.val) <= 1e-15 &&
             (i < best.i || (i == best.i && j < best.j))))
          best = {f, i, j};
      }
    return best;
  };

  Cell best{-1e300, 0, 0};
  if (threads <= 1) {
    best = scan_rows(0, N);
  } else {
    std::vector<std::future<Cell>> jobs;
    int chunk = (N + int(threads) - 1) / int(threads);
    for (int lo = 0; lo < N; lo += chunk)
      jobs.push_back(std::async(std::launch::async, scan_rows, lo,
                                std::min(lo + chunk, N)));
    std::vector<Cell> parts;
    for (auto& j : jobs) parts.push_back(j.get());
    // Deterministic reduction: value first, lexicographic cell index on
    // near ties.
    best = parts[0];
    for (const auto& c : parts)
      if (c.val > best.val + 1e-15 ||
          (std::fabs(c.val - best.val) <= 1e-15 &&
           (c.i < best.i || (c.i == best.i && c.j < best.j))))
        best = c;
  }

  double u = 2 * pi * best.i / N, v = 2 * pi * best.j / N;
  double h = 2 * pi / N;
  golden([&](double x) { return objective(x, v); }, u - h, u + h, &u);
  golden([&](double y) { return objective(u, y); }, v - h, v + h, &v);
  golden([&](double x) { return objective(x, v); }, u - h / 8, u + h / 8, &u);

  BoundResult r;
  r.angles.alpha = u;
  r.angles.gamma = v;
  r.value = objective(u, v);
  return r;
}

double theta_family_value(double theta) {
  AngleSet a;
  a.alpha = 0;
  a.beta = 2 * theta;
  a.gamma = theta;
  a.delta = 3 * theta;
  return ch_eigenvalues(a)[3];
}

double theta_family_closed(double theta) {
  return 0.5 * (std::sqrt((3.0 - std::cos(4.0 * theta)) / 2.0) - 1.0);
}

double born_expectation(const Mat& rho, const Mat& A) {
  if (rho.n != A.n)
    throw std::invalid_argument("born_expectation: dimension mismatch");
  const double tol = 1e-9;
  for (std::size_t i = 0; i < rho.n; ++i)
    for (std::size_t j = i + 1; j < rho.n; ++j)
      if (std::fabs(rho.at(i, j) - rho.at(j, i)) > tol)
        throw std::invalid_argument("born_expectation: rho not symmetric");
  if (std::fabs(trace(rho) - 1.0) > tol)
    throw std::invalid_argument("born_expectation: trace(rho) != 1");
  auto eig = jacobi_eigenvalues(rho);
  if (eig.front() < -tol)
    throw std::invalid_argument("born_expectation: rho not positive");
  return trace(rho * A);
}

}  // namespace contexture

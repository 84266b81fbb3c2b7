#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace contexture {

/// Dense real square matrix, row major.  Everything in this module is
/// real symmetric, so no complex arithmetic is needed.
struct Mat {
  std::size_t n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

Mat identity(std::size_t n);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Mat& x, const Mat& y);
Mat scale(double c, const Mat& x);
Mat kron(const Mat& x, const Mat& y);
double max_abs(const Mat& x);
double trace(const Mat& x);

/// sigma(theta) = [[cos, sin], [sin, -cos]]: the x-z plane spin
/// operator family.
Mat sigma(double theta);

/// Projectors: q1 = 1/2[I+sigma(t)] (x) I, q3 = I (x) 1/2[I+sigma(t)],
/// q13 = 1/2[I+sigma(t)] (x) 1/2[I+sigma(t')].
Mat q1(double theta);
Mat q3(double theta);
Mat q13(double theta, double theta_p);

struct AngleSet {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

/// O22 = q13(a,c) + q13(a,d) + q13(b,c) - q13(b,d) - q1(a) - q3(c),
/// the operator version of the Clauser-Horne expression.
Mat ch_operator(const AngleSet& s);

/// Cyclic Jacobi for a symmetric matrix; eigenvalues ascending.
std::vector<double> jacobi_eigenvalues(Mat m);

/// 1/2(+-sqrt(1 +- s) - 1) with s = sin(alpha-beta) sin(gamma-delta),
/// ascending.
std::array<double, 4> ch_closed_eigenvalues(const AngleSet& s);

/// Numeric eigenvalues of O22, cross-checked against the closed form
/// (throws past 1e-8 disagreement).
std::array<double, 4> ch_eigenvalues(const AngleSet& s);

struct BoundResult {
  double value = 0;
  AngleSet angles;
};

/// Maximum of the largest eigenvalue over all angles: grid over the two
/// effective differences plus golden-section refinement.  Deterministic
/// for any thread count.
BoundResult ch_bound_free(unsigned threads = 1);

/// One-parameter family alpha=0, beta=2t, gamma=t, delta=3t.
double theta_family_value(double theta);
/// Its closed form 1/2{[(3 - cos 4t)/2]^(1/2) - 1}.
double theta_family_closed(double theta);

/// tr(rho A); rho must pass density-matrix checks (tolerance 1e-9).
double born_expectation(const Mat& rho, const Mat& A);

}  // namespace contexture

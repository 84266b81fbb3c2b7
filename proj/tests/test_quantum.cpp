#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "contexture/quantum.hpp"

using namespace contexture;

namespace {

const double kPi = std::acos(-1.0);

double diff(const Mat& x, const Mat& y) { return max_abs(x - y); }

Mat transpose(const Mat& x) {
  Mat t(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) t.at(i, j) = x.at(j, i);
  return t;
}

}  // namespace

TEST_CASE("sigma basics") {
  auto s0 = sigma(0);
  CHECK(s0.at(0, 0) == doctest::Approx(1));
  CHECK(s0.at(1, 1) == doctest::Approx(-1));
  CHECK(s0.at(0, 1) == doctest::Approx(0));
  auto s90 = sigma(kPi / 2);
  CHECK(s90.at(0, 0) == doctest::Approx(0));
  CHECK(s90.at(0, 1) == doctest::Approx(1));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 100; ++i) {
    double t = u(rng);
    auto s = sigma(t);
    CHECK(std::fabs(trace(s)) < 1e-12);
    CHECK(diff(s * s, identity(2)) < 1e-12);
    CHECK(diff(s, transpose(s)) < 1e-12);
  }
}

TEST_CASE("q observables are projectors") {
  auto d1 = q1(0);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(d1.at(i, i) == doctest::Approx(i < 2 ? 1 : 0));
  auto d13 = q13(0, 0);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(d13.at(i, i) == doctest::Approx(i == 0 ? 1 : 0));
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 50; ++i) {
    double t = u(rng), t2 = u(rng);
    for (const auto& p : {q1(t), q3(t), q13(t, t2)}) {
      CHECK(diff(p * p, p) < 1e-12);
      CHECK(diff(p, transpose(p)) < 1e-12);
    }
    CHECK(diff(q13(t, t2), q1(t) * q3(t2)) < 1e-12);
  }
  CHECK(diff(q13(0.7, 1.9) * q13(0.7, 1.9), q13(0.7, 1.9)) < 1e-12);
}

TEST_CASE("ch operator structure") {
  AngleSet zero;
  auto o = ch_operator(zero);
  // diag(0, -1, -1, 0) when all angles vanish.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(o.at(i, j) ==
            doctest::Approx(i == j ? (i == 1 || i == 2 ? -1 : 0) : 0));
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    AngleSet a{u(rng), u(rng), u(rng), u(rng)};
    auto m = ch_operator(a);
    CHECK(std::fabs(trace(m) + 2.0) < 1e-12);
    CHECK(diff(m, transpose(m)) < 1e-14);
  }
}

TEST_CASE("jacobi solves known matrices") {
  Mat m(2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 1;
  m.at(1, 0) = 1;
  m.at(1, 1) = 2;
  auto e = jacobi_eigenvalues(m);
  CHECK(e[0] == doctest::Approx(1));
  CHECK(e[1] == doctest::Approx(3));
  auto id = jacobi_eigenvalues(identity(4));
  for (double v : id) CHECK(v == doctest::Approx(1));
}

TEST_CASE("closed form equals jacobi on 1000 random angle sets") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    AngleSet a{u(rng), u(rng), u(rng), u(rng)};
    auto numeric = jacobi_eigenvalues(ch_operator(a));
    auto closed = ch_closed_eigenvalues(a);
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(std::fabs(numeric[k] - closed[k]) < 1e-10);
    CHECK_NOTHROW(ch_eigenvalues(a));
    // No angle set exceeds the Tsirelson-type bound.
    CHECK(numeric[3] <= 0.5 * (std::sqrt(2.0) - 1.0) + 1e-9);
  }
}

TEST_CASE("degenerate angles give {0, 0, -1, -1}") {
  AngleSet a{1.3, 1.3, 0.4, 2.2};
  auto e = ch_eigenvalues(a);
  CHECK(e[0] == doctest::Approx(-1));
  CHECK(e[1] == doctest::Approx(-1));
  CHECK(e[2] == doctest::Approx(0));
  CHECK(e[3] == doctest::Approx(0));
}

TEST_CASE("known maximal angle instance") {
  AngleSet a{0, kPi / 2, kPi / 4, 3 * kPi / 4};
  auto e = ch_eigenvalues(a);
  CHECK(e[3] == doctest::Approx(0.5 * (std::sqrt(2.0) - 1.0)).epsilon(1e-10));
}

TEST_CASE("free maximization attains the bound") {
  auto r = ch_bound_free(1);
  CHECK(std::fabs(r.value - 0.5 * (std::sqrt(2.0) - 1.0)) < 1e-9);
  auto r8 = ch_bound_free(8);
  CHECK(r.value == r8.value);
  CHECK(r.angles.alpha == r8.angles.alpha);
  CHECK(r.angles.gamma == r8.angles.gamma);
}

TEST_CASE("theta family matches its closed form") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    double t = u(rng);
    CHECK(std::fabs(theta_family_value(t) - theta_family_closed(t)) < 1e-10);
  }
  CHECK(theta_family_value(0) == doctest::Approx(0).epsilon(1e-12));
  CHECK(theta_family_value(kPi / 4) ==
        doctest::Approx(0.5 * (std::sqrt(2.0) - 1.0)).epsilon(1e-10));
}

TEST_CASE("born expectation") {
  Mat rho(4);
  rho.at(0, 0) = 1;  // projector onto e1
  CHECK(born_expectation(rho, q13(0, 0)) == doctest::Approx(1));
  Mat mixed = scale(0.25, identity(4));
  AngleSet a{0.3, 1.1, -0.4, 2.0};
  CHECK(born_expectation(mixed, ch_operator(a)) == doctest::Approx(-0.5));

  Mat bad_trace = scale(0.5, identity(4));
  CHECK_THROWS(born_expectation(bad_trace, ch_operator(a)));
  Mat asym(4);
  asym.at(0, 0) = 1;
  asym.at(0, 1) = 0.5;
  CHECK_THROWS(born_expectation(asym, ch_operator(a)));
  Mat negative(4);
  negative.at(0, 0) = 2;
  negative.at(1, 1) = -1;
  CHECK_THROWS(born_expectation(negative, ch_operator(a)));
  Mat small = identity(2);
  CHECK_THROWS(born_expectation(small, ch_operator(a)));
}

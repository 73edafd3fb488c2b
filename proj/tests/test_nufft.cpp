#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "equi/nufft.hpp"
#include "oracles.hpp"

using namespace equi;

namespace {

double type1_error(const FourierSeries& got, std::span<const cplx> ref, double weight_mass) {
  double worst = 0.0;
  for (int k = got.k_min(); k <= got.k_max(); ++k)
    worst = std::max(worst, std::abs(got.at(k) - ref[static_cast<size_t>(k + got.modes() / 2)]));
  return worst / weight_mass;
}

double type2_error(std::span<const cplx> got, std::span<const cplx> ref, double coeff_mass) {
  double worst = 0.0;
  for (size_t j = 0; j < got.size(); ++j) worst = std::max(worst, std::abs(got[j] - ref[j]));
  return worst / coeff_mass;
}

}  // namespace

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(make_nufft_plan(63, 1e-12), Error);
  CHECK_THROWS_AS(make_nufft_plan(64, 1e-16), Error);
  CHECK_THROWS_AS(make_nufft_plan(64, 0.5), Error);
  const NufftPlan p = make_nufft_plan(64, 1e-12);
  CHECK(p.fine_n == 128);
  CHECK(p.half_width == 14);
}

TEST_CASE("empty node set gives zero output") {
  const NufftPlan p = make_nufft_plan(16, 1e-10);
  const FourierSeries f = nufft_type1(p, std::vector<double>{}, std::vector<cplx>{});
  for (int k = f.k_min(); k <= f.k_max(); ++k) CHECK(std::abs(f.at(k)) == 0.0);
  CHECK(nufft_type2(p, std::vector<double>{}, FourierSeries(16)).empty());
}

TEST_CASE("single node at the origin gives all-ones coefficients") {
  const NufftPlan p = make_nufft_plan(32, 1e-13);
  const std::vector<double> nodes{0.0};
  const std::vector<cplx> weights{cplx{1.0, 0.0}};
  const FourierSeries f = nufft_type1(p, nodes, weights);
  for (int k = f.k_min(); k <= f.k_max(); ++k) CHECK(std::abs(f.at(k) - 1.0) < 1e-13);
}

TEST_CASE("uniform nodes reduce Type-1 to the scaled DFT") {
  const int n = 64;
  UniformGrid grid(n);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  std::vector<double> samples(static_cast<size_t>(n));
  for (auto& v : samples) v = dist(rng);

  std::vector<cplx> weights(samples.begin(), samples.end());
  const NufftPlan p = make_nufft_plan(n, 1e-13);
  const FourierSeries got = nufft_type1(p, grid.nodes(), weights);
  const FourierSeries ref = forward_coeffs(samples);  // (1/n) scaling
  double mass = 0.0;
  for (const auto& w : weights) mass += std::abs(w);
  for (int k = got.k_min(); k <= got.k_max(); ++k)
    CHECK(std::abs(got.at(k) - static_cast<double>(n) * ref.at(k)) <= 1e-13 * mass);
}

TEST_CASE("Type-2 at a few nodes of the cos series") {
  FourierSeries f(8);
  f.at(1) = 0.5;
  f.at(-1) = 0.5;
  const NufftPlan p = make_nufft_plan(8, 1e-13);
  const std::vector<double> nodes{0.0, M_PI / 2.0, M_PI};
  const auto vals = nufft_type2(p, nodes, f);
  CHECK(std::abs(vals[0] - cplx{1.0, 0.0}) < 1e-13);
  CHECK(std::abs(vals[1]) < 1e-13);
  CHECK(std::abs(vals[2] - cplx{-1.0, 0.0}) < 1e-13);
}

TEST_CASE("uniform nodes reduce Type-2 to the inverse transform") {
  const int m = 32;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> dist;
  std::vector<double> samples(static_cast<size_t>(m));
  for (auto& v : samples) v = dist(rng);
  const FourierSeries f = forward_coeffs(samples);

  UniformGrid grid(m);
  const NufftPlan p = make_nufft_plan(m, 1e-13);
  const auto got = nufft_type2(p, grid.nodes(), f);
  const auto ref = inverse_samples_complex(f, m);
  double mass = 0.0;
  for (int k = f.k_min(); k <= f.k_max(); ++k) mass += std::abs(f.at(k));
  for (int j = 0; j < m; ++j)
    CHECK(std::abs(got[static_cast<size_t>(j)] - ref[static_cast<size_t>(j)]) <= 1e-13 * mass);
}

TEST_CASE("random instances meet the requested accuracy against direct summation") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(0.0, two_pi);
  std::normal_distribution<double> dist;
  std::uniform_int_distribution<int> size_dist(1, 256);

  for (double eps : {1e-4, 1e-8, 1e-12}) {
    double worst1 = 0.0, worst2 = 0.0;
    for (int inst = 0; inst < 25; ++inst) {
      const int n = 2 * size_dist(rng);
      const int m = 2 * size_dist(rng);
      std::vector<double> nodes(static_cast<size_t>(n));
      std::vector<cplx> weights(static_cast<size_t>(n));
      double mass1 = 0.0;
      for (int j = 0; j < n; ++j) {
        nodes[static_cast<size_t>(j)] = uni(rng);
        weights[static_cast<size_t>(j)] = cplx{dist(rng), dist(rng)};
        mass1 += std::abs(weights[static_cast<size_t>(j)]);
      }
      const NufftPlan plan = make_nufft_plan(m, eps);
      const FourierSeries got1 = nufft_type1(plan, nodes, weights);
      const auto ref1 = oracles::direct_type1(nodes, weights, m);
      worst1 = std::max(worst1, type1_error(got1, ref1, mass1));

      std::vector<cplx> coeffs(static_cast<size_t>(m));
      double mass2 = 0.0;
      for (auto& c : coeffs) {
        c = cplx{dist(rng), dist(rng)};
        mass2 += std::abs(c);
      }
      const auto got2 = nufft_type2(plan, nodes, FourierSeries(m, coeffs));
      const auto ref2 = oracles::direct_type2(nodes, coeffs, m);
      worst2 = std::max(worst2, type2_error(got2, ref2, mass2));
    }
    CAPTURE(eps);
    CHECK(worst1 <= eps);
    CHECK(worst2 <= eps);
    MESSAGE("eps=", eps, " worst type1=", worst1, " type2=", worst2);
  }
}

TEST_CASE("257 random nodes match direct summation at 1e-12") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uni(0.0, two_pi);
  std::normal_distribution<double> dist;
  const int n = 257, m = 64;
  std::vector<double> nodes(n);
  std::vector<cplx> weights(n);
  double mass = 0.0;
  for (int j = 0; j < n; ++j) {
    nodes[static_cast<size_t>(j)] = uni(rng);
    const double phase = uni(rng);
    weights[static_cast<size_t>(j)] = cplx{std::cos(phase), std::sin(phase)};  // unit weights
    mass += 1.0;
  }
  const NufftPlan plan = make_nufft_plan(m, 1e-12);
  const FourierSeries got = nufft_type1(plan, nodes, weights);
  const auto ref = oracles::direct_type1(nodes, weights, m);
  CHECK(type1_error(got, ref, mass) <= 1e-12);
}

TEST_CASE("Type-2 random nodes at m=128, eps=1e-13") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.0, two_pi);
  std::normal_distribution<double> dist;
  const int n = 300, m = 128;
  std::vector<double> nodes(n);
  for (auto& x : nodes) x = uni(rng);
  std::vector<cplx> coeffs(static_cast<size_t>(m));
  double mass = 0.0;
  for (auto& c : coeffs) {
    c = cplx{dist(rng), dist(rng)};
    mass += std::abs(c);
  }
  const NufftPlan plan = make_nufft_plan(m, 1e-13);
  const auto got = nufft_type2(plan, nodes, FourierSeries(m, coeffs));
  const auto ref = oracles::direct_type2(nodes, coeffs, m);
  CHECK(type2_error(got, ref, mass) <= 1e-13);
}

TEST_CASE("adjoint consistency of the two transform types") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uni(0.0, two_pi);
  std::normal_distribution<double> dist;
  const int n = 120, m = 64;
  const double eps = 1e-12;
  std::vector<double> nodes(n);
  for (auto& x : nodes) x = uni(rng);
  std::vector<cplx> f(static_cast<size_t>(n));
  double f_mass = 0.0;
  for (auto& v : f) {
    v = cplx{dist(rng), dist(rng)};
    f_mass += std::abs(v);
  }
  std::vector<cplx> c(static_cast<size_t>(m));
  double c_mass = 0.0;
  for (auto& v : c) {
    v = cplx{dist(rng), dist(rng)};
    c_mass += std::abs(v);
  }

  const NufftPlan plan = make_nufft_plan(m, eps);
  const auto t2 = nufft_type2(plan, nodes, FourierSeries(m, c));
  const FourierSeries t1 = nufft_type1(plan, nodes, f);

  cplx lhs{0.0, 0.0};
  for (int j = 0; j < n; ++j) lhs += t2[static_cast<size_t>(j)] * std::conj(f[static_cast<size_t>(j)]);
  cplx rhs{0.0, 0.0};
  for (int k = -m / 2; k < m / 2; ++k)
    rhs += c[static_cast<size_t>(k + m / 2)] * std::conj(t1.at(k));
  CHECK(std::abs(lhs - rhs) <= 10.0 * eps * f_mass * c_mass);
}

TEST_CASE("accuracy improves monotonically (within 10x) as eps decreases") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0.0, two_pi);
  std::normal_distribution<double> dist;
  const int n = 200, m = 96;
  std::vector<double> nodes(n);
  for (auto& x : nodes) x = uni(rng);
  std::vector<cplx> weights(static_cast<size_t>(n));
  double mass = 0.0;
  for (auto& w : weights) {
    w = cplx{dist(rng), dist(rng)};
    mass += std::abs(w);
  }
  const auto ref = oracles::direct_type1(nodes, weights, m);

  double prev = 1e300;
  for (double eps : {1e-4, 1e-8, 1e-12}) {
    const FourierSeries got = nufft_type1(make_nufft_plan(m, eps), nodes, weights);
    const double err = type1_error(got, ref, mass);
    CHECK(err <= 10.0 * prev);
    prev = err;
  }
}

TEST_CASE("translation equivariance of Type-1") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> uni(0.0, two_pi);
  std::normal_distribution<double> dist;
  const int n = 150, m = 64;
  const double eps = 1e-12, delta = 0.8371;
  std::vector<double> nodes(n), shifted(n);
  for (int j = 0; j < n; ++j) {
    nodes[static_cast<size_t>(j)] = uni(rng);
    shifted[static_cast<size_t>(j)] = nodes[static_cast<size_t>(j)] + delta;
  }
  std::vector<cplx> weights(static_cast<size_t>(n));
  double mass = 0.0;
  for (auto& w : weights) {
    w = cplx{dist(rng), dist(rng)};
    mass += std::abs(w);
  }
  const NufftPlan plan = make_nufft_plan(m, eps);
  const FourierSeries base = nufft_type1(plan, nodes, weights);
  const FourierSeries moved = nufft_type1(plan, shifted, weights);
  for (int k = base.k_min(); k <= base.k_max(); ++k) {
    const cplx expected = base.at(k) * std::polar(1.0, -k * delta);
    CHECK(std::abs(moved.at(k) - expected) <= 10.0 * eps * mass);
  }
}

TEST_CASE("real-pair evaluation matches two separate evaluations") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uni(0.0, two_pi);
  std::normal_distribution<double> dist;
  const int m = 64, n = 90;
  std::vector<double> a_s(static_cast<size_t>(m)), b_s(static_cast<size_t>(m));
  for (auto& v : a_s) v = dist(rng);
  for (auto& v : b_s) v = dist(rng);
  const FourierSeries a = forward_coeffs(a_s), b = forward_coeffs(b_s);
  std::vector<double> nodes(static_cast<size_t>(n));
  for (auto& x : nodes) x = uni(rng);

  const NufftPlan plan = make_nufft_plan(m, 1e-13);
  const SpreadTable table = make_spread_table(plan, nodes);
  const RealPairValues pair = nufft_type2_real_pair(plan, table, nodes, a, b);
  const RealPairValues direct = direct_type2_real_pair(nodes, a, b);

  double mass_a = 0.0, mass_b = 0.0;
  for (int k = a.k_min(); k <= a.k_max(); ++k) {
    mass_a += std::abs(a.at(k));
    mass_b += std::abs(b.at(k));
  }
  for (size_t j = 0; j < nodes.size(); ++j) {
    CHECK(std::abs(pair.a[j] - direct.a[j]) <= 1e-13 * (mass_a + mass_b));
    CHECK(std::abs(pair.b[j] - direct.b[j]) <= 1e-13 * (mass_a + mass_b));
  }
}

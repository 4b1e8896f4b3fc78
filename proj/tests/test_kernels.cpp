#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "scn/kernels.hpp"

using namespace scn;
using namespace scn::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

constexpr ActivationKind kAllKinds[] = {ActivationKind::Sigmoid, ActivationKind::Tanh,
                                        ActivationKind::Gaussian, ActivationKind::Sine,
                                        ActivationKind::Cosine};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar kernels match hand values") {
    const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
    CHECK(dot(Isa::Scalar, x, y) == 32.0);
    std::vector<double> z{1, 1, 1};
    axpy(Isa::Scalar, 2.0, x, z);
    CHECK(z == std::vector<double>{3, 5, 7});
    std::vector<double> t{0.0};
    activate_inplace(Isa::Scalar, ActivationKind::Sigmoid, t);
    CHECK(t[0] == 0.5);
  }

  TEST_CASE("every available ISA agrees with the scalar reference") {
    std::mt19937_64 rng(11);
    for (Isa isa : available_isas()) {
      CAPTURE(isa_name(isa));
      // lengths cover empty input, vector tails and the unrolled main loop
      for (std::size_t n : {0, 1, 3, 4, 5, 15, 16, 17, 33, 1000, 1001}) {
        CAPTURE(n);
        const auto x = random_vec(rng, n, -3, 3);
        const auto y = random_vec(rng, n, -3, 3);
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i] * y[i]);
        CHECK(std::abs(dot(isa, x, y) - dot(Isa::Scalar, x, y)) <= 1e-14 * (scale + 1.0));

        auto ys = y, yv = y;
        axpy(Isa::Scalar, -0.7, x, ys);
        axpy(isa, -0.7, x, yv);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ys[i] - yv[i]) <= 1e-15 * (std::abs(ys[i]) + 4.0));

        for (ActivationKind kind : kAllKinds) {
          CAPTURE(to_string(kind));
          auto zs = random_vec(rng, n, -40, 40);
          auto zv = zs;
          activate_inplace(Isa::Scalar, kind, zs);
          activate_inplace(isa, kind, zv);
          for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(zs[i] - zv[i]) <= 4e-16 + 4e-15 * std::abs(zs[i]));
          }
        }
      }
    }
  }

  TEST_CASE("vector activations stay accurate over extreme inputs") {
    for (Isa isa : available_isas()) {
      std::vector<double> z{-800, -709.5, -50, -1e-300, 0, 1e-300, 1e-8, 50, 709.5, 800};
      for (ActivationKind kind : {ActivationKind::Sigmoid, ActivationKind::Tanh, ActivationKind::Gaussian}) {
        auto v = z;
        activate_inplace(isa, kind, v);
        for (std::size_t i = 0; i < z.size(); ++i) {
          CHECK(std::isfinite(v[i]));
          CHECK(std::abs(v[i] - activate(kind, z[i])) <= 1e-15 + 4e-15 * std::abs(v[i]));
        }
      }
    }
  }

  TEST_CASE("dispatch can be forced to scalar and restored") {
    const Isa before = active_isa();
    set_active_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    set_active_isa(before);
    CHECK(active_isa() == before);
  }

  TEST_CASE("length mismatch is rejected") {
    const std::vector<double> a{1, 2}, b{1};
    CHECK_THROWS_AS(dot(a, b), std::invalid_argument);
  }
}

#include "qpd/chaos_scalar.hpp"
#include "qpd/kernels/xi_kernels.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstring>
#include <limits>

using namespace qpd;
using namespace qpd::kernels;

namespace {

std::int64_t ulp_distance(double a, double b) {
  std::int64_t ia, ib;
  std::memcpy(&ia, &a, sizeof a);
  std::memcpy(&ib, &b, sizeof b);
  if (ia < 0) ia = std::numeric_limits<std::int64_t>::min() - ia;
  if (ib < 0) ib = std::numeric_limits<std::int64_t>::min() - ib;
  return ia > ib ? ia - ib : ib - ia;
}

std::vector<Backend> backends() {
  std::vector<Backend> out{Backend::Scalar};
  if (available(Backend::Avx2)) out.push_back(Backend::Avx2);
  return out;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(available(Backend::Scalar));
  CHECK(available(best_backend()));
  if (!available(Backend::Avx2)) {
    MESSAGE("AVX2 backend unavailable; equivalence tests cover the scalar path only");
    std::vector<double> in(3, 0.0), out(3);
    CHECK_THROWS(exp_batch(in, out, Backend::Avx2));
  }
}

TEST_CASE("exp_batch stays within 2 ulp of std::exp") {
  test::Rng rng(1);
  std::vector<double> in;
  for (int k = 0; k < 20000; ++k) in.push_back(rng.uniform(-700, 700));
  for (int k = 0; k < 20000; ++k) in.push_back(rng.uniform(-5, 5));
  for (double x : {0.0, -0.0, 1.0, -1.0, 1e-300, 709.0, -708.0, 0.5 * std::log(2.0)}) in.push_back(x);
  for (auto b : backends()) {
    std::vector<double> out(in.size());
    exp_batch(in, out, b);
    std::int64_t worst = 0;
    for (std::size_t i = 0; i < in.size(); ++i) worst = std::max(worst, ulp_distance(out[i], std::exp(in[i])));
    INFO("backend " << to_string(b));
    CHECK(worst <= 2);
  }
}

TEST_CASE("exp_batch special values") {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> in{800.0, -800.0, inf, -inf, std::nan("")};
  for (auto b : backends()) {
    std::vector<double> out(in.size());
    exp_batch(in, out, b);
    CHECK(out[0] == inf);
    CHECK(out[1] == 0.0);
    CHECK(out[2] == inf);
    CHECK(out[3] == 0.0);
    CHECK(std::isnan(out[4]));
  }
}

TEST_CASE("batched xi iteration matches the scalar map on every length") {
  test::Rng rng(2);
  for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
    std::vector<double> x(len);
    for (auto& v : x) v = rng.uniform(0.0, 20.0);
    for (auto b : backends()) {
      std::vector<double> out(len), res(len);
      xi_iterate(x, out, 3.2, 3, b);
      xi_cycle_residual(x, res, 3.2, 3, b);
      for (std::size_t i = 0; i < len; ++i) {
        const double ref = chaos::xi_iterate(x[i], 3.2, 3);
        CHECK(out[i] == doctest::Approx(ref).epsilon(1e-13).scale(1e-300));
        CHECK(res[i] == doctest::Approx(ref - x[i]).epsilon(1e-12).scale(1e-12));
      }
    }
  }
  std::vector<double> a(3), b(4);
  CHECK_THROWS(xi_iterate(a, b, 3.0, 1, Backend::Scalar));
}

TEST_CASE("period-3 search returns the same cycle on every backend") {
  for (double rho : {3.11, 3.2, 3.4}) {
    std::vector<chaos::Cycle3> cycles;
    for (auto b : backends()) {
      chaos::Period3Options o;
      o.backend = b;
      const auto c = chaos::find_period3(rho, o);
      REQUIRE(c);
      cycles.push_back(*c);
    }
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < 3; ++i) CHECK(c[i] == doctest::Approx(cycles.front()[i]).epsilon(1e-10));
  }
}

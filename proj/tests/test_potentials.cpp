#include "doctest.h"
#include "dpw/errors.hpp"
#include "dpw/potentials.hpp"

using namespace dpw;

namespace {

const Mat2 kA = Mat2::offdiag(1.0, 1.0);

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("make_xi examples") {
  CHECK(distance(make_xi(-1, 1.0)(1.0, 1.0), kA) < 1e-15);
  const auto xi0 = make_xi(0, cplx{2.0, 1.0});
  CHECK(distance(xi0(cplx{0.3, 0.2}, kI), xi0(cplx{-1.5, 4.0}, kI)) == 0.0);
  CHECK(distance(make_xi(2, 3.0)(2.0, 1.0), Mat2::offdiag(1.0, 12.0)) < 1e-14);
  CHECK(distance(make_xi(2, 3.0)(2.0, 0.5), Mat2::offdiag(2.0, 24.0)) < 1e-14);
  CHECK(kind_of([] { make_xi(1, 0.0); }) == ErrorKind::kZeroC);
}

TEST_CASE("potential values carry only the lambda^-1 off-diagonal coefficient") {
  const auto loop = make_xi(-1, cplx{2.0, -1.0}).at(ZPoint::principal({0.7, 0.4}));
  CHECK(loop.min_degree() == -1);
  CHECK(loop.max_degree() == -1);
  CHECK(loop.coefficient(-1).is_offdiagonal(1e-15));
}

TEST_CASE("apply_gauge examples") {
  const auto samples = draw_samples({20, 3});
  const auto xi = make_xi(-1, cplx{0.5, 2.0});
  CHECK(potential_distance(apply_gauge(xi, identity_gauge()), xi, samples) == 0.0);

  const cplx c{0.5, 2.0}, mu{1.3, -0.4};
  const auto gauged = apply_gauge(xi, constant_gauge(Mat2::diag(mu, 1.0 / mu)));
  const Potential oracle("oracle", [=](const ZPoint& z, cplx l) {
    return Mat2::offdiag(1.0 / (mu * mu), c * mu * mu / z.z) * (1.0 / l);
  });
  CHECK(potential_distance(gauged, oracle, samples) < 1e-13);

  CHECK(kind_of([&] { apply_gauge(xi, constant_gauge(Mat2::diag(1.0, 0.0)))(1.0, 1.0); }) ==
        ErrorKind::kSingularGauge);
}

TEST_CASE("invert_z examples") {
  const cplx c{1.5, -0.5};
  CHECK(distance(invert_z(make_xi(-1, c))(1.0, 1.0), Mat2::offdiag(-1.0, -c)) < 1e-15);
  const auto samples = draw_samples({50, 5});
  for (int k : {-3, -1, 0, 2}) {
    const auto xi = make_xi(k, c);
    CHECK(potential_distance(invert_z(invert_z(xi)), xi, samples) <= 1e-12);
  }
  const Potential oracle("oracle", [c](const ZPoint& z, cplx l) {
    return Mat2::offdiag(-1.0 / (z.z * z.z), -c) * (1.0 / l);
  });
  CHECK(potential_distance(invert_z(make_xi(-2, c)), oracle, samples) < 1e-13);
}

TEST_CASE("k equivalence certificates") {
  for (auto [k, c] : {std::pair<int, cplx>{0, 1.0}, {-2, 1.0}, {1, {2.0, 1.0}}, {2, 0.7}, {3, {0.0, 1.0}}}) {
    const auto report = k_equivalence_certificate(k, c);
    CHECK(report.partner == -k - 4);
    CHECK(report.samples == 100);
    CHECK(report.max_residual < 1e-10);
  }
}

TEST_CASE("gauge derivatives match finite differences") {
  const auto samples = draw_samples({20, 17});
  std::vector<GaugeLoop> gauges = section5_chain(1.3).gauges;
  gauges.push_back(inversion_partner_gauge());
  for (const auto& g : gauges) {
    for (const auto& s : samples) {
      CAPTURE(g.descriptor());
      CHECK(g.derivative_defect(s.z, s.lambda) <= 1e-6);
    }
  }
}

TEST_CASE("reduction chain: gauges are positive loops") {
  for (double c : {1.0, 2.0}) {
    const auto chain = section5_chain(c);
    for (const auto& g : chain.gauges) {
      CAPTURE(g.descriptor());
      CHECK(g.negative_mass(ZPoint::principal({0.8, 0.3})) < 1e-12);
    }
  }
}

TEST_CASE("reduction chain: chain stage by stage") {
  const auto samples = draw_samples({20, 23});
  for (double c : {1.0, 0.3, 2.5}) {
    const auto chain = section5_chain(c);
    REQUIRE(chain.stages.size() == 5);
    for (int stage = 1; stage <= 5; ++stage) {
      CAPTURE(c);
      CAPTURE(stage);
      CHECK(potential_distance(chain.stages[stage - 1], section5_expected_stage(stage, c), samples) < 1e-10);
    }
    CHECK(potential_distance(chain.final_potential(), reduced_cylinder_potential(c), samples) < 1e-10);
  }
}

TEST_CASE("reduction chain: final potential for c = 1 is the reduced cylinder") {
  const auto chain = section5_chain(1.0);
  const ZPoint z = ZPoint::principal({0.6, -0.9});
  const auto loop = chain.final_potential().at(z);
  CHECK(loop.min_degree() == -1);
  CHECK(loop.max_degree() == -1);
  CHECK(distance(loop.coefficient(-1), kA * (1.0 / z.z)) < 1e-12);
}

TEST_CASE("reduction chain: branch point rejection") {
  const std::vector<cplx> lambdas{kI, 1.0};
  CHECK(kind_of([&] { section5_chain(0.25, lambdas); }) == ErrorKind::kBranchPointHit);
  CHECK(kind_of([&] { section5_chain(0.25); }) == ErrorKind::kBranchPointHit);
  CHECK(kind_of([&] { section5_chain(-1.0); }) == ErrorKind::kInvalidArgument);
  CHECK_NOTHROW(section5_chain(0.25, std::vector<cplx>{1.0, -1.0}));
}

TEST_CASE("normalize_c") {
  const auto samples = draw_samples({30, 29});
  const auto target = make_xi(-1, 1.0);
  const auto one = normalize_c(make_xi(-1, 1.0));
  CHECK(one.scale.alpha == 1.0);
  CHECK(one.gauge.descriptor() == "identity");
  for (cplx c : {cplx{4.0}, kI, cplx{2.0, -1.0}}) {
    const auto n = normalize_c(make_xi(-1, c));
    CHECK(potential_distance(n.normalized, target, samples) < 1e-12);
  }
  CHECK(kind_of([] { normalize_c(make_xi(0, 2.0)); }) == ErrorKind::kInvalidArgument);
}

#include <cmath>
#include <cstring>

#include "doctest.h"
#include "mmfista/multilevel.hpp"

using namespace mmfista;

namespace {

struct Fixture {
  Hierarchy hier;
  GridImage z;
  std::vector<CompositeObjective> objectives;

  explicit Fixture(Shape shape = {64, 64}, int depth = 3, double lambda = 0.02) {
    auto blur = std::make_shared<const SeparableBlur>(shape, make_gaussian_psf(7, 1.5));
    LevelSpec fine{shape, blur, L1SynthesisPrior(WaveletBasis::symlet(4), shape, max_dwt_levels(shape), lambda),
                   1.0, 0.0};
    hier = build_hierarchy(fine, depth, WaveletBasis::symlet(4));
    z = blur->apply(random_normal(shape, 77)) ;
    objectives.push_back(hier.levels[0].objective(z));
    for (int l = 1; l < hier.depth(); ++l)
      objectives.push_back(hier.levels[static_cast<std::size_t>(l)].objective(
          hier.transfers[static_cast<std::size_t>(l - 1)].restrict(objectives.back().observation)));
  }
};

bool same_bits(const GridImage& a, const GridImage& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("hierarchy construction") {
  Fixture f;
  REQUIRE(f.hier.depth() == 3);
  CHECK(f.hier.levels[1].shape == Shape{32, 32});
  CHECK(f.hier.levels[2].shape == Shape{16, 16});
  CHECK(f.hier.levels[1].prior.lambda == doctest::Approx(0.02 / 4));
  CHECK(f.hier.levels[2].prior.lambda == doctest::Approx(0.02 / 16));
  CHECK(f.hier.levels[1].prior.levels() == f.hier.levels[0].prior.levels() - 1);
  CHECK(f.hier.levels[1].gamma == doctest::Approx(1.1));
  CHECK(f.hier.levels[0].gamma == 1.0);
  CHECK(f.hier.levels[0].lipschitz_f == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(f.hier.levels[1].lipschitz_f == doctest::Approx(1.0 / 16).epsilon(2e-2));

  auto blur = std::make_shared<const SeparableBlur>(Shape{4, 4}, delta_psf());
  LevelSpec tiny{Shape{4, 4}, blur, L1SynthesisPrior(WaveletBasis::haar(), Shape{4, 4}, 1, 0.1), 1.0, 1.0};
  CHECK_NOTHROW(build_hierarchy(tiny, 3, WaveletBasis::haar()));
  CHECK_THROWS_AS(build_hierarchy(tiny, 4, WaveletBasis::haar()), ParameterError);
  CHECK_THROWS_AS(build_hierarchy(tiny, 1, WaveletBasis::haar()), ParameterError);

  HierarchyOptions flat;
  flat.compound_lambda = false;
  Fixture g;
  const Hierarchy h2 = build_hierarchy(g.hier.levels[0], 3, WaveletBasis::symlet(4), flat);
  CHECK(h2.levels[2].prior.lambda == doctest::Approx(0.02 / 4));
}

TEST_CASE("coarse model is first-order coherent") {
  Fixture f;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GridImage y = random_normal(f.z.shape(), seed);
    const CoarseModel m = build_coarse_model(f.objectives[0], f.objectives[1], f.hier.transfers[0], y);
    const GridImage lhs = m.objective.smoothed_grad(m.anchor);
    const GridImage rhs = f.hier.transfers[0].restrict(f.objectives[0].smoothed_grad(y));
    CHECK(norm2(lhs - rhs) <= 1e-10 * norm2(m.fine_smoothed_grad));
    CHECK(norm2(m.anchor - f.hier.transfers[0].restrict(y)) == 0.0);
  }
}

TEST_CASE("coarse corrections are descent directions with the eta proportionality") {
  Fixture f;
  for (auto kind : {CoarseSolverKind::SmoothedGradient, CoarseSolverKind::ForwardBackward, CoarseSolverKind::FistaFB}) {
    MmfistaConfig cfg;
    cfg.kind = kind;
    const VCycleContext ctx{f.hier, f.objectives, cfg};
    const GridImage y = random_normal(f.z.shape(), 5);
    const CoarseModel m = build_coarse_model(f.objectives[0], f.objectives[1], f.hier.transfers[0], y);
    const CorrectionResult c = coarse_correction(m, 1, ctx);
    REQUIRE(c.records.size() == 2);
    CHECK(c.records[0].level == 2);
    CHECK(c.records[1].level == 1);
    const auto& top = c.records.back();
    CHECK(top.F_smoothed_out <= top.F_smoothed_in);
    if (c.accepted) {
      CHECK(top.fine_directional < 0.0);
      CHECK(std::abs(top.fine_directional - top.coarse_directional) <= 1e-10 * std::abs(top.fine_directional));
      CHECK(dot(c.direction, m.fine_smoothed_grad) == doctest::Approx(top.fine_directional).epsilon(1e-12));
    }
    CHECK(top.coherence_residual <= 1e-10);
    CHECK(c.work_units > 0.0);
  }
}

TEST_CASE("tau bar selection") {
  Fixture f;
  const auto& obj = f.objectives[0];
  const GridImage y = random_normal(f.z.shape(), 3);
  const GridImage g = obj.smoothed_grad(y);
  CHECK(select_tau_bar(obj, y, -1.0 * g, TauBarFixed{0.5}) == 0.5);
  CHECK_THROWS_AS(select_tau_bar(obj, y, g, TauBarFixed{0.0}), ParameterError);

  int evals = 0;
  const double t = select_tau_bar(obj, y, -1e3 * g, TauBarLinesearch{}, &evals);
  CHECK(t > 0.0);
  CHECK(std::log2(t) == doctest::Approx(std::round(std::log2(t))));
  GridImage moved = y;
  moved.add_scaled(t, -1e3 * g);
  CHECK(obj.smoothed_value(moved) <= obj.smoothed_value(y));
  CHECK(evals >= 2);
  CHECK(select_tau_bar(obj, y, g, TauBarLinesearch{}) == 0.0);
}

TEST_CASE("correction diagnostic matches its formula") {
  Fixture f;
  const auto& obj = f.objectives[0];
  const GridImage d = random_normal(f.z.shape(), 8);
  const double tau = 0.9;
  GridImage c = d;
  c.add_scaled(-tau, obj.blur->apply_adjoint(obj.blur->apply(d)));
  CHECK(correction_diagnostic(tau, 2.0, obj, d) == doctest::Approx(2.0 / tau * norm2(c)).epsilon(1e-13));
  CHECK(correction_diagnostic(tau, 1.0, obj, GridImage(d.shape())) == 0.0);
}

TEST_CASE("p = 0 reproduces FISTA bit for bit") {
  Fixture f;
  MmfistaConfig cfg;
  cfg.p = 0;
  cfg.eps = 0.0;
  cfg.max_iter = 60;
  const GridImage x0(f.z.shape());
  const MmfistaResult mm = mmfista_run(f.hier, f.z, x0, cfg);
  const SolverResult fi = fista_run(f.objectives[0], x0, MomentumSchedule{}, 0.99 / f.hier.levels[0].lipschitz_f,
                                    StopRule{0.0, 60});
  CHECK(same_bits(mm.x, fi.x));
  REQUIRE(mm.trace.records.size() == fi.trace.records.size());
  for (std::size_t k = 0; k < fi.trace.records.size(); ++k) {
    CHECK(mm.trace.records[k].F == fi.trace.records[k].F);
    CHECK(mm.trace.records[k].work_units == fi.trace.records[k].work_units);
  }
  CHECK(mm.cycles.empty());
}

TEST_CASE("coarse corrections are limited to p uses") {
  Fixture f;
  for (int p : {1, 2, 3}) {
    MmfistaConfig cfg;
    cfg.p = p;
    cfg.eps = 0.0;
    cfg.max_iter = 40;
    const MmfistaResult r = mmfista_run(f.hier, f.z, GridImage(f.z.shape()), cfg);
    CHECK(r.coarse_uses <= p);
    int nonzero = 0;
    for (const auto& rec : r.trace.records) nonzero += rec.correction_norm > 0.0;
    CHECK(nonzero == r.coarse_uses);
    for (const auto& c : r.cycles) CHECK(c.k <= 2 * p);
    CHECK(r.trace.records.back().work_units > 40.0);
  }
  MmfistaConfig bad;
  bad.m = 0;
  CHECK_THROWS_AS(mmfista_run(f.hier, f.z, GridImage(f.z.shape()), bad), ParameterError);
}

TEST_CASE("work units account for coarse levels") {
  Fixture f(Shape{64, 64}, 2);
  MmfistaConfig cfg;
  cfg.p = 1;
  cfg.m = 5;
  cfg.eps = 0.0;
  cfg.max_iter = 3;
  const MmfistaResult r = mmfista_run(f.hier, f.z, GridImage(f.z.shape()), cfg);
  REQUIRE(r.coarse_uses == 1);
  // Model (fine gradient + coarse gradient), 5 coarse steps, 2 guard evaluations,
  // then the fine step.
  CHECK(r.trace.records[1].work_units == doctest::Approx(1.0 + 0.25 + 0.25 * (5 + 2) + 1.0));
  CHECK(r.trace.records[3].work_units == doctest::Approx(r.trace.records[1].work_units + 2.0));
}

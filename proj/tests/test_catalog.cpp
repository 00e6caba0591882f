#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "grids.hpp"
#include "lrb/catalog.hpp"

using lrb::Direction;
using lrb::DistributionSpec;
using lrb::TailQuery;

namespace {

TailQuery query_for(const std::string& entry_id, double z, long n) {
  const auto* meta = lrb::find_entry(entry_id);
  REQUIRE(meta != nullptr);
  return TailQuery{meta->direction, z, n};
}

}  // namespace

TEST_CASE("catalog has the full entry set") {
  const auto& cat = lrb::list_catalog();
  CHECK(cat.size() == 37);
  std::set<std::string> ids;
  for (const auto& e : cat) ids.insert(e.id);
  CHECK(ids.size() == cat.size());
  for (const char* id :
       {"normal_lower", "normal_upper", "beta_lower", "beta_upper",
        "beta_lower_beta1", "beta_negbinom_cdf", "betaprime_lower_a",
        "betaprime_lower_b", "betaprime_lower", "borel_lower", "consul_lower",
        "geeta_lower", "gumbel_lower", "invgamma_lower_a", "invgamma_lower_b",
        "invgamma_lower", "invgauss_lower", "laglog_lower", "lagnegbin_lower",
        "laplace_upper", "laplace_lower", "logarithmic_lower", "lognormal_lower",
        "nakagami_lower", "nakagami_upper", "pareto_lower", "powerlaw_lower",
        "stirling_lower", "f_upper", "f_lower", "t_twosided_outer",
        "t_twosided_inner", "truncexp_lower", "uniform_upper", "uniform_lower",
        "weibull_lower", "weibull_upper"})
    CHECK_MESSAGE(ids.count(id) == 1, id);
  CHECK(lrb::find_entry("betaprime_lower")->derived);
  CHECK(lrb::find_entry("invgamma_lower")->derived);
  CHECK_FALSE(lrb::find_entry("f_upper")->scales_with_n);
  CHECK_FALSE(lrb::find_entry("beta_negbinom_cdf")->scales_with_n);
}

TEST_CASE("every grid point evaluates as a valid positive bound") {
  for (const auto& gc : grids::univariate()) {
    const auto* meta = lrb::find_entry(gc.entry);
    // Entries whose tilt attains the infimum stay at or below 1 (the family
    // contains a unit point); plug-in tilts may legally exceed 1 near the
    // validity edge.
    bool attained = false;
    if (!meta->derived) {
      const auto probe = lrb::make_lr_family(
          gc.entry, gc.spec, query_for(gc.entry, gc.zs[gc.zs.size() / 2], 1));
      attained = probe.closed_form_theta_star.has_value();
    }
    for (double z : gc.zs) {
      for (long n : gc.ns) {
        const auto r = lrb::evaluate_bound(gc.entry, gc.spec, query_for(gc.entry, z, n));
        CAPTURE(gc.entry);
        CAPTURE(z);
        CAPTURE(n);
        CHECK(r.valid);
        CHECK(r.bound > 0.0);
        CHECK(std::isfinite(r.log_bound));
        if (attained) CHECK(r.bound <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("log bound is linear in the sample count") {
  // Excludes the normal entries (constant 1/2 prefactor) and the
  // single-observation entries (n is pinned to 1).
  for (const auto& gc : grids::univariate()) {
    const auto* meta = lrb::find_entry(gc.entry);
    if (!meta->scales_with_n || gc.entry.rfind("normal_", 0) == 0) continue;
    const double z = gc.zs[gc.zs.size() / 2];
    const auto r1 = lrb::evaluate_bound(gc.entry, gc.spec, query_for(gc.entry, z, 1));
    REQUIRE(r1.valid);
    for (long n : {2L, 5L, 17L}) {
      const auto rn = lrb::evaluate_bound(gc.entry, gc.spec, query_for(gc.entry, z, n));
      CAPTURE(gc.entry);
      CHECK(rn.log_bound == doctest::Approx(n * r1.log_bound).epsilon(1e-13));
    }
  }
}

TEST_CASE("attained-infimum bounds are monotone in z toward the tail") {
  // Plug-in tilts do not minimize the bounding family, so only the entries
  // whose tilt attains the infimum inherit monotonicity from event nesting.
  for (const auto& gc : grids::univariate()) {
    const auto* meta = lrb::find_entry(gc.entry);
    if (meta->derived) continue;
    const auto probe = lrb::make_lr_family(
        gc.entry, gc.spec, query_for(gc.entry, gc.zs[gc.zs.size() / 2], 1));
    if (!probe.closed_form_theta_star) continue;
    double prev = (meta->direction == Direction::upper_mean ||
                   meta->direction == Direction::two_sided_outer)
                      ? 2.0
                      : 0.0;
    for (double z : gc.zs) {
      const auto r = lrb::evaluate_bound(gc.entry, gc.spec, query_for(gc.entry, z, 1));
      REQUIRE(r.valid);
      CAPTURE(gc.entry);
      CAPTURE(z);
      if (meta->direction == Direction::upper_mean ||
          meta->direction == Direction::two_sided_outer) {
        CHECK(r.bound <= prev + 1e-12);  // z grids ascend away from the mean
      } else {
        CHECK(r.bound >= prev - 1e-12);  // z grids ascend toward the mean
      }
      prev = r.bound;
    }
  }
}

TEST_CASE("per-observation bound equals the family value at theta star") {
  for (const auto& gc : grids::univariate()) {
    const auto* meta = lrb::find_entry(gc.entry);
    if (meta->derived) continue;
    const double z = gc.zs[gc.zs.size() / 2];
    const auto q = query_for(gc.entry, z, 1);
    const auto r = lrb::evaluate_bound(gc.entry, gc.spec, q);
    REQUIRE(r.valid);
    REQUIRE(r.theta_star.has_value());
    const auto fam = lrb::make_lr_family(gc.entry, gc.spec, q);
    const double offset = gc.entry.rfind("normal_", 0) == 0 ? std::log(0.5) : 0.0;
    CAPTURE(gc.entry);
    CHECK(fam.log_lambda(*r.theta_star) + offset ==
          doctest::Approx(r.log_bound).epsilon(1e-10));
  }
}

TEST_CASE("closed-form theta star is not improved by a grid scan") {
  for (const auto& gc : grids::univariate()) {
    const auto* meta = lrb::find_entry(gc.entry);
    if (meta->derived) continue;
    const double z = gc.zs[gc.zs.size() / 2];
    const auto fam = lrb::make_lr_family(gc.entry, gc.spec, query_for(gc.entry, z, 1));
    if (!fam.closed_form_theta_star) continue;  // plug-in entries
    const double star_val = fam.log_lambda(*fam.closed_form_theta_star);
    double best = star_val;
    for (int i = 0; i <= 1000; ++i) {
      const double th =
          fam.theta_domain.lo +
          (fam.theta_domain.hi - fam.theta_domain.lo) * i / 1000.0;
      best = std::min(best, fam.log_lambda(th));
    }
    CAPTURE(gc.entry);
    CHECK(best >= star_val - 1e-6);
  }
}

TEST_CASE("implicit tilt equations are solved to tight residuals") {
  auto lp = [](double x) { return -std::log1p(-x) / x; };
  auto gmean = [](double th) {
    return 1.0 + 1.0 / std::expm1(th) - 1.0 / th;
  };

  DistributionSpec logspec{"logarithmic", {{"q", 0.5}}};
  for (double z : {1.05, 1.1, 1.2, 1.3, 1.4}) {
    const double th = lrb::solve_implicit_theta("logarithmic_lower", logspec, z);
    CHECK(std::fabs(1.0 / ((1.0 - th) * lp(th)) - z) <= 1e-12);
  }

  DistributionSpec stir{"stirling", {{"m", 2.0}, {"theta", 0.6}}};
  for (double z : {2.1, 2.4, 2.7, 3.0, 3.2}) {
    const double th = lrb::solve_implicit_theta("stirling_lower", stir, z);
    CHECK(std::fabs(2.0 / ((1.0 - th) * lp(th)) - z) <= 1e-12);
  }

  DistributionSpec lag{"laglog", {{"theta", 0.5}, {"beta", 1.5}}};
  for (double z : {1.1, 1.5, 2.0, 2.5, 2.8}) {
    const double th = lrb::solve_implicit_theta("laglog_lower", lag, z);
    CHECK(std::fabs(1.0 / ((1.0 - 1.5 * th) * lp(th)) - z) <= 1e-12);
  }

  DistributionSpec te{"truncexp", {{"theta", 1.0}}};
  for (double z : {0.1, 0.25, 0.4, 0.45, 0.55}) {
    const double th = lrb::solve_implicit_theta("truncexp_lower", te, z);
    CHECK(std::fabs(gmean(th) - z) <= 1e-12);
  }

  DistributionSpec uni{"uniform", {}};
  for (double z : {0.05, 0.2, 0.35, 0.45, 0.49}) {
    const double th = lrb::solve_implicit_theta("uniform_lower", uni, z);
    CHECK(std::fabs(gmean(th) - z) <= 1e-12);
  }
  for (double z : {0.51, 0.6, 0.75, 0.9, 0.97}) {
    const double th = lrb::solve_implicit_theta("uniform_upper", uni, z);
    CHECK(std::fabs(gmean(th) - z) <= 1e-12);
  }

  DistributionSpec nak{"nakagami", {{"m", 2.0}, {"sigma", 1.0}}};
  for (double z : {0.6, 0.8, 1.0, 1.2, 1.3}) {
    const double th = lrb::solve_implicit_theta("nakagami_lower", nak, z);
    CHECK(std::fabs(std::exp(std::lgamma(th + 0.5) - std::lgamma(th)) - z) <= 1e-12);
  }

  DistributionSpec pl{"powerlaw", {{"alpha", 2.5}, {"beta", 10.0}}};
  for (double z : {1.2, 1.5, 1.8, 2.0, 2.1}) {
    const double t = lrb::solve_implicit_theta("powerlaw_lower", pl, z);
    CHECK(std::fabs(lrb::powerlaw_threshold(t, 10.0) - z) <= 1e-12);
  }

  CHECK_THROWS_AS(lrb::solve_implicit_theta("normal_lower", DistributionSpec{"normal", {{"mu", 0.0}, {"sigma", 1.0}}}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("frozen example values") {
  const auto norm = lrb::evaluate_bound(
      "normal_lower", {"normal", {{"mu", 0.0}, {"sigma", 1.0}}},
      {Direction::lower_mean, -0.5, 4});
  CHECK(norm.bound == doctest::Approx(0.30326532985631671).epsilon(1e-12));

  const auto logn = lrb::evaluate_bound(
      "lognormal_lower", {"lognormal", {{"mu", 0.0}, {"sigma", 1.0}}},
      {Direction::lower_mean, std::exp(-1.0), 2});
  CHECK(logn.bound == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  TailQuery relaxed{Direction::upper_mean, 0.7, 10};
  relaxed.relaxed = true;
  const auto uni = lrb::evaluate_bound("uniform_upper", {"uniform", {}}, relaxed);
  CHECK(uni.bound == doctest::Approx(std::exp(-2.4)).epsilon(1e-12));

  // theta* = (z-1)/z = 1/6 for the Borel query below.
  const auto borel = lrb::evaluate_bound("borel_lower", {"borel", {{"theta", 0.5}}},
                                         {Direction::lower_mean, 1.2, 1});
  REQUIRE(borel.theta_star.has_value());
  CHECK(*borel.theta_star == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(borel.bound == doctest::Approx(0.8350384207910938).epsilon(1e-12));
}

TEST_CASE("boundary identities") {
  for (const char* id : {"f_upper", "f_lower"}) {
    const auto* meta = lrb::find_entry(id);
    const auto r = lrb::evaluate_bound(id, {"f", {{"m", 4.0}, {"n", 7.0}}},
                                       {meta->direction, 1.0, 1});
    REQUIRE(r.valid);
    CHECK(std::fabs(r.bound - 1.0) <= 1e-12);
  }
  for (const char* id : {"t_twosided_outer", "t_twosided_inner"}) {
    const auto* meta = lrb::find_entry(id);
    const auto r = lrb::evaluate_bound(id, {"t", {{"n", 7.0}}}, {meta->direction, 1.0, 1});
    REQUIRE(r.valid);
    CHECK(std::fabs(r.bound - 1.0) <= 1e-12);
  }

  // Pareto at gamma = z/a = e^{1/theta}: the bound collapses to 1.
  const double theta = 3.0;
  const auto pareto = lrb::evaluate_bound(
      "pareto_lower", {"pareto", {{"theta", theta}, {"a", 1.0}}},
      {Direction::lower_mean, std::exp(1.0 / theta), 1});
  REQUIRE(pareto.valid);
  CHECK(std::fabs(pareto.bound - 1.0) <= 1e-12);

  // Geeta at z = 1: the bound is the exact n-fold point mass (1-theta)^{n(beta-1)}.
  for (long n : {1L, 5L}) {
    const auto g = lrb::evaluate_bound("geeta_lower",
                                       {"geeta", {{"theta", 0.3}, {"beta", 2.0}}},
                                       {Direction::lower_mean, 1.0, n});
    REQUIRE(g.valid);
    CHECK(g.bound == doctest::Approx(std::pow(0.7, double(n))).epsilon(1e-12));
  }
}

TEST_CASE("derived entries take the minimum of their source forms") {
  const DistributionSpec bp{"betaprime", {{"alpha", 2.0}, {"beta", 3.0}}};
  const DistributionSpec ig{"invgamma", {{"alpha", 3.0}, {"beta", 2.0}}};
  for (double z : {0.3, 0.5, 0.8, 1.0}) {
    const TailQuery q{Direction::lower_mean, z, 2};
    // The combined entry minimizes over the source forms that are valid at
    // the query; an invalid form simply drops out.
    const double inf = std::numeric_limits<double>::infinity();
    const auto a = lrb::evaluate_bound("betaprime_lower_a", bp, q);
    const auto b = lrb::evaluate_bound("betaprime_lower_b", bp, q);
    const auto d = lrb::evaluate_bound("betaprime_lower", bp, q);
    REQUIRE(d.valid);
    CHECK(d.bound == doctest::Approx(std::min(a.valid ? a.bound : inf,
                                              b.valid ? b.bound : inf))
                         .epsilon(1e-13));

    const auto ia = lrb::evaluate_bound("invgamma_lower_a", ig, q);
    const auto ib = lrb::evaluate_bound("invgamma_lower_b", ig, q);
    const auto idr = lrb::evaluate_bound("invgamma_lower", ig, q);
    if (idr.valid)
      CHECK(idr.bound == doctest::Approx(std::min(ia.valid ? ia.bound : inf,
                                                  ib.valid ? ib.bound : inf))
                             .epsilon(1e-13));
  }
}

TEST_CASE("beta negative binomial CDF bound at z = 0 equals the point mass") {
  // P(X = 0) = B(alpha + trials, beta) / B(alpha, beta); with alpha=2, beta=1,
  // trials=2 this is (2*1)/(4*3) * ... = Gamma ratios giving exactly 1/2.
  const auto r = lrb::evaluate_bound(
      "beta_negbinom_cdf", {"beta_negbinom", {{"alpha", 2.0}, {"beta", 1.0}, {"n", 2.0}}},
      {Direction::cdf_point, 0.0, 1});
  REQUIRE(r.valid);
  CHECK(r.bound == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("uniform tight bound never exceeds the relaxed bound") {
  for (int i = 1; i <= 50; ++i) {
    const double z = 0.5 + 0.49 * i / 51.0;
    TailQuery tight{Direction::upper_mean, z, 3};
    TailQuery rel = tight;
    rel.relaxed = true;
    const auto t = lrb::evaluate_bound("uniform_upper", {"uniform", {}}, tight);
    const auto r = lrb::evaluate_bound("uniform_upper", {"uniform", {}}, rel);
    REQUIRE(t.valid);
    REQUIRE(r.valid);
    CHECK(t.bound <= r.bound * (1 + 1e-12));
  }
}

TEST_CASE("invalid queries return bound 1 with a reason, never throw") {
  struct Bad {
    const char* entry;
    DistributionSpec spec;
    TailQuery q;
  };
  const std::vector<Bad> bad = {
      {"normal_lower", {"normal", {{"mu", 0.0}, {"sigma", 1.0}}},
       {Direction::lower_mean, 0.5, 1}},  // z above the mean
      {"normal_lower", {"normal", {{"mu", 0.0}, {"sigma", -1.0}}},
       {Direction::lower_mean, -0.5, 1}},  // bad sigma
      {"normal_lower", {"normal", {{"mu", 0.0}}}, {Direction::lower_mean, -0.5, 1}},
      {"borel_lower", {"borel", {{"theta", 0.5}}}, {Direction::lower_mean, 2.5, 1}},
      {"borel_lower", {"borel", {{"theta", 1.5}}}, {Direction::lower_mean, 1.2, 1}},
      {"f_upper", {"f", {{"m", 4.0}, {"n", 7.0}}}, {Direction::upper_mean, 2.0, 3}},
      {"weibull_upper", {"weibull", {{"alpha", 1.0}, {"beta", 0.5}}},
       {Direction::upper_mean, 2.0, 1}},  // beta <= 1 on the upper entry
      {"uniform_lower", {"uniform", {}}, {Direction::lower_mean, 0.7, 1}},
      {"normal_lower", {"normal", {{"mu", 0.0}, {"sigma", 1.0}}},
       {Direction::lower_mean, -0.5, 0}},  // n < 1
  };
  for (const auto& c : bad) {
    const auto r = lrb::evaluate_bound(c.entry, c.spec, c.q);
    CAPTURE(c.entry);
    CHECK_FALSE(r.valid);
    CHECK(r.bound == 1.0);
    CHECK_FALSE(r.reason.empty());
  }

  const auto nan = lrb::evaluate_bound(
      "normal_lower", {"normal", {{"mu", 0.0}, {"sigma", 1.0}}},
      {Direction::lower_mean, std::nan(""), 1});
  CHECK_FALSE(nan.valid);

  CHECK_THROWS_AS(lrb::evaluate_bound("no_such_entry", {"normal", {}}, {}),
                  std::invalid_argument);
}

TEST_CASE("single-observation entries reject n > 1") {
  const auto f = lrb::evaluate_bound("f_upper", {"f", {{"m", 4.0}, {"n", 7.0}}},
                                     {Direction::upper_mean, 1.5, 2});
  CHECK_FALSE(f.valid);
  const auto bnb = lrb::evaluate_bound(
      "beta_negbinom_cdf", {"beta_negbinom", {{"alpha", 3.0}, {"beta", 2.0}, {"n", 5.0}}},
      {Direction::cdf_point, 1.0, 2});
  CHECK_FALSE(bnb.valid);
}

TEST_CASE("weibull boundary beta = 1 is accepted with an explanatory note") {
  const auto r = lrb::evaluate_bound("weibull_lower",
                                     {"weibull", {{"alpha", 2.0}, {"beta", 1.0}}},
                                     {Direction::lower_mean, 0.4, 1});
  REQUIRE(r.valid);
  CHECK_FALSE(r.reason.empty());
}

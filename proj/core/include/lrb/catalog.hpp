#pragma once

#include <map>
#include <string>
#include <vector>

#include "lrb/lr_engine.hpp"

// The univariate bound catalog.  Each entry pairs one tail inequality with
// its validity conditions, its closed-form or implicitly defined optimal
// tilt parameter, and a log-domain evaluation of the bound.

namespace lrb {

enum class Direction {
  lower_mean,      // P(mean of n samples <= z)
  upper_mean,      // P(mean of n samples >= z)
  two_sided_outer, // P(|X| >= z), single observation
  two_sided_inner, // P(|X| <= z), single observation
  cdf_point        // P(X <= z), single observation
};

std::string direction_name(Direction d);

struct DistributionSpec {
  std::string family;
  std::map<std::string, double> params;

  double param(const std::string& name) const;            // throws if absent
  bool has_param(const std::string& name) const;
};

struct TailQuery {
  Direction direction = Direction::lower_mean;
  double z = 0.0;
  long n = 1;
  bool relaxed = false;  // uniform entries: use the relaxed closed form
};

struct CatalogEntry {
  std::string id;
  std::string family;
  Direction direction;
  std::string validity_text;
  std::string theta_kind;  // "closed_form", "implicit", or "none"
  bool derived = false;    // convenience min-combination, not a single theorem
  bool scales_with_n = true;
};

// Evaluates the catalog entry's bound.  Queries outside the validity region
// (or malformed parameters) come back with valid=false, bound=1, and a
// reason; only an unknown entry id throws.
BoundResult evaluate_bound(const std::string& entry_id,
                           const DistributionSpec& spec, const TailQuery& query);

// Unique tilt parameter solving the entry's implicit equation, with residual
// at most 1e-12 in the equation's natural scale.  Throws std::invalid_argument
// for entries without an implicit equation or for z outside validity.
double solve_implicit_theta(const std::string& entry_id,
                            const DistributionSpec& spec, double z);

// The per-observation bounding family Lambda(theta) of the entry for a valid
// query, suitable for optimality cross-checks.  Throws for invalid queries
// and for the derived convenience entries.
LrFamily make_lr_family(const std::string& entry_id, const DistributionSpec& spec,
                        const TailQuery& query);

const std::vector<CatalogEntry>& list_catalog();
const CatalogEntry* find_entry(const std::string& id);

// Mean of the power law with exponent theta on [1, beta]; the threshold the
// powerlaw entry associates with a directly supplied tilt exponent.
double powerlaw_threshold(double theta, double beta);

}  // namespace lrb

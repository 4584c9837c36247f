#pragma once

// Full verification runs: every structural check on every model, plus the
// published reference values for the named catalog examples.

#include "thg/report.hpp"
#include "thg/spacecat.hpp"

namespace thg {

/// Sequence and Gottlieb-Fox checks for degrees up to min(max_n, truncation).
CheckReport verify_space(const SpaceModel& x, int max_n);

/// Sigma, split, G_0, audit and center checks for a transformation group.
CheckReport verify_transformation(const TransformationModel& tg, int max_n);

/// Reference values for the named catalog models. Models absent from the
/// catalog are skipped.
CheckReport verify_reference_values(const Catalog& catalog, int max_n);

/// Multiplicity identities for 1 <= i <= n <= bound.
CheckReport verify_multiplicities(int bound);

/// Everything above over the whole catalog and the sphere templates S1..S7.
CheckReport verify_catalog(const Catalog& catalog, int max_n);

}  // namespace thg

#pragma once

#include "leomec/geometry.hpp"
#include "leomec/numerics.hpp"
#include "leomec/params.hpp"

namespace leomec::association {

using params::ConstellationGeometry;
using params::SystemParams;

struct AssociationResult {
    double a_sat = 0.0;        // P(UE offloads to the nearest usable satellite)
    double a_cs = 0.0;         // P(UE connects to the nearest cloud server)
    double q_s_factor = 0.0;   // biased-power tie constant
    double n_offloadable = 0;  // effective satellite count used
};

// Tie constant of the biased average-power rule: a satellite at slant
// distance d beats a cloud server iff the CS is farther than Q_s * d^(2/alpha).
double q_s_constant(const SystemParams& sys);

// Probability that the nearest visible offloadable type-i satellite wins the
// biased-power comparison against the nearest CS. n_i may be fractional
// (thinned satellite count); n_i <= 0 means no usable satellite exists.
double assoc_prob_sat(double n_i, const SystemParams& sys,
                      const ConstellationGeometry& geom,
                      const numerics::QuadratureSpec& quad = {});

// Complementary CS association probability, evaluated from its own
// three-piece integral rather than as 1 - assoc_prob_sat so the partition
// identity stays a cross-check.
double assoc_prob_cs(double n_i, const SystemParams& sys,
                     const ConstellationGeometry& geom,
                     const numerics::QuadratureSpec& quad = {});

AssociationResult associate(double n_i, const SystemParams& sys,
                            const ConstellationGeometry& geom,
                            const numerics::QuadratureSpec& quad = {});

}  // namespace leomec::association

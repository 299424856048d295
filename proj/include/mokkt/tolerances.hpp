#pragma once

#include "mokkt/calculus.hpp"

namespace mokkt {

// Every strict inequality in the verified conditions is converted to a
// margin test against one of these thresholds. Reports echo the values used.
struct Tolerances {
    // active-set membership / feasibility: |g_j(x)| <= active * (1 + |g_j(x)|)
    double active = 1e-8;
    // criticality and index-set membership: |grad . d| <= criticality
    double criticality = 1e-8;
    // CQ LPs: "holds" requires margin s* > strict_margin
    double strict_margin = 1e-7;
    // multiplier LP: stationarity residual bound
    double stationarity = 1e-7;
    // multiplier LP: curvature row L''(x,d) >= -curvature
    double curvature = 1e-7;
    // generalized-convexity probes: strict inequalities tested with this margin
    double probe_margin = 1e-9;
    // grid oracle: comparisons against candidate minima
    double oracle_slack = 1e-9;

    EstimatorOptions estimator;
};

} // namespace mokkt

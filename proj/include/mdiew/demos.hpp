#pragma once

#include "mdiew/game.hpp"

namespace mdiew {

// Fake-detection demo A: per-index replacement noise toward a pure target,
// with both parties projecting onto the orthogonal state and sharing I/4.
// Full game value; equals the closed form below for every q and target.
double nonuniform_demo_value(double q, const BlochVector& theta);

// -(q^2/8) <perp|omega_3|perp> sum_{s<=2} <perp|tau_s|perp>, the surviving
// cross terms of the coefficient table.
double nonuniform_demo_closed_form(double q, const BlochVector& theta);

struct DemoMinimum {
    double min_value = 0.0;
    BlochVector argmin{0.0, 0.0, 1.0};
    double max_closed_gap = 0.0;  // worst |full - closed| over the grid
};

// Scans the target state over a 50 x 100 polar grid (offset to dodge the
// poles) and returns the minimal game value.
DemoMinimum nonuniform_demo_minimum(double q);

// Fake-detection demo B: coherent two-branch noise on pure product inputs,
// effective measurements (I + sigma_y)/2 and (I - sigma_y)/2, shared I/4.
double entangling_demo_value(double p);

}  // namespace mdiew

#pragma once

#include <cstdint>

#include "aalab/stats.hpp"
#include "aalab/transfer.hpp"

namespace aalab {

struct EntropyEstimate {
    double h = 0.0;
    int n = 0;          // itinerary length
    int trials = 0;
    long censored = 0;  // trials whose recurrence exceeded the orbit cap
};

// Return-time entropy estimator: average over trials of (log R_n)/n, where
// R_n is the first recurrence of the length-n cell itinerary on the coding
// grid. Censored trials contribute the cap (a lower bound).
EntropyEstimate entropy_estimate(const AlmostAnosovMap& map,
                                 MeasureSampler& sampler, int n, int trials,
                                 int coding_grid_n = 32,
                                 long orbit_cap = 2000000,
                                 long skip_between_trials = 257);

struct MargulisRuelleReport {
    double h_est = 0.0;
    double lambda_u = 0.0;  // integrated log |Df|_{E^u}| against mu
    bool inequality_ok = false;      // h <= lambda_u + 0.05
    bool pesin_ok = false;           // |h - lambda_u| <= 0.15 lambda_u
    EntropyEstimate entropy;
};

// Entropy against the integrated unstable expansion of mu; the Pesin check is
// meaningful for the equilibrium branch only.
MargulisRuelleReport margulis_ruelle_check(const AlmostAnosovMap& map,
                                           const SampleTable& table,
                                           const std::vector<double>& mu,
                                           MeasureSampler& sampler,
                                           int itinerary_n = 12,
                                           int trials = 80);

}  // namespace aalab

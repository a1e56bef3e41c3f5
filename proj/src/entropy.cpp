#include "aalab/entropy.hpp"

#include <cmath>
#include <vector>

namespace aalab {

EntropyEstimate entropy_estimate(const AlmostAnosovMap& map,
                                 MeasureSampler& sampler, int n, int trials,
                                 int coding_grid_n, long orbit_cap,
                                 long skip_between_trials) {
    EntropyEstimate est;
    est.n = n;
    est.trials = trials;
    const UlamGrid coding{coding_grid_n};

    double sum_log_r = 0.0;
    for (int tr = 0; tr < trials; ++tr) {
        if (tr > 0) sampler.skip(skip_between_trials);
        TorusPoint p = sampler.next();
        std::vector<long> symbols;
        symbols.reserve(1024);
        symbols.push_back(coding.index(p));

        auto extend_to = [&](long len) {
            while (static_cast<long>(symbols.size()) < len) {
                p = map.apply(p);
                symbols.push_back(coding.index(p));
            }
        };
        extend_to(n);

        long recurrence = orbit_cap;
        for (long k = 1; k <= orbit_cap; ++k) {
            extend_to(k + n);
            bool match = true;
            for (int j = 0; j < n; ++j) {
                if (symbols[k + j] != symbols[j]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                recurrence = k;
                break;
            }
        }
        if (recurrence >= orbit_cap) ++est.censored;
        sum_log_r += std::log(static_cast<double>(recurrence));
    }
    est.h = sum_log_r / (static_cast<double>(trials) * n);
    return est;
}

MargulisRuelleReport margulis_ruelle_check(const AlmostAnosovMap& map,
                                           const SampleTable& table,
                                           const std::vector<double>& mu,
                                           MeasureSampler& sampler,
                                           int itinerary_n, int trials) {
    MargulisRuelleReport rep;
    rep.lambda_u = lyapunov_integral(table, mu);
    rep.entropy = entropy_estimate(map, sampler, itinerary_n, trials);
    rep.h_est = rep.entropy.h;
    rep.inequality_ok = rep.h_est <= rep.lambda_u + 0.05;
    rep.pesin_ok = std::abs(rep.h_est - rep.lambda_u) <= 0.15 * rep.lambda_u;
    return rep;
}

}  // namespace aalab

#include "aalab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aalab/rng.hpp"

namespace aalab {

Observable Observable::cos_x(int k) {
    return {"cos(2pi*" + std::to_string(k) + "x)",
            [k](const TorusPoint& p) { return std::cos(2.0 * M_PI * k * p.x); },
            1.0, 2.0 * M_PI * k};
}

Observable Observable::cos_y(int k) {
    return {"cos(2pi*" + std::to_string(k) + "y)",
            [k](const TorusPoint& p) { return std::cos(2.0 * M_PI * k * p.y); },
            1.0, 2.0 * M_PI * k};
}

Observable Observable::bump_at(TorusPoint center, double width) {
    return {"bump",
            [center, width](const TorusPoint& p) {
                const double r = torus_dist(p, center) / width;
                if (r >= 1.0) return 0.0;
                return std::exp(-1.0 / (1.0 - r * r)) * std::exp(1.0);
            },
            1.0, 2.0 / width};
}

Observable Observable::dist_origin_pow(double power) {
    return {"d(.,0)^" + std::to_string(power),
            [power](const TorusPoint& p) {
                return std::pow(dist_to_zero(p), power);
            },
            std::min(power, 1.0), 2.0};
}

Observable Observable::constant(double value) {
    return {"const", [value](const TorusPoint&) { return value; }, 1.0, 0.0};
}

MeasureSampler MeasureSampler::srb(const AlmostAnosovMap& map,
                                   std::uint64_t seed, long burn_in) {
    MeasureSampler s;
    s.kind_ = Kind::Srb;
    s.map_ = &map;
    s.rng_state_ = derive_seed(seed, 37);
    const double x = s.next_uniform();
    const double y = s.next_uniform();
    s.state_ = TorusPoint(x, y);
    for (long k = 0; k < burn_in; ++k) s.state_ = map.apply(s.state_);
    return s;
}

MeasureSampler MeasureSampler::ulam(const UlamGrid& grid,
                                    std::vector<double> weights,
                                    std::uint64_t seed) {
    MeasureSampler s;
    s.kind_ = Kind::Ulam;
    s.grid_ = grid;
    s.rng_state_ = derive_seed(seed, 41);
    s.cdf_.resize(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += std::max(0.0, weights[i]);
        s.cdf_[i] = acc;
    }
    if (acc <= 0.0) throw std::invalid_argument("ulam sampler: zero measure");
    for (double& x : s.cdf_) x /= acc;
    return s;
}

MeasureSampler MeasureSampler::dirac() {
    MeasureSampler s;
    s.kind_ = Kind::Dirac;
    return s;
}

double MeasureSampler::next_uniform() {
    rng_state_ = splitmix64(rng_state_);
    return (rng_state_ >> 11) * 0x1.0p-53;
}

TorusPoint MeasureSampler::next() {
    switch (kind_) {
        case Kind::Dirac:
            return {0.0, 0.0};
        case Kind::Srb:
            state_ = map_->apply(state_);
            return state_;
        case Kind::Ulam: {
            const double u = next_uniform();
            const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
            const long c = std::min<long>(it - cdf_.begin(),
                                          static_cast<long>(cdf_.size()) - 1);
            const long i = c / grid_.n, j = c % grid_.n;
            return {(i + next_uniform()) / grid_.n, (j + next_uniform()) / grid_.n};
        }
    }
    return {0.0, 0.0};
}

CorrelationSeries correlation_series(const AlmostAnosovMap& map,
                                     MeasureSampler& sampler,
                                     const Observable& h1, const Observable& h2,
                                     int n_max, long orbit_len,
                                     std::uint64_t seed) {
    CorrelationSeries series;
    series.orbit_len = orbit_len;
    series.seed = seed;
    series.noise_floor = 3.0 / std::sqrt(static_cast<double>(orbit_len));

    const long total = orbit_len + n_max;
    std::vector<double> v1(total), v2(total);
    TorusPoint p = sampler.next();
    for (long k = 0; k < total; ++k) {
        v1[k] = h1(p);
        v2[k] = h2(p);
        p = map.apply(p);
    }
    double m1 = 0.0, m2 = 0.0;
    for (long k = 0; k < orbit_len; ++k) {
        m1 += v1[k];
        m2 += v2[k];
    }
    m1 /= orbit_len;
    m2 /= orbit_len;
    series.mean_h1 = m1;
    series.mean_h2 = m2;

    series.c.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        double s = 0.0;
        for (long k = 0; k < orbit_len; ++k) s += v1[k + n] * v2[k];
        series.c[n] = s / orbit_len - m1 * m2;
    }
    return series;
}

DecayFit fit_exponential_decay(const CorrelationSeries& series, int n_lo, int n_hi) {
    DecayFit fit;
    std::vector<double> xs, ys;
    n_hi = std::min<int>(n_hi, static_cast<int>(series.c.size()) - 1);
    for (int n = n_lo; n <= n_hi; ++n) {
        const double a = std::abs(series.c[n]);
        if (a > series.noise_floor) {
            xs.push_back(n);
            ys.push_back(std::log(a));
        }
    }
    fit.points_used = static_cast<int>(xs.size());
    if (fit.points_used < 5) {
        // everything at or below estimator noise: evidence of fast decay
        bool all_noise = true;
        for (int n = n_lo; n <= n_hi; ++n)
            if (std::abs(series.c[n]) > series.noise_floor) all_noise = false;
        fit.status = all_noise ? DecayFitStatus::DecayedToNoise
                               : DecayFitStatus::InsufficientPoints;
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const int n = fit.points_used;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double inter = (sy - slope * sx) / n;
    double ss_res = 0.0;
    const double ss_tot = syy - sy * sy / n;
    for (int i = 0; i < n; ++i) {
        const double e = ys[i] - (slope * xs[i] + inter);
        ss_res += e * e;
    }
    fit.kappa = std::exp(slope);
    fit.c = std::exp(inter);
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.status = DecayFitStatus::Ok;
    return fit;
}

CltReport clt_experiment(const AlmostAnosovMap& map, MeasureSampler& sampler,
                         const Observable& h, long n, long trials,
                         std::uint64_t seed, int histogram_bins) {
    (void)seed;  // the sampler carries the stream
    CltReport rep;
    rep.n = n;
    rep.trials = trials;

    // Block sums first; centering uses the grand mean over all trials, so the
    // normalized sums add up to zero exactly.
    std::vector<double> block_sums(trials, 0.0);
    double grand = 0.0;
    for (long tr = 0; tr < trials; ++tr) {
        TorusPoint p = sampler.next();
        double s = 0.0;
        for (long k = 0; k < n; ++k) {
            s += h(p);
            p = map.apply(p);
        }
        block_sums[tr] = s;
        grand += s;
    }
    const double mean_per_step = grand / (static_cast<double>(trials) * n);

    std::vector<double> b(trials);
    const double root_n = std::sqrt(static_cast<double>(n));
    for (long tr = 0; tr < trials; ++tr)
        b[tr] = (block_sums[tr] - n * mean_per_step) / root_n;

    double var = 0.0;
    for (double x : b) var += x * x;
    var /= std::max<long>(1, trials - 1);
    rep.sigma = std::sqrt(var);
    if (rep.sigma < 1e-12) {
        rep.coboundary_flag = true;
        rep.ks_distance = 0.0;
        return rep;
    }

    std::sort(b.begin(), b.end());
    double ks = 0.0;
    for (long i = 0; i < trials; ++i) {
        const double z = b[i] / (rep.sigma * std::sqrt(2.0));
        const double cdf = 0.5 * (1.0 + std::erf(z));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i + 1) / trials));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / trials));
    }
    rep.ks_distance = ks;

    const double lo = b.front(), hi = b.back();
    const double width = (hi - lo) / histogram_bins;
    if (width > 0.0) {
        rep.histogram_centers.resize(histogram_bins);
        rep.histogram_density.assign(histogram_bins, 0.0);
        for (int i = 0; i < histogram_bins; ++i)
            rep.histogram_centers[i] = lo + (i + 0.5) * width;
        for (double x : b) {
            int bin = static_cast<int>((x - lo) / width);
            if (bin >= histogram_bins) bin = histogram_bins - 1;
            rep.histogram_density[bin] += 1.0;
        }
        for (double& d : rep.histogram_density) d /= trials * width;
    }
    return rep;
}

}  // namespace aalab

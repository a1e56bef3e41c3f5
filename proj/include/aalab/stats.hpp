#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aalab/map.hpp"
#include "aalab/transfer.hpp"

namespace aalab {

// Bounded observable with declared Holder data.
struct Observable {
    std::string name;
    std::function<double(const TorusPoint&)> eval;
    double holder_exponent = 1.0;
    double holder_constant = 1.0;

    double operator()(const TorusPoint& p) const { return eval(p); }

    static Observable cos_x(int k);
    static Observable cos_y(int k);
    static Observable bump_at(TorusPoint center, double width);
    static Observable dist_origin_pow(double power);
    static Observable constant(double value);
};

// Deterministic point stream for one of the sampled measures.
class MeasureSampler {
public:
    static MeasureSampler srb(const AlmostAnosovMap& map, std::uint64_t seed,
                              long burn_in = 10000);
    static MeasureSampler ulam(const UlamGrid& grid, std::vector<double> weights,
                               std::uint64_t seed);
    static MeasureSampler dirac();

    TorusPoint next();
    void skip(long k) {
        for (long i = 0; i < k; ++i) next();
    }
    bool orbit_based() const { return kind_ == Kind::Srb; }

private:
    enum class Kind { Srb, Ulam, Dirac };
    MeasureSampler() = default;

    Kind kind_ = Kind::Dirac;
    const AlmostAnosovMap* map_ = nullptr;
    TorusPoint state_;
    UlamGrid grid_;
    std::vector<double> cdf_;
    std::uint64_t rng_state_ = 0;
    double next_uniform();
};

struct CorrelationSeries {
    std::vector<double> c;  // c[n] for n = 0..n_max
    long orbit_len = 0;
    long burn_in = 0;
    std::uint64_t seed = 0;
    double noise_floor = 0.0;  // 3 / sqrt(orbit_len)
    double mean_h1 = 0.0;
    double mean_h2 = 0.0;
};

CorrelationSeries correlation_series(const AlmostAnosovMap& map,
                                     MeasureSampler& sampler,
                                     const Observable& h1, const Observable& h2,
                                     int n_max, long orbit_len,
                                     std::uint64_t seed);

enum class DecayFitStatus { Ok, DecayedToNoise, InsufficientPoints };

struct DecayFit {
    DecayFitStatus status = DecayFitStatus::InsufficientPoints;
    double c = 0.0;
    double kappa = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

DecayFit fit_exponential_decay(const CorrelationSeries& series, int n_lo, int n_hi);

struct CltReport {
    double sigma = 0.0;
    double ks_distance = 0.0;
    long n = 0;
    long trials = 0;
    bool coboundary_flag = false;  // sigma numerically zero
    std::vector<double> histogram_centers;
    std::vector<double> histogram_density;
};

CltReport clt_experiment(const AlmostAnosovMap& map, MeasureSampler& sampler,
                         const Observable& h, long n, long trials,
                         std::uint64_t seed, int histogram_bins = 40);

}  // namespace aalab

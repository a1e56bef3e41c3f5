#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "aalab/map.hpp"
#include "aalab/splitting.hpp"

namespace aalab {

// Rectangle base for the first-return construction, axes along the
// eigendirections of A, kept away from the glue disc.
struct Rectangle {
    TorusPoint center{0.5, 0.5};
    double u_half = 0.05;
    double s_half = 0.05;
    Vec2 u_axis;
    Vec2 s_axis;

    static Rectangle standard(const AlmostAnosovMap& map,
                              TorusPoint center = {0.5, 0.5},
                              double u_half = 0.05, double s_half = 0.05);

    // Interior membership; the boundary does not count as a return.
    bool contains(const TorusPoint& p) const {
        const Vec2 d = torus_diff(p, center);
        const double xi = d.dot(u_axis);
        const double eta = d.dot(s_axis);
        return std::abs(xi) < u_half && std::abs(eta) < s_half;
    }

    TorusPoint sample(double t_u, double t_s) const {  // t in [0,1)^2
        const Vec2 off = u_axis * ((2.0 * t_u - 1.0) * u_half) +
                         s_axis * ((2.0 * t_s - 1.0) * s_half);
        return wrap_point(center.vec() + off);
    }

    double diameter() const { return 2.0 * std::hypot(u_half, s_half); }
};

inline constexpr int kReturnTimeout = -1;

// Least n in [1, n_max] with f^n(x) in the interior, or kReturnTimeout.
int first_return_time(const AlmostAnosovMap& map, const Rectangle& rect,
                      const TorusPoint& x, int n_max);

struct ReturnTimeHistogram {
    std::map<int, long> counts;  // return time -> number of sampled representatives
    long samples = 0;
    int n_max = 0;
    long timeouts = 0;

    double mean_return_time() const;
    double timeout_fraction() const {
        return samples > 0 ? static_cast<double>(timeouts) / samples : 0.0;
    }
};

ReturnTimeHistogram return_time_histogram(const AlmostAnosovMap& map,
                                          const Rectangle& rect, long samples,
                                          int n_max, std::uint64_t seed);

struct TailFit {
    bool ok = false;
    double h_fit = 0.0;
    double r_squared = 0.0;
    int n_lo = 0;
    int n_hi = 0;
    int bins_used = 0;
};

// Least-squares slope of log counts over the upper half of the populated
// range; needs at least 5 populated bins there.
TailFit fit_tail_rate(const ReturnTimeHistogram& hist);

long return_time_gcd(const ReturnTimeHistogram& hist);

struct ContractionReport {
    double worst_ratio = 0.0;  // max d(Fx,Fy)/d(x,y) over stable pairs
    long pairs_used = 0;
    long pairs_skipped = 0;
};

ContractionReport check_contraction(const AlmostAnosovMap& map,
                                    const Rectangle& rect, int pairs,
                                    std::uint64_t seed, int n_max = 10000);

struct DistortionReport {
    std::vector<double> sup_log_ratio;  // indexed by composition depth
    double c_fit = 0.0;
    double kappa_fit = 0.0;
    double r_squared = 0.0;
    bool fit_ok = false;
    long pairs_used = 0;
    long pairs_skipped = 0;
};

// Unstable Jacobian distortion along composed returns for stable pairs;
// fits sup_n |log J^uF(F^n x) / J^uF(F^n y)| against c kappa^n.
DistortionReport check_distortion(const AlmostAnosovMap& map,
                                  const Rectangle& rect, int pairs,
                                  int n_compositions, std::uint64_t seed,
                                  int n_max = 10000);

struct IntermediateBoundReport {
    double worst_k = 0.0;
    double worst_k_stable = 0.0;
    long pairs_used = 0;
    long pairs_skipped = 0;
};

// K = max over pairs with a common return time and j in [0, tau] of
// d(f^j x, f^j y) / max(d(x,y), d(Fx, Fy)).
IntermediateBoundReport check_intermediate_bound(const AlmostAnosovMap& map,
                                                 const Rectangle& rect,
                                                 int pairs, std::uint64_t seed,
                                                 int n_max = 10000);

}  // namespace aalab

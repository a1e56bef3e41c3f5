#include "aalab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aalab/rng.hpp"

namespace aalab {

NondegeneracyReport check_nondegeneracy(const AlmostAnosovMap& map,
                                        int sample_n, double r,
                                        std::uint64_t seed,
                                        double vector_half_angle,
                                        int vectors_per_sample,
                                        int cocycle_m) {
    NondegeneracyReport rep;
    rep.kappa_u = std::numeric_limits<double>::infinity();
    rep.kappa_s = std::numeric_limits<double>::infinity();
    Rng rng(derive_seed(seed, 11));
    const double r0 = map.spec().r0;

    for (int k = 0; k < sample_n; ++k) {
        TorusPoint p;
        if (k % 2 == 0) {
            do {
                p = TorusPoint(rng.uniform01(), rng.uniform01());
            } while (dist_to_zero(p) <= r);
        } else {
            // ring samples between r and r0: the binding region for the
            // quadratic bounds
            const double rad = r * std::pow(std::max(r0, 2.0 * r) / r,
                                            rng.uniform01());
            const double th = rng.uniform(0.0, 2.0 * M_PI);
            p = TorusPoint(rad * std::cos(th), rad * std::sin(th));
            if (dist_to_zero(p) <= r) continue;
        }
        ++rep.sample_count;
        const double d2 = dist_to_zero(p) * dist_to_zero(p);
        const Mat2 df = map.differential(p);
        const Vec2 u = unstable_direction(map, p, cocycle_m).direction;
        const Vec2 s = stable_direction(map, p, cocycle_m).direction;

        double min_growth = std::numeric_limits<double>::infinity();
        double max_decay = 0.0;
        for (int j = 0; j < vectors_per_sample; ++j) {
            const double t = vectors_per_sample == 1
                                 ? 0.0
                                 : -1.0 + 2.0 * j / (vectors_per_sample - 1);
            const double ang = t * vector_half_angle;
            min_growth = std::min(min_growth, (df * rotate(u, ang)).norm());
            max_decay = std::max(max_decay, (df * rotate(s, ang)).norm());
        }
        const double ku = (min_growth - 1.0) / d2;
        const double ks = (1.0 - max_decay) / d2;
        if (min_growth <= 1.0 || max_decay >= 1.0) {
            rep.degenerate = true;
            rep.worst_point = p;
        }
        if (ku < rep.kappa_u) {
            rep.kappa_u = ku;
            if (!rep.degenerate) rep.worst_point = p;
        }
        rep.kappa_s = std::min(rep.kappa_s, ks);
    }
    if (rep.degenerate) {
        rep.kappa_u = 0.0;
        rep.kappa_s = 0.0;
    }
    return rep;
}

ConeInvarianceReport check_cone_invariance(const AlmostAnosovMap& map,
                                           double half_angle, int sample_n,
                                           std::uint64_t seed,
                                           double half_angle_s,
                                           double exclusion_radius) {
    if (half_angle_s < 0.0) half_angle_s = half_angle;
    ConeInvarianceReport rep;
    Rng rng(derive_seed(seed, 13));
    const Vec2 u_dir = map.unstable_eigendirection();
    const Vec2 s_dir = map.stable_eigendirection();
    const Vec2 u_rays[3] = {rotate(u_dir, half_angle), u_dir,
                            rotate(u_dir, -half_angle)};
    const Vec2 s_rays[3] = {rotate(s_dir, half_angle_s), s_dir,
                            rotate(s_dir, -half_angle_s)};

    for (int k = 0; k < sample_n; ++k) {
        TorusPoint p(rng.uniform01(), rng.uniform01());
        if (k % 4 == 3) {
            // force samples into the glue disc, where invariance is delicate
            const double rad = map.spec().r1 * std::sqrt(rng.uniform01());
            const double th = rng.uniform(0.0, 2.0 * M_PI);
            p = TorusPoint(rad * std::cos(th), rad * std::sin(th));
        }
        if (dist_to_zero(p) <= exclusion_radius) continue;
        ++rep.checked;

        const Mat2 df = map.differential(p);
        const Mat2 df_inv = df.inverse();
        for (const auto& ray : u_rays) {
            const double excess = line_angle(df * ray, u_dir) - half_angle;
            if (excess > rep.worst_excess_u) {
                rep.worst_excess_u = excess;
                rep.worst_point_u = p;
            }
        }
        for (const auto& ray : s_rays) {
            const double excess = line_angle(df_inv * ray, s_dir) - half_angle_s;
            if (excess > rep.worst_excess_s) {
                rep.worst_excess_s = excess;
                rep.worst_point_s = p;
            }
        }
    }
    rep.pass = rep.worst_excess_u < 0.0 && rep.worst_excess_s < 0.0;
    return rep;
}

}  // namespace aalab

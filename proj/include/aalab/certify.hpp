#pragma once

#include <cstdint>

#include "aalab/map.hpp"
#include "aalab/splitting.hpp"

namespace aalab {

// Constant cone field: sectors about the eigendirections of A. The default
// half-angle matches the linear picture away from the glue; the invariance
// sweep accepts separate tuned angles because the glue rotates the invariant
// sectors near the singularity.
struct ConeField {
    Vec2 u_dir;
    Vec2 s_dir;
    double half_angle_u = 15.0 * M_PI / 180.0;
    double half_angle_s = 15.0 * M_PI / 180.0;

    static ConeField standard(const AlmostAnosovMap& map,
                              double half_angle = 15.0 * M_PI / 180.0) {
        return {map.unstable_eigendirection(), map.stable_eigendirection(),
                half_angle, half_angle};
    }

    bool contains_u(const Vec2& v) const {
        return line_angle(v, u_dir) <= half_angle_u;
    }
    bool contains_s(const Vec2& v) const {
        return line_angle(v, s_dir) <= half_angle_s;
    }
};

struct NondegeneracyReport {
    double kappa_u = 0.0;
    double kappa_s = 0.0;
    bool degenerate = false;  // some sampled cone vector failed to expand/contract
    long sample_count = 0;
    TorusPoint worst_point;
};

// Best empirical quadratic constants: the largest kappa so that the sampled
// growth along vectors near E^u (and decay near E^s) dominates
// 1 +- kappa d(x,S)^2 at every sample outside B_r(0). Vectors are jittered
// within vector_half_angle of the computed splitting directions.
NondegeneracyReport check_nondegeneracy(const AlmostAnosovMap& map,
                                        int sample_n, double r,
                                        std::uint64_t seed,
                                        double vector_half_angle = 5.0 * M_PI / 180.0,
                                        int vectors_per_sample = 7,
                                        int cocycle_m = kDefaultCocycleDepth);

struct ConeInvarianceReport {
    bool pass = false;        // strict invariance at every sample
    long checked = 0;
    double worst_excess_u = -M_PI;  // image angle minus half-angle, > 0 violates
    double worst_excess_s = -M_PI;
    TorusPoint worst_point_u;
    TorusPoint worst_point_s;
};

// Checks Df C^u inside C^u at the image point (via the sector boundary rays)
// and dually Df^{-1} C^s inside C^s. Samples avoiding B_exclusion(0) can be
// requested; exclusion 0 checks everywhere.
ConeInvarianceReport check_cone_invariance(const AlmostAnosovMap& map,
                                           double half_angle, int sample_n,
                                           std::uint64_t seed,
                                           double half_angle_s = -1.0,
                                           double exclusion_radius = 0.0);

}  // namespace aalab

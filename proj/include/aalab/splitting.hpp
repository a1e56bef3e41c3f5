#pragma once

#include <optional>
#include <vector>

#include "aalab/map.hpp"

namespace aalab {

inline constexpr int kDefaultCocycleDepth = 40;

struct UnitTangent {
    TorusPoint base;
    Vec2 direction;  // unit vector
};

struct PotentialValue {
    double t = 0.0;
    double value = 0.0;
};

// E^u(p) as the forward cocycle limit: push the unstable eigendirection of A
// through the differentials along the backward orbit of length m.
UnitTangent unstable_direction(const AlmostAnosovMap& map, const TorusPoint& p,
                               int m = kDefaultCocycleDepth);

// Adaptive variant: grows m until the angle increment drops below angle_tol.
UnitTangent unstable_direction_adaptive(const AlmostAnosovMap& map,
                                        const TorusPoint& p,
                                        double angle_tol = 1e-9,
                                        int m_max = 200);

UnitTangent stable_direction(const AlmostAnosovMap& map, const TorusPoint& p,
                             int m = kDefaultCocycleDepth);

// phi_t(p) = -t log |Df_p restricted to E^u(p)|.
PotentialValue geometric_potential(const AlmostAnosovMap& map,
                                   const TorusPoint& p, double t,
                                   int m = kDefaultCocycleDepth);

// Birkhoff average of log |Df|_{E^u}| along an orbit.
double lyapunov_exponent(const AlmostAnosovMap& map, const TorusPoint& p0,
                         long n, long burn_in);

enum class ManifoldSide { Stable, Unstable };

// Polyline through p tangent to the invariant direction, grown by iterating
// short segments and trimming to the requested arclength on each side.
std::vector<TorusPoint> local_manifold(const AlmostAnosovMap& map,
                                       const TorusPoint& p, ManifoldSide side,
                                       double arc, int n_pts);

// Intersection W^u_eps(x) with W^s_eps(y); empty when the polylines do not
// cross within the arc.
std::optional<TorusPoint> bracket(const AlmostAnosovMap& map,
                                  const TorusPoint& x, const TorusPoint& y,
                                  double eps = 0.05);

}  // namespace aalab

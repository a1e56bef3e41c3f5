#include "aalab/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aalab {

namespace {

Vec2 push_forward_chain(const AlmostAnosovMap& map,
                        const std::vector<TorusPoint>& backward, Vec2 v) {
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) {
        v = (map.differential(*it) * v).normalized();
    }
    return v;
}

std::vector<TorusPoint> backward_orbit(const AlmostAnosovMap& map,
                                       const TorusPoint& p, int m) {
    std::vector<TorusPoint> orbit;
    orbit.reserve(m);
    TorusPoint q = p;
    for (int k = 0; k < m; ++k) {
        q = map.apply_inverse(q);
        orbit.push_back(q);
    }
    return orbit;
}

}  // namespace

UnitTangent unstable_direction(const AlmostAnosovMap& map, const TorusPoint& p,
                               int m) {
    const auto orbit = backward_orbit(map, p, m);
    Vec2 v = push_forward_chain(map, orbit, map.unstable_eigendirection());
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = -v;
    return {p, v};
}

UnitTangent unstable_direction_adaptive(const AlmostAnosovMap& map,
                                        const TorusPoint& p, double angle_tol,
                                        int m_max) {
    UnitTangent prev = unstable_direction(map, p, kDefaultCocycleDepth);
    for (int m = kDefaultCocycleDepth + 10; m <= m_max; m += 10) {
        UnitTangent cur = unstable_direction(map, p, m);
        if (line_angle(prev.direction, cur.direction) < angle_tol) return cur;
        prev = cur;
    }
    return prev;
}

UnitTangent stable_direction(const AlmostAnosovMap& map, const TorusPoint& p,
                             int m) {
    std::vector<TorusPoint> forward;
    forward.reserve(m);
    TorusPoint q = p;
    for (int k = 0; k < m; ++k) {
        forward.push_back(q);
        q = map.apply(q);
    }
    Vec2 v = map.stable_eigendirection();
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
        v = (map.differential(*it).inverse() * v).normalized();
    }
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = -v;
    return {p, v};
}

PotentialValue geometric_potential(const AlmostAnosovMap& map,
                                   const TorusPoint& p, double t, int m) {
    if (t == 0.0) return {0.0, 0.0};
    const UnitTangent u = unstable_direction(map, p, m);
    const double growth = (map.differential(p) * u.direction).norm();
    return {t, -t * std::log(growth)};
}

double lyapunov_exponent(const AlmostAnosovMap& map, const TorusPoint& p0,
                         long n, long burn_in) {
    if (n < 1) throw std::invalid_argument("lyapunov_exponent: n must be >= 1");
    TorusPoint p = p0;
    Vec2 u = map.unstable_eigendirection();
    for (long k = 0; k < burn_in; ++k) {
        u = (map.differential(p) * u).normalized();
        p = map.apply(p);
    }
    double sum = 0.0;
    for (long k = 0; k < n; ++k) {
        const Vec2 w = map.differential(p) * u;
        const double g = w.norm();
        sum += std::log(g);
        u = w * (1.0 / g);
        p = map.apply(p);
    }
    return sum / static_cast<double>(n);
}

namespace {

// Arm of a manifold polyline: offsets from a center point, in chart
// coordinates, ordered outward, roughly uniform in arclength.
struct Arm {
    std::vector<Vec2> offsets;
};

Arm resample_arm(const Arm& arm, double target_len, int n_pts) {
    Arm out;
    if (arm.offsets.empty() || n_pts < 1) return out;
    std::vector<double> cum;
    cum.reserve(arm.offsets.size() + 1);
    cum.push_back(0.0);
    Vec2 prev{0.0, 0.0};
    for (const auto& o : arm.offsets) {
        cum.push_back(cum.back() + (o - prev).norm());
        prev = o;
    }
    const double total = std::min(target_len, cum.back());
    out.offsets.reserve(n_pts);
    std::size_t seg = 0;
    for (int i = 1; i <= n_pts; ++i) {
        const double s = total * i / n_pts;
        while (seg + 1 < cum.size() - 1 && cum[seg + 1] < s) ++seg;
        const double segload = cum[seg + 1] - cum[seg];
        const double t = segload > 0.0 ? (s - cum[seg]) / segload : 0.0;
        const Vec2 lo = seg == 0 ? Vec2{0.0, 0.0} : arm.offsets[seg - 1];
        const Vec2 hi = arm.offsets[seg];
        out.offsets.push_back(lo + (hi - lo) * t);
    }
    return out;
}

}  // namespace

std::vector<TorusPoint> local_manifold(const AlmostAnosovMap& map,
                                       const TorusPoint& p, ManifoldSide side,
                                       double arc, int n_pts) {
    constexpr int kGraphIters = 8;
    const bool unstable = side == ManifoldSide::Unstable;
    const double growth = map.lambda1();

    // Start far along the contracting direction of the iteration scheme and
    // let the dynamics straighten the segment.
    TorusPoint center = p;
    for (int k = 0; k < kGraphIters; ++k)
        center = unstable ? map.apply_inverse(center) : map.apply(center);

    const Vec2 dir0 = unstable ? unstable_direction(map, center).direction
                               : stable_direction(map, center).direction;

    auto target_at = [&](int stage) {
        // stage counts remaining pullbacks; 0 is the final polyline at p
        return 1.3 * arc * std::pow(growth, -stage);
    };

    const int seed_pts = 2 * n_pts;
    Arm plus, minus;
    plus.offsets.reserve(seed_pts);
    minus.offsets.reserve(seed_pts);
    const double len0 = target_at(kGraphIters);
    for (int i = 1; i <= seed_pts; ++i) {
        plus.offsets.push_back(dir0 * (len0 * i / seed_pts));
        minus.offsets.push_back(dir0 * (-len0 * i / seed_pts));
    }

    for (int stage = kGraphIters - 1; stage >= 0; --stage) {
        const TorusPoint next_center =
            unstable ? map.apply(center) : map.apply_inverse(center);
        auto advance = [&](Arm& arm) {
            Arm out;
            out.offsets.reserve(arm.offsets.size());
            for (const auto& o : arm.offsets) {
                const TorusPoint q = wrap_point(center.vec() + o);
                const TorusPoint fq = unstable ? map.apply(q) : map.apply_inverse(q);
                out.offsets.push_back(torus_diff(fq, next_center));
            }
            const double tgt = stage == 0 ? arc : target_at(stage);
            return resample_arm(out, tgt, seed_pts);
        };
        plus = advance(plus);
        minus = advance(minus);
        center = next_center;
    }

    // The pullback chain returns numerically to p; re-anchor exactly.
    std::vector<TorusPoint> poly;
    poly.reserve(2 * n_pts + 1);
    const Arm minus_final = resample_arm(minus, arc, n_pts);
    const Arm plus_final = resample_arm(plus, arc, n_pts);
    for (auto it = minus_final.offsets.rbegin(); it != minus_final.offsets.rend(); ++it)
        poly.push_back(wrap_point(p.vec() + *it));
    poly.push_back(p);
    for (const auto& o : plus_final.offsets) poly.push_back(wrap_point(p.vec() + o));
    return poly;
}

std::optional<TorusPoint> bracket(const AlmostAnosovMap& map,
                                  const TorusPoint& x, const TorusPoint& y,
                                  double eps) {
    const double arc = std::max(4.0 * torus_dist(x, y), std::min(eps, 0.05));
    const int n_pts = 96;
    const auto wu = local_manifold(map, x, ManifoldSide::Unstable, arc, n_pts);
    const auto ws = local_manifold(map, y, ManifoldSide::Stable, arc, n_pts);

    // Work in the chart around x.
    std::vector<Vec2> u_pts, s_pts;
    u_pts.reserve(wu.size());
    s_pts.reserve(ws.size());
    for (const auto& q : wu) u_pts.push_back(torus_diff(q, x));
    for (const auto& q : ws) s_pts.push_back(torus_diff(q, x));

    std::optional<Vec2> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < u_pts.size(); ++i) {
        const Vec2 p0 = u_pts[i];
        const Vec2 du = u_pts[i + 1] - p0;
        for (std::size_t j = 0; j + 1 < s_pts.size(); ++j) {
            const Vec2 q0 = s_pts[j];
            const Vec2 ds = s_pts[j + 1] - q0;
            const double det = du.x * (-ds.y) - (-ds.x) * du.y;
            if (std::abs(det) < 1e-18) continue;
            const Vec2 rhs = q0 - p0;
            const double t = (rhs.x * (-ds.y) - (-ds.x) * rhs.y) / det;
            const double s = (du.x * rhs.y - rhs.x * du.y) / det;
            if (t < -1e-12 || t > 1.0 + 1e-12 || s < -1e-12 || s > 1.0 + 1e-12)
                continue;
            const Vec2 hit = p0 + du * t;
            const double d = hit.norm();
            if (d < best_dist) {
                best_dist = d;
                best = hit;
            }
        }
    }
    if (!best) return std::nullopt;
    return wrap_point(x.vec() + *best);
}

}  // namespace aalab

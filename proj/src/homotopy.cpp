#include "aalab/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aalab {

namespace {

Mat2 perturbed_local_differential(const MapSpec& s, const Vec2& v, double alpha,
                                  double beta) {
    const double x = v.x, y = v.y;
    return Mat2(1.0 + (3.0 * s.a - alpha) * x * x + s.b * y * y,
                2.0 * s.b * x * y,
                -2.0 * s.c * x * y,
                1.0 - s.c * x * x - (3.0 * s.d - beta) * y * y);
}

}  // namespace

MarginPair hyperbolicity_margin(const AlmostAnosovMap& map, const TorusPoint& p) {
    const Vec2 v = lift_nearest_zero(p);
    const double r = v.norm();
    if (r == 0.0) return {0.0, 0.0};  // identity differential, no margin
    const MapSpec& s = map.spec();

    auto ok = [&](double sigma) {
        return hyperbolicity_certificate(
                   perturbed_local_differential(s, v, sigma * 3.0 * s.a,
                                                sigma * 3.0 * s.d))
            .hyperbolic;
    };
    if (!ok(0.0)) return {0.0, 0.0};

    double lo = 0.0, hi = 1.0;
    if (ok(1.0)) return {3.0 * s.a, 3.0 * s.d};  // on-axis marginal cases cap at 1
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return {3.0 * s.a * lo, 3.0 * s.d * lo};
}

MarginField::MarginField(const AlmostAnosovMap& map, int radial_n, int angular_n) {
    if (radial_n < 8 || angular_n < 8)
        throw std::invalid_argument("margin field grid resolutions must be >= 8");
    const MapSpec& spec = map.spec();
    r0_ = spec.r0;
    radii_.resize(radial_n);
    alpha_raw_.assign(radial_n, 0.0);
    beta_raw_.assign(radial_n, 0.0);
    for (int i = 0; i < radial_n; ++i) {
        const double s = r0_ * i / (radial_n - 1);
        radii_[i] = s;
        if (i == 0) continue;  // margins vanish at the singularity
        double a_min = std::numeric_limits<double>::infinity();
        double b_min = std::numeric_limits<double>::infinity();
        for (int j = 0; j < angular_n; ++j) {
            const double th = 2.0 * M_PI * j / angular_n;
            const TorusPoint p(s * std::cos(th), s * std::sin(th));
            const MarginPair m = hyperbolicity_margin(map, p);
            a_min = std::min(a_min, m.pi);
            b_min = std::min(b_min, m.rho);
        }
        alpha_raw_[i] = a_min;
        beta_raw_[i] = b_min;
    }

    // Shrink to a continuous choice that vanishes at 0 and keeps the profile
    // slopes above -b and -c. The bisected margins are suprema; any smaller
    // continuous positive field certifies the same matrices.
    alpha_used_.assign(radial_n, 0.0);
    beta_used_.assign(radial_n, 0.0);
    for (int i = 0; i < radial_n; ++i) {
        const double ramp = std::min(1.0, 2.0 * radii_[i] / r0_);
        alpha_used_[i] =
            std::min(0.9 * alpha_raw_[i], 1.8 * spec.b) * ramp;
        beta_used_[i] = std::min(0.9 * beta_raw_[i], 1.8 * spec.c) * ramp;
    }
}

double MarginField::interp(const std::vector<double>& tab, double s) const {
    if (s <= 0.0) return tab.front();
    if (s >= r0_) return tab.back();
    const double pos = s / r0_ * (tab.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double t = pos - i;
    return tab[i] * (1.0 - t) + tab[i + 1] * t;
}

HomotopyMember::HomotopyMember(const AlmostAnosovMap& map,
                               const MarginField& field, double epsilon,
                               int quad_nodes)
    : map_(&map), field_(&field), eps_(epsilon), eps2_(epsilon * epsilon) {
    if (!(epsilon > 0.0 && epsilon <= map.spec().r0))
        throw std::invalid_argument("epsilon must lie in (0, r0]");
    quad_nodes = std::max(quad_nodes, 256);
    g_tab_.assign(quad_nodes + 1, 0.0);
    h_tab_.assign(quad_nodes + 1, 0.0);
    const double dt = eps2_ / quad_nodes;
    // g(t) = (1/4) integral_t^{eps^2} alpha(sqrt(u)) du, accumulated from the
    // top by composite trapezoid
    for (int i = quad_nodes - 1; i >= 0; --i) {
        const double t_hi = (i + 1) * dt;
        const double t_lo = i * dt;
        const double fa_hi = field.alpha(std::sqrt(t_hi));
        const double fa_lo = field.alpha(std::sqrt(t_lo));
        const double fb_hi = field.beta(std::sqrt(t_hi));
        const double fb_lo = field.beta(std::sqrt(t_lo));
        g_tab_[i] = g_tab_[i + 1] + 0.25 * 0.5 * (fa_hi + fa_lo) * dt;
        h_tab_[i] = h_tab_[i + 1] + 0.25 * 0.5 * (fb_hi + fb_lo) * dt;
    }
}

double HomotopyMember::g(double t) const {
    if (t >= eps2_) return 0.0;
    if (t < 0.0) t = 0.0;
    const double pos = t / eps2_ * (g_tab_.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double f = pos - i;
    return g_tab_[i] * (1.0 - f) + g_tab_[i + 1] * f;
}

double HomotopyMember::h(double t) const {
    if (t >= eps2_) return 0.0;
    if (t < 0.0) t = 0.0;
    const double pos = t / eps2_ * (h_tab_.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double f = pos - i;
    return h_tab_[i] * (1.0 - f) + h_tab_[i + 1] * f;
}

double HomotopyMember::g_prime(double t) const {
    if (t >= eps2_ || t < 0.0) return 0.0;
    return -0.25 * field_->alpha(std::sqrt(t));
}

double HomotopyMember::h_prime(double t) const {
    if (t >= eps2_ || t < 0.0) return 0.0;
    return -0.25 * field_->beta(std::sqrt(t));
}

TorusPoint HomotopyMember::apply(const TorusPoint& p) const {
    const Vec2 v = lift_nearest_zero(p);
    const double t = v.norm2();
    if (t >= eps2_) return map_->apply(p);
    const MapSpec& s = map_->spec();
    const double phi = s.a * v.x * v.x + s.b * v.y * v.y;
    const double psi = s.c * v.x * v.x + s.d * v.y * v.y;
    return wrap_point({v.x * (1.0 + g(t) + phi), v.y * (1.0 - h(t) - psi)});
}

Mat2 HomotopyMember::differential(const TorusPoint& p) const {
    const Vec2 v = lift_nearest_zero(p);
    const double t = v.norm2();
    if (t >= eps2_) return map_->differential(p);
    const MapSpec& s = map_->spec();
    const double x = v.x, y = v.y;
    const double gp = g_prime(t);
    const double hp = h_prime(t);
    const double Phi = g(t) + (3.0 * s.a + 2.0 * gp) * x * x + s.b * y * y;
    const double Psi = h(t) + (3.0 * s.d + 2.0 * hp) * y * y + s.c * x * x;
    return Mat2(1.0 + Phi, 2.0 * x * y * (gp + s.b),
                -2.0 * x * y * (hp + s.c), 1.0 - Psi);
}

HomotopyMember build_homotopy_member(const AlmostAnosovMap& map,
                                     const MarginField& field, double epsilon) {
    return HomotopyMember(map, field, epsilon);
}

HomotopyVerification verify_homotopy(const HomotopyMember& member, int grid_n) {
    if (grid_n < 64)
        throw std::invalid_argument("verify_homotopy: grid_n must be >= 64");
    HomotopyVerification rep;
    rep.all_hyperbolic = true;
    const AlmostAnosovMap& map = member.map();
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const TorusPoint p(static_cast<double>(i) / grid_n,
                               static_cast<double>(j) / grid_n);
            ++rep.checked;
            if (!hyperbolicity_certificate(member.differential(p)).hyperbolic) {
                if (rep.all_hyperbolic) rep.first_failure = p;
                rep.all_hyperbolic = false;
                ++rep.failed;
            }
            rep.c0_distance =
                std::max(rep.c0_distance, torus_dist(member.apply(p), map.apply(p)));
        }
    }
    return rep;
}

}  // namespace aalab

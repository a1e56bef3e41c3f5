#include "aalab/tower.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aalab/rng.hpp"

namespace aalab {

Rectangle Rectangle::standard(const AlmostAnosovMap& map, TorusPoint center,
                              double u_half, double s_half) {
    Rectangle rect;
    rect.center = center;
    rect.u_half = u_half;
    rect.s_half = s_half;
    rect.u_axis = map.unstable_eigendirection();
    rect.s_axis = map.stable_eigendirection();
    if (rect.diameter() >= 0.2)
        throw std::invalid_argument("rectangle diameter must stay below 0.2");
    if (dist_to_zero(center) - rect.diameter() / 2.0 <= map.spec().r1)
        throw std::invalid_argument("rectangle must avoid the glue disc");
    return rect;
}

int first_return_time(const AlmostAnosovMap& map, const Rectangle& rect,
                      const TorusPoint& x, int n_max) {
    TorusPoint p = x;
    for (int n = 1; n <= n_max; ++n) {
        p = map.apply(p);
        if (rect.contains(p)) return n;
    }
    return kReturnTimeout;
}

double ReturnTimeHistogram::mean_return_time() const {
    long total = 0;
    double sum = 0.0;
    for (const auto& [n, c] : counts) {
        total += c;
        sum += static_cast<double>(n) * c;
    }
    return total > 0 ? sum / total : 0.0;
}

ReturnTimeHistogram return_time_histogram(const AlmostAnosovMap& map,
                                          const Rectangle& rect, long samples,
                                          int n_max, std::uint64_t seed) {
    ReturnTimeHistogram hist;
    hist.samples = samples;
    hist.n_max = n_max;
    Rng rng(derive_seed(seed, 17));
    for (long k = 0; k < samples; ++k) {
        const TorusPoint x = rect.sample(rng.uniform01(), rng.uniform01());
        const int tau = first_return_time(map, rect, x, n_max);
        if (tau == kReturnTimeout)
            ++hist.timeouts;
        else
            ++hist.counts[tau];
    }
    return hist;
}

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points = 0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit fit;
    const int n = static_cast<int>(xs.size());
    fit.points = n;
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace

TailFit fit_tail_rate(const ReturnTimeHistogram& hist) {
    TailFit fit;
    if (hist.counts.empty()) return fit;
    const int n_min = hist.counts.begin()->first;
    const int n_max = hist.counts.rbegin()->first;
    fit.n_lo = (n_min + n_max) / 2;
    fit.n_hi = n_max;
    std::vector<double> xs, ys;
    for (const auto& [n, c] : hist.counts) {
        if (n < fit.n_lo || c <= 0) continue;
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::log(static_cast<double>(c)));
    }
    fit.bins_used = static_cast<int>(xs.size());
    if (fit.bins_used < 5) return fit;
    const LineFit lf = least_squares(xs, ys);
    fit.h_fit = lf.slope;
    fit.r_squared = lf.r_squared;
    fit.ok = true;
    return fit;
}

long return_time_gcd(const ReturnTimeHistogram& hist) {
    long g = 0;
    for (const auto& [n, c] : hist.counts) {
        if (c > 0) g = std::gcd(g, static_cast<long>(n));
    }
    return g;
}

namespace {

// Stable-segment pair: a point of the rectangle and a companion a short way
// along its stable manifold, both inside the rectangle.
struct StablePair {
    TorusPoint x;
    TorusPoint y;
};

std::optional<StablePair> make_stable_pair(const AlmostAnosovMap& map,
                                           const Rectangle& rect, Rng& rng,
                                           ManifoldSide side) {
    const TorusPoint x = rect.sample(rng.uniform01(), rng.uniform01());
    const double delta = std::pow(10.0, rng.uniform(-4.0, -2.0));
    const auto poly = local_manifold(map, x, side, delta, 8);
    // walk to arclength delta on the positive arm
    const TorusPoint y = poly.back();
    if (torus_dist(x, y) < 1e-9) return std::nullopt;
    if (!rect.contains(y)) return std::nullopt;
    return StablePair{x, y};
}

double log_unstable_jacobian_block(const AlmostAnosovMap& map, TorusPoint& p,
                                   Vec2& u, int steps) {
    double acc = 0.0;
    for (int k = 0; k < steps; ++k) {
        const Vec2 w = map.differential(p) * u;
        const double g = w.norm();
        acc += std::log(g);
        u = w * (1.0 / g);
        p = map.apply(p);
    }
    return acc;
}

}  // namespace

ContractionReport check_contraction(const AlmostAnosovMap& map,
                                    const Rectangle& rect, int pairs,
                                    std::uint64_t seed, int n_max) {
    ContractionReport rep;
    Rng rng(derive_seed(seed, 19));
    int made = 0;
    int guard = 0;
    while (made < pairs && guard++ < 20 * pairs) {
        const auto pair = make_stable_pair(map, rect, rng, ManifoldSide::Stable);
        if (!pair) continue;
        const int tau_x = first_return_time(map, rect, pair->x, n_max);
        const int tau_y = first_return_time(map, rect, pair->y, n_max);
        if (tau_x == kReturnTimeout || tau_x != tau_y) {
            ++rep.pairs_skipped;
            ++made;
            continue;
        }
        TorusPoint fx = pair->x, fy = pair->y;
        for (int k = 0; k < tau_x; ++k) {
            fx = map.apply(fx);
            fy = map.apply(fy);
        }
        const double ratio = torus_dist(fx, fy) / torus_dist(pair->x, pair->y);
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        ++rep.pairs_used;
        ++made;
    }
    return rep;
}

DistortionReport check_distortion(const AlmostAnosovMap& map,
                                  const Rectangle& rect, int pairs,
                                  int n_compositions, std::uint64_t seed,
                                  int n_max) {
    if (n_compositions > 8)
        throw std::invalid_argument("n_compositions must be <= 8");
    DistortionReport rep;
    rep.sup_log_ratio.assign(n_compositions, 0.0);
    Rng rng(derive_seed(seed, 23));
    int made = 0;
    int guard = 0;
    while (made < pairs && guard++ < 20 * pairs) {
        const auto pair = make_stable_pair(map, rect, rng, ManifoldSide::Stable);
        if (!pair) continue;
        ++made;

        TorusPoint x = pair->x, y = pair->y;
        Vec2 ux = unstable_direction(map, x).direction;
        Vec2 uy = unstable_direction(map, y).direction;
        bool used = false;
        for (int depth = 0; depth < n_compositions; ++depth) {
            const int tau_x = first_return_time(map, rect, x, n_max);
            const int tau_y = first_return_time(map, rect, y, n_max);
            if (tau_x == kReturnTimeout || tau_x != tau_y) break;
            TorusPoint px = x, py = y;
            const double jx = log_unstable_jacobian_block(map, px, ux, tau_x);
            const double jy = log_unstable_jacobian_block(map, py, uy, tau_y);
            rep.sup_log_ratio[depth] =
                std::max(rep.sup_log_ratio[depth], std::abs(jx - jy));
            x = px;
            y = py;
            used = true;
        }
        if (used)
            ++rep.pairs_used;
        else
            ++rep.pairs_skipped;
    }

    std::vector<double> xs, ys;
    for (int n = 0; n < n_compositions; ++n) {
        if (rep.sup_log_ratio[n] > 0.0) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(rep.sup_log_ratio[n]));
        }
    }
    if (xs.size() >= 3) {
        const LineFit lf = least_squares(xs, ys);
        rep.kappa_fit = std::exp(lf.slope);
        rep.c_fit = std::exp(lf.intercept);
        rep.r_squared = lf.r_squared;
        rep.fit_ok = true;
    }
    return rep;
}

IntermediateBoundReport check_intermediate_bound(const AlmostAnosovMap& map,
                                                 const Rectangle& rect,
                                                 int pairs, std::uint64_t seed,
                                                 int n_max) {
    IntermediateBoundReport rep;
    Rng rng(derive_seed(seed, 29));
    int made = 0;
    int guard = 0;
    while (made < pairs && guard++ < 20 * pairs) {
        const bool stable_side = made % 2 == 0;
        const auto pair = make_stable_pair(
            map, rect, rng, stable_side ? ManifoldSide::Stable : ManifoldSide::Unstable);
        if (!pair) continue;
        ++made;
        const int tau_x = first_return_time(map, rect, pair->x, n_max);
        const int tau_y = first_return_time(map, rect, pair->y, n_max);
        if (tau_x == kReturnTimeout || tau_x != tau_y) {
            ++rep.pairs_skipped;
            continue;
        }
        TorusPoint px = pair->x, py = pair->y;
        double max_intermediate = torus_dist(px, py);
        for (int j = 1; j <= tau_x; ++j) {
            px = map.apply(px);
            py = map.apply(py);
            max_intermediate = std::max(max_intermediate, torus_dist(px, py));
        }
        const double denom =
            std::max(torus_dist(pair->x, pair->y), torus_dist(px, py));
        if (denom < 1e-12) continue;
        const double k = max_intermediate / denom;
        rep.worst_k = std::max(rep.worst_k, k);
        if (stable_side) rep.worst_k_stable = std::max(rep.worst_k_stable, k);
        ++rep.pairs_used;
    }
    return rep;
}

}  // namespace aalab

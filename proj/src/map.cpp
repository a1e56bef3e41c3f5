#include "aalab/map.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aalab/rng.hpp"

namespace aalab {

namespace {

bool matrix_is_hyperbolic(const MapSpec& spec) {
    const long tr = spec.A[0][0] + spec.A[1][1];
    return std::labs(tr) > 2;
}

long matrix_det(const MapSpec& spec) {
    return spec.A[0][0] * spec.A[1][1] - spec.A[0][1] * spec.A[1][0];
}

double exp_bump(double s) {  // exp(-1/s) for s > 0, else 0
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s);
}

double exp_bump_prime(double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s) / (s * s);
}

}  // namespace

std::vector<std::string> validate_spec(const MapSpec& spec) {
    std::vector<std::string> errors;
    if (matrix_det(spec) != 1) errors.push_back("det(A) = 1 violated");
    if (!matrix_is_hyperbolic(spec))
        errors.push_back("|trace(A)| > 2 violated (A not hyperbolic)");
    if (!(spec.a > 0.0)) errors.push_back("a > 0 violated");
    if (!(spec.b > 0.0)) errors.push_back("b > 0 violated");
    if (!(spec.c > 0.0)) errors.push_back("c > 0 violated");
    if (!(spec.d > 0.0)) errors.push_back("d > 0 violated");
    if (!(spec.r0 > 0.0 && spec.r0 < spec.r1))
        errors.push_back("0 < r0 < r1 violated");
    if (!(spec.r1 < 0.25)) errors.push_back("r1 < 1/4 violated");
    if (!(spec.b > 2.0 * spec.d)) errors.push_back("b > 2d violated");
    if (!(spec.a * spec.d - spec.b * spec.c > 0.0))
        errors.push_back("a*d - b*c > 0 violated");
    return errors;
}

AlmostAnosovMap::AlmostAnosovMap(const MapSpec& spec) : spec_(spec) {
    const auto errors = validate_spec(spec);
    if (!errors.empty()) {
        std::ostringstream os;
        os << "invalid map spec:";
        for (const auto& e : errors) os << ' ' << e;
        throw std::invalid_argument(os.str());
    }
    init();
}

AlmostAnosovMap::AlmostAnosovMap(const MapSpec& spec, unchecked_t) : spec_(spec) {
    if (!matrix_is_hyperbolic(spec) || matrix_det(spec) != 1)
        throw std::invalid_argument("A must be hyperbolic with det 1");
    if (!(spec.r0 > 0.0 && spec.r0 < spec.r1 && spec.r1 < 0.25))
        throw std::invalid_argument("radii must satisfy 0 < r0 < r1 < 1/4");
    init();
}

void AlmostAnosovMap::init() {
    A_ = spec_.matrix();
    A_inv_ = A_.inverse();
    const auto rep = hyperbolicity_certificate(A_);
    lambda1_ = rep.lambda1;
    eig_u_ = eigenvector_for(A_, rep.lambda1);
    eig_s_ = eigenvector_for(A_, rep.lambda2);
}

// The profile argument is logarithmic in the radius. A profile linear in r
// would force |omega'| ~ 1/(r1-r0), and the gradient term of the blend would
// then exceed the contraction margin of A along the stable direction and fold
// the annulus. In log scale |r omega'| <= q'_max / log(r1/r0), which the
// radius ratio keeps below the margin.
double AlmostAnosovMap::omega(double r) const {
    if (r <= spec_.r0) return 1.0;
    if (r >= spec_.r1) return 0.0;
    const double s = std::log(spec_.r1 / r) / std::log(spec_.r1 / spec_.r0);
    if (spec_.bump == BumpProfile::Poly9) {
        const double s2 = s * s;
        const double s4 = s2 * s2;
        // C^4 smoothstep: 126 s^5 - 420 s^6 + 540 s^7 - 315 s^8 + 70 s^9
        return s4 * s * (126.0 + s * (-420.0 + s * (540.0 + s * (-315.0 + s * 70.0))));
    }
    const double e0 = exp_bump(s);
    const double e1 = exp_bump(1.0 - s);
    return e0 / (e0 + e1);
}

double AlmostAnosovMap::omega_prime(double r) const {
    if (r <= spec_.r0 || r >= spec_.r1) return 0.0;
    const double span = std::log(spec_.r1 / spec_.r0);
    const double s = std::log(spec_.r1 / r) / span;
    double q;
    if (spec_.bump == BumpProfile::Poly9) {
        const double u = s * (1.0 - s);
        q = 630.0 * u * u * u * u;
    } else {
        const double e0 = exp_bump(s);
        const double e1 = exp_bump(1.0 - s);
        const double sum = e0 + e1;
        q = (exp_bump_prime(s) * e1 + e0 * exp_bump_prime(1.0 - s)) / (sum * sum);
    }
    return -q / (span * r);  // ds/dr = -1/(r log(r1/r0))
}

Vec2 AlmostAnosovMap::local_form(const Vec2& v) const {
    const double phi = spec_.a * v.x * v.x + spec_.b * v.y * v.y;
    const double psi = spec_.c * v.x * v.x + spec_.d * v.y * v.y;
    return {v.x * (1.0 + phi), v.y * (1.0 - psi)};
}

Mat2 AlmostAnosovMap::local_differential(const Vec2& v) const {
    const double x = v.x, y = v.y;
    return Mat2(1.0 + 3.0 * spec_.a * x * x + spec_.b * y * y,
                2.0 * spec_.b * x * y,
                -2.0 * spec_.c * x * y,
                1.0 - spec_.c * x * x - 3.0 * spec_.d * y * y);
}

TorusPoint AlmostAnosovMap::apply(const TorusPoint& p) const {
    const Vec2 v = lift_nearest_zero(p);
    const double r = v.norm();
    if (r >= spec_.r1) {
        return wrap_point(A_ * v);
    }
    const Vec2 linear = A_ * v;
    if (r <= spec_.r0) {
        return wrap_point(local_form(v));
    }
    const double w = omega(r);
    const Vec2 loc = local_form(v);
    return wrap_point(loc * w + linear * (1.0 - w));
}

Mat2 AlmostAnosovMap::differential(const TorusPoint& p) const {
    const Vec2 v = lift_nearest_zero(p);
    const double r = v.norm();
    if (r >= spec_.r1) return A_;
    if (r <= spec_.r0) return local_differential(v);
    const double w = omega(r);
    const double wp = omega_prime(r);
    const Mat2 blend = local_differential(v) * w + A_ * (1.0 - w);
    const Vec2 diff = local_form(v) - A_ * v;
    const Vec2 grad = v * (wp / r);  // gradient of omega(|v|)
    return blend + Mat2(diff.x * grad.x, diff.x * grad.y,
                        diff.y * grad.x, diff.y * grad.y);
}

InverseResult AlmostAnosovMap::try_apply_inverse(const TorusPoint& p) const {
    InverseResult result;
    TorusPoint q = wrap_point(A_inv_ * lift_nearest_zero(p));
    Vec2 err = torus_diff(apply(q), p);
    double en = err.norm();
    if (en <= 1e-15) {  // exact outside the glue region
        result.point = q;
        result.converged = true;
        result.residual = en;
        return result;
    }
    constexpr int kMaxIter = 50;
    constexpr double kTol = 1e-13;
    for (int it = 0; it < kMaxIter; ++it) {
        const Mat2 J = differential(q);
        Vec2 step = J.inverse() * err;
        // damped update: keep the residual decreasing
        TorusPoint next = q;
        double next_en = en;
        double scale = 1.0;
        for (int k = 0; k < 8; ++k) {
            const TorusPoint cand{q.x - scale * step.x, q.y - scale * step.y};
            const double cand_en = torus_diff(apply(cand), p).norm();
            if (cand_en < en) {
                next = cand;
                next_en = cand_en;
                break;
            }
            scale *= 0.5;
        }
        q = next;
        en = next_en;
        err = torus_diff(apply(q), p);
        result.iterations = it + 1;
        if (en <= kTol) {
            result.converged = true;
            break;
        }
    }
    result.point = q;
    result.residual = en;
    return result;
}

TorusPoint AlmostAnosovMap::apply_inverse(const TorusPoint& p) const {
    const InverseResult r = try_apply_inverse(p);
    if (!r.converged) {
        std::ostringstream os;
        os << "apply_inverse did not converge at (" << p.x << ", " << p.y
           << "), residual " << r.residual;
        throw std::runtime_error(os.str());
    }
    return r.point;
}

SweepReport sweep_hyperbolicity(const AlmostAnosovMap& map, int grid_n,
                                double exclusion_radius) {
    SweepReport rep;
    rep.all_pass = true;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const TorusPoint p(static_cast<double>(i) / grid_n,
                               static_cast<double>(j) / grid_n);
            if (dist_to_zero(p) <= exclusion_radius) continue;
            ++rep.checked;
            const auto cert = hyperbolicity_certificate(map.differential(p));
            if (!cert.hyperbolic) {
                if (rep.all_pass) {
                    rep.worst_point = p;
                    rep.worst_report = cert;
                }
                rep.all_pass = false;
                ++rep.failed;
            }
        }
    }
    return rep;
}

SmoothnessReport smoothness_check(const AlmostAnosovMap& map, int sample_n,
                                  std::uint64_t seed) {
    SmoothnessReport rep;
    Rng rng(derive_seed(seed, 7));
    const double h = std::cbrt(2.2e-16);
    const double r0 = map.spec().r0;
    const double r1 = map.spec().r1;

    auto fd_differential = [&](const TorusPoint& p) {
        const TorusPoint px_p(p.x + h, p.y), px_m(p.x - h, p.y);
        const TorusPoint py_p(p.x, p.y + h), py_m(p.x, p.y - h);
        const Vec2 dx = torus_diff(map.apply(px_p), map.apply(px_m)) * (0.5 / h);
        const Vec2 dy = torus_diff(map.apply(py_p), map.apply(py_m)) * (0.5 / h);
        return Mat2(dx.x, dy.x, dx.y, dy.y);
    };

    for (int k = 0; k < sample_n; ++k) {
        TorusPoint p;
        const int region = k % 3;
        if (region == 0) {
            p = TorusPoint(rng.uniform01(), rng.uniform01());
            if (dist_to_zero(p) < r1 + 2 * h) {
                --k;  // resample; this branch targets the linear region
                continue;
            }
        } else {
            const double lo = region == 1 ? 4 * h : r0 + 2 * h;
            const double hi = region == 1 ? r0 - 2 * h : r1 - 2 * h;
            const double r = rng.uniform(lo, hi);
            const double th = rng.uniform(0.0, 2.0 * M_PI);
            p = TorusPoint(r * std::cos(th), r * std::sin(th));
        }
        const double dev = (map.differential(p) - fd_differential(p)).max_abs();
        const double r = dist_to_zero(p);
        if (r >= r1)
            rep.max_dev_linear = std::max(rep.max_dev_linear, dev);
        else if (r <= r0)
            rep.max_dev_inner = std::max(rep.max_dev_inner, dev);
        else
            rep.max_dev_annulus = std::max(rep.max_dev_annulus, dev);
        rep.max_dev = std::max(rep.max_dev, dev);
        ++rep.samples;
    }
    return rep;
}

}  // namespace aalab

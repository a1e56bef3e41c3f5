#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aalab/geometry.hpp"

namespace aalab {

enum class BumpProfile { Smooth, Poly9 };

// Parameters of the glued torus map: a hyperbolic A in SL(2,Z), quadratic
// coefficients of the local normal form near the indifferent fixed point,
// and the two glue radii 0 < r0 < r1 < 1/4.
struct MapSpec {
    std::array<std::array<long, 2>, 2> A{{{2, 1}, {1, 1}}};
    double a = 4.0;
    double b = 3.0;
    double c = 1.0;
    double d = 1.0;
    double r0 = 0.02;
    double r1 = 0.05;
    BumpProfile bump = BumpProfile::Smooth;
    std::uint64_t seed = 1;

    Mat2 matrix() const {
        return Mat2(static_cast<double>(A[0][0]), static_cast<double>(A[0][1]),
                    static_cast<double>(A[1][0]), static_cast<double>(A[1][1]));
    }
};

// Names every violated inequality; empty means the spec is accepted.
std::vector<std::string> validate_spec(const MapSpec& spec);

struct InverseResult {
    TorusPoint point;
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
};

class AlmostAnosovMap {
public:
    // Throws std::invalid_argument when validate_spec rejects the spec.
    explicit AlmostAnosovMap(const MapSpec& spec);

    // Construction for experiments with coefficient sets outside the
    // admissible region (the glue and differentials are still well defined).
    struct unchecked_t {};
    AlmostAnosovMap(const MapSpec& spec, unchecked_t);

    const MapSpec& spec() const { return spec_; }
    const Mat2& matrix() const { return A_; }
    const Mat2& matrix_inverse() const { return A_inv_; }
    double lambda1() const { return lambda1_; }
    Vec2 unstable_eigendirection() const { return eig_u_; }
    Vec2 stable_eigendirection() const { return eig_s_; }

    TorusPoint apply(const TorusPoint& p) const;
    InverseResult try_apply_inverse(const TorusPoint& p) const;
    TorusPoint apply_inverse(const TorusPoint& p) const;  // throws on failure
    Mat2 differential(const TorusPoint& p) const;

    // Bump profile and its derivative as functions of the radius.
    double omega(double r) const;
    double omega_prime(double r) const;

    // Local normal form and its differential, in chart coordinates around 0.
    Vec2 local_form(const Vec2& v) const;
    Mat2 local_differential(const Vec2& v) const;

private:
    void init();

    MapSpec spec_;
    Mat2 A_;
    Mat2 A_inv_;
    double lambda1_ = 0.0;
    Vec2 eig_u_;
    Vec2 eig_s_;
};

inline double distance_to_singularity(const TorusPoint& p) {
    return dist_to_zero(p);
}

struct SweepReport {
    bool all_pass = false;
    long checked = 0;
    long failed = 0;
    TorusPoint worst_point;
    HyperbolicityReport worst_report;
};

// Pointwise matrix hyperbolicity over the grid_n x grid_n lattice, skipping
// points within exclusion_radius of the singularity.
SweepReport sweep_hyperbolicity(const AlmostAnosovMap& map, int grid_n,
                                double exclusion_radius);

struct SmoothnessReport {
    double max_dev_linear = 0.0;
    double max_dev_inner = 0.0;
    double max_dev_annulus = 0.0;
    double max_dev = 0.0;
    int samples = 0;
};

// Entrywise gap between the analytic differential and central finite
// differences, sampled in all three regions of the glue.
SmoothnessReport smoothness_check(const AlmostAnosovMap& map, int sample_n,
                                  std::uint64_t seed);

}  // namespace aalab

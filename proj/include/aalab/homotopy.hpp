#pragma once

#include <vector>

#include "aalab/map.hpp"

namespace aalab {

// Largest rectangle of perturbations (alpha, beta), scaled along the ray
// (3a, 3d), that keeps the perturbed differential
//   [[1 + (3a-alpha) x^2 + b y^2, 2bxy], [-2cxy, 1 - c x^2 - (3d-beta) y^2]]
// hyperbolic at p. Bisection to relative tolerance 1e-6; (0,0) at p = 0.
struct MarginPair {
    double pi = 0.0;
    double rho = 0.0;
};
MarginPair hyperbolicity_margin(const AlmostAnosovMap& map, const TorusPoint& p);

// Tabulated margins over B_{r0}: raw radial infima over circles, and the
// shrunk field actually used to build the approximants. The used field takes
// a 0.9 safety factor, caps at 1.8b (resp. 1.8c) so the profile slopes stay
// above -b (resp. -c), and ramps to 0 at the singularity.
class MarginField {
public:
    MarginField(const AlmostAnosovMap& map, int radial_n, int angular_n);

    double alpha_raw(double s) const { return interp(alpha_raw_, s); }
    double beta_raw(double s) const { return interp(beta_raw_, s); }
    double alpha(double s) const { return interp(alpha_used_, s); }
    double beta(double s) const { return interp(beta_used_, s); }

    double r0() const { return r0_; }
    int radial_n() const { return static_cast<int>(radii_.size()); }

private:
    double interp(const std::vector<double>& tab, double s) const;

    double r0_ = 0.0;
    std::vector<double> radii_;
    std::vector<double> alpha_raw_, beta_raw_;
    std::vector<double> alpha_used_, beta_used_;
};

// One member H_eps of the homotopy: profile functions g, h on t in [0, eps^2]
// built by quadrature of the margin field, vanishing for t >= eps^2.
class HomotopyMember {
public:
    HomotopyMember(const AlmostAnosovMap& map, const MarginField& field,
                   double epsilon, int quad_nodes = 512);

    double epsilon() const { return eps_; }
    const AlmostAnosovMap& map() const { return *map_; }

    double g(double t) const;
    double h(double t) const;
    double g_prime(double t) const;  // -alpha(sqrt t)/4
    double h_prime(double t) const;

    TorusPoint apply(const TorusPoint& p) const;
    Mat2 differential(const TorusPoint& p) const;

private:
    const AlmostAnosovMap* map_;
    const MarginField* field_;
    double eps_ = 0.0;
    double eps2_ = 0.0;
    std::vector<double> g_tab_, h_tab_;  // on a uniform t-grid over [0, eps^2]
};

HomotopyMember build_homotopy_member(const AlmostAnosovMap& map,
                                     const MarginField& field, double epsilon);

struct HomotopyVerification {
    bool all_hyperbolic = false;
    long checked = 0;
    long failed = 0;
    TorusPoint first_failure;
    double c0_distance = 0.0;  // sup over the grid of d(H_eps(p), f(p))
};

HomotopyVerification verify_homotopy(const HomotopyMember& member, int grid_n);

}  // namespace aalab

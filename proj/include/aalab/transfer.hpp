#pragma once

#include <cstdint>
#include <vector>

#include "aalab/map.hpp"
#include "aalab/splitting.hpp"

namespace aalab {

// Uniform n x n cell partition of the torus.
struct UlamGrid {
    int n = 128;

    long cells() const { return static_cast<long>(n) * n; }
    long index(const TorusPoint& p) const {
        int i = static_cast<int>(p.x * n);
        int j = static_cast<int>(p.y * n);
        if (i >= n) i = n - 1;
        if (j >= n) j = n - 1;
        return static_cast<long>(i) * n + j;
    }
    TorusPoint midpoint(long c) const {
        const long i = c / n, j = c % n;
        return {(i + 0.5) / n, (j + 0.5) / n};
    }
    // Cells whose closure meets B_r(0).
    std::vector<long> cells_near_zero(double r) const;
    bool cell_touches_zero(long c) const;
};

// Per-cell sample data reused across potentials: target cell and the log
// unstable derivative at each stratified sample point. Directions come from
// the cocycle at cell midpoints.
class SampleTable {
public:
    SampleTable(const AlmostAnosovMap& map, const UlamGrid& grid,
                int samples_per_cell, std::uint64_t seed,
                int cocycle_m = kDefaultCocycleDepth);

    const UlamGrid& grid() const { return grid_; }
    int samples_per_cell() const { return spc_; }

    struct Sample {
        long target;
        double log_ju;  // log |Df restricted to E^u| at the sample point
    };
    const std::vector<Sample>& samples(long cell) const { return rows_[cell]; }

    // Cell average of log |Df|_{E^u}|, used for Lyapunov integrals.
    double mean_log_ju(long cell) const;

private:
    UlamGrid grid_;
    int spc_ = 0;
    std::vector<std::vector<Sample>> rows_;
};

// Sparse weighted transition operator for the geometric t-potential. Entry
// (i -> j) carries the landing probability and the mean potential weight
// e^{phi_t} = |Df|_{E^u}|^{-t} of the samples realizing the transition; the
// spectral entry used for pressure is prob * mean(J_u^{1-t}), the importance
// weighting that makes log(leading eigenvalue) the pressure proxy. At t = 1
// the matrix is row stochastic.
class TransferOperator {
public:
    TransferOperator(const SampleTable& table, double t);

    double t() const { return t_; }
    long size() const { return static_cast<long>(row_ptr_.size()) - 1; }
    int samples_per_cell() const { return spc_; }
    const UlamGrid& grid() const { return grid_; }

    struct Entry {
        long col;
        double value;        // prob * mean J_u^{1-t}
        double prob;         // landing fraction
        double mean_weight;  // mean e^{phi_t} over landing samples
    };
    const std::vector<Entry>& row(long i) const { return rows_[i]; }

    // Row sums of the landing probabilities are exactly 1.
    double row_prob_sum(long i) const;

    void scale(double s);  // multiplies every spectral value

    // Removes the diagonal entries of cells touching the singularity,
    // separating the Dirac branch from the equilibrium branch.
    void puncture_origin();

    std::vector<double> apply(const std::vector<double>& v) const;          // L v
    std::vector<double> apply_adjoint(const std::vector<double>& v) const;  // v L

private:
    UlamGrid grid_;
    double t_ = 0.0;
    int spc_ = 0;
    std::vector<long> row_ptr_;  // retained for size bookkeeping
    std::vector<std::vector<Entry>> rows_;
};

struct EigenResult {
    double lambda = 0.0;
    std::vector<double> right;
    std::vector<double> left;   // normalized to sum 1; the measure-like vector
    double residual = 0.0;      // ||Lv - lambda v||_1 / lambda at the last step
    long iterations = 0;
    bool converged = false;     // lambda stationarity reached
};

EigenResult leading_eigen(const TransferOperator& op, double tol = 1e-12,
                          long max_iter = 20000);

struct PressurePoint {
    double t = 0.0;
    double pressure = 0.0;
    double lambda = 0.0;
    double residual = 0.0;
    long iterations = 0;
    bool converged = false;
};

struct PressureCurve {
    std::vector<PressurePoint> points;
    int grid_n = 0;
    int samples_per_cell = 0;
};

PressureCurve pressure_curve(const AlmostAnosovMap& map,
                             const std::vector<double>& t_list, int grid_n,
                             int samples_per_cell, std::uint64_t seed,
                             bool punctured = false);
PressureCurve pressure_curve(const SampleTable& table,
                             const std::vector<double>& t_list,
                             bool punctured = false);

// Invariant density of the discretized transfer (left Perron vector of the
// row-stochastic t = 1 operator), with the Dirac self-loops removed so the
// iteration settles on the equilibrium branch.
std::vector<double> srb_density(const SampleTable& table, bool punctured = true,
                                long max_iter = 20000);

// Cell-occupation histogram of a long generic orbit, normalized to sum 1.
std::vector<double> birkhoff_histogram(const AlmostAnosovMap& map,
                                       const UlamGrid& grid, long orbit_len,
                                       long burn_in, std::uint64_t seed);

double total_variation(const std::vector<double>& a, const std::vector<double>& b);

// Total weight of the cells meeting B_r(0).
double mass_near_singularity(const std::vector<double>& mu, const UlamGrid& grid,
                             double r);

// Weight of the rectangle under mu, with cells weighted by the fraction of a
// 4x4 subsample falling inside.
double measure_of_rectangle(const std::vector<double>& mu, const UlamGrid& grid,
                            const struct Rectangle& rect);

double lyapunov_integral(const SampleTable& table, const std::vector<double>& mu);

}  // namespace aalab

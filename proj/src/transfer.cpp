#include "aalab/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "aalab/rng.hpp"
#include "aalab/tower.hpp"

namespace aalab {

bool UlamGrid::cell_touches_zero(long c) const {
    const long i = c / n, j = c % n;
    return (i == 0 || i == n - 1) && (j == 0 || j == n - 1);
}

std::vector<long> UlamGrid::cells_near_zero(double r) const {
    std::vector<long> out;
    const double h = 1.0 / n;
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            // nearest point of the cell to the origin, on the torus
            double lo_x = i * h, lo_y = j * h;
            double dx = std::min(lo_x, 1.0 - (lo_x + h));
            double dy = std::min(lo_y, 1.0 - (lo_y + h));
            dx = std::max(0.0, dx);
            dy = std::max(0.0, dy);
            if (dx * dx + dy * dy <= r * r) out.push_back(i * n + j);
        }
    }
    return out;
}

SampleTable::SampleTable(const AlmostAnosovMap& map, const UlamGrid& grid,
                         int samples_per_cell, std::uint64_t seed, int cocycle_m)
    : grid_(grid), spc_(samples_per_cell) {
    if (samples_per_cell < 16)
        throw std::invalid_argument("samples_per_cell must be >= 16");
    const long cells = grid.cells();
    rows_.resize(cells);
    const int strata = static_cast<int>(std::ceil(std::sqrt(samples_per_cell)));
    const double h = 1.0 / grid.n;

    for (long c = 0; c < cells; ++c) {
        const long i = c / grid.n, j = c % grid.n;
        const Vec2 u = unstable_direction(map, grid.midpoint(c), cocycle_m).direction;
        Rng rng(derive_seed(seed, 1000 + c));
        auto& row = rows_[c];
        row.reserve(samples_per_cell);
        for (int s = 0; s < samples_per_cell; ++s) {
            const int sx = s % strata, sy = (s / strata) % strata;
            const double fx = (sx + rng.uniform01()) / strata;
            const double fy = (sy + rng.uniform01()) / strata;
            const TorusPoint x((i + fx) * h, (j + fy) * h);
            const double ju = (map.differential(x) * u).norm();
            row.push_back({grid.index(map.apply(x)), std::log(ju)});
        }
    }
}

double SampleTable::mean_log_ju(long cell) const {
    const auto& row = rows_[cell];
    double s = 0.0;
    for (const auto& e : row) s += e.log_ju;
    return row.empty() ? 0.0 : s / row.size();
}

TransferOperator::TransferOperator(const SampleTable& table, double t)
    : grid_(table.grid()), t_(t), spc_(table.samples_per_cell()) {
    const long cells = grid_.cells();
    rows_.resize(cells);
    row_ptr_.assign(cells + 1, 0);
    std::map<long, std::pair<double, double>> acc;  // col -> (sum J^{1-t}, sum e^{phi_t})
    std::map<long, long> cnt;
    for (long c = 0; c < cells; ++c) {
        acc.clear();
        cnt.clear();
        for (const auto& s : table.samples(c)) {
            auto& a = acc[s.target];
            a.first += std::exp((1.0 - t) * s.log_ju);
            a.second += std::exp(-t * s.log_ju);
            ++cnt[s.target];
        }
        auto& row = rows_[c];
        row.reserve(acc.size());
        for (const auto& [col, sums] : acc) {
            Entry e;
            e.col = col;
            const long k = cnt[col];
            e.prob = static_cast<double>(k) / spc_;
            e.value = sums.first / spc_;
            e.mean_weight = sums.second / k;
            row.push_back(e);
        }
        row_ptr_[c + 1] = row_ptr_[c] + static_cast<long>(row.size());
    }
}

double TransferOperator::row_prob_sum(long i) const {
    double s = 0.0;
    for (const auto& e : rows_[i]) s += e.prob;
    return s;
}

void TransferOperator::scale(double s) {
    for (auto& row : rows_)
        for (auto& e : row) e.value *= s;
}

void TransferOperator::puncture_origin() {
    for (long c = 0; c < size(); ++c) {
        if (!grid_.cell_touches_zero(c)) continue;
        auto& row = rows_[c];
        row.erase(std::remove_if(row.begin(), row.end(),
                                 [c](const Entry& e) { return e.col == c; }),
                  row.end());
    }
}

std::vector<double> TransferOperator::apply(const std::vector<double>& v) const {
    std::vector<double> out(v.size(), 0.0);
    for (long i = 0; i < size(); ++i) {
        double s = 0.0;
        for (const auto& e : rows_[i]) s += e.value * v[e.col];
        out[i] = s;
    }
    return out;
}

std::vector<double> TransferOperator::apply_adjoint(const std::vector<double>& v) const {
    std::vector<double> out(v.size(), 0.0);
    for (long i = 0; i < size(); ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        for (const auto& e : rows_[i]) out[e.col] += e.value * vi;
    }
    return out;
}

namespace {

double l1_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

void normalize_l1(std::vector<double>& v) {
    const double s = l1_norm(v);
    if (s > 0.0)
        for (double& x : v) x /= s;
}

}  // namespace

EigenResult leading_eigen(const TransferOperator& op, double tol, long max_iter) {
    EigenResult res;
    const long n = op.size();
    res.right.assign(n, 1.0 / n);
    res.left.assign(n, 1.0 / n);
    double lambda_prev = 0.0;
    long stable_count = 0;
    for (long it = 1; it <= max_iter; ++it) {
        std::vector<double> rv = op.apply(res.right);
        std::vector<double> lv = op.apply_adjoint(res.left);
        const double lambda = l1_norm(rv);
        res.iterations = it;
        if (lambda <= 0.0) {
            res.lambda = 0.0;
            return res;  // zero operator
        }
        for (double& x : rv) x /= lambda;
        normalize_l1(lv);
        // residual of the right iteration
        double resid = 0.0;
        for (long i = 0; i < n; ++i) resid += std::abs(rv[i] - res.right[i]);
        res.right = std::move(rv);
        res.left = std::move(lv);
        res.residual = resid;
        res.lambda = lambda;
        if (std::abs(lambda - lambda_prev) <= tol * std::max(1.0, lambda)) {
            if (++stable_count >= 10 && (resid <= 1e-8 || it >= max_iter / 2)) {
                res.converged = true;
                break;
            }
        } else {
            stable_count = 0;
        }
        lambda_prev = lambda;
    }
    return res;
}

PressureCurve pressure_curve(const SampleTable& table,
                             const std::vector<double>& t_list, bool punctured) {
    PressureCurve curve;
    curve.grid_n = table.grid().n;
    curve.samples_per_cell = table.samples_per_cell();
    for (double t : t_list) {
        TransferOperator op(table, t);
        if (punctured) op.puncture_origin();
        const EigenResult eig = leading_eigen(op);
        PressurePoint pt;
        pt.t = t;
        pt.lambda = eig.lambda;
        pt.pressure = std::log(eig.lambda);
        pt.residual = eig.residual;
        pt.iterations = eig.iterations;
        pt.converged = eig.converged;
        curve.points.push_back(pt);
    }
    return curve;
}

PressureCurve pressure_curve(const AlmostAnosovMap& map,
                             const std::vector<double>& t_list, int grid_n,
                             int samples_per_cell, std::uint64_t seed,
                             bool punctured) {
    const SampleTable table(map, UlamGrid{grid_n}, samples_per_cell, seed);
    return pressure_curve(table, t_list, punctured);
}

std::vector<double> srb_density(const SampleTable& table, bool punctured,
                                long max_iter) {
    TransferOperator op(table, 1.0);
    if (punctured) op.puncture_origin();
    const EigenResult eig = leading_eigen(op, 1e-13, max_iter);
    std::vector<double> mu = eig.left;
    normalize_l1(mu);
    return mu;
}

std::vector<double> birkhoff_histogram(const AlmostAnosovMap& map,
                                       const UlamGrid& grid, long orbit_len,
                                       long burn_in, std::uint64_t seed) {
    std::vector<double> hist(grid.cells(), 0.0);
    Rng rng(derive_seed(seed, 31));
    TorusPoint p(rng.uniform01(), rng.uniform01());
    for (long k = 0; k < burn_in; ++k) p = map.apply(p);
    for (long k = 0; k < orbit_len; ++k) {
        hist[grid.index(p)] += 1.0;
        p = map.apply(p);
    }
    for (double& x : hist) x /= static_cast<double>(orbit_len);
    return hist;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

double mass_near_singularity(const std::vector<double>& mu, const UlamGrid& grid,
                             double r) {
    double s = 0.0;
    for (long c : grid.cells_near_zero(r)) s += mu[c];
    return s;
}

double measure_of_rectangle(const std::vector<double>& mu, const UlamGrid& grid,
                            const Rectangle& rect) {
    double s = 0.0;
    const double h = 1.0 / grid.n;
    for (long c = 0; c < grid.cells(); ++c) {
        if (mu[c] == 0.0) continue;
        const long i = c / grid.n, j = c % grid.n;
        int inside = 0;
        for (int si = 0; si < 4; ++si)
            for (int sj = 0; sj < 4; ++sj) {
                const TorusPoint p((i + (si + 0.5) / 4.0) * h,
                                   (j + (sj + 0.5) / 4.0) * h);
                if (rect.contains(p)) ++inside;
            }
        if (inside > 0) s += mu[c] * inside / 16.0;
    }
    return s;
}

double lyapunov_integral(const SampleTable& table, const std::vector<double>& mu) {
    double s = 0.0;
    for (long c = 0; c < table.grid().cells(); ++c) {
        if (mu[c] != 0.0) s += mu[c] * table.mean_log_ju(c);
    }
    return s;
}

}  // namespace aalab

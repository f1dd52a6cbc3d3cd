#ifndef DOUGHSLIT_QSOLVE_SOLVER_HPP
#define DOUGHSLIT_QSOLVE_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "doughslit/error.hpp"
#include "doughslit/qsolve/field.hpp"
#include "doughslit/qsolve/potential.hpp"

namespace doughslit::qsolve {

struct SolverConfig {
    double dt = 1e-4;
    /// Relative residual ||b - A x|| / ||b|| at which the linear solve stops.
    double tolerance = 1e-10;
    std::size_t max_iterations = 10000;

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("time step must be positive");
        if (!(tolerance > 0.0)) throw InvalidParameter("solver tolerance must be positive");
        if (max_iterations == 0) throw InvalidParameter("iteration cap must be positive");
    }
};

struct StepStats {
    std::size_t iterations = 0;
    double residual = 0.0;
};

/**
 * Crank-Nicolson propagator for i dpsi/dt = (-1/2 lap + V) psi with hbar = m = 1.
 *
 * The 5-point Laplacian couples interior nodes; boundary and blocked nodes are
 * Dirichlet zeros and never enter the system. Each step solves
 * (I + i dt/2 H) psi' = (I - i dt/2 H) psi by shifted conjugate gradients,
 * warm-started from the previous state.
 * An instance owns scratch storage, so use one per simulation thread.
 */
class CrankNicolson {
public:
    CrankNicolson(const Grid& grid, const Potential& potential, SolverConfig config = {})
        : grid_(grid), config_(config), nx_(grid.n_x), ny_(grid.n_y), n_(nx_ * ny_) {
        grid.validate();
        config.validate();
        if (potential.values.rows() != nx_ || potential.values.cols() != ny_ ||
            potential.blocked.rows() != nx_ || potential.blocked.cols() != ny_)
            throw InvalidParameter("potential does not match the grid");

        const double dx = grid.dx(), dy = grid.dy();
        ax_ = config.dt / (4.0 * dx * dx);
        ay_ = config.dt / (4.0 * dy * dy);
        const double kinetic = 1.0 / (dx * dx) + 1.0 / (dy * dy);

        active_.assign(n_, 0.0);
        diag_.assign(n_, 0.0);
        for (std::size_t i = 0; i < nx_; ++i) {
            for (std::size_t j = 0; j < ny_; ++j) {
                const std::size_t k = i * ny_ + j;
                if (grid.is_boundary(i, j) || potential.blocked(i, j)) continue;
                const double v = potential.values(i, j);
                if (!std::isfinite(v)) throw InvalidParameter("potential must be finite");
                active_[k] = 1.0;
                diag_[k] = 0.5 * config.dt * (kinetic + v);
            }
        }
        for (auto* v : {&xr_, &xi_, &br_, &bi_, &rr_, &ri_, &zr_, &zi_, &pr_, &pi_, &qr_, &qi_, &dr_, &di_})
            v->assign(n_, 0.0);
    }

    const Grid& grid() const noexcept { return grid_; }
    const SolverConfig& config() const noexcept { return config_; }
    const StepStats& last_stats() const noexcept { return stats_; }

    /// Advances one time step. Throws SolverFailure when the iteration cap is hit.
    ComplexField2D step(const ComplexField2D& field) {
        if (field.grid != grid_ || field.values.size() != n_)
            throw InvalidParameter("field does not match the solver grid");

        auto src = field.values.flat();
        for (std::size_t k = 0; k < n_; ++k) {
            xr_[k] = active_[k] * src[k].real();
            xi_[k] = active_[k] * src[k].imag();
        }
        // b = (I - i h) psi, with h = dt/2 H
        apply_h(xr_, xi_, qr_, qi_);
        for (std::size_t k = 0; k < n_; ++k) {
            br_[k] = xr_[k] + qi_[k];
            bi_[k] = xi_[k] - qr_[k];
        }
        solve();

        ComplexField2D out(grid_);
        auto dst = out.values.flat();
        for (std::size_t k = 0; k < n_; ++k) dst[k] = {xr_[k], xi_[k]};
        return out;
    }

private:
    // out = h * in, restricted to active nodes. Inactive entries of `in` are zero.
    void apply_h(const std::vector<double>& in_r, const std::vector<double>& in_i,
                 std::vector<double>& out_r, std::vector<double>& out_i) const {
        for (std::size_t i = 1; i + 1 < nx_; ++i) {
            const std::size_t row = i * ny_;
            for (std::size_t j = 1; j + 1 < ny_; ++j) {
                const std::size_t k = row + j;
                const double a = active_[k];
                out_r[k] = a * (diag_[k] * in_r[k] - ax_ * (in_r[k - ny_] + in_r[k + ny_]) -
                                ay_ * (in_r[k - 1] + in_r[k + 1]));
                out_i[k] = a * (diag_[k] * in_i[k] - ax_ * (in_i[k - ny_] + in_i[k + ny_]) -
                                ay_ * (in_i[k - 1] + in_i[k + 1]));
            }
        }
    }

    // out = (I + i h) in
    void apply_a(const std::vector<double>& in_r, const std::vector<double>& in_i,
                 std::vector<double>& out_r, std::vector<double>& out_i) const {
        apply_h(in_r, in_i, out_r, out_i);
        for (std::size_t k = 0; k < n_; ++k) {
            const double hr = out_r[k];
            out_r[k] = in_r[k] - out_i[k];
            out_i[k] = in_i[k] + hr;
        }
    }

    double dot_re(const std::vector<double>& ur, const std::vector<double>& ui,
                  const std::vector<double>& vr, const std::vector<double>& vi) const {
        double s = 0.0;
        for (std::size_t k = 0; k < n_; ++k) s += ur[k] * vr[k] + ui[k] * vi[k];
        return s;
    }

    double norm2(const std::vector<double>& ur, const std::vector<double>& ui) const {
        return std::sqrt(dot_re(ur, ui, ur, ui));
    }

    /*
     * Solves A x = b with A = I + i h as (h - i I) d = -i (b - A x0), x = x0 + d.
     * h is real symmetric positive definite, so plain CG on h with the Hermitian
     * inner product never breaks down, and the shifted iterate for sigma = -i is
     * carried alongside it through the multi-shift CG recurrences. The shifted
     * residual is zeta_k times the base residual.
     */
    void solve() {
        const double bnorm = norm2(br_, bi_);
        stats_ = {};
        if (bnorm == 0.0) {
            std::fill(xr_.begin(), xr_.end(), 0.0);
            std::fill(xi_.begin(), xi_.end(), 0.0);
            return;
        }
        const double target = config_.tolerance * bnorm;

        // r = -i (b - A x0), p = r, shifted direction ps = r, d = 0
        apply_a(xr_, xi_, qr_, qi_);
        for (std::size_t k = 0; k < n_; ++k) {
            const double er = br_[k] - qr_[k];
            const double ei = bi_[k] - qi_[k];
            rr_[k] = ei;
            ri_[k] = -er;
        }
        double rr = dot_re(rr_, ri_, rr_, ri_);
        double res = std::sqrt(rr);
        if (res <= target) {
            stats_.residual = res / bnorm;
            return;
        }
        pr_ = rr_;
        pi_ = ri_;
        zr_ = rr_;  // shifted search direction
        zi_ = ri_;
        std::fill(dr_.begin(), dr_.end(), 0.0);
        std::fill(di_.begin(), di_.end(), 0.0);

        const complex sigma{0.0, -1.0};
        complex zeta_prev{1.0, 0.0}, zeta{1.0, 0.0};
        double alpha_prev = 1.0, beta_prev = 0.0;

        for (std::size_t it = 1; it <= config_.max_iterations; ++it) {
            apply_h(pr_, pi_, qr_, qi_);
            const double pq = dot_re(pr_, pi_, qr_, qi_);
            if (!(pq > 0.0)) break;
            const double alpha = rr / pq;

            const complex zeta_next =
                zeta * zeta_prev * alpha_prev /
                (alpha * beta_prev * (zeta_prev - zeta) + zeta_prev * alpha_prev * (1.0 + sigma * alpha));
            const complex alpha_s = alpha * zeta_next / zeta;
            const double asr = alpha_s.real(), asi = alpha_s.imag();
            for (std::size_t k = 0; k < n_; ++k) {
                dr_[k] += asr * zr_[k] - asi * zi_[k];
                di_[k] += asr * zi_[k] + asi * zr_[k];
                rr_[k] -= alpha * qr_[k];
                ri_[k] -= alpha * qi_[k];
            }
            const double rr_next = dot_re(rr_, ri_, rr_, ri_);
            const double beta = rr_next / rr;
            res = std::abs(zeta_next) * std::sqrt(rr_next);
            stats_.iterations = it;
            if (res <= target) {
                stats_.residual = res / bnorm;
                for (std::size_t k = 0; k < n_; ++k) {
                    xr_[k] += dr_[k];
                    xi_[k] += di_[k];
                }
                return;
            }
            const complex ratio = zeta_next / zeta;
            const complex beta_s = ratio * ratio * beta;
            const double bsr = beta_s.real(), bsi = beta_s.imag();
            const double znr = zeta_next.real(), zni = zeta_next.imag();
            for (std::size_t k = 0; k < n_; ++k) {
                const double sr = zr_[k], si = zi_[k];
                zr_[k] = znr * rr_[k] - zni * ri_[k] + bsr * sr - bsi * si;
                zi_[k] = znr * ri_[k] + zni * rr_[k] + bsr * si + bsi * sr;
                pr_[k] = rr_[k] + beta * pr_[k];
                pi_[k] = ri_[k] + beta * pi_[k];
            }
            zeta_prev = zeta;
            zeta = zeta_next;
            alpha_prev = alpha;
            beta_prev = beta;
            rr = rr_next;
        }
        stats_.residual = res / bnorm;
        throw SolverFailure("linear solve did not converge (relative residual " +
                                std::to_string(stats_.residual) + ")",
                            stats_.residual, stats_.iterations);
    }

    Grid grid_;
    SolverConfig config_;
    std::size_t nx_, ny_, n_;
    double ax_ = 0.0, ay_ = 0.0;
    std::vector<double> active_, diag_;
    std::vector<double> xr_, xi_, br_, bi_, rr_, ri_, zr_, zi_, pr_, pi_, qr_, qi_, dr_, di_;
    StepStats stats_;
};

/// One implicit step with a throwaway propagator.
inline ComplexField2D step(const ComplexField2D& field, const Potential& potential, double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    CrankNicolson cn(field.grid, potential, cfg);
    return cn.step(field);
}

struct RecordedFrame {
    std::size_t step = 0;
    double time = 0.0;
    ModulusFrame modulus;
};

/// Recorded |psi| frames of one evolution, in strictly increasing step order.
struct FieldSeries {
    Grid grid;
    SolverConfig solver;
    std::size_t record_stride = 1;
    std::size_t n_steps = 0;
    std::vector<RecordedFrame> frames;
    ComplexField2D final_field;
};

/**
 * Applies `n_steps` steps, recording |psi| at step 0, every `record_stride`
 * steps and at the final step. A SolverFailure is rethrown with the failing
 * step index attached.
 */
inline FieldSeries evolve(const ComplexField2D& initial, const Potential& potential,
                          const SolverConfig& config, std::size_t n_steps,
                          std::size_t record_stride) {
    if (n_steps < 1) throw InvalidParameter("n_steps must be at least 1");
    if (record_stride < 1) throw InvalidParameter("record_stride must be at least 1");

    CrankNicolson cn(initial.grid, potential, config);
    FieldSeries series;
    series.grid = initial.grid;
    series.solver = config;
    series.record_stride = record_stride;
    series.n_steps = n_steps;
    series.frames.push_back({0, 0.0, modulus(initial)});

    ComplexField2D psi = initial;
    for (std::size_t s = 1; s <= n_steps; ++s) {
        try {
            psi = cn.step(psi);
        } catch (const SolverFailure& e) {
            throw SolverFailure(std::string(e.what()) + " at step " + std::to_string(s),
                                e.residual(), e.iterations(), static_cast<std::ptrdiff_t>(s));
        }
        if (s % record_stride == 0 || s == n_steps)
            series.frames.push_back({s, static_cast<double>(s) * config.dt, modulus(psi)});
    }
    series.final_field = std::move(psi);
    return series;
}

inline FieldSeries evolve(const ComplexField2D& initial, const Potential& potential, double dt,
                          std::size_t n_steps, std::size_t record_stride) {
    SolverConfig cfg;
    cfg.dt = dt;
    return evolve(initial, potential, cfg, n_steps, record_stride);
}

}  // namespace doughslit::qsolve

#endif  // DOUGHSLIT_QSOLVE_SOLVER_HPP

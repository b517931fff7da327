#include "qdrive/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qdrive/fft.hpp"

namespace qdrive {

double GridWavefunction::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps) {
        s += std::norm(a);
    }
    return s * grid.dx();
}

void GridWavefunction::normalize() {
    const double n2 = norm_sq();
    if (n2 <= 0.0) {
        throw Error("cannot normalize a zero wavefunction");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps) {
        a *= inv;
    }
}

double GridWavefunction::second_moment() const {
    double s = 0.0;
    for (std::uint64_t j = 0; j < amps.size(); ++j) {
        const double x = grid.x(j);
        s += x * x * std::norm(amps[j]);
    }
    return s * grid.dx();
}

cplx grid_overlap(const GridWavefunction& a, const GridWavefunction& b) {
    if (a.grid.n != b.grid.n || a.grid.half_width != b.grid.half_width) {
        throw DimensionMismatchError("grid_overlap: wavefunctions live on different grids");
    }
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < a.amps.size(); ++j) {
        s += std::conj(a.amps[j]) * b.amps[j];
    }
    return s * a.grid.dx();
}

double grid_fidelity(const GridWavefunction& a, const GridWavefunction& b) {
    return std::norm(grid_overlap(a, b));
}

GridWavefunction gaussian_state(double b, double bdot, const SpatialGrid& grid, double omega0) {
    if (b <= 0.0) {
        throw Error("gaussian_state: scaling factor b must be positive");
    }
    GridWavefunction psi;
    psi.grid = grid;
    psi.amps.resize(grid.size());
    const double prefactor = std::pow(omega0 / (M_PI * b * b), 0.25);
    const double phase_coeff = 0.5 * bdot / b;
    const double decay = omega0 / (2.0 * b * b);
    for (std::uint64_t j = 0; j < grid.size(); ++j) {
        const double x2 = grid.x(j) * grid.x(j);
        psi.amps[j] = prefactor * std::exp(-decay * x2) * std::polar(1.0, phase_coeff * x2);
    }
    psi.normalize();
    return psi;
}

namespace {

struct ErmakovRhs {
    double operator()(double b) const {
        return 1.0 / (b * b * b);
    }
};

void rk4_span(std::vector<ErmakovState>& out, double t0, double t1, int steps,
              const std::function<double(double)>& u) {
    double b = out.back().b;
    double bdot = out.back().bdot;
    const double h = (t1 - t0) / static_cast<double>(steps);
    for (int i = 0; i < steps; ++i) {
        const double t = t0 + static_cast<double>(i) * h;
        const double u0 = u(t);
        const double um = u(t + 0.5 * h);
        const double u1 = u(t + h);
        auto acc = [](double bb, double uu) {
            if (!(bb > 0.0)) {
                throw ErmakovSingularityError(
                    "ermakov: b reached zero (inverted-trap blowup)");
            }
            return 1.0 / (bb * bb * bb) - uu * bb;
        };

        const double k1b = bdot;
        const double k1v = acc(b, u0);
        const double k2b = bdot + 0.5 * h * k1v;
        const double k2v = acc(b + 0.5 * h * k1b, um);
        const double k3b = bdot + 0.5 * h * k2v;
        const double k3v = acc(b + 0.5 * h * k2b, um);
        const double k4b = bdot + h * k3v;
        const double k4v = acc(b + h * k3b, u1);

        b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        bdot += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!(b > 0.0) || !std::isfinite(b)) {
            throw ErmakovSingularityError("ermakov: b reached zero (inverted-trap blowup)");
        }
        out.push_back({t + h, b, bdot});
    }
}

}  // namespace

std::vector<ErmakovState> ermakov_integrate(const std::function<double(double)>& u, double t_f,
                                            int steps) {
    if (steps < 1) {
        throw Error("ermakov: steps must be >= 1");
    }
    std::vector<ErmakovState> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    traj.push_back({0.0, 1.0, 0.0});
    if (t_f > 0.0) {
        rk4_span(traj, 0.0, t_f, steps, u);
    }
    return traj;
}

std::vector<ErmakovState> ermakov_integrate(const PiecewiseControl& u, int steps) {
    const double t_f = u.end_time();
    std::vector<ErmakovState> traj;
    traj.push_back({0.0, 1.0, 0.0});
    if (t_f <= 0.0) {
        return traj;
    }
    for (std::size_t i = 0; i + 1 < u.edges.size(); ++i) {
        const double a = u.edges[i];
        const double b = u.edges[i + 1];
        if (b <= a) {
            continue;
        }
        const double value = u.values[i];
        const int sub = std::max(1, static_cast<int>(std::ceil(steps * (b - a) / t_f)));
        rk4_span(traj, a, b, sub, [value](double) { return value; });
    }
    return traj;
}

std::vector<ErmakovState> ermakov_integrate(const ControlProtocol& protocol, int steps) {
    PiecewiseControl pc;
    pc.edges.resize(protocol.nt + 1);
    pc.values.resize(protocol.nt);
    for (int k = 0; k <= protocol.nt; ++k) {
        pc.edges[k] = protocol.node_time(k);
    }
    for (int k = 0; k < protocol.nt; ++k) {
        pc.values[k] = protocol.u[k];
    }
    return ermakov_integrate(pc, steps);
}

BangBangTimes bangbang_times(double gamma, double d1, double d2) {
    if (!(gamma >= 1.0)) {
        throw InfeasibleBoundsError("bangbang_times: gamma must be >= 1");
    }
    const double g2 = gamma * gamma;
    const double g4 = g2 * g2;
    if (!(d1 > 0.0) || !(d1 < 1.0 / g4) || !(1.0 / g4 <= d2)) {
        throw InfeasibleBoundsError("bangbang_times: requires 0 < d1 < 1/gamma^4 <= d2");
    }
    if (gamma == 1.0) {
        return {0.0, 0.0};
    }
    const double num1 = d1 * (g2 - 1.0) * (g2 * d2 - 1.0);
    const double den1 = (d1 - d2) * g2 * (1.0 - d1);
    const double num2 = d2 * (g2 - 1.0) * (1.0 - g2 * d1);
    const double den2 = (d1 - d2) * (1.0 - g4 * d2);
    if (den1 == 0.0 || den2 == 0.0) {
        throw InfeasibleBoundsError("bangbang_times: degenerate bounds");
    }
    // Printed radicands can come out negative for d1 < d2; take magnitudes.
    const double arg1 = std::sqrt(std::abs(num1 / den1));
    double arg2 = std::sqrt(std::abs(num2 / den2));
    if (arg2 > 1.0 + 1e-12) {
        throw InfeasibleBoundsError("bangbang_times: asin argument exceeds 1");
    }
    arg2 = std::min(arg2, 1.0);
    const double t1 = std::asinh(arg1) / std::sqrt(d1);
    const double t2 = std::asin(arg2) / std::sqrt(d2);
    return {t1, t2};
}

PiecewiseControl bangbang_control(double gamma, double d1, double d2) {
    const auto times = bangbang_times(gamma, d1, d2);
    PiecewiseControl pc;
    if (times.t_f_opt() <= 0.0) {
        pc.edges = {0.0, 0.0};
        pc.values = {1.0};
        return pc;
    }
    pc.edges = {0.0, times.t1, times.t1 + times.t2};
    pc.values = {d1, d2};
    return pc;
}

ControlProtocol bangbang_protocol(double gamma, double d1, double d2, int nt) {
    const auto times = bangbang_times(gamma, d1, d2);
    const double g4 = gamma * gamma * gamma * gamma;
    ControlProtocol p;
    p.nt = nt;
    p.t_f = times.t_f_opt();
    p.bounds.lo = d1;
    p.bounds.hi = std::max(d2, 1.0);
    p.bounds.pin_start = 1.0;
    p.bounds.pin_end = 1.0 / g4;
    // The three jumps saturate the box; the protocol carries a permissive slew.
    p.bounds.slew = p.bounds.hi - p.bounds.lo;
    p.u.assign(nt + 1, d2);
    // Number of d1 intervals; the discrete switch lands on the node nearest t1.
    const int m = static_cast<int>(std::lround(times.t1 / p.dt()));
    for (int k = 1; k < nt; ++k) {
        p.u[k] = (k < m) ? d1 : d2;
    }
    p.u[0] = 1.0;
    p.u[nt] = 1.0 / g4;
    return p;
}

namespace {

void som_step(GridWavefunction& psi, double u_k, double dt, const std::vector<double>& x2,
              const std::vector<double>& kinetic_phase_coeff) {
    const std::size_t m = psi.amps.size();
    // Half potential phase.
    const double vc = 0.5 * dt * 0.5 * u_k;
    for (std::size_t j = 0; j < m; ++j) {
        psi.amps[j] *= std::polar(1.0, -vc * x2[j]);
    }
    // Full kinetic phase in momentum space.
    fft_forward(psi.amps);
    for (std::size_t j = 0; j < m; ++j) {
        psi.amps[j] *= std::polar(1.0, -dt * kinetic_phase_coeff[j]);
    }
    fft_inverse(psi.amps);
    // Second half potential phase.
    for (std::size_t j = 0; j < m; ++j) {
        psi.amps[j] *= std::polar(1.0, -vc * x2[j]);
    }
}

struct SomTables {
    std::vector<double> x2;
    std::vector<double> half_k2;

    explicit SomTables(const SpatialGrid& grid) {
        x2.resize(grid.size());
        half_k2.resize(grid.size());
        for (std::uint64_t j = 0; j < grid.size(); ++j) {
            x2[j] = grid.x(j) * grid.x(j);
            const double k = grid.k_fft(j);
            half_k2[j] = 0.5 * k * k;
        }
    }
};

}  // namespace

GridWavefunction som_evolve(GridWavefunction psi, const ControlProtocol& protocol) {
    protocol.validate_structure();
    const SomTables tables(psi.grid);
    const double dt = protocol.dt();
    for (int k = 0; k < protocol.nt; ++k) {
        som_step(psi, protocol.u[k], dt, tables.x2, tables.half_k2);
    }
    return psi;
}

std::vector<GridWavefunction> som_evolve_trajectory(GridWavefunction psi,
                                                    const ControlProtocol& protocol) {
    const SomTables tables(psi.grid);
    const double dt = protocol.dt();
    std::vector<GridWavefunction> traj;
    traj.reserve(protocol.nt + 1);
    traj.push_back(psi);
    for (int k = 0; k < protocol.nt; ++k) {
        som_step(psi, protocol.u[k], dt, tables.x2, tables.half_k2);
        traj.push_back(psi);
    }
    return traj;
}

EnergyMoments energy_moments(const GridWavefunction& psi, double u) {
    const std::size_t m = psi.amps.size();
    std::vector<cplx> h_psi = psi.amps;
    // Kinetic term via FFT round trip.
    fft_forward(h_psi);
    for (std::size_t j = 0; j < m; ++j) {
        const double k = psi.grid.k_fft(j);
        h_psi[j] *= 0.5 * k * k;
    }
    fft_inverse(h_psi);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = psi.grid.x(j);
        h_psi[j] += 0.5 * u * x * x * psi.amps[j];
    }
    const double dx = psi.grid.dx();
    cplx mean{0.0, 0.0};
    double mean_sq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        mean += std::conj(psi.amps[j]) * h_psi[j];
        mean_sq += std::norm(h_psi[j]);
    }
    const double e = mean.real() * dx;
    const double e2 = mean_sq * dx;
    return {e, std::sqrt(std::max(0.0, e2 - e * e))};
}

QslReport qsl_time(const std::vector<GridWavefunction>& trajectory,
                   const std::vector<double>& u_nodes, double t_f, double gamma) {
    if (trajectory.size() < 2 || trajectory.size() != u_nodes.size()) {
        throw Error("qsl_time: trajectory and control nodes must align, >= 2 nodes");
    }
    const std::size_t m = trajectory.size();
    std::vector<double> disp(m);
    for (std::size_t k = 0; k < m; ++k) {
        disp[k] = energy_moments(trajectory[k], u_nodes[k]).dispersion;
    }
    const double dt = t_f / static_cast<double>(m - 1);
    double integral = 0.5 * (disp.front() + disp.back());
    for (std::size_t k = 1; k + 1 < m; ++k) {
        integral += disp[k];
    }
    integral *= dt;
    const double de_avg = integral / t_f;
    // Eigenstate trajectories carry only Trotter wobble (~1e-4 at typical
    // step sizes); anything below 1e-3 means the bound is undefined.
    if (de_avg <= 1e-3) {
        throw UndefinedBoundError("qsl_time: time-averaged energy dispersion vanishes");
    }
    QslReport report;
    report.de_avg = de_avg;
    const double ov = std::abs(grid_overlap(trajectory.front(), trajectory.back()));
    report.bures_final = std::acos(std::clamp(ov, 0.0, 1.0));
    report.tau_arccos = report.bures_final / de_avg;
    report.tau_sqrt = std::sqrt(2.0 * gamma / (1.0 + gamma * gamma)) / de_avg;
    return report;
}

}  // namespace qdrive

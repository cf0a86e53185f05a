#include "optics/wavepacket.hpp"

#include "optics/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace optics::wavepacket {

namespace {

// Constant-coefficient Crank-Nicolson factor along one axis:
//   (1 + gamma T) psi' = (1 - gamma T) psi,  T = second-difference operator,
//   gamma = i dt / (4 h^2) so that each factor is the Cayley transform of the
//   (Hermitian) one-axis kinetic term and therefore exactly unitary.
// Dirichlet zeros split each line into independent tridiagonal segments; the
// LU factors depend only on segment length, so they are cached.
class LineSolver {
public:
    explicit LineSolver(cplx gamma) : gamma_(gamma) {}

    void solve(cplx* psi, std::size_t stride, std::size_t len) {
        if (len == 0) return;
        const Coeffs& c = coeffs(len);
        scratch_.resize(len);
        const cplx one_m2g = 1.0 - 2.0 * gamma_;
        // right-hand side (1 - gamma T) psi with zero Dirichlet neighbors
        for (std::size_t i = 0; i < len; ++i) {
            cplx left = i > 0 ? psi[(i - 1) * stride] : cplx{0.0, 0.0};
            cplx right = i + 1 < len ? psi[(i + 1) * stride] : cplx{0.0, 0.0};
            scratch_[i] = gamma_ * (left + right) + one_m2g * psi[i * stride];
        }
        // Thomas forward sweep (lower entry is -gamma_)
        cplx d = scratch_[0] * c.inv_den[0];
        psi[0] = d;
        for (std::size_t i = 1; i < len; ++i) {
            d = (scratch_[i] + gamma_ * d) * c.inv_den[i];
            psi[i * stride] = d;
        }
        // back substitution
        for (std::size_t i = len - 1; i-- > 0;)
            psi[i * stride] -= c.upper[i] * psi[(i + 1) * stride];
    }

private:
    struct Coeffs {
        std::vector<cplx> upper;    // eliminated upper-diagonal factors
        std::vector<cplx> inv_den;  // reciprocal pivots
    };

    const Coeffs& coeffs(std::size_t len) {
        auto it = cache_.find(len);
        if (it != cache_.end()) return it->second;
        Coeffs c;
        c.upper.resize(len);
        c.inv_den.resize(len);
        const cplx diag = 1.0 + 2.0 * gamma_;
        cplx prev_upper = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            cplx den = diag + gamma_ * prev_upper;  // lower entry is -gamma_
            c.inv_den[i] = 1.0 / den;
            c.upper[i] = -gamma_ * c.inv_den[i];
            prev_upper = c.upper[i];
        }
        return cache_.emplace(len, std::move(c)).first->second;
    }

    cplx gamma_;
    std::vector<cplx> scratch_;
    std::map<std::size_t, Coeffs> cache_;
};

bool blocked_cell(const PacketState& s, std::size_t ix, std::size_t iy) {
    const Grid& g = s.field.grid;
    return s.obstacle.contains(g.coord(ix), g.coord(iy));
}

// Apply the Cayley factor along x (stride 1) or y (stride nx) to every line,
// splitting at obstacle cells.
void sweep(PacketState& s, LineSolver& solver, bool along_x) {
    Grid& g = s.field.grid;
    std::size_t lines = along_x ? g.ny : g.nx;
    std::size_t len_total = along_x ? g.nx : g.ny;
    std::size_t stride = along_x ? 1 : g.nx;
    for (std::size_t line = 0; line < lines; ++line) {
        cplx* base = along_x ? &s.field.at(0, line) : &s.field.at(line, 0);
        std::size_t seg_start = 0;
        bool in_seg = false;
        for (std::size_t i = 0; i <= len_total; ++i) {
            bool open =
                i < len_total && !(along_x ? blocked_cell(s, i, line) : blocked_cell(s, line, i));
            if (open && !in_seg) {
                seg_start = i;
                in_seg = true;
            } else if (!open && in_seg) {
                solver.solve(base + seg_start * stride, stride, i - seg_start);
                in_seg = false;
            }
            if (i < len_total && !open) base[i * stride] = 0.0;  // keep exact zeros
        }
    }
}

double cell_area(const PacketState& s) {
    double h = s.field.grid.spacing;
    return h * h;
}

} // namespace

PacketState init_superposition(const PacketParams& p, const std::vector<GaussianSpec>& packets,
                               const Obstacle& obs) {
    if (packets.empty()) throw std::invalid_argument("no packets given");
    Grid g = Grid::square(0.0, p.spacing, p.n);
    PacketState s;
    s.field = ComplexField(g, p.lambda_db);
    s.obstacle = obs;
    const double k0 = p.k0();
    const double inv_4s2 = 1.0 / (4.0 * p.sigma * p.sigma);
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
        double y = g.coord(iy);
        cplx carrier = std::polar(1.0, k0 * y);
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            double x = g.coord(ix);
            cplx amp = 0.0;
            for (const auto& pk : packets) {
                double dx = x - pk.cx, dy = y - pk.cy;
                amp += pk.amplitude * std::exp(-(dx * dx + dy * dy) * inv_4s2);
            }
            s.field.at(ix, iy) = amp * carrier;
        }
    }
    double total = 0.0, on_obstacle = 0.0;
    for (std::size_t iy = 0; iy < g.ny; ++iy)
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            double w = std::norm(s.field.at(ix, iy));
            total += w;
            if (blocked_cell(s, ix, iy)) on_obstacle += w;
        }
    if (!(total > 0.0)) throw std::invalid_argument("zero-norm initial state");
    if (on_obstacle / total > 1e-10)
        throw std::invalid_argument("initial packet overlaps the obstacle");
    for (std::size_t iy = 0; iy < g.ny; ++iy)
        for (std::size_t ix = 0; ix < g.nx; ++ix)
            if (blocked_cell(s, ix, iy)) s.field.at(ix, iy) = 0.0;
    double scale = 1.0 / std::sqrt(total * cell_area(s));
    for (auto& v : s.field.values) v *= scale;
    return s;
}

PacketState init_gaussian(const PacketParams& p, double cx, double cy, const Obstacle& obs) {
    return init_superposition(p, {{cx, cy, 1.0}}, obs);
}

void step(PacketState& state, double dt) {
    const double h = state.field.grid.spacing;
    const cplx gamma_half = cplx{0.0, 1.0} * (dt / 2.0) / (4.0 * h * h);
    const cplx gamma_full = cplx{0.0, 1.0} * dt / (4.0 * h * h);
    LineSolver half(gamma_half), full(gamma_full);
    sweep(state, half, true);
    sweep(state, full, false);
    sweep(state, half, true);
    state.time += dt;
}

void conjugate(PacketState& state) {
    for (auto& v : state.field.values) v = std::conj(v);
}

double norm2(const PacketState& s) {
    double t = 0.0;
    for (const auto& v : s.field.values) t += std::norm(v);
    return t * cell_area(s);
}

namespace {

double region_norm(const PacketState& s, int sign) {
    const Grid& g = s.field.grid;
    double lo = s.obstacle.cy - s.obstacle.half_h;
    double hi = s.obstacle.cy + s.obstacle.half_h;
    double t = 0.0;
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
        double y = g.coord(iy);
        if ((sign > 0 && y > hi) || (sign < 0 && y < lo))
            for (std::size_t ix = 0; ix < g.nx; ++ix) t += std::norm(s.field.at(ix, iy));
    }
    return t * cell_area(s);
}

} // namespace

double norm_transmitted(const PacketState& s) { return region_norm(s, +1); }
double norm_reflected(const PacketState& s) { return region_norm(s, -1); }

double footprint_overlap_now(const PacketState& s) {
    const Grid& g = s.field.grid;
    double lo = s.obstacle.cx - s.obstacle.half_w;
    double hi = s.obstacle.cx + s.obstacle.half_w;
    double t = 0.0;
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
        double x = g.coord(ix);
        if (x < lo || x > hi) continue;
        for (std::size_t iy = 0; iy < g.ny; ++iy) t += std::norm(s.field.at(ix, iy));
    }
    return t * cell_area(s);
}

double lobe_score(const PacketState& s, double hwhm_k) {
    const Grid& g = s.field.grid;
    double hi = s.obstacle.cy + s.obstacle.half_h;
    double cutoff = 3.0 * hwhm_k;
    std::vector<cplx> row(g.nx);
    std::vector<double> power(g.nx, 0.0);
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
        if (!(g.coord(iy) > hi)) continue;
        for (std::size_t ix = 0; ix < g.nx; ++ix) row[ix] = s.field.at(ix, iy);
        fft::dft(row, -1);
        for (std::size_t ix = 0; ix < g.nx; ++ix) power[ix] += std::norm(row[ix]);
    }
    double total = 0.0, outside = 0.0;
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
        std::ptrdiff_t k = std::ptrdiff_t(ix);
        if (k >= std::ptrdiff_t(g.nx) / 2) k -= std::ptrdiff_t(g.nx);
        double kx = 2.0 * std::numbers::pi * double(k) / (double(g.nx) * g.spacing);
        total += power[ix];
        if (std::abs(kx) > cutoff) outside += power[ix];
    }
    if (!(total > 0.0)) return 0.0;
    return outside / total;
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "hit") return Scenario::hit;
    if (s == "graze") return Scenario::graze;
    if (s == "miss") return Scenario::miss;
    throw std::invalid_argument("unknown scenario: " + s);
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::hit: return "hit";
        case Scenario::graze: return "graze";
        case Scenario::miss: return "miss";
    }
    throw std::invalid_argument("unknown scenario");
}

double scenario_offset(const PacketParams& p, Scenario s) {
    switch (s) {
        case Scenario::hit: return 0.0;
        case Scenario::graze: return p.obstacle_half_w();
        case Scenario::miss: return p.obstacle_half_w() + 5.5 * p.sigma;
    }
    throw std::invalid_argument("unknown scenario");
}

namespace {

ScenarioResult run_state(PacketState s, const PacketParams& p, const FrameCallback& frame_cb,
                         int frames) {
    ScenarioResult res;
    res.report.norm_initial = norm2(s);
    double overlap_max = footprint_overlap_now(s);
    int frame_every = frames > 0 ? std::max(1, p.steps / frames) : 0;
    int record_every = std::max(1, p.steps / 100);
    if (frame_cb && frames > 0) frame_cb(s, 0);
    for (int i = 1; i <= p.steps; ++i) {
        step(s, p.dt);
        double n = norm2(s);
        if (std::abs(n - res.report.norm_initial) > 1e-4)
            throw std::runtime_error("wavepacket step unstable: norm drift " +
                                     std::to_string(n - res.report.norm_initial));
        overlap_max = std::max(overlap_max, footprint_overlap_now(s));
        if (i % record_every == 0 || i == p.steps)
            res.trajectory.push_back(
                {s.time, n, norm_transmitted(s), norm_reflected(s), overlap_max});
        if (frame_cb && frame_every > 0 && i % frame_every == 0) frame_cb(s, i);
    }
    res.report.norm_final = norm2(s);
    res.report.norm_transmitted = norm_transmitted(s);
    res.report.norm_reflected = norm_reflected(s);
    res.report.footprint_overlap = overlap_max;
    res.report.lobe_score = lobe_score(s, p.spectral_hwhm());
    res.state = std::move(s);
    return res;
}

} // namespace

ScenarioResult run_with_offset(const PacketParams& p, double offset, const FrameCallback& frame_cb,
                               int frames) {
    Obstacle obs;
    obs.active = true;
    obs.cx = p.x0 + offset;
    obs.cy = p.obstacle_y;
    obs.half_w = p.obstacle_half_w();
    obs.half_h = p.obstacle_half_h;
    PacketState s = init_gaussian(p, p.x0, p.y0, obs);
    return run_state(std::move(s), p, frame_cb, frames);
}

ScenarioResult run_scenario(Scenario sc, const PacketParams& p, const FrameCallback& frame_cb,
                            int frames) {
    return run_with_offset(p, scenario_offset(p, sc), frame_cb, frames);
}

ScenarioResult run_antisymmetric(const PacketParams& p) {
    Obstacle obs;
    obs.active = true;
    obs.cx = p.x0;  // on the antisymmetry node
    obs.cy = p.obstacle_y;
    obs.half_w = 1.5 * p.spacing;
    obs.half_h = p.obstacle_half_h;
    double delta = 1.5 * p.sigma;
    PacketState s = init_superposition(
        p, {{p.x0 - delta, p.y0, 1.0}, {p.x0 + delta, p.y0, -1.0}}, obs);
    return run_state(std::move(s), p, nullptr, 0);
}

Theorem1Result theorem1_check(const AttenuationReport& rep, double eps) {
    Theorem1Result r;
    r.attenuation = std::abs(1.0 - rep.norm_transmitted / rep.norm_initial);
    r.footprint_overlap = rep.footprint_overlap;
    r.holds = (r.attenuation < eps) == (r.footprint_overlap < eps);
    return r;
}

} // namespace optics::wavepacket

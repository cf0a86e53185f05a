#include "optics/propagation.hpp"

#include "optics/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace optics {

namespace {

constexpr double pi = std::numbers::pi;

double fft_freq(std::size_t i, std::size_t n, double spacing) {
    std::ptrdiff_t k = std::ptrdiff_t(i);
    if (k >= std::ptrdiff_t(n) / 2) k -= std::ptrdiff_t(n);
    return double(k) / (double(n) * spacing);
}

[[noreturn]] void throw_undersampled(const char* where, double z, double have, double need) {
    std::ostringstream ss;
    ss << where << ": grid pitch " << have << " m is too coarse for propagation over "
       << z << " m; need pitch <= " << need << " m";
    throw std::runtime_error(ss.str());
}

} // namespace

ComplexField propagate_free(const ComplexField& f, double distance) {
    f.validate();
    if (distance == 0.0) return f;
    if (!(distance > 0.0))
        throw std::invalid_argument("propagate_free: distance must be non-negative");

    const Grid& g = f.grid;
    const double lam = f.wavelength;
    const double inv_l2 = 1.0 / (lam * lam);
    // Aliasing-free angular band for this distance (shrinks as z grows).
    const double span = g.spacing * double(g.nx);
    const double f_lim = 1.0 / (lam * std::sqrt(std::pow(2.0 * distance / span, 2) + 1.0));
    // Content parked near the Nyquist edge means the field itself is
    // undersampled; content merely beyond f_lim is steep-angle light leaving
    // the window and is clipped silently (the band-limited transfer function).
    const double f_alias = 0.9 / (2.0 * g.spacing);

    ComplexField out(g, lam);
    out.values = f.values;
    if (g.dims == 1)
        fft::dft(out.values, -1);
    else
        fft::dft2(out.values, g.nx, -1);

    double total = 0.0, aliased = 0.0, f_content = 0.0;
    auto classify = [&](std::size_t idx, double fx, double fy) {
        double p = std::norm(out.values[idx]);
        total += p;
        double f2 = fx * fx + fy * fy;
        if (std::abs(fx) > f_alias || std::abs(fy) > f_alias) {
            aliased += p;
            if (p > 0.0) f_content = std::max({f_content, std::abs(fx), std::abs(fy)});
        }
        return std::abs(fx) > f_lim || std::abs(fy) > f_lim || f2 >= inv_l2;
    };

    if (g.dims == 1) {
        std::vector<char> cut(g.nx);
        for (std::size_t i = 0; i < g.nx; ++i)
            cut[i] = classify(i, fft_freq(i, g.nx, g.spacing), 0.0);
        if (aliased > 1e-3 * total && total > 0.0)
            throw_undersampled("propagate_free", distance, g.spacing,
                               g.spacing * f_alias / f_content);
        for (std::size_t i = 0; i < g.nx; ++i) {
            if (cut[i]) {
                out.values[i] = 0.0;
                continue;
            }
            double fx = fft_freq(i, g.nx, g.spacing);
            out.values[i] *= std::polar(1.0, 2.0 * pi * distance * std::sqrt(inv_l2 - fx * fx));
        }
        fft::dft(out.values, +1);
    } else {
        std::vector<char> cut(g.size());
        for (std::size_t iy = 0; iy < g.ny; ++iy) {
            double fy = fft_freq(iy, g.ny, g.spacing);
            for (std::size_t ix = 0; ix < g.nx; ++ix)
                cut[iy * g.nx + ix] =
                    classify(iy * g.nx + ix, fft_freq(ix, g.nx, g.spacing), fy);
        }
        if (aliased > 1e-3 * total && total > 0.0)
            throw_undersampled("propagate_free", distance, g.spacing,
                               g.spacing * f_alias / f_content);
        for (std::size_t iy = 0; iy < g.ny; ++iy) {
            double fy = fft_freq(iy, g.ny, g.spacing);
            for (std::size_t ix = 0; ix < g.nx; ++ix) {
                std::size_t idx = iy * g.nx + ix;
                if (cut[idx]) {
                    out.values[idx] = 0.0;
                    continue;
                }
                double fx = fft_freq(ix, g.nx, g.spacing);
                out.values[idx] *=
                    std::polar(1.0, 2.0 * pi * distance * std::sqrt(inv_l2 - fx * fx - fy * fy));
            }
        }
        fft::dft2(out.values, g.nx, +1);
    }
    return out;
}

ComplexField propagate_scaled(const ComplexField& f, double distance, const Grid& out_grid) {
    f.validate();
    out_grid.validate();
    if (!(distance > 0.0))
        throw std::invalid_argument("propagate_scaled: distance must be positive");
    if (out_grid.dims != f.grid.dims)
        throw std::invalid_argument("propagate_scaled: dimensionality mismatch");

    const Grid& g = f.grid;
    const double lam = f.wavelength;
    const double inv_lz = 1.0 / (lam * distance);
    // The input-plane quadratic phase must advance by < pi between samples.
    double x_max = std::max(std::abs(g.origin), std::abs(g.origin + g.extent()));
    double need = 1.0 / (2.0 * x_max * inv_lz);
    if (g.spacing > need)
        throw_undersampled("propagate_scaled", distance, g.spacing, need);

    ComplexField out(out_grid, lam);
    if (g.dims == 1) {
        std::vector<cplx> tmp(g.nx);
        for (std::size_t i = 0; i < g.nx; ++i) {
            double x = g.coord(i);
            tmp[i] = f.values[i] * std::polar(1.0, pi * x * x * inv_lz);
        }
        auto s = fft::scaled_dft(tmp.data(), g.nx, g.origin, g.spacing, out_grid.nx,
                                 out_grid.origin, out_grid.spacing, inv_lz);
        cplx pref = std::polar(1.0, 2.0 * pi * distance / lam) *
                    std::polar(1.0 / std::sqrt(lam * distance), -pi / 4.0) * g.spacing;
        for (std::size_t k = 0; k < out_grid.nx; ++k) {
            double x2 = out_grid.coord(k);
            out.values[k] = s[k] * std::polar(1.0, pi * x2 * x2 * inv_lz) * pref;
        }
    } else {
        std::vector<cplx> tmp(f.values);
        for (std::size_t iy = 0; iy < g.ny; ++iy) {
            double y = g.coord(iy);
            for (std::size_t ix = 0; ix < g.nx; ++ix) {
                double x = g.coord(ix);
                tmp[iy * g.nx + ix] *= std::polar(1.0, pi * (x * x + y * y) * inv_lz);
            }
        }
        std::vector<cplx> mid(out_grid.nx * g.ny);
        for (std::size_t iy = 0; iy < g.ny; ++iy) {
            auto row = fft::scaled_dft(&tmp[iy * g.nx], g.nx, g.origin, g.spacing, out_grid.nx,
                                       out_grid.origin, out_grid.spacing, inv_lz);
            std::copy(row.begin(), row.end(), mid.begin() + std::ptrdiff_t(iy * out_grid.nx));
        }
        std::vector<cplx> col(g.ny);
        cplx pref = std::polar(1.0, 2.0 * pi * distance / lam) *
                    std::polar(1.0 / (lam * distance), -pi / 2.0) * g.spacing * g.spacing;
        for (std::size_t k = 0; k < out_grid.nx; ++k) {
            for (std::size_t iy = 0; iy < g.ny; ++iy) col[iy] = mid[iy * out_grid.nx + k];
            auto cv = fft::scaled_dft(col.data(), g.ny, g.origin, g.spacing, out_grid.ny,
                                      out_grid.origin, out_grid.spacing, inv_lz);
            double x2 = out_grid.coord(k);
            for (std::size_t j = 0; j < out_grid.ny; ++j) {
                double y2 = out_grid.coord(j);
                out.at(k, j) =
                    cv[j] * std::polar(1.0, pi * (x2 * x2 + y2 * y2) * inv_lz) * pref;
            }
        }
    }
    return out;
}

ComplexField apply_element(const ComplexField& f, const OpticalElement& e) {
    f.validate();
    if (auto* fs = std::get_if<FreeSpace>(&e)) {
        if (!(fs->distance > 0.0))
            throw std::invalid_argument("free-space distance must be positive");
        return propagate_free(f, fs->distance);
    }
    if (auto* m = std::get_if<AmplitudeMask>(&e)) {
        if (m->transmission.size() != f.values.size())
            throw std::invalid_argument("amplitude mask does not match the field grid");
        ComplexField out(f.grid, f.wavelength);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            out.values[i] = m->transmission[i] == 0.0 ? cplx{0.0, 0.0}
                                                      : f.values[i] * m->transmission[i];
        return out;
    }
    const auto& lens = std::get<ThinLens>(e);
    if (lens.focal_length == 0.0) throw std::invalid_argument("focal length must be nonzero");
    ComplexField out(f.grid, f.wavelength);
    const double inv_lf = 1.0 / (f.wavelength * lens.focal_length);
    const double r_ap = lens.aperture_diameter / 2.0;
    const Grid& g = f.grid;
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
        double y = g.dims == 2 ? g.coord(iy) : 0.0;
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            double x = g.coord(ix);
            double r2 = x * x + y * y;
            out.at(ix, iy) = r2 > r_ap * r_ap
                                 ? cplx{0.0, 0.0}
                                 : f.at(ix, iy) * std::polar(1.0, -pi * r2 * inv_lf);
        }
    }
    return out;
}

Variant variant_from_string(const std::string& s) {
    std::string t = s;
    std::replace(t.begin(), t.end(), '-', '_');
    if (t == "no_lens") return Variant::no_lens;
    if (t == "lens_only") return Variant::lens_only;
    if (t == "control") return Variant::control;
    if (t == "decoherent_sim") return Variant::decoherent_sim;
    if (t == "coherent_wg") return Variant::coherent_wg;
    if (t == "crossed_beams") return Variant::crossed_beams;
    throw std::invalid_argument("unknown variant: " + s);
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::no_lens: return "no_lens";
        case Variant::lens_only: return "lens_only";
        case Variant::control: return "control";
        case Variant::decoherent_sim: return "decoherent_sim";
        case Variant::coherent_wg: return "coherent_wg";
        case Variant::crossed_beams: return "crossed_beams";
    }
    throw std::invalid_argument("unknown variant");
}

PipelineGeometry derive_geometry(const SetupConfig& cfg) {
    cfg.validate();
    PipelineGeometry geo;
    geo.u = cfg.fringe_spacing();
    // The aperture stop passes the central envelope lobe: first zero of the
    // sinc envelope in slit (1D) mode, of the Airy envelope in 2D mode.
    double env = cfg.pinhole_to_sigma1_m * cfg.wavelength_m / cfg.pinhole_diameter_m;
    geo.apodization_radius = (cfg.dims == 1) ? env : 1.22 * env;
    geo.q = cfg.image_distance();
    for (int j = 0; j < cfg.wire_count / 2; ++j) {
        double c = (2.0 * j + 1.0) * geo.u / 2.0;
        geo.wire_centers.push_back(-c + cfg.wire_offset_m);
        geo.wire_centers.push_back(c + cfg.wire_offset_m);
    }
    std::sort(geo.wire_centers.begin(), geo.wire_centers.end());

    if (cfg.dims == 1) {
        geo.source = Grid::centered_line(4.0e-3, 4096);
        geo.sigma1 = Grid::centered_line(cfg.grid_extent_m, cfg.grid_samples);
        geo.image = Grid::centered_line(3.0e-3, 4096);
    } else {
        geo.source = Grid::centered_square(4.0e-3, 512);
        geo.sigma1 = Grid::centered_square(cfg.grid_extent_m, std::min<std::size_t>(cfg.grid_samples, 2048));
        geo.image = Grid::centered_square(3.0e-3, 1024);
    }
    return geo;
}

namespace {

// Fraction of the cell [x - h/2, x + h/2] covered by [lo, hi].
double cell_coverage(double x, double h, double lo, double hi) {
    double a = std::max(x - h / 2.0, lo);
    double b = std::min(x + h / 2.0, hi);
    return std::clamp((b - a) / h, 0.0, 1.0);
}

// Disk coverage of a square cell: exact 0/1 away from the rim, 4x4
// subsampling on rim cells.
double disk_coverage(double x, double y, double h, double cx, double cy, double radius) {
    double r = std::hypot(x - cx, y - cy);
    double half_diag = h * std::numbers::sqrt2 / 2.0;
    if (r <= radius - half_diag) return 1.0;
    if (r >= radius + half_diag) return 0.0;
    int inside = 0;
    for (int sy = 0; sy < 4; ++sy)
        for (int sx = 0; sx < 4; ++sx) {
            double px = x + h * (double(sx) + 0.5) / 4.0 - h / 2.0;
            double py = y + h * (double(sy) + 0.5) / 4.0 - h / 2.0;
            if (std::hypot(px - cx, py - cy) <= radius) ++inside;
        }
    return double(inside) / 16.0;
}

std::vector<double> pinhole_mask(const Grid& g, std::vector<double> centers, double diameter) {
    std::vector<double> m(g.size(), 0.0);
    if (g.dims == 1) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            double v = 0.0;
            for (double c : centers)
                v += cell_coverage(g.coord(i), g.spacing, c - diameter / 2.0, c + diameter / 2.0);
            m[i] = std::min(v, 1.0);
        }
    } else {
        for (std::size_t iy = 0; iy < g.ny; ++iy)
            for (std::size_t ix = 0; ix < g.nx; ++ix) {
                double v = 0.0;
                for (double c : centers)
                    v += disk_coverage(g.coord(ix), g.coord(iy), g.spacing, c, 0.0,
                                       diameter / 2.0);
                m[iy * g.nx + ix] = std::min(v, 1.0);
            }
    }
    return m;
}

std::vector<double> stop_mask(const Grid& g, double radius) {
    std::vector<double> m(g.size(), 0.0);
    if (g.dims == 1) {
        for (std::size_t i = 0; i < g.nx; ++i)
            m[i] = cell_coverage(g.coord(i), g.spacing, -radius, radius);
    } else {
        for (std::size_t iy = 0; iy < g.ny; ++iy)
            for (std::size_t ix = 0; ix < g.nx; ++ix)
                m[iy * g.nx + ix] =
                    disk_coverage(g.coord(ix), g.coord(iy), g.spacing, 0.0, 0.0, radius);
    }
    return m;
}

std::vector<double> wire_mask(const Grid& g, const std::vector<double>& centers,
                              double thickness) {
    for (std::size_t i = 0; i + 1 < centers.size(); ++i)
        if (centers[i + 1] - centers[i] < thickness)
            throw std::invalid_argument("wire grid wires overlap");
    double lo = g.origin, hi = g.origin + g.extent();
    for (double c : centers)
        if (c - thickness / 2.0 < lo || c + thickness / 2.0 > hi)
            throw std::invalid_argument("wire outside grid");
    std::vector<double> m(g.size(), 1.0);
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
        double open = 1.0;
        for (double c : centers)
            open -= cell_coverage(g.coord(ix), g.spacing, c - thickness / 2.0,
                                  c + thickness / 2.0);
        open = std::max(open, 0.0);
        for (std::size_t iy = 0; iy < g.ny; ++iy) m[iy * g.nx + ix] = open;
    }
    return m;
}

} // namespace

Masks make_masks(const SetupConfig& cfg, const PipelineGeometry& geo,
                 const std::vector<double>& per_wire_offsets) {
    const double a = cfg.pinhole_separation_m, b = cfg.pinhole_diameter_m;
    Masks masks;
    masks.dual_pinhole = pinhole_mask(geo.source, {-a / 2.0, a / 2.0}, b);
    masks.single_pinhole_1 = pinhole_mask(geo.source, {-a / 2.0}, b);
    masks.single_pinhole_2 = pinhole_mask(geo.source, {a / 2.0}, b);
    masks.aperture_stop = stop_mask(geo.sigma1, geo.apodization_radius);

    std::vector<double> centers = geo.wire_centers;
    if (!per_wire_offsets.empty()) {
        if (per_wire_offsets.size() != centers.size())
            throw std::invalid_argument("per-wire offset list does not match the wire count");
        for (std::size_t i = 0; i < centers.size(); ++i) centers[i] += per_wire_offsets[i];
        std::sort(centers.begin(), centers.end());
    }
    masks.wire_grid = centers.empty() ? std::vector<double>(geo.sigma1.size(), 1.0)
                                      : wire_mask(geo.sigma1, centers, cfg.wire_thickness_m);
    return masks;
}

const ComplexField& PlaneSet::plane(const std::string& name) const {
    for (const auto& [n, f] : planes)
        if (n == name) return f;
    throw std::invalid_argument("unknown plane: " + name);
}

bool PlaneSet::has_plane(const std::string& name) const {
    for (const auto& [n, f] : planes)
        if (n == name) return true;
    return false;
}

namespace {

// Fig.-9-style corollary scenario: two tilted Gaussian beams crossing at the
// fringe plane, wires at the crossing-region minima, no lens. Beam
// parameters are fixed desk-scale values; the config supplies wavelength,
// wire count, and the misalignment knob.
PlaneSet run_crossed_beams(const SetupConfig& cfg) {
    const double lam = cfg.wavelength_m;
    const double theta = 2.0e-3;   // full crossing angle [rad]
    const double w0 = 1.0e-3;      // beam amplitude 1/e radius [m]
    const double z2 = 4.0;         // crossing plane to observation plane [m]
    const double period = lam / theta;

    PlaneSet ps;
    ps.geometry.u = period;
    ps.geometry.q = z2;
    ps.geometry.apodization_radius = 0.0;
    Grid g = Grid::centered_line(0.020, 16384);
    ps.geometry.sigma1 = g;
    ps.geometry.source = g;
    ps.geometry.image = g;

    ComplexField beams(g, lam);
    double tilt = pi * theta / lam;  // k * theta/2
    for (std::size_t i = 0; i < g.nx; ++i) {
        double x = g.coord(i);
        cplx env = std::exp(-x * x / (w0 * w0));
        beams.values[i] = env * (std::polar(1.0, tilt * x) + std::polar(1.0, -tilt * x));
    }

    const double e = period / 10.0;  // = 50 lambda, comfortably opaque
    std::vector<double> centers;
    for (int j = 0; j < cfg.wire_count / 2; ++j) {
        double c = (2.0 * j + 1.0) * period / 2.0;
        centers.push_back(-c + cfg.wire_offset_m);
        centers.push_back(c + cfg.wire_offset_m);
    }
    std::sort(centers.begin(), centers.end());
    ps.geometry.wire_centers = centers;

    ps.planes.emplace_back("sigma0", beams);
    ps.fluxes["sigma0"] = flux(beams);

    ComplexField after = beams;
    if (!centers.empty()) {
        AmplitudeMask wg{wire_mask(g, centers, e), "wire_grid"};
        after = apply_element(beams, OpticalElement{wg});
    }
    ps.planes.emplace_back("sigma1", after);
    ps.fluxes["sigma1"] = flux(after);
    ps.fluxes["blocked"] = ps.fluxes["sigma0"] - ps.fluxes["sigma1"];

    ComplexField far = propagate_free(after, z2);
    ps.planes.emplace_back("sigma2", far);
    ps.fluxes["sigma2"] = flux(far);
    ComplexField far_free = propagate_free(beams, z2);
    ps.planes.emplace_back("sigma2_free", far_free);
    ps.fluxes["sigma2_free"] = flux(far_free);
    return ps;
}

} // namespace

PlaneSet run_pipeline(const SetupConfig& cfg, Variant variant, const PipelineOptions& opt) {
    if (variant == Variant::crossed_beams) return run_crossed_beams(cfg);

    PipelineGeometry geo = derive_geometry(cfg);
    Masks masks = make_masks(cfg, geo);
    const double lam = cfg.wavelength_m;

    PlaneSet ps;
    ps.geometry = geo;

    ComplexField src(geo.source, lam);
    if (opt.point_source) {
        // Near-point emitter for PSF probing; width well below the pinhole
        // diameter, wide enough to stay resolvable on the source grid.
        double sigma = 20e-6;
        double cx = 0.0;
        if (opt.source_pinhole == 1) cx = -cfg.pinhole_separation_m / 2.0;
        if (opt.source_pinhole == 2) cx = cfg.pinhole_separation_m / 2.0;
        const Grid& g = geo.source;
        for (std::size_t iy = 0; iy < g.ny; ++iy) {
            double y = g.dims == 2 ? g.coord(iy) : 0.0;
            for (std::size_t ix = 0; ix < g.nx; ++ix) {
                double dx = g.coord(ix) - cx;
                src.at(ix, iy) = std::exp(-(dx * dx + y * y) / (2.0 * sigma * sigma));
            }
        }
    } else {
        const std::vector<double>* mask = &masks.dual_pinhole;
        if (variant == Variant::decoherent_sim || opt.source_pinhole == 2)
            mask = &masks.single_pinhole_2;  // pinhole 1 closed
        else if (opt.source_pinhole == 1)
            mask = &masks.single_pinhole_1;
        for (std::size_t i = 0; i < src.values.size(); ++i) src.values[i] = (*mask)[i];
    }
    ps.planes.emplace_back("source", src);
    ps.fluxes["source"] = flux(src);

    ComplexField fringe = propagate_scaled(src, cfg.pinhole_to_sigma1_m, geo.sigma1);

    const bool has_lens = variant != Variant::no_lens;
    const bool has_stop = has_lens && variant != Variant::lens_only;
    const bool has_wires = variant == Variant::decoherent_sim || variant == Variant::coherent_wg;

    ComplexField sigma0 =
        has_stop ? apply_element(fringe, OpticalElement{AmplitudeMask{masks.aperture_stop,
                                                                      "aperture_stop"}})
                 : fringe;
    ps.planes.emplace_back("sigma0", sigma0);
    ps.fluxes["sigma0"] = flux(sigma0);

    ComplexField sigma1 =
        has_wires
            ? apply_element(sigma0, OpticalElement{AmplitudeMask{masks.wire_grid, "wire_grid"}})
            : sigma0;
    ps.planes.emplace_back("sigma1", sigma1);
    ps.fluxes["sigma1"] = flux(sigma1);
    ps.fluxes["blocked"] = ps.fluxes["sigma0"] - ps.fluxes["sigma1"];

    if (!has_lens) return ps;

    ComplexField at_lens = propagate_free(sigma1, cfg.pinhole_to_lens_m - cfg.pinhole_to_sigma1_m);
    ps.planes.emplace_back("lens", at_lens);
    ps.fluxes["lens"] = flux(at_lens);

    ComplexField refracted = apply_element(
        at_lens, OpticalElement{ThinLens{cfg.focal_length_m, cfg.lens_diameter_m}});
    ComplexField image = propagate_scaled(refracted, geo.q, geo.image);
    ps.planes.emplace_back("sigma2", image);
    ps.fluxes["sigma2"] = flux(image);
    return ps;
}

// --- metrics --------------------------------------------------------------

std::vector<double> cut_through_max(const IrradianceProfile& p, Grid& cut_grid) {
    p.validate();
    if (p.grid.dims == 1) {
        cut_grid = p.grid;
        return p.values;
    }
    std::size_t best = std::size_t(
        std::max_element(p.values.begin(), p.values.end()) - p.values.begin());
    std::size_t iy = best / p.grid.nx;
    cut_grid = Grid::line(p.grid.origin, p.grid.spacing, p.grid.nx);
    return {p.values.begin() + std::ptrdiff_t(iy * p.grid.nx),
            p.values.begin() + std::ptrdiff_t((iy + 1) * p.grid.nx)};
}

namespace {

// Parabolic vertex refinement around sample i (clamped to half a cell).
double refine_extremum(const Grid& g, const std::vector<double>& v, std::size_t i) {
    if (i == 0 || i + 1 >= v.size()) return g.coord(i);
    double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
    if (denom == 0.0) return g.coord(i);
    double off = 0.5 * (v[i - 1] - v[i + 1]) / denom;
    return g.coord(i) + std::clamp(off, -0.5, 0.5) * g.spacing;
}

double fwhm_of_cut(const Grid& g, const std::vector<double>& v) {
    std::size_t im = std::size_t(std::max_element(v.begin(), v.end()) - v.begin());
    double half = v[im] / 2.0;
    if (!(half > 0.0)) throw std::runtime_error("flat image: no peak to measure");
    double xl = g.coord(0), xr = g.coord(v.size() - 1);
    bool found_l = false, found_r = false;
    for (std::size_t i = im; i-- > 0;) {
        if (v[i] < half) {
            double t = (half - v[i]) / (v[i + 1] - v[i]);
            xl = g.coord(i) + t * g.spacing;
            found_l = true;
            break;
        }
    }
    for (std::size_t i = im + 1; i < v.size(); ++i) {
        if (v[i] < half) {
            double t = (v[i - 1] - half) / (v[i - 1] - v[i]);
            xr = g.coord(i - 1) + t * g.spacing;
            found_r = true;
            break;
        }
    }
    if (!found_l || !found_r) throw std::runtime_error("flat image: half-maximum not crossed");
    return xr - xl;
}

std::pair<std::size_t, std::size_t> window_indices(const Grid& g, std::size_t n, double lo,
                                                   double hi) {
    if (hi < lo) std::swap(lo, hi);
    auto idx_lo = std::size_t(std::max(0.0, std::ceil((lo - g.origin) / g.spacing)));
    auto idx_hi = std::size_t(
        std::clamp(std::floor((hi - g.origin) / g.spacing), 0.0, double(n - 1)));
    if (idx_lo > idx_hi) throw std::invalid_argument("window outside grid");
    return {idx_lo, idx_hi};
}

} // namespace

ResolutionEstimate resolution_estimate(const IrradianceProfile& image, const SetupConfig& cfg) {
    Grid g;
    auto cut = cut_through_max(image, g);
    ResolutionEstimate r;
    r.fwhm = fwhm_of_cut(g, cut);
    r.rayleigh = 1.22 * cfg.wavelength_m * cfg.image_distance() / cfg.lens_diameter_m;
    return r;
}

double peak_position(const IrradianceProfile& p, double lo, double hi) {
    Grid g;
    auto cut = cut_through_max(p, g);
    auto [i0, i1] = window_indices(g, cut.size(), lo, hi);
    std::size_t best = i0;
    for (std::size_t i = i0; i <= i1; ++i)
        if (cut[i] > cut[best]) best = i;
    return refine_extremum(g, cut, best);
}

double rms_width(const IrradianceProfile& p, double center, double halfwin) {
    Grid g;
    auto cut = cut_through_max(p, g);
    auto [i0, i1] = window_indices(g, cut.size(), center - halfwin, center + halfwin);
    double w = 0.0, wx = 0.0;
    for (std::size_t i = i0; i <= i1; ++i) {
        w += cut[i];
        wx += cut[i] * g.coord(i);
    }
    if (!(w > 0.0)) throw std::runtime_error("flat image: no flux in window");
    double mean = wx / w, var = 0.0;
    for (std::size_t i = i0; i <= i1; ++i)
        var += cut[i] * (g.coord(i) - mean) * (g.coord(i) - mean);
    return std::sqrt(var / w);
}

double minimum_near(const IrradianceProfile& p, double x0, double halfwin) {
    Grid g;
    auto cut = cut_through_max(p, g);
    auto [i0, i1] = window_indices(g, cut.size(), x0 - halfwin, x0 + halfwin);
    std::size_t best = i0;
    for (std::size_t i = i0; i <= i1; ++i)
        if (cut[i] < cut[best]) best = i;
    return refine_extremum(g, cut, best);
}

double crosstalk_fraction(const IrradianceProfile& p, double boundary, double own_center) {
    const Grid& g = p.grid;
    double lo = g.origin, hi = g.origin + g.extent();
    if (boundary < lo || boundary > hi) throw std::invalid_argument("boundary outside grid");
    double total = flux(p);
    if (!(total > 0.0)) throw std::runtime_error("flat image: no flux");
    double cross = own_center < boundary ? flux(p, boundary, hi) : flux(p, lo, boundary);
    return cross / total;
}

double crosstalk(const SetupConfig& cfg, int which_pinhole, double boundary) {
    if (which_pinhole != 1 && which_pinhole != 2)
        throw std::invalid_argument("pinhole index must be 1 or 2");
    PipelineOptions opt;
    opt.source_pinhole = which_pinhole;
    PlaneSet ps = run_pipeline(cfg, Variant::control, opt);
    // Imaging is inverting (magnification -q/p): pinhole 1 at -a/2 images to +x.
    double own = (which_pinhole == 1 ? 1.0 : -1.0) * cfg.pinhole_separation_m / 2.0 *
                 ps.geometry.q / cfg.pinhole_to_lens_m;
    return crosstalk_fraction(irradiance(ps.plane("sigma2")), boundary, own);
}

} // namespace optics

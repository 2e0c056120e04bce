#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "boolperc/measure.hpp"
#include "boolperc/rng.hpp"

namespace boolperc {

enum class WindowKind { box, slab };

// Sampling domain. A box is [-a,a]^d and is dilated by the margin on every
// axis ("plus sampling", so every grain that can reach the box is seen). A
// slab is [0,K] x [-A,A]^(d-1); the thickness axis is NOT dilated because the
// slab realizes a process whose centers are confined to the slab.
struct Window {
    WindowKind kind = WindowKind::box;
    int dim = 2;
    double half_width = 0;         // box
    double thickness = 0;          // slab, axis 0
    double lateral_half_width = 0; // slab, axes 1..d-1

    static Window box(int d, double a);
    static Window slab(int d, double K, double A);

    void sampling_bounds(double margin, std::vector<double>& lo, std::vector<double>& hi) const;
    double sampling_volume(double margin) const;
    // Radius of the largest origin-centered ball inside the sampling domain.
    double sampling_inball_radius(double margin) const;

    bool operator==(const Window&) const = default;
};

struct MarkedPoint {
    std::vector<double> x;
    double r = 0;
};

// Finite marked point pattern; positions flattened row-major.
struct Configuration {
    Window window;
    double margin = 0;
    std::vector<double> coords;
    std::vector<double> radii;

    int dim() const { return window.dim; }
    std::size_t size() const { return radii.size(); }
    const double* position(std::size_t i) const { return coords.data() + i * window.dim; }
    double max_radius() const;
};

// Poisson sample with intensity t * dx * F(dr); centers uniform on the window
// dilated by F's support bound, radii via the quantile transform. Pure
// function of the seed. Throws TooManyPoints when t*|F|*vol exceeds hard_cap.
Configuration sample_poisson(const RadiusMeasure& F, double t, const Window& w,
                             const SeedSpec& seed, double hard_cap = 1e8);

Configuration superpose(const Configuration& c1, const Configuration& c2);

// Monotone coupling (C_t, C_{t+dt}) with C_{t+dt} = C_t plus an independent
// increment at intensity dt; both marginals are correct Poisson samples.
std::pair<Configuration, Configuration> coupled_pair(const RadiusMeasure& F, double t, double dt,
                                                     const Window& w, const SeedSpec& seed,
                                                     double hard_cap = 1e8);

Configuration add_point(const Configuration& c, std::span<const double> x, double r);

// Debug export, one row "x1,...,xd,r" per point.
void write_csv(std::ostream& os, const Configuration& c);

} // namespace boolperc

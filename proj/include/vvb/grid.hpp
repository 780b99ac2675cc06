#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vvb {

/// Periodic cubic box [0,L)^d sampled on n points per axis (power of two).
/// Integer wavenumbers per axis run over m in [-n/2, n/2); the physical
/// wavenumber is k = 2*pi*m/L.
struct Grid {
    int dim = 2;          // spatial dimension, 2 or 3
    int n = 0;            // points per axis
    double length = 0.0;  // box edge L

    std::size_t points() const {
        std::size_t p = 1;
        for (int a = 0; a < dim; ++a) p *= static_cast<std::size_t>(n);
        return p;
    }
    double cell_volume() const {
        double h = length / n, v = 1.0;
        for (int a = 0; a < dim; ++a) v *= h;
        return v;
    }
    double volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= length;
        return v;
    }
    /// Wavenumber spacing 2*pi/L.
    double k_unit() const { return 2.0 * M_PI / length; }

    /// Integer mode along one axis from the flat per-axis index.
    int mode_of_index(int i) const { return i < n / 2 ? i : i - n; }

    /// Decompose a flat lattice index into per-axis indices (x fastest).
    std::array<int, 3> unflatten(std::size_t idx) const {
        std::array<int, 3> ix{0, 0, 0};
        ix[0] = static_cast<int>(idx % n);
        idx /= n;
        ix[1] = static_cast<int>(idx % n);
        if (dim == 3) ix[2] = static_cast<int>(idx / n);
        return ix;
    }
    std::size_t flatten(const std::array<int, 3>& ix) const {
        std::size_t idx = static_cast<std::size_t>(ix[0]) + static_cast<std::size_t>(n) * ix[1];
        if (dim == 3) idx += static_cast<std::size_t>(n) * n * ix[2];
        return idx;
    }

    /// Integer mode vector of a flat spectral index.
    std::array<int, 3> modes(std::size_t idx) const {
        auto ix = unflatten(idx);
        for (int a = 0; a < dim; ++a) ix[a] = mode_of_index(ix[a]);
        return ix;
    }
    /// |k|^2 of a flat spectral index.
    double k_sq(std::size_t idx) const {
        auto m = modes(idx);
        double ku = k_unit(), s = 0.0;
        for (int a = 0; a < dim; ++a) s += (ku * m[a]) * (ku * m[a]);
        return s;
    }
    /// True if any axis carries the unpaired Nyquist mode -n/2.
    bool is_nyquist(std::size_t idx) const {
        auto m = modes(idx);
        for (int a = 0; a < dim; ++a)
            if (m[a] == -n / 2) return true;
        return false;
    }
    /// Physical coordinate of lattice point index along axis a.
    double coord(int i) const { return length * i / n; }

    bool operator==(const Grid& o) const {
        return dim == o.dim && n == o.n && length == o.length;
    }
};

inline bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

inline Grid make_grid(int dim, int n_per_axis, double box_length) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("make_grid: dim must be 2 or 3, got " + std::to_string(dim));
    if (n_per_axis < 8 || !is_power_of_two(n_per_axis))
        throw std::invalid_argument("make_grid: n_per_axis must be a power of two >= 8, got " +
                                    std::to_string(n_per_axis));
    if (!(box_length > 0.0))
        throw std::invalid_argument("make_grid: box_length must be positive");
    return Grid{dim, n_per_axis, box_length};
}

}  // namespace vvb

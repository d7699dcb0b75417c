#ifndef STOKESLP_CORE_GRID_HPP
#define STOKESLP_CORE_GRID_HPP

#include <array>
#include <cstddef>
#include <cstdint>

#include "stokeslp/core/errors.hpp"

namespace stokeslp {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform grid on the flat torus (R/2piZ)^dim, same number of points N on
// every axis. N must be a power of two, N >= 8. Mode indices run through
// {-N/2, ..., N/2-1} on every axis, stored in standard FFT bin order.
class TorusGrid {
  public:
    TorusGrid() = default;
    TorusGrid(int dim, int npts) : dim_(dim), n_(npts) {
        if (dim < 1 || dim > 3) throw DimensionError("TorusGrid: dim must be 1..3");
        if (npts < 8 || (npts & (npts - 1)) != 0)
            throw DimensionError("TorusGrid: N must be a power of two, N >= 8");
    }

    int dim() const { return dim_; }
    int npts() const { return n_; }
    double spacing() const { return kTwoPi / n_; }

    std::size_t total() const {
        std::size_t t = 1;
        for (int d = 0; d < dim_; ++d) t *= static_cast<std::size_t>(n_);
        return t;
    }

    // FFT bin -> signed mode in {-N/2, ..., N/2-1}
    int signed_mode(int bin) const { return bin < n_ / 2 ? bin : bin - n_; }
    // signed mode -> FFT bin
    int bin_of(int mode) const { return mode >= 0 ? mode : mode + n_; }

    // decode flat index into per-axis bins (row major, axis dim-1 fastest)
    std::array<int, 3> bins(std::size_t idx) const {
        std::array<int, 3> b{0, 0, 0};
        for (int d = dim_ - 1; d >= 0; --d) {
            b[d] = static_cast<int>(idx % n_);
            idx /= n_;
        }
        return b;
    }

    std::size_t flat(const std::array<int, 3>& b) const {
        std::size_t idx = 0;
        for (int d = 0; d < dim_; ++d) idx = idx * n_ + static_cast<std::size_t>(b[d]);
        return idx;
    }

    // signed modes of a flat spectral index
    std::array<int, 3> modes(std::size_t idx) const {
        auto b = bins(idx);
        for (int d = 0; d < dim_; ++d) b[d] = signed_mode(b[d]);
        return b;
    }

    // physical coordinates of a flat grid index
    std::array<double, 3> point(std::size_t idx) const {
        auto b = bins(idx);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int d = 0; d < dim_; ++d) x[d] = spacing() * b[d];
        return x;
    }

    bool operator==(const TorusGrid& o) const { return dim_ == o.dim_ && n_ == o.n_; }
    bool operator!=(const TorusGrid& o) const { return !(*this == o); }

  private:
    int dim_ = 2;
    int n_ = 8;
};

} // namespace stokeslp

#endif

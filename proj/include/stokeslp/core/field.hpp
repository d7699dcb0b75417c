#ifndef STOKESLP_CORE_FIELD_HPP
#define STOKESLP_CORE_FIELD_HPP

#include <complex>
#include <vector>

#include "stokeslp/core/grid.hpp"

namespace stokeslp {

using cd = std::complex<double>;

// Multi-component array over a torus grid. The same container is used for
// point values and for Fourier coefficients; which one it holds is tracked
// by the type alias at the call site. Layout is component-major, then row
// major over the grid (last axis fastest), so per-mode batched matrix
// application sees each component as one contiguous plane.
template <class Tag>
class FieldData {
  public:
    FieldData() = default;
    FieldData(const TorusGrid& grid, int comps)
        : grid_(grid), comps_(comps), a_(grid.total() * comps, cd{0.0, 0.0}) {}

    const TorusGrid& grid() const { return grid_; }
    int comps() const { return comps_; }
    std::size_t plane() const { return grid_.total(); }

    cd& at(int comp, std::size_t idx) { return a_[comp * plane() + idx]; }
    const cd& at(int comp, std::size_t idx) const { return a_[comp * plane() + idx]; }

    cd* data(int comp = 0) { return a_.data() + comp * plane(); }
    const cd* data(int comp = 0) const { return a_.data() + comp * plane(); }

    std::vector<cd>& raw() { return a_; }
    const std::vector<cd>& raw() const { return a_; }

    FieldData& operator+=(const FieldData& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    FieldData& operator-=(const FieldData& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    FieldData& operator*=(cd s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

  private:
    void check_same(const FieldData& o) const {
        if (grid_ != o.grid_ || comps_ != o.comps_)
            throw DimensionError("FieldData: shape mismatch");
    }

    TorusGrid grid_;
    int comps_ = 0;
    std::vector<cd> a_;
};

struct SpectralTag {};
struct GridTag {};

using SpectralField = FieldData<SpectralTag>; // Fourier coefficients, FFT bin order
using GridField = FieldData<GridTag>;         // point values

// Velocity-pressure pair U = (u, p): components 0..dim-1 are the velocity,
// component dim is the pressure.
template <class Tag>
FieldData<Tag> make_vp(const TorusGrid& g) {
    return FieldData<Tag>(g, g.dim() + 1);
}

} // namespace stokeslp

#endif

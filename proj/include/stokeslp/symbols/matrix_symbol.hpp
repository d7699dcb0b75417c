#ifndef STOKESLP_SYMBOLS_MATRIX_SYMBOL_HPP
#define STOKESLP_SYMBOLS_MATRIX_SYMBOL_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stokeslp/la/matrix.hpp"

namespace stokeslp::symbols {

// A matrix-valued symbol a(xi) with an integer order and, when known, its
// homogeneous leading term sigma_m. x-dependence, where needed, is carried
// by the caller (the model symbols depend on x_n only).
struct MatrixSymbol {
    int order = 0;
    int rows = 1;
    int cols = 1;
    std::function<la::Matrix(std::span<const double>)> eval;
    std::function<la::Matrix(std::span<const double>)> leading; // may be empty

    la::Matrix operator()(std::span<const double> xi) const { return eval(xi); }
    bool has_leading() const { return static_cast<bool>(leading); }
};

} // namespace stokeslp::symbols

#endif

#pragma once

#include <string_view>

#include "emberflow/grid.hpp"

namespace emberflow {

/// Lebesgue exponent for the discrete norms used throughout.
enum class Lp { one, two, infinity };

/// 1/p (0 for p = infinity).
double reciprocal(Lp p) noexcept;
std::string_view lp_name(Lp p) noexcept;
Lp parse_lp(std::string_view text);

/// L1 = h^d sum |v|, L2 = (h^d sum v^2)^(1/2), Linf = max |v|.
double lp_norm(const ScalarField& field, Lp p);

/// h^d sum v.
double integral(const ScalarField& field);

/// (sum |k|^2 |v_k|^2 L^d / N^2)^(1/2), the discrete Parseval form of ||grad f||_2.
double h1dot_seminorm(const ScalarField& field);

/// || D^k f ||_p where D^k f collects the order-k partials (one per multi-index),
/// combined pointwise in the Euclidean norm. Spectral derivatives.
double derivative_norm(const ScalarField& field, int order, Lp p);

/// max over nodes of |grad f| (spectral gradient).
double grad_sup(const ScalarField& field);

/// Share of ||f||_1 carried by nodes within L/8 of the box boundary along any
/// axis. 0 for the zero field.
double boundary_fraction(const ScalarField& field);

/// Threshold above which boundary_fraction flags a run as contaminated by
/// periodic images.
inline constexpr double kBoundaryContaminationThreshold = 1e-6;

}  // namespace emberflow

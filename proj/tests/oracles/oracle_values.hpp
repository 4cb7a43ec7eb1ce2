#pragma once

// Generated by tests/oracles/generate_oracles.py; do not edit by hand.

namespace oracle {

inline constexpr double bilaplacian_plus_source_at_1 = 0;
inline constexpr double B_at_0 = 2.7607953966781422907;
inline constexpr double lap_u_at_0 = 2.1385029187241088791;
inline constexpr double gradient_margin_at_0 = 0.44786791720257765293;
inline constexpr double weak_margin_at_0 = 0.54455695327450378347;
inline constexpr double half_gradient_margin_at_5 = 0.21776275076637028169;
inline constexpr double scalar_curvature_at_0 = -23.615876055185165022;
inline constexpr double auxiliary_margin_at_1 = 0.095274890278990263052;
inline constexpr double auxiliary_margin_at_3 = 0.061738128900785690458;
inline constexpr double auxiliary_margin_quarter_at_2 = 0.066396012425536325541;
inline constexpr double weighted_margin_at_1 = 1.1460704321344123451;
inline constexpr double system_comparison_at_0 = 1.0162654963092294726;
inline constexpr double mixed_margin_at_1 = 1.6906350015215312262;
inline constexpr double mixed_dropped_term_at_1 = 1.6906350015215312262;
inline constexpr double q_min_quarter_n4 = 2.0000000000000000000;
inline constexpr double L2_exact_params = 1.4288690166235205573;

}  // namespace oracle

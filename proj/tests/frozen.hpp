#pragma once

// Values derived once from the oracles in support.hpp and then frozen.
// test_oracles.cpp re-derives each one so a drift in either side is caught.

namespace frozen {

// d = 1, psi(n) = max_i <m_i, n - n_0'>, v = max(0, 2 beta_0 - 1):
// right minus left derivative of t -> int_A (psi + t v)^c dmu at t = 0.
inline constexpr double kNonDiffGap = 3.0;

// d = 1, mass 3/2 on each vertex and each edge midpoint of B: solution
// weights satisfy g_mid - g_vertex = -3/8.
inline constexpr double kMixedD1Delta = -0.375;

}  // namespace frozen

#pragma once

namespace shotnoise::constants {

// CODATA 2018 exact values (SI).
inline constexpr double e = 1.602176634e-19; // C
inline constexpr double h = 6.62607015e-34;  // J s
inline constexpr double k = 1.380649e-23;    // J/K

// Conductance quantum 2e^2/h, spin degenerate (S).
inline constexpr double G0 = 2.0 * e * e / h;

// Boltzmann constant in eV/K.
inline constexpr double k_eV = k / e;

// Estimated quantum efficiencies at unit normalized yield (photons per
// electron) for the 1e and 2e bands. Metadata only.
inline constexpr double quantum_efficiency_1e = 3e-6;
inline constexpr double quantum_efficiency_2e = 3e-7;

} // namespace shotnoise::constants

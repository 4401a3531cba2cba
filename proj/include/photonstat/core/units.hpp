#pragma once

#include <cstdint>

// Unit conventions used throughout:
//   time        integer picoseconds in streams, real nanoseconds in fits
//   intensity   kW/cm^2
//   rates       counts/s
//   energy      meV
//   area        A^2 (angstrom squared)
//   pressure    Pa
//   temperature K internally (CLI accepts C or K)
namespace photonstat::units {

inline constexpr double ps_per_ns = 1e3;
inline constexpr double ps_per_us = 1e6;
inline constexpr double ps_per_s = 1e12;
inline constexpr double ns_per_s = 1e9;
inline constexpr double us_per_s = 1e6;

constexpr double ns_to_ps(double ns) { return ns * ps_per_ns; }
constexpr double ps_to_ns(double ps) { return ps / ps_per_ns; }
constexpr double s_to_ps(double s) { return s * ps_per_s; }
constexpr double ps_to_s(double ps) { return ps / ps_per_s; }

constexpr std::int64_t ns_to_ps_exact(std::int64_t ns) { return ns * 1000; }

// CODATA 2018 (k_B, e exact by SI definition).
inline constexpr double boltzmann_j_per_k = 1.380649e-23;
inline constexpr double hbar_j_s = 1.054571817e-34;
inline constexpr double amu_kg = 1.66053906660e-27;
inline constexpr double joule_per_mev = 1.602176634e-22;
inline constexpr double boltzmann_mev_per_k = boltzmann_j_per_k / joule_per_mev;
inline constexpr double gas_constant_j_mol_k = 8.31446261815324;

inline constexpr double celsius_offset_k = 273.15;
constexpr double celsius_to_kelvin(double c) { return c + celsius_offset_k; }
constexpr double kelvin_to_celsius(double k) { return k - celsius_offset_k; }

inline constexpr double m2_per_angstrom2 = 1e-20;

}  // namespace photonstat::units

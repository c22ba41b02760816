#pragma once

// Generated by oracles.py; do not edit.
#include <array>

namespace frozen {

inline constexpr std::array<unsigned long, 3> n{6, 5, 7};
inline constexpr std::array<double, 3> delta_k{0.69999999999999996, 0.59999999999999998, 0.5};
inline constexpr std::array<double, 3> k_min{-2.1000000000000001, -1.2, 0.29999999999999999};
inline constexpr std::array<double, 3> k0{0.40000000000000002, -0.29999999999999999, 1.6000000000000001};
inline constexpr double sigma = 0.8;
inline constexpr std::array<double, 4> weights{0.6, 0.0, 0.0, 0.8};
inline constexpr std::array<double, 3> x{0.29999999999999999, -0.69999999999999996, 1.1000000000000001};
inline constexpr double t = 0.4;

inline constexpr double number = 1.0000000000000004;
inline constexpr double energy = 1.9746257771240927;
inline constexpr std::array<double, 3> momentum{0.32536918035486057, -0.21653837477992455, 1.6325648042368046};
inline constexpr std::array<double, 3> current{0.16481757973678252, -0.11174872425488389, 0.80329003961700751};
inline constexpr double helicity = -0.28000000000000014;

inline constexpr std::array<double, 6> A_plus{-0.29832789079013827, -0.7110430069809266, -0.39382852791518291, 0.095236107204496614, 0.7201772961172187, 0.13467305295919219};
inline constexpr std::array<double, 6> E_plus{1.577986759895061, -0.18722804954792749, -0.032450335661426105, -0.72968344519947237, -0.51368597549616812, 1.1830694129297541};
inline constexpr std::array<double, 6> B_plus{0.36572755501691495, 0.53379345687367452, 1.5229188795058748, -0.14903577313381206, 0.16187910085599011, -1.2795787095514917};
inline constexpr double rho = 0.019266516701652702;
inline constexpr std::array<double, 3> J{0.006457935819107646, -0.0013034839667823903, 0.011065307207328026};

}  // namespace frozen

#pragma once

#include <stdexcept>
#include <string>

namespace pnc {

// Operation would exceed a documented work bound (factorization norm bound,
// coset enumeration bound, ...).
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Singular matrix where an invertible one is required (infinite partition
// index, rank-deficient field system, ...).
struct singular_error : std::domain_error {
    explicit singular_error(const std::string& what) : std::domain_error(what) {}
};

// Matrix is invertible over C but not over Z[i] (determinant not a unit).
struct not_invertible_error : std::domain_error {
    explicit not_invertible_error(const std::string& what) : std::domain_error(what) {}
};

// A point claimed to lie on a lattice does not.
struct not_lattice_point_error : std::domain_error {
    explicit not_lattice_point_error(const std::string& what) : std::domain_error(what) {}
};

// Transmit-side power constraint violated; indicates an encoder bug.
struct power_violation_error : std::runtime_error {
    explicit power_violation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pnc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrg {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
struct unknown_gate : error {
    using error::error;
};
struct cap_exceeded : error {
    explicit cap_exceeded(std::size_t cap)
        : error("group closure exceeded the cap of " + std::to_string(cap) + " elements"), cap(cap) {}
    std::size_t cap;
};
struct not_normal : error {
    using error::error;
};
struct not_subgroup : error {
    using error::error;
};
struct degree_mismatch : error {
    using error::error;
};
struct dimension_too_large : error {
    using error::error;
};
struct not_pauli : error {
    using error::error;
};
struct not_clifford : error {
    using error::error;
};
struct unsupported_type : error {
    using error::error;
};
struct non_terminating : error {
    using error::error;
};
struct not_crystallographic : error {
    using error::error;
};
struct non_integral_result : error {
    using error::error;
};
struct invalid_spec : error {
    using error::error;
};
struct unsupported_root_of_unity : error {
    using error::error;
};
struct too_many_points : error {
    using error::error;
};
struct not_a_grid : error {
    using error::error;
};
struct not_independent : error {
    using error::error;
};
struct too_large : error {
    using error::error;
};
struct non_integral_out : error {
    using error::error;
};
struct registry_parse_error : error {
    using error::error;
};
struct cache_corruption : error {
    using error::error;
};

}  // namespace qrg

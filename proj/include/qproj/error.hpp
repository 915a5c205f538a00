#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qproj {

// Exit-code families for the CLI: 2 parse, 3 index/dimension, 4 not-reachable,
// 5 invariant failure, 6 oracle convention mismatch.
enum class errc {
    parse = 2,
    index = 3,
    not_reachable = 4,
    invariant = 5,
    convention = 6,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(errc::parse, msg) {}
};

struct index_error : error {
    explicit index_error(const std::string& msg) : error(errc::index, msg) {}
};

struct dimension_error : error {
    explicit dimension_error(const std::string& msg) : error(errc::index, msg) {}
};

struct not_unimodular_error : error {
    explicit not_unimodular_error(const std::string& msg) : error(errc::invariant, msg) {}
};

struct mixed_signs_error : error {
    explicit mixed_signs_error(const std::string& msg) : error(errc::invariant, msg) {}
};

struct zero_column_error : error {
    explicit zero_column_error(const std::string& msg) : error(errc::invariant, msg) {}
};

struct not_unit_column_error : error {
    explicit not_unit_column_error(const std::string& msg) : error(errc::invariant, msg) {}
};

struct precondition_error : error {
    explicit precondition_error(const std::string& msg) : error(errc::index, msg) {}
};

struct invalid_frame_error : error {
    explicit invalid_frame_error(const std::string& msg) : error(errc::invariant, msg) {}
};

struct not_reachable_error : error {
    not_reachable_error(const std::string& msg, std::size_t explored, std::size_t depth)
        : error(errc::not_reachable, msg), explored_states(explored), max_depth(depth) {}
    std::size_t explored_states;
    std::size_t max_depth;
};

struct cyclic_quiver_error : error {
    explicit cyclic_quiver_error(const std::string& msg) : error(errc::parse, msg) {}
};

struct convention_mismatch_error : error {
    explicit convention_mismatch_error(const std::string& msg) : error(errc::convention, msg) {}
};

struct not_found_error : error {
    explicit not_found_error(const std::string& msg) : error(errc::invariant, msg) {}
};

} // namespace qproj

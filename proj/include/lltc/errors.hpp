#pragma once

#include <stdexcept>
#include <string>

namespace lltc {

// Every failure the library reports, so callers and tests can match on the
// condition instead of parsing messages.
enum class Err {
    negative_entry,
    all_zero,
    non_finite,
    class_count_mismatch,
    empty_class,
    degenerate,
    dimension_mismatch,
    empty_candidate_set,
    empty_pool,
    pool_exhausted,
    empty_test_set,
    spec_invalid,
    config_invalid,
    io_failure,
    schema_violation,
    unsupported_backend,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
  public:
    Error(Err kind, const std::string& msg)
        : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}

    Err kind() const { return kind_; }

  private:
    Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace lltc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace finstack {

enum class errc {
  relation_not_equivalence,
  not_stable,
  internal_lemma_failure,
  middle_mismatch,
  groupoid_mismatch,
  not_a_resolution,
  not_closed,
  not_in_s,
  not_full,
  bound_exceeded,
  parse_error,
  dangling_reference,
  validation_error,
  hypothesis_failure,
};

const char* errc_name(errc c);

/// Typed error carrying one of the library error codes.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

/// Accumulates human-readable axiom violations. Empty means valid.
struct Report {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void fail(std::string msg) { violations.push_back(std::move(msg)); }
  void merge(const Report& other, const std::string& prefix = "");
  std::string str() const;
};

}  // namespace finstack

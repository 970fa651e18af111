/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ckn {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition of an operation was violated by the caller.
class contract_error : public error {
public:
  explicit contract_error(const std::string& what) : error(what) {}
};

/// A matrix required to be positive semi-definite has an eigenvalue below
/// the accepted clamp window.
class not_psd_error : public error {
public:
  explicit not_psd_error(const std::string& what) : error(what) {}
};

/// An identity that must hold by construction failed beyond tolerance.
/// Firing indicates a transcription bug in the closed forms, not bad input.
class model_violation_error : public error {
public:
  explicit model_violation_error(const std::string& what) : error(what) {}
};

/// Iterative optimization failed to stabilize; carries the best value found.
class convergence_error : public error {
public:
  convergence_error(const std::string& what, double best)
      : error(what), best_value(best) {}
  double best_value;
};

/// Post-selected renormalization was requested where the selection
/// probability is numerically zero.
class degenerate_postselection_error : public error {
public:
  explicit degenerate_postselection_error(const std::string& what)
      : error(what) {}
};

/// Invalid run configuration (CLI exit code 3).
class config_error : public error {
public:
  explicit config_error(const std::string& what) : error(what) {}
};

/// File I/O failure (CLI exit code 2).
class io_error : public error {
public:
  explicit io_error(const std::string& what) : error(what) {}
};

} // namespace ckn

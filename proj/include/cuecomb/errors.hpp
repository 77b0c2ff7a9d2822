#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cuecomb {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model, pool or option was constructed with parameters outside its domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Vector lengths disagree with the model's cue count.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Every importance weight underflowed; the ratio estimate is undefined.
class EstimatorDegenerate : public Error {
 public:
  using Error::Error;
};

/// A spiking pool emitted no spikes at all in the trial window.
class SilentPool : public Error {
 public:
  using Error::Error;
};

/// The quadrature oracle refuses a model whose integral would be too costly.
class CostGuard : public Error {
 public:
  using Error::Error;
};

/// A batch item failed; carries the index of the first failing trial.
class BatchError : public Error {
 public:
  BatchError(std::size_t trial_index, const std::string& what)
      : Error("trial " + std::to_string(trial_index) + ": " + what),
        trial_index_(trial_index) {}

  std::size_t trial_index() const noexcept { return trial_index_; }

 private:
  std::size_t trial_index_;
};

}  // namespace cuecomb

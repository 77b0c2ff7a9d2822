#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cuecomb/rng.hpp"

namespace cuecomb {

/// State of the cause node. Common means every cue shares one stimulus.
enum class Cause : int { Common = 1, Separate = 2 };

std::string_view to_string(Cause cause) noexcept;

enum class ModelKind { TwoCue, MultiCue, SameDifferent };

std::string_view to_string(ModelKind kind) noexcept;
/// Accepts "two_cue", "multi_cue", "same_different" (hyphens also allowed).
std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept;

/// Raw parameters for make_model. Fields a kind does not use are ignored.
struct ModelParameters {
  double prior_c1 = 0.5;
  double sigma_s = 4.0;
  std::vector<double> sigmas{6.0, 6.0};
  double half_range = 10.0;
};

/// Generative causal model for cue combination.
///
/// Two-cue and multi-cue models draw the shared stimulus (common cause) or
/// each stimulus independently (separate causes) from Normal(0, sigma_s^2).
/// The same-different model first draws a location mu ~ Uniform[-L, L]; under
/// a common cause every stimulus equals mu, otherwise object i gets its own
/// mu_i ~ Uniform[-L, L] and S_i ~ Normal(mu_i, sigma_s^2). In all kinds
/// X_i ~ Normal(S_i, sigma_i^2).
///
/// Immutable after construction; factories throw InvalidParameter.
class CueModel {
 public:
  static CueModel two_cue(double prior_c1, double sigma_s, double sigma_1,
                          double sigma_2);
  static CueModel multi_cue(double prior_c1, double sigma_s,
                            std::vector<double> sigmas);
  static CueModel same_different(double prior_c1, double half_range,
                                 double sigma_s, std::vector<double> sigmas);

  ModelKind kind() const noexcept { return kind_; }
  std::size_t cue_count() const noexcept { return sigmas_.size(); }
  double prior_c1() const noexcept { return prior_c1_; }
  double sigma_s() const noexcept { return sigma_s_; }
  /// L of the same-different model; 0 for the other kinds.
  double half_range() const noexcept { return half_range_; }
  std::span<const double> sigmas() const noexcept { return sigmas_; }
  std::span<const double> inv_sigmas() const noexcept { return inv_sigmas_; }
  /// Sum over cues of -log(sqrt(2 pi) sigma_i).
  double log_norm_const() const noexcept { return log_norm_const_; }

  friend bool operator==(const CueModel&, const CueModel&) = default;

 private:
  CueModel(ModelKind kind, double prior_c1, double sigma_s,
           std::vector<double> sigmas, double half_range);

  ModelKind kind_;
  double prior_c1_;
  double sigma_s_;
  double half_range_;
  std::vector<double> sigmas_;
  std::vector<double> inv_sigmas_;
  double log_norm_const_;
};

/// Validated construction from a kind and raw parameters. For TwoCue the
/// sigma vector must hold exactly two entries.
CueModel make_model(ModelKind kind, const ModelParameters& params);

/// One ancestral draw of the stimuli. The provenance flag, not a comparison of
/// values, records which cause branch produced the draw.
struct StimulusSample {
  std::vector<double> stimuli;
  bool from_common_cause = false;
  /// Shared location; set only for same-different common-cause draws.
  std::optional<double> mu;
};

struct Trial {
  Cause true_cause = Cause::Common;
  std::vector<double> stimuli;
  std::vector<double> observations;
};

/// Provenance of an in-place draw.
struct DrawInfo {
  bool from_common_cause = false;
  double mu = 0.0;  ///< meaningful only for same-different common draws
};

/// Allocation-free ancestral draw into `out` (size == cue_count()).
DrawInfo draw_prior_stimuli(const CueModel& model, Rng& rng,
                            std::span<double> out);

/// Draw of the stimuli with the cause already fixed.
DrawInfo draw_stimuli_given(const CueModel& model, Cause cause, Rng& rng,
                            std::span<double> out);

StimulusSample sample_prior_stimuli(const CueModel& model, Rng& rng);

/// Draws C from the prior, then the stimuli given C, then the observations.
Trial sample_trial(const CueModel& model, Rng& rng);

/// Sum over cues of log Normal(observations[i]; stimuli[i], sigma_i^2).
double log_likelihood(const CueModel& model, std::span<const double> stimuli,
                      std::span<const double> observations);

/// log_likelihood without the length check, for hot loops.
inline double log_likelihood_unchecked(const CueModel& model,
                                       std::span<const double> stimuli,
                                       std::span<const double> observations) {
  const auto inv = model.inv_sigmas();
  double quad = 0.0;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    const double z = (observations[i] - stimuli[i]) * inv[i];
    quad += z * z;
  }
  return model.log_norm_const() - 0.5 * quad;
}

}  // namespace cuecomb

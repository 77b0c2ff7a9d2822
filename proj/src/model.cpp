#include "cuecomb/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cuecomb/errors.hpp"

namespace cuecomb {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw InvalidParameter(std::string(name) + " must be a positive finite number");
}

}  // namespace

std::string_view to_string(Cause cause) noexcept {
  return cause == Cause::Common ? "common" : "separate";
}

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::TwoCue: return "two_cue";
    case ModelKind::MultiCue: return "multi_cue";
    case ModelKind::SameDifferent: return "same_different";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept {
  std::string t(text);
  for (char& c : t)
    if (c == '-') c = '_';
  if (t == "two_cue") return ModelKind::TwoCue;
  if (t == "multi_cue") return ModelKind::MultiCue;
  if (t == "same_different") return ModelKind::SameDifferent;
  return std::nullopt;
}

CueModel::CueModel(ModelKind kind, double prior_c1, double sigma_s,
                   std::vector<double> sigmas, double half_range)
    : kind_(kind),
      prior_c1_(prior_c1),
      sigma_s_(sigma_s),
      half_range_(half_range),
      sigmas_(std::move(sigmas)) {
  if (!(prior_c1_ > 0.0 && prior_c1_ < 1.0))
    throw InvalidParameter("prior_c1 must lie strictly between 0 and 1");
  require_positive(sigma_s_, "sigma_s");
  if (sigmas_.size() < 2)
    throw InvalidParameter("a cue model needs at least two cues");
  if (kind_ == ModelKind::TwoCue && sigmas_.size() != 2)
    throw InvalidParameter("a two-cue model takes exactly two cue sigmas");
  for (std::size_t i = 0; i < sigmas_.size(); ++i)
    require_positive(sigmas_[i], ("sigma_" + std::to_string(i + 1)).c_str());
  if (kind_ == ModelKind::SameDifferent) require_positive(half_range_, "half_range");

  inv_sigmas_.reserve(sigmas_.size());
  log_norm_const_ = 0.0;
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  for (double s : sigmas_) {
    inv_sigmas_.push_back(1.0 / s);
    log_norm_const_ -= half_log_2pi + std::log(s);
  }
}

CueModel CueModel::two_cue(double prior_c1, double sigma_s, double sigma_1,
                           double sigma_2) {
  return CueModel(ModelKind::TwoCue, prior_c1, sigma_s, {sigma_1, sigma_2}, 0.0);
}

CueModel CueModel::multi_cue(double prior_c1, double sigma_s,
                             std::vector<double> sigmas) {
  return CueModel(ModelKind::MultiCue, prior_c1, sigma_s, std::move(sigmas), 0.0);
}

CueModel CueModel::same_different(double prior_c1, double half_range,
                                  double sigma_s, std::vector<double> sigmas) {
  return CueModel(ModelKind::SameDifferent, prior_c1, sigma_s, std::move(sigmas),
                  half_range);
}

CueModel make_model(ModelKind kind, const ModelParameters& params) {
  switch (kind) {
    case ModelKind::TwoCue:
      if (params.sigmas.size() != 2)
        throw InvalidParameter("a two-cue model takes exactly two cue sigmas");
      return CueModel::two_cue(params.prior_c1, params.sigma_s, params.sigmas[0],
                               params.sigmas[1]);
    case ModelKind::MultiCue:
      return CueModel::multi_cue(params.prior_c1, params.sigma_s, params.sigmas);
    case ModelKind::SameDifferent:
      return CueModel::same_different(params.prior_c1, params.half_range,
                                      params.sigma_s, params.sigmas);
  }
  throw InvalidParameter("unknown model kind");
}

DrawInfo draw_stimuli_given(const CueModel& model, Cause cause, Rng& rng,
                            std::span<double> out) {
  const double sigma_s = model.sigma_s();
  const double L = model.half_range();
  DrawInfo info;
  info.from_common_cause = cause == Cause::Common;

  if (model.kind() == ModelKind::SameDifferent) {
    if (info.from_common_cause) {
      info.mu = rng.uniform(-L, L);
      for (double& s : out) s = info.mu;
    } else {
      for (double& s : out) {
        const double mu_i = rng.uniform(-L, L);
        s = rng.normal(mu_i, sigma_s);
      }
    }
    return info;
  }

  if (info.from_common_cause) {
    const double s = sigma_s * rng.normal();
    for (double& v : out) v = s;
  } else {
    for (double& v : out) v = sigma_s * rng.normal();
  }
  return info;
}

DrawInfo draw_prior_stimuli(const CueModel& model, Rng& rng,
                            std::span<double> out) {
  const Cause cause = rng.bernoulli(model.prior_c1()) ? Cause::Common : Cause::Separate;
  return draw_stimuli_given(model, cause, rng, out);
}

StimulusSample sample_prior_stimuli(const CueModel& model, Rng& rng) {
  StimulusSample sample;
  sample.stimuli.resize(model.cue_count());
  const DrawInfo info = draw_prior_stimuli(model, rng, sample.stimuli);
  sample.from_common_cause = info.from_common_cause;
  if (model.kind() == ModelKind::SameDifferent && info.from_common_cause)
    sample.mu = info.mu;
  return sample;
}

Trial sample_trial(const CueModel& model, Rng& rng) {
  Trial trial;
  trial.true_cause = rng.bernoulli(model.prior_c1()) ? Cause::Common : Cause::Separate;
  trial.stimuli.resize(model.cue_count());
  draw_stimuli_given(model, trial.true_cause, rng, trial.stimuli);
  trial.observations.resize(model.cue_count());
  const auto sigmas = model.sigmas();
  for (std::size_t i = 0; i < sigmas.size(); ++i)
    trial.observations[i] = rng.normal(trial.stimuli[i], sigmas[i]);
  return trial;
}

double log_likelihood(const CueModel& model, std::span<const double> stimuli,
                      std::span<const double> observations) {
  if (stimuli.size() != model.cue_count() || observations.size() != model.cue_count())
    throw ShapeMismatch("log_likelihood: expected " + std::to_string(model.cue_count()) +
                        " stimuli and observations, got " +
                        std::to_string(stimuli.size()) + " and " +
                        std::to_string(observations.size()));
  return log_likelihood_unchecked(model, stimuli, observations);
}

}  // namespace cuecomb

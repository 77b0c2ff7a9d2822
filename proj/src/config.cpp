#include "cuecomb/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "cuecomb/table.hpp"

namespace cuecomb {

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : Error([&] {
        std::string what = "config";
        if (line > 0) what += " line " + std::to_string(line);
        if (!field.empty()) what += " [" + field + "]";
        return what + ": " + message;
      }()),
      line_(line),
      field_(std::move(field)) {}

namespace {

struct ValueError {
  std::string message;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw ValueError{"'" + std::string(text) + "' is not a valid number"};
  return value;
}

template <typename T>
T parse_value(std::string_view text);

template <>
std::uint64_t parse_value<std::uint64_t>(std::string_view text) {
  if (!text.empty() && text.front() == '-') throw ValueError{"expected a non-negative integer"};
  return parse_number<std::uint64_t>(text);
}

template <>
double parse_value<double>(std::string_view text) {
  const double v = parse_number<double>(text);
  if (!std::isfinite(v)) throw ValueError{"expected a finite number"};
  return v;
}

template <>
bool parse_value<bool>(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ValueError{"expected true or false"};
}

template <>
std::string parse_value<std::string>(std::string_view text) {
  return std::string(text);
}

template <>
ModelKind parse_value<ModelKind>(std::string_view text) {
  if (auto kind = parse_model_kind(text)) return *kind;
  throw ValueError{"expected two_cue, multi_cue or same_different"};
}

template <>
std::vector<std::uint64_t> parse_value<std::vector<std::uint64_t>>(std::string_view text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_value<std::uint64_t>(part));
  return out;
}

template <>
std::vector<double> parse_value<std::vector<double>>(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_value<double>(part));
  return out;
}

template <>
std::vector<std::vector<double>> parse_value<std::vector<std::vector<double>>>(std::string_view text) {
  std::vector<std::vector<double>> out;
  if (text.empty()) return out;
  for (auto point : split(text, ';')) out.push_back(parse_value<std::vector<double>>(point));
  return out;
}

std::string emit_value(std::uint64_t v) { return std::to_string(v); }
std::string emit_value(double v) { return format_real(v); }
std::string emit_value(bool v) { return v ? "true" : "false"; }
std::string emit_value(const std::string& v) { return v; }
std::string emit_value(ModelKind v) { return std::string(to_string(v)); }

template <typename T>
std::string emit_value(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += emit_value(values[i]);
  }
  return out;
}

std::string emit_value(const std::vector<std::vector<double>>& points) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) out += "; ";
    out += emit_value(points[i]);
  }
  return out;
}

struct Field {
  std::string_view section;
  std::string_view name;
  std::function<void(ExperimentConfig&, std::string_view)> parse;
  std::function<std::string(const ExperimentConfig&)> emit;
};

template <typename T>
Field field(std::string_view section, std::string_view name, T ExperimentConfig::*member) {
  return Field{section, name,
               [member](ExperimentConfig& c, std::string_view v) { c.*member = parse_value<T>(v); },
               [member](const ExperimentConfig& c) { return emit_value(c.*member); }};
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> registry = {
      field("run", "seed", &C::seed),
      field("run", "n_trials", &C::n_trials),
      field("run", "repetitions", &C::repetitions),
      field("run", "sample_sizes", &C::sample_sizes),
      field("run", "target_error_rate", &C::target_error_rate),
      field("run", "output_dir", &C::output_dir),
      field("model", "model_kind", &C::model_kind),
      field("model", "prior_c1", &C::prior_c1),
      field("model", "sigma_s", &C::sigma_s),
      field("model", "sigma_1", &C::sigma_1),
      field("model", "sigma_2", &C::sigma_2),
      field("model", "sigmas", &C::sigmas),
      field("model", "half_range", &C::half_range),
      field("model", "observations", &C::observations),
      field("model", "infer_samples", &C::infer_samples),
      field("model", "sigma_min", &C::sigma_min),
      field("model", "sigma_max", &C::sigma_max),
      field("neural", "gain", &C::gain),
      field("neural", "pool_size", &C::pool_size),
      field("neural", "stride", &C::stride),
      field("neural", "silent_retries", &C::silent_retries),
      field("sweep", "sweep_sigma_s", &C::sweep_sigma_s),
      field("sweep", "sweep_min", &C::sweep_min),
      field("sweep", "sweep_max", &C::sweep_max),
      field("sweep", "sweep_step", &C::sweep_step),
      field("sweep", "sweep_samples", &C::sweep_samples),
      field("sweep", "sweep_trials", &C::sweep_trials),
      field("disparity", "disparity_trials", &C::disparity_trials),
      field("disparity", "disparity_sigma_s", &C::disparity_sigma_s),
      field("disparity", "disparity_sigma_1", &C::disparity_sigma_1),
      field("disparity", "disparity_sigma_2", &C::disparity_sigma_2),
      field("disparity", "disparity_sample_sizes", &C::disparity_sample_sizes),
      field("disparity", "disparity_bin_width", &C::disparity_bin_width),
      field("disparity", "min_bin_count", &C::min_bin_count),
      field("generalization", "cue_counts", &C::cue_counts),
      field("generalization", "samediff_sigma_min", &C::samediff_sigma_min),
      field("generalization", "samediff_sigma_max", &C::samediff_sigma_max),
      field("theorem1", "epsilons", &C::epsilons),
      field("lemma", "lemma_distribution", &C::lemma_distribution),
      field("lemma", "lemma_mu_1", &C::lemma_mu_1),
      field("lemma", "lemma_sd_1", &C::lemma_sd_1),
      field("lemma", "lemma_mu_2", &C::lemma_mu_2),
      field("lemma", "lemma_sd_2", &C::lemma_sd_2),
      field("lemma", "lemma_sizes", &C::lemma_sizes),
      field("lemma", "lemma_epsilons", &C::lemma_epsilons),
      field("lemma", "lemma_repetitions", &C::lemma_repetitions),
      field("lemma", "lemma_shared_draws", &C::lemma_shared_draws),
  };
  return registry;
}

const Field* find_field(std::string_view name) {
  for (const Field& f : fields())
    if (f.name == name) return &f;
  return nullptr;
}

bool known_section(std::string_view name) {
  for (const Field& f : fields())
    if (f.section == name) return true;
  return false;
}

void assign(ExperimentConfig& config, std::string_view assignment, std::size_t line_no,
            std::set<std::string, std::less<>>* seen) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError(line_no, "", "expected 'key = value', got '" + std::string(assignment) + "'");
  const std::string_view key = trim(assignment.substr(0, eq));
  const std::string_view value = trim(assignment.substr(eq + 1));
  if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
  const Field* f = find_field(key);
  if (!f) throw ConfigError(line_no, std::string(key), "unknown key");
  if (seen && !seen->insert(std::string(key)).second)
    throw ConfigError(line_no, std::string(key), "key given twice");
  try {
    f->parse(config, value);
  } catch (const ValueError& e) {
    throw ConfigError(line_no, std::string(key), e.message);
  }
}

void fail(const char* field, const std::string& message) { throw ConfigError(0, field, message); }

void require_positive(double v, const char* field) {
  if (!(v > 0.0)) fail(field, "must be positive");
}

void require_ascending(const std::vector<std::size_t>& v, const char* field) {
  if (v.empty()) fail(field, "must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) fail(field, "entries must be >= 1");
    if (i > 0 && v[i] <= v[i - 1]) fail(field, "entries must be strictly ascending");
  }
}

void require_range(double lo, double hi, const char* lo_field, const char* hi_field) {
  require_positive(lo, lo_field);
  if (!(hi >= lo)) fail(hi_field, std::string("must be >= ") + lo_field);
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.n_trials < 1) fail("n_trials", "must be >= 1");
  if (c.repetitions < 1) fail("repetitions", "must be >= 1");
  require_ascending(c.sample_sizes, "sample_sizes");
  if (!(c.target_error_rate > 0.0 && c.target_error_rate < 1.0))
    fail("target_error_rate", "must lie in (0, 1)");
  if (c.output_dir.empty()) fail("output_dir", "must not be empty");

  if (!(c.prior_c1 > 0.0 && c.prior_c1 < 1.0)) fail("prior_c1", "must lie strictly between 0 and 1");
  require_positive(c.sigma_s, "sigma_s");
  require_positive(c.sigma_1, "sigma_1");
  require_positive(c.sigma_2, "sigma_2");
  for (double s : c.sigmas) require_positive(s, "sigmas");
  require_positive(c.half_range, "half_range");
  if (c.observations.empty()) fail("observations", "must hold at least one point");
  for (const auto& p : c.observations)
    if (p.size() < 2) fail("observations", "each point needs at least two coordinates");
  if (c.infer_samples < 1) fail("infer_samples", "must be >= 1");
  require_range(c.sigma_min, c.sigma_max, "sigma_min", "sigma_max");

  require_positive(c.gain, "gain");
  if (c.pool_size < 1) fail("pool_size", "must be >= 1");
  if (c.stride < 1) fail("stride", "must be >= 1");

  if (c.sweep_sigma_s.empty()) fail("sweep_sigma_s", "must not be empty");
  for (double s : c.sweep_sigma_s) require_positive(s, "sweep_sigma_s");
  require_range(c.sweep_min, c.sweep_max, "sweep_min", "sweep_max");
  require_positive(c.sweep_step, "sweep_step");
  if (c.sweep_samples < 1) fail("sweep_samples", "must be >= 1");
  if (c.sweep_trials < 1) fail("sweep_trials", "must be >= 1");

  if (c.disparity_trials < 1) fail("disparity_trials", "must be >= 1");
  require_positive(c.disparity_sigma_s, "disparity_sigma_s");
  require_positive(c.disparity_sigma_1, "disparity_sigma_1");
  require_positive(c.disparity_sigma_2, "disparity_sigma_2");
  require_ascending(c.disparity_sample_sizes, "disparity_sample_sizes");
  require_positive(c.disparity_bin_width, "disparity_bin_width");

  if (c.cue_counts.empty()) fail("cue_counts", "must not be empty");
  for (std::size_t n : c.cue_counts)
    if (n < 2) fail("cue_counts", "entries must be >= 2");
  require_range(c.samediff_sigma_min, c.samediff_sigma_max, "samediff_sigma_min",
                "samediff_sigma_max");

  if (c.epsilons.empty()) fail("epsilons", "must not be empty");
  for (double e : c.epsilons)
    if (!(e > 0.0 && e < 1.0)) fail("epsilons", "entries must lie in (0, 1)");

  if (c.lemma_distribution != "normal" && c.lemma_distribution != "uniform")
    fail("lemma_distribution", "expected normal or uniform");
  if (!(std::fabs(c.lemma_mu_1) >= 1e-6)) fail("lemma_mu_1", "must be nonzero");
  if (!(std::fabs(c.lemma_mu_2) >= 1e-6)) fail("lemma_mu_2", "too close to zero");
  if (!(c.lemma_sd_1 >= 0.0)) fail("lemma_sd_1", "must be non-negative");
  if (!(c.lemma_sd_2 >= 0.0)) fail("lemma_sd_2", "must be non-negative");
  require_ascending(c.lemma_sizes, "lemma_sizes");
  if (c.lemma_epsilons.empty()) fail("lemma_epsilons", "must not be empty");
  for (double e : c.lemma_epsilons) require_positive(e, "lemma_epsilons");
  if (c.lemma_repetitions < 1) fail("lemma_repetitions", "must be >= 1");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "", "unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!known_section(name))
        throw ConfigError(line_no, "", "unknown section '" + std::string(name) + "'");
      continue;
    }
    assign(config, line, line_no, &seen);
  }
  validate(config);
  return config;
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  assign(config, trim(assignment), 0, nullptr);
  validate(config);
}

std::string emit_config(const ExperimentConfig& config) {
  std::ostringstream out;
  std::string_view section;
  for (const Field& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    const std::string value = f.emit(config);
    out << f.name << (value.empty() ? " =" : " = ") << value << '\n';
  }
  return out.str();
}

CueModel model_from_config(const ExperimentConfig& c) {
  try {
    switch (c.model_kind) {
      case ModelKind::TwoCue:
        return CueModel::two_cue(c.prior_c1, c.sigma_s, c.sigma_1, c.sigma_2);
      case ModelKind::MultiCue:
        if (c.sigmas.empty()) throw ConfigError(0, "sigmas", "multi_cue models need a sigma list");
        return CueModel::multi_cue(c.prior_c1, c.sigma_s, c.sigmas);
      case ModelKind::SameDifferent:
        if (c.sigmas.empty())
          throw ConfigError(0, "sigmas", "same_different models need a sigma list");
        return CueModel::same_different(c.prior_c1, c.half_range, c.sigma_s, c.sigmas);
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError(0, "model", e.what());
  }
  throw ConfigError(0, "model_kind", "unknown model kind");
}

}  // namespace cuecomb

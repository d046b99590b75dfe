#include "noonsim/config.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "noonsim/error.hpp"
#include "noonsim/io.hpp"

namespace noonsim {

namespace {

using nlohmann::json;

const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::numbers::ln2);

std::string show(double v) { return format_double_shortest(v); }
std::string show(int v) { return std::to_string(v); }
std::string show(std::uint64_t v) { return std::to_string(v); }
std::string show(bool v) { return v ? "true" : "false"; }
std::string show(const std::string& v) { return v; }
template <class T>
std::string show(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + show(v[i]);
  return s + "]";
}
template <class T, std::size_t N>
std::string show(const std::array<T, N>& v) {
  return show(std::vector<T>(v.begin(), v.end()));
}
std::string show(const std::optional<double>& v) { return v ? show(*v) : "auto"; }

struct Context {
  bool strict = true;
  RunConfig* cfg = nullptr;
};

std::string type_error(const std::string& key, const char* expected, const YAML::Node& n) {
  std::string got = n.IsScalar() ? "'" + n.Scalar() + "'" : n.IsSequence() ? "a list" : "a map";
  return "key '" + key + "' expects " + expected + ", got " + got;
}

double to_double(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) throw ConfigError(type_error(key, "a number", n));
  try {
    const double v = parse_double(n.Scalar());
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::invalid_argument&) {
    throw ConfigError(type_error(key, "a finite number", n));
  }
}

template <class I>
I to_integer(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) throw ConfigError(type_error(key, "an integer", n));
  const std::string& s = n.Scalar();
  I v{};
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError(type_error(key, "an integer", n));
  }
  return v;
}

template <class T>
T convert(const YAML::Node& n, const std::string& key);

template <>
double convert<double>(const YAML::Node& n, const std::string& key) {
  return to_double(n, key);
}
template <>
int convert<int>(const YAML::Node& n, const std::string& key) {
  return to_integer<int>(n, key);
}
template <>
std::uint64_t convert<std::uint64_t>(const YAML::Node& n, const std::string& key) {
  return to_integer<std::uint64_t>(n, key);
}
template <>
bool convert<bool>(const YAML::Node& n, const std::string& key) {
  if (n.IsScalar() && n.Scalar() == "true") return true;
  if (n.IsScalar() && n.Scalar() == "false") return false;
  throw ConfigError(type_error(key, "true or false", n));
}
template <>
std::string convert<std::string>(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) throw ConfigError(type_error(key, "a string", n));
  return n.Scalar();
}

template <class T>
std::vector<T> convert_list(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence()) throw ConfigError(type_error(key, "a list", n));
  std::vector<T> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    out.push_back(convert<T>(n[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// One mapping node of the config. Tracks which keys were read so that leftovers can be
/// reported, and records every default it applies.
class Section {
 public:
  Section(YAML::Node node, std::string path, Context& ctx)
      : node_(std::move(node)), path_(std::move(path)), ctx_(ctx) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError("key '" + (path_.empty() ? std::string("<root>") : path_) +
                        "' expects a map");
    }
    if (node_ && node_.IsMap()) {
      std::set<std::string> seen;
      for (const auto& kv : node_) {
        const std::string k = kv.first.Scalar();
        if (!seen.insert(k).second) throw ConfigError("duplicate key '" + full(k) + "'");
      }
    }
  }

  [[nodiscard]] std::string full(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  YAML::Node find(const std::string& key) {
    used_.insert(key);
    if (!node_ || !node_.IsMap()) return YAML::Node();
    for (const auto& kv : node_) {
      if (kv.first.Scalar() == key) return kv.second;
    }
    return YAML::Node();
  }

  template <class T>
  void read(const std::string& key, T& value) {
    const YAML::Node n = find(key);
    if (!n || n.IsNull()) {
      defaulted(key, show(value));
      return;
    }
    value = convert<T>(n, full(key));
  }

  template <class T>
  void read_list(const std::string& key, std::vector<T>& value) {
    const YAML::Node n = find(key);
    if (!n || n.IsNull()) {
      defaulted(key, show(value));
      return;
    }
    value = convert_list<T>(n, full(key));
  }

  template <class T>
  void read_pair(const std::string& key, std::array<T, 2>& value) {
    const YAML::Node n = find(key);
    if (!n || n.IsNull()) {
      defaulted(key, show(value));
      return;
    }
    const auto v = convert_list<T>(n, full(key));
    if (v.size() != 2) throw ConfigError("key '" + full(key) + "' expects a list of 2 numbers");
    value = {v[0], v[1]};
  }

  /// A number, or the word "auto" for a value derived at run time.
  void read_auto(const std::string& key, std::optional<double>& value) {
    const YAML::Node n = find(key);
    if (!n || n.IsNull()) {
      defaulted(key, show(value));
      return;
    }
    if (n.IsScalar() && n.Scalar() == "auto") {
      value.reset();
      return;
    }
    value = to_double(n, full(key));
  }

  bool has(const std::string& key) {
    const YAML::Node n = find(key);
    const bool present = n && !n.IsNull();
    used_.erase(key);
    return present;
  }

  Section child(const std::string& key) { return Section(find(key), full(key), ctx_); }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const std::string k = kv.first.Scalar();
      if (used_.count(k)) continue;
      if (ctx_.strict) {
        throw ConfigError("unknown key '" + full(k) + "'");
      }
      ctx_.cfg->warnings.push_back("ignored unknown key '" + full(k) + "'");
    }
  }

 private:
  void defaulted(const std::string& key, std::string value) {
    ctx_.cfg->defaults_applied.emplace_back(full(key), std::move(value));
  }

  YAML::Node node_;
  std::string path_;
  Context& ctx_;
  std::set<std::string> used_;
};

ExperimentKind parse_kind(const std::string& s) {
  if (s == "phase-sweep") return ExperimentKind::phase_sweep;
  if (s == "ghost-scan") return ExperimentKind::ghost_scan;
  if (s == "oracle-check") return ExperimentKind::oracle_check;
  if (s == "modes") return ExperimentKind::modes;
  throw ConfigError("key 'experiment' expects one of phase-sweep, ghost-scan, oracle-check, modes; got '" + s + "'");
}

void read_phase(Section sec, PhaseSweepConfig& p) {
  sec.read("domain_length", p.domain_length);
  sec.read("cells", p.cells);
  {
    Section k = sec.child("packet");
    k.read("offset", p.packet_offset);
    k.read("omega", p.omega);
    k.read("sigma_omega", p.sigma_omega);
    k.finish();
  }
  {
    Section k = sec.child("splitter");
    k.read("center", p.splitter_center);
    k.read("eps", p.splitter_eps);
    k.read_auto("thickness", p.splitter_thickness);
    k.finish();
  }
  {
    Section k = sec.child("detector");
    k.read("offset", p.detector_offset);
    k.read_auto("time", p.detection_time);
    k.finish();
  }
  sec.read_list("photons", p.photons);
  {
    Section k = sec.child("theta");
    k.read("samples", p.theta_samples);
    k.read("start", p.theta_start);
    k.read("span", p.theta_span);
    k.finish();
  }
  sec.read("eps_reg", p.eps_reg);
  sec.read("mean_photon_number", p.mean_photon_number);
  sec.finish();
}

void read_ghost(Section sec, GhostScanConfig& g) {
  {
    Section k = sec.child("geometry");
    k.read("eps_d", g.geometry.eps_d);
    k.read("slit_width", g.geometry.slit_width);
    k.read("side_length", g.geometry.side_length);
    k.read("thickness", g.geometry.thickness);
    k.read_pair("slab_center", g.geometry.slab_center);
    k.read_pair("domain", g.geometry.domain);
    k.read_pair("cells", g.geometry.cells);
    k.finish();
  }
  {
    Section k = sec.child("packet");
    k.read("omega", g.omega);
    const bool has_sigma = k.has("sigma_omega");
    const bool has_fwhm = k.has("fwhm");
    if (has_sigma && has_fwhm) {
      throw ConfigError("keys 'ghost_scan.packet.sigma_omega' and 'ghost_scan.packet.fwhm' are mutually exclusive");
    }
    if (has_fwhm) {
      double fwhm = 0.0;
      k.read("fwhm", fwhm);
      g.sigma_omega = fwhm / kFwhmPerSigma;
    } else {
      k.read("sigma_omega", g.sigma_omega);
    }
    k.read("transverse_std", g.transverse_std);
    k.read("launch_x", g.launch_x);
    k.finish();
  }
  {
    Section k = sec.child("bucket");
    k.read("x", g.bucket_x);
    std::string mode = g.bucket_mode == BucketMode::column ? "column" : "point";
    k.read("mode", mode);
    if (mode == "column") {
      g.bucket_mode = BucketMode::column;
    } else if (mode == "point") {
      g.bucket_mode = BucketMode::point;
    } else {
      throw ConfigError("key 'ghost_scan.bucket.mode' expects column or point, got '" + mode + "'");
    }
    k.read_auto("time", g.bucket_time);
    k.finish();
  }
  {
    Section k = sec.child("pixel");
    k.read("x", g.pixel_x);
    k.read("echo_gate", g.echo_gate);
    k.read_auto("time", g.pixel_time);
    k.finish();
  }
  {
    Section k = sec.child("s");
    k.read("min", g.s_min);
    k.read("max", g.s_max);
    k.read("samples", g.s_samples);
    k.finish();
  }
  sec.read_list("photons", g.photons);
  sec.read_list("perturbations", g.perturbations);
  sec.read("eps_reg", g.eps_reg);
  sec.finish();
}

void read_oracle(Section sec, OracleCheckConfig& o) {
  sec.read("draws", o.draws);
  sec.read_list("photons", o.photons);
  sec.read_list("mode_counts", o.mode_counts);
  sec.read("seed", o.seed);
  sec.read("tolerance", o.tolerance);
  sec.finish();
}

void read_modes(Section sec, ModesConfig& m, const std::filesystem::path& base) {
  std::vector<int> cells(m.cells.begin(), m.cells.begin() + m.dimension);
  std::vector<double> size(m.cell_size.begin(), m.cell_size.begin() + m.dimension);
  sec.read_list("cells", cells);
  sec.read_list("cell_size", size);
  if (cells.empty() || cells.size() > 2) {
    throw ConfigError("key 'modes.cells' expects 1 or 2 entries");
  }
  if (size.size() != cells.size()) {
    throw ConfigError("key 'modes.cell_size' must have as many entries as 'modes.cells'");
  }
  m.dimension = static_cast<int>(cells.size());
  m.cells = {cells[0], m.dimension == 2 ? cells[1] : 1};
  m.cell_size = {size[0], m.dimension == 2 ? size[1] : 1.0};
  sec.read("background_eps", m.background_eps);
  std::string csv = m.permittivity_csv.value_or("none");
  sec.read("permittivity_csv", csv);
  if (csv == "none") {
    m.permittivity_csv.reset();
  } else {
    std::filesystem::path p(csv);
    if (p.is_relative()) p = base / p;
    m.permittivity_csv = p.lexically_normal().string();
  }
  sec.read_auto("omega_floor", m.omega_floor);
  sec.read("dump_modes", m.dump_modes);
  sec.finish();
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json("auto"); }

json to_json(const RunConfig& c) {
  const auto& p = c.phase;
  const auto& g = c.ghost;
  const auto& o = c.oracle;
  const auto& m = c.modes;
  json j;
  j["experiment"] = to_string(c.kind);
  j["output_dir"] = c.output_dir;
  j["normalization"] = to_string(c.normalization);
  j["strict"] = c.strict;
  j["phase_sweep"] = {
      {"domain_length", p.domain_length},
      {"cells", p.cells},
      {"packet", {{"offset", p.packet_offset}, {"omega", p.omega}, {"sigma_omega", p.sigma_omega}}},
      {"splitter",
       {{"center", p.splitter_center}, {"eps", p.splitter_eps}, {"thickness", opt(p.splitter_thickness)}}},
      {"detector", {{"offset", p.detector_offset}, {"time", opt(p.detection_time)}}},
      {"photons", p.photons},
      {"theta", {{"samples", p.theta_samples}, {"start", p.theta_start}, {"span", p.theta_span}}},
      {"eps_reg", p.eps_reg},
      {"mean_photon_number", p.mean_photon_number}};
  j["ghost_scan"] = {
      {"geometry",
       {{"eps_d", g.geometry.eps_d},
        {"slit_width", g.geometry.slit_width},
        {"side_length", g.geometry.side_length},
        {"thickness", g.geometry.thickness},
        {"slab_center", g.geometry.slab_center},
        {"domain", g.geometry.domain},
        {"cells", g.geometry.cells}}},
      {"packet",
       {{"omega", g.omega},
        {"sigma_omega", g.sigma_omega},
        {"transverse_std", g.transverse_std},
        {"launch_x", g.launch_x}}},
      {"bucket",
       {{"x", g.bucket_x},
        {"mode", g.bucket_mode == BucketMode::column ? "column" : "point"},
        {"time", opt(g.bucket_time)}}},
      {"pixel", {{"x", g.pixel_x}, {"echo_gate", g.echo_gate}, {"time", opt(g.pixel_time)}}},
      {"s", {{"min", g.s_min}, {"max", g.s_max}, {"samples", g.s_samples}}},
      {"photons", g.photons},
      {"perturbations", g.perturbations},
      {"eps_reg", g.eps_reg}};
  j["oracle_check"] = {{"draws", o.draws},
                       {"photons", o.photons},
                       {"mode_counts", o.mode_counts},
                       {"seed", o.seed},
                       {"tolerance", o.tolerance}};
  std::vector<int> cells{m.cells[0]};
  std::vector<double> size{m.cell_size[0]};
  if (m.dimension == 2) {
    cells.push_back(m.cells[1]);
    size.push_back(m.cell_size[1]);
  }
  j["modes"] = {{"cells", cells},
                {"cell_size", size},
                {"background_eps", m.background_eps},
                {"permittivity_csv", m.permittivity_csv.value_or("none")},
                {"omega_floor", opt(m.omega_floor)},
                {"dump_modes", m.dump_modes}};
  return j;
}

void emit_yaml(YAML::Emitter& e, const json& j) {
  if (j.is_object()) {
    e << YAML::BeginMap;
    for (auto it = j.begin(); it != j.end(); ++it) {
      e << YAML::Key << it.key() << YAML::Value;
      emit_yaml(e, it.value());
    }
    e << YAML::EndMap;
  } else if (j.is_array()) {
    e << YAML::Flow << YAML::BeginSeq;
    for (const auto& x : j) emit_yaml(e, x);
    e << YAML::EndSeq;
  } else if (j.is_boolean()) {
    e << (j.get<bool>() ? "true" : "false");
  } else if (j.is_number_float()) {
    e << format_double_shortest(j.get<double>());
  } else if (j.is_number_unsigned()) {
    e << std::to_string(j.get<std::uint64_t>());
  } else if (j.is_number_integer()) {
    e << std::to_string(j.get<std::int64_t>());
  } else {
    e << j.get<std::string>();
  }
}

RunConfig parse_node(const YAML::Node& root, const std::filesystem::path& base) {
  RunConfig cfg;
  Context ctx;
  ctx.cfg = &cfg;
  Section top(root, "", ctx);
  top.read("strict", cfg.strict);
  ctx.strict = cfg.strict;
  std::string kind = to_string(cfg.kind);
  top.read("experiment", kind);
  cfg.kind = parse_kind(kind);
  top.read("output_dir", cfg.output_dir);
  std::string norm = to_string(cfg.normalization);
  top.read("normalization", norm);
  if (norm == "max") {
    cfg.normalization = Normalization::max;
  } else if (norm == "raw") {
    cfg.normalization = Normalization::raw;
  } else {
    throw ConfigError("key 'normalization' expects raw or max, got '" + norm + "'");
  }
  read_phase(top.child("phase_sweep"), cfg.phase);
  read_ghost(top.child("ghost_scan"), cfg.ghost);
  read_oracle(top.child("oracle_check"), cfg.oracle);
  read_modes(top.child("modes"), cfg.modes, base);
  top.finish();
  validate(cfg);
  return cfg;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::phase_sweep:
      return "phase-sweep";
    case ExperimentKind::ghost_scan:
      return "ghost-scan";
    case ExperimentKind::oracle_check:
      return "oracle-check";
    case ExperimentKind::modes:
      return "modes";
  }
  return "unknown";
}

std::string to_string(Normalization mode) { return mode == Normalization::max ? "max" : "raw"; }

void validate(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("key 'output_dir' must not be empty");
  validate(cfg.phase);
  validate(cfg.ghost);
  const auto& o = cfg.oracle;
  if (o.draws < 1) throw ConfigError("key 'oracle_check.draws' must be >= 1");
  if (o.photons.empty()) throw ConfigError("key 'oracle_check.photons' must not be empty");
  for (int n : o.photons) {
    if (n != 2 && n != 4) throw ConfigError("key 'oracle_check.photons' entries must be 2 or 4");
  }
  if (o.mode_counts.empty()) throw ConfigError("key 'oracle_check.mode_counts' must not be empty");
  for (int n : o.mode_counts) {
    if (n < 1 || n > 64) throw ConfigError("key 'oracle_check.mode_counts' entries must lie in [1, 64]");
  }
  if (!(o.tolerance > 0.0)) throw ConfigError("key 'oracle_check.tolerance' must be > 0");
  const auto& m = cfg.modes;
  for (int a = 0; a < m.dimension; ++a) {
    if (m.cells[static_cast<std::size_t>(a)] < Grid::kMinCells) {
      throw ConfigError("key 'modes.cells' entries must be >= " + std::to_string(Grid::kMinCells));
    }
    if (!(m.cell_size[static_cast<std::size_t>(a)] > 0.0)) {
      throw ConfigError("key 'modes.cell_size' entries must be > 0");
    }
  }
  if (!(m.background_eps >= 1.0)) throw ConfigError("key 'modes.background_eps' must be >= 1");
  if (m.permittivity_csv && !std::filesystem::exists(*m.permittivity_csv)) {
    throw ConfigError("key 'modes.permittivity_csv': file '" + *m.permittivity_csv + "' not found");
  }
  if (m.omega_floor && !(*m.omega_floor >= 0.0)) {
    throw ConfigError("key 'modes.omega_floor' must be >= 0");
  }
}

RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  return parse_node(root, base_dir);
}

RunConfig parse_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  return parse_config_text(text, path.has_parent_path() ? path.parent_path() : ".");
}

std::string emit_config(const RunConfig& cfg) {
  YAML::Emitter e;
  emit_yaml(e, to_json(cfg));
  return std::string(e.c_str()) + "\n";
}

std::string canonical_config_json(const RunConfig& cfg) { return to_json(cfg).dump(); }

std::string config_hash(const RunConfig& cfg) {
  const std::string text = canonical_config_json(cfg);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

}  // namespace noonsim

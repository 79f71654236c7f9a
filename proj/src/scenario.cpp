#include "polykin/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "io_format.hpp"
#include "polykin/errors.hpp"

namespace polykin {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(',', start);
    const auto piece = trim(s.substr(start, end == std::string_view::npos ? end : end - start));
    out.push_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  std::size_t line;
};

class Reader {
public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<double> real(const std::string& key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    return parse_real(e->value, *e, key);
  }

  std::optional<std::size_t> count(const std::string& key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    std::size_t v = 0;
    const std::string_view s = e->value;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw ParseError(key + ": expected a nonnegative integer, got '" + e->value + "'", e->line);
    return v;
  }

  std::optional<bool> flag(const std::string& key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "0") return false;
    throw ParseError(key + ": expected true or false, got '" + e->value + "'", e->line);
  }

  std::optional<std::string> text(const std::string& key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  std::optional<Vec3> vec3(const std::string& key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    const auto parts = split_list(e->value);
    if (parts.size() != 3)
      throw ParseError(key + ": expected three comma-separated values", e->line);
    return Vec3(parse_real(parts[0], *e, key), parse_real(parts[1], *e, key),
                parse_real(parts[2], *e, key));
  }

  std::optional<std::vector<double>> list(const std::string& key) {
    const Entry* e = take(key);
    if (!e) return std::nullopt;
    std::vector<double> out;
    if (trim(e->value).empty()) return out;
    for (auto part : split_list(e->value)) out.push_back(parse_real(part, *e, key));
    return out;
  }

  std::size_t line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  /// Throws on the first key nobody asked for.
  void reject_unused() const {
    const Entry* first = nullptr;
    std::string name;
    for (const auto& [key, entry] : entries_)
      if (!used_.count(key) && (!first || entry.line < first->line)) {
        first = &entry;
        name = key;
      }
    if (first) throw ParseError("unknown key '" + name + "'", first->line);
  }

private:
  const Entry* take(const std::string& key) {
    used_.insert(key);
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  static double parse_real(std::string_view s, const Entry& e, const std::string& key) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
      throw ParseError(key + ": expected a number, got '" + std::string(s) + "'", e.line);
    return v;
  }

  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

MaxwellianInit read_state(Reader& r, const std::string& prefix, MaxwellianInit state) {
  if (auto v = r.real(prefix + "rho")) state.rho = *v;
  if (auto v = r.vec3(prefix + "u")) state.u = *v;
  if (auto v = r.real(prefix + "temperature")) state.temperature = *v;
  return state;
}

double max_temperature(const InitialCondition& init) {
  return std::visit(
      [](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, RiemannInit>)
          return std::max(c.left.temperature, c.right.temperature);
        else
          return c.temperature;
      },
      init);
}

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ValidationError(field, message);
}

void validate_state(const MaxwellianInit& s, const std::string& prefix) {
  require(s.rho > 0.0, prefix + "rho", "density must be positive");
  require(s.temperature > 0.0, prefix + "temperature", "temperature must be positive");
  require(s.u.allFinite(), prefix + "u", "velocity must be finite");
}

/// Number of whole steps of size dt in t, or nullopt if t is not a multiple.
std::optional<std::size_t> whole_steps(double t, double dt) {
  const double n = std::round(t / dt);
  if (!(std::abs(n * dt - t) <= 1e-9 * std::max(std::abs(t), dt))) return std::nullopt;
  return static_cast<std::size_t>(n);
}

/// rho / (2 pi T)^{3/2} exp(-|v-u|^2 / 2T) * lambda T^{-delta/2} exp(-eps / T)
double maxwellian(const MaxwellianInit& s, const Vec3& v, double eps, double delta,
                  double lambda_delta) {
  const double t = s.temperature;
  const double velocity =
      std::exp(-(v - s.u).squaredNorm() / (2.0 * t)) / std::pow(2.0 * std::numbers::pi * t, 1.5);
  const double energy = lambda_delta * std::pow(t, -0.5 * delta) * std::exp(-eps / t);
  return s.rho * velocity * energy;
}

} // namespace

std::size_t Scenario::step_count() const {
  const auto n = whole_steps(t_final, dt);
  if (!n || *n == 0) throw ValidationError("t_final", "must be a positive multiple of dt");
  return *n;
}

std::vector<std::size_t> Scenario::snapshot_steps() const {
  std::vector<std::size_t> out;
  for (double t : snapshot_times) {
    const auto n = whole_steps(t, dt);
    if (!n) throw ValidationError("snapshot_times", "every time must be a multiple of dt");
    out.push_back(*n);
  }
  return out;
}

void Scenario::validate() const {
  require(grid.n_x >= 2, "n_x", "need at least 2 spatial cells");
  require(grid.n_v >= 2, "n_v", "need at least 2 velocity nodes per axis");
  require(grid.n_i >= 1, "n_i", "need at least 1 energy node");
  require(grid.v_max > 0.0 && std::isfinite(grid.v_max), "v_max", "must be positive");
  require(grid.i_max > 0.0 && std::isfinite(grid.i_max), "i_max", "must be positive");
  require(params.nu > -0.5 && params.nu < 1.0, "nu", "must lie in (-1/2, 1)");
  require(params.theta > 0.0 && params.theta <= 1.0, "theta", "must lie in (0, 1]");
  require(params.delta > 0.0 && std::isfinite(params.delta), "delta", "must be positive");
  require(grid.delta == params.delta, "delta", "grid and model disagree");
  require(params.kappa > 0.0 && std::isfinite(params.kappa), "kappa", "must be positive");
  require(params.q > 5.0 + params.delta, "q", "must exceed 5 + delta");
  require(dt > 0.0 && std::isfinite(dt), "dt", "must be positive");
  require(t_final > 0.0 && std::isfinite(t_final), "t_final", "must be positive");
  const auto n = whole_steps(t_final, dt);
  require(n && *n > 0, "t_final", "t_final / dt must be a positive integer");
  require(t_ref > 0.0, "t_ref", "must be positive");
  for (double t : snapshot_times) {
    require(t >= 0.0 && t <= t_final * (1.0 + 1e-12), "snapshot_times",
            "times must lie in [0, t_final]");
    require(whole_steps(t, dt).has_value(), "snapshot_times", "every time must be a multiple of dt");
  }
  if (envelope) {
    require(envelope->c02 > 0.0, "envelope.c02", "must be positive");
    require(envelope->a_exp > 0.0, "envelope.a", "must be positive");
    require(envelope->b_exp > 0.0, "envelope.b", "must be positive");
    require(envelope_fit_c01 || envelope->c01 > 0.0, "envelope.c01", "must be positive");
  }
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, MaxwellianInit>) {
          validate_state(c, "");
        } else if constexpr (std::is_same_v<T, SmoothPerturbationInit>) {
          validate_state({c.rho0, c.u, c.temperature}, "");
          require(std::abs(c.alpha) < 1.0, "alpha", "|alpha| < 1 keeps the density positive");
        } else {
          validate_state(c.left, "left.");
          validate_state(c.right, "right.");
          require(c.smoothing_cells > 0.0, "smoothing_cells", "must be positive");
        }
      },
      initial);
}

Scenario parse_scenario_text(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) throw ParseError("missing key", line_no);
      if (!entries.emplace(key, Entry{value, line_no}).second)
        throw ParseError("key '" + key + "' given twice", line_no);
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }

  Reader r(std::move(entries));
  Scenario s;

  const std::string kind = r.text("initial").value_or("maxwellian");
  if (kind == "maxwellian") {
    s.initial = read_state(r, "", MaxwellianInit{});
  } else if (kind == "smooth") {
    SmoothPerturbationInit c;
    if (auto v = r.real("rho")) c.rho0 = *v;
    if (auto v = r.vec3("u")) c.u = *v;
    if (auto v = r.real("temperature")) c.temperature = *v;
    if (auto v = r.real("alpha")) c.alpha = *v;
    s.initial = c;
  } else if (kind == "riemann") {
    RiemannInit c;
    c.left = read_state(r, "left.", c.left);
    c.right = read_state(r, "right.", c.right);
    if (auto v = r.real("smoothing_cells")) c.smoothing_cells = *v;
    if (auto v = r.flag("sharp")) c.sharp = *v;
    s.initial = c;
  } else {
    throw ParseError("initial: expected maxwellian, smooth or riemann", r.line_of("initial"));
  }

  if (auto v = r.count("n_x")) s.grid.n_x = *v;
  if (auto v = r.count("n_v")) s.grid.n_v = *v;
  if (auto v = r.count("n_i")) s.grid.n_i = *v;
  if (auto v = r.real("nu")) s.params.nu = *v;
  if (auto v = r.real("theta")) s.params.theta = *v;
  if (auto v = r.real("delta")) s.params.delta = *v;
  if (auto v = r.real("kappa")) s.params.kappa = *v;
  if (auto v = r.real("dt")) s.dt = *v;
  if (auto v = r.real("t_final")) s.t_final = *v;
  if (auto v = r.flag("relaxation")) s.relaxation = *v;
  if (auto v = r.text("out_dir")) s.out_dir = *v;
  if (auto v = r.list("snapshot_times")) s.snapshot_times = *v;
  s.grid.delta = s.params.delta;
  s.t_ref = r.real("t_ref").value_or(max_temperature(s.initial));
  require(s.t_ref > 0.0, "t_ref", "must be positive");
  require(s.params.delta > 0.0, "delta", "must be positive");
  s.grid.v_max = r.real("v_max").value_or(8.0 * std::sqrt(s.t_ref));
  s.grid.i_max = r.real("i_max").value_or(std::pow(30.0 * s.t_ref, 0.5 * s.params.delta));
  s.params.q = r.real("q").value_or(6.0 + s.params.delta);

  const bool any_envelope = r.has("envelope.c01") || r.has("envelope.c02") ||
                            r.has("envelope.a") || r.has("envelope.b");
  if (any_envelope) {
    StabilityEnvelope env;
    if (r.has("envelope.c01")) {
      const auto line = r.line_of("envelope.c01");
      const std::string c01 = *r.text("envelope.c01");
      if (c01 == "auto") {
        s.envelope_fit_c01 = true;
      } else {
        Reader single({{"envelope.c01", Entry{c01, line}}});
        env.c01 = *single.real("envelope.c01");
      }
    } else {
      s.envelope_fit_c01 = true;
    }
    if (auto v = r.real("envelope.c02")) env.c02 = *v;
    if (auto v = r.real("envelope.a")) env.a_exp = *v;
    if (auto v = r.real("envelope.b")) env.b_exp = *v;
    s.envelope = env;
  }

  r.reject_unused();
  s.validate();
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str());
  } catch (Error& e) {
    e.add_context(path.string());
    throw;
  }
}

std::string format_scenario(const Scenario& s) {
  using detail::format_double;
  std::ostringstream os;
  auto vec = [](const Vec3& v) {
    return format_double(v[0]) + ", " + format_double(v[1]) + ", " + format_double(v[2]);
  };
  auto state = [&](const MaxwellianInit& m, const std::string& prefix) {
    os << prefix << "rho = " << format_double(m.rho) << '\n'
       << prefix << "u = " << vec(m.u) << '\n'
       << prefix << "temperature = " << format_double(m.temperature) << '\n';
  };
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, MaxwellianInit>) {
          os << "initial = maxwellian\n";
          state(c, "");
        } else if constexpr (std::is_same_v<T, SmoothPerturbationInit>) {
          os << "initial = smooth\n";
          state({c.rho0, c.u, c.temperature}, "");
          os << "alpha = " << format_double(c.alpha) << '\n';
        } else {
          os << "initial = riemann\n";
          state(c.left, "left.");
          state(c.right, "right.");
          os << "smoothing_cells = " << format_double(c.smoothing_cells) << '\n'
             << "sharp = " << (c.sharp ? "true" : "false") << '\n';
        }
      },
      s.initial);
  os << "n_x = " << s.grid.n_x << "\nn_v = " << s.grid.n_v
     << "\nv_max = " << format_double(s.grid.v_max) << "\nn_i = " << s.grid.n_i
     << "\ni_max = " << format_double(s.grid.i_max) << "\nnu = " << format_double(s.params.nu)
     << "\ntheta = " << format_double(s.params.theta)
     << "\ndelta = " << format_double(s.params.delta)
     << "\nkappa = " << format_double(s.params.kappa) << "\nq = " << format_double(s.params.q)
     << "\ndt = " << format_double(s.dt) << "\nt_final = " << format_double(s.t_final)
     << "\nt_ref = " << format_double(s.t_ref)
     << "\nrelaxation = " << (s.relaxation ? "true" : "false") << '\n';
  if (s.envelope) {
    os << "envelope.c01 = " << (s.envelope_fit_c01 ? "auto" : format_double(s.envelope->c01))
       << "\nenvelope.c02 = " << format_double(s.envelope->c02)
       << "\nenvelope.a = " << format_double(s.envelope->a_exp)
       << "\nenvelope.b = " << format_double(s.envelope->b_exp) << '\n';
  }
  if (!s.out_dir.empty()) os << "out_dir = " << s.out_dir.string() << '\n';
  if (!s.snapshot_times.empty()) {
    os << "snapshot_times = ";
    for (std::size_t n = 0; n < s.snapshot_times.size(); ++n)
      os << (n ? ", " : "") << format_double(s.snapshot_times[n]);
    os << '\n';
  }
  return os.str();
}

InitialFunction make_initial_function(const Scenario& scenario, const PhaseGrid& grid) {
  const double delta = grid.delta();
  const double lambda = normalizer_discrete(delta, grid);
  return std::visit(
      [&](const auto& c) -> InitialFunction {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, MaxwellianInit>) {
          return [=](double, const Vec3& v, double energy) {
            return maxwellian(c, v, std::pow(energy, 2.0 / delta), delta, lambda);
          };
        } else if constexpr (std::is_same_v<T, SmoothPerturbationInit>) {
          return [=](double x, const Vec3& v, double energy) {
            const MaxwellianInit local{
                c.rho0 * (1.0 + c.alpha * std::sin(2.0 * std::numbers::pi * x)), c.u,
                c.temperature};
            return maxwellian(local, v, std::pow(energy, 2.0 / delta), delta, lambda);
          };
        } else {
          const double width = c.smoothing_cells * grid.dx();
          const bool sharp = c.sharp;
          return [=](double x, const Vec3& v, double energy) {
            // Weight of the right state: 1 on (1/2, 1), 0 on (0, 1/2).
            double r;
            if (sharp) {
              r = x >= 0.5 ? 1.0 : 0.0;
            } else {
              r = 0.5 * (std::tanh((x - 0.5) / width) - std::tanh((x - 1.0) / width) + 1.0 -
                         std::tanh(x / width));
              r = std::clamp(r, 0.0, 1.0);
            }
            const double eps = std::pow(energy, 2.0 / delta);
            return (1.0 - r) * maxwellian(c.left, v, eps, delta, lambda) +
                   r * maxwellian(c.right, v, eps, delta, lambda);
          };
        }
      },
      scenario.initial);
}

RunConfig make_run_config(const Scenario& scenario) {
  scenario.validate();
  RunConfig config;
  config.grid = build_grid(scenario.grid);
  config.params = scenario.params;
  config.dt = scenario.dt;
  config.n_steps = scenario.step_count();
  config.initial = make_initial_function(scenario, *config.grid);
  config.options.relaxation = scenario.relaxation;
  config.snapshot_steps = scenario.snapshot_steps();
  return config;
}

} // namespace polykin

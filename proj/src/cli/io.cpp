#include "cli/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace cvtele::cli {
namespace {

std::string kind_of(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) throw InvalidArgument("state object needs a string 'kind'");
  return j["kind"].get<std::string>();
}

double number(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw InvalidArgument(std::string("missing field '") + key + "'");
  }
  if (!j[key].is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw InvalidArgument(std::string("field '") + key + "' must be an integer");
  }
  return j[key].get<int>();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

std::string cell_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

}  // namespace

InputState state_from_json(const json& j) {
  if (j.is_string()) return parse_state_descriptor(j.get<std::string>());
  if (!j.is_object()) throw InvalidArgument("state must be a descriptor string or an object");
  const std::string kind = kind_of(j);
  if (kind == "fock") return FockInput(integer(j, "n"));
  if (kind == "coherent") return CoherentInput({number(j, "re"), number(j, "im", 0.0)});
  if (kind == "squeezed_vacuum") return SqueezedVacuumInput(number(j, "s"));
  if (kind == "fock_mixture") {
    if (!j.contains("weights") || !j["weights"].is_array()) throw InvalidArgument("fock_mixture needs a 'weights' array");
    std::vector<FockWeight> w;
    for (const auto& item : j["weights"]) w.push_back({integer(item, "n"), number(item, "p")});
    return FockMixtureInput(std::move(w));
  }
  throw InvalidArgument("unknown state kind '" + kind + "'");
}

json state_to_json(const InputState& state) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FockInput>) {
          return {{"kind", "fock"}, {"n", s.n}};
        } else if constexpr (std::is_same_v<T, CoherentInput>) {
          return {{"kind", "coherent"}, {"re", s.beta.real()}, {"im", s.beta.imag()}};
        } else if constexpr (std::is_same_v<T, SqueezedVacuumInput>) {
          return {{"kind", "squeezed_vacuum"}, {"s", s.s}};
        } else {
          json w = json::array();
          for (const auto& c : s.weights) w.push_back({{"n", c.n}, {"p", c.p}});
          return {{"kind", "fock_mixture"}, {"weights", w}};
        }
      },
      state);
}

json to_json(const MomentSet& ms) {
  json j = {{"x_mean", ms.x_mean},     {"p_mean", ms.p_mean},     {"x2_central", ms.x2_central},
            {"p2_central", ms.p2_central}, {"cov_xp", ms.cov_xp}, {"mu3_x", ms.mu3_x},
            {"mu3_p", ms.mu3_p},       {"mu4_x", ms.mu4_x},       {"mu4_p", ms.mu4_p},
            {"kappa4_x", ms.kappa4_x}, {"kappa4_p", ms.kappa4_p}, {"n_mean", ms.n_mean},
            {"non_state", ms.non_state}};
  j["g2_zero"] = ms.g2_zero ? json(*ms.g2_zero) : json(nullptr);
  return j;
}

json to_json(const OptimumRecord& rec) {
  json j = {{"kind", std::string(to_string(rec.kind))}, {"r", rec.r}};
  if (rec.error) {
    j["error"] = *rec.error;
    return j;
  }
  j["delta_star"] = rec.delta_star;
  j["objective_value"] = rec.objective_value;
  j["bracket_lo"] = rec.bracket_lo;
  j["bracket_hi"] = rec.bracket_hi;
  j["iterations"] = rec.iterations;
  return j;
}

QuadratureConfig quadrature_from_json(const json& j, QuadratureConfig base) {
  if (!j.is_object()) throw InvalidArgument("quadrature config must be an object");
  if (j.contains("radial_nodes")) base.radial_nodes = integer(j, "radial_nodes");
  if (j.contains("angular_nodes")) base.angular_nodes = integer(j, "angular_nodes");
  if (j.contains("target_abs_tol")) base.target_abs_tol = number(j, "target_abs_tol");
  if (j.contains("max_refinements")) base.max_refinements = integer(j, "max_refinements");
  if (j.contains("cutoff_radius")) {
    const auto& c = j["cutoff_radius"];
    if (c.is_string() && c.get<std::string>() == "auto") {
      base.cutoff_radius.reset();
    } else if (c.is_number()) {
      base.cutoff_radius = c.get<double>();
    } else {
      throw InvalidArgument("cutoff_radius must be a number or \"auto\"");
    }
  }
  base.validate();
  return base;
}

DiffConfig diff_from_json(const json& j, DiffConfig base) {
  if (!j.is_object()) throw InvalidArgument("diff config must be an object");
  if (j.contains("step")) base.step = number(j, "step");
  if (j.contains("richardson_levels")) base.richardson_levels = integer(j, "richardson_levels");
  base.validate();
  return base;
}

json to_json(const QuadratureConfig& cfg) {
  return {{"radial_nodes", cfg.radial_nodes},
          {"angular_nodes", cfg.angular_nodes},
          {"cutoff_radius", cfg.cutoff_radius ? json(*cfg.cutoff_radius) : json("auto")},
          {"target_abs_tol", cfg.target_abs_tol},
          {"max_refinements", cfg.max_refinements}};
}

json to_json(const DiffConfig& cfg) { return {{"step", cfg.step}, {"richardson_levels", cfg.richardson_levels}}; }

DerivativeSource source_from_string(std::string_view name) {
  if (name == "automatic") return DerivativeSource::automatic;
  if (name == "closed_form") return DerivativeSource::closed_form;
  if (name == "finite_difference") return DerivativeSource::finite_difference;
  throw InvalidArgument("unknown derivative source '" + std::string(name) + "'");
}

std::string_view to_string(DerivativeSource source) noexcept {
  switch (source) {
    case DerivativeSource::automatic: return "automatic";
    case DerivativeSource::closed_form: return "closed_form";
    case DerivativeSource::finite_difference: return "finite_difference";
  }
  return "automatic";
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<double> parse_grid(std::string_view text) {
  auto parse = [](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw InvalidArgument("cannot parse number '" + std::string(s) + "' in grid");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw InvalidArgument("grid must be a:b:n");
    const double a = parse(text.substr(0, c1));
    const double b = parse(text.substr(c1 + 1, c2 - c1 - 1));
    const double nd = parse(text.substr(c2 + 1));
    const int n = static_cast<int>(nd);
    if (n < 1 || n != nd) throw InvalidArgument("grid point count must be a positive integer");
    if (n == 1) return {a};
    for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? b : a + (b - a) * i / (n - 1));
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(parse(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

json error_record(ErrorKind kind, const std::string& message) {
  return {{"error", {{"kind", std::string(to_string(kind))}, {"message", message}}}};
}

json error_record(const std::exception& ex) {
  if (const auto* e = dynamic_cast<const Error*>(&ex)) {
    json rec = error_record(e->kind(), e->what());
    if (const auto* acc = dynamic_cast<const AccuracyError*>(e)) rec["error"]["estimate"] = acc->estimate();
    if (const auto* ev = dynamic_cast<const EvaluationError*>(e)) rec["error"]["delta"] = ev->delta();
    return rec;
  }
  return error_record(ErrorKind::evaluation, ex.what());
}

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<json> cells) {
  cells.resize(columns_.size());
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& os, const std::string& provenance) const {
  os << "# " << provenance << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << csv_cell(columns_[i]);
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(cell_text(row[i]));
    os << '\n';
  }
}

void Table::write_json(std::ostream& os) const {
  os << "[";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    os << (r ? ",\n " : "\n ") << "{";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      os << (i ? ", " : "") << json(columns_[i]).dump() << ": ";
      const auto& v = rows_[r][i];
      if (v.is_number_float()) {
        const double x = v.get<double>();
        os << (std::isfinite(x) ? format_number(x) : "null");
      } else {
        os << v.dump();
      }
    }
    os << "}";
  }
  os << (rows_.empty() ? "]\n" : "\n]\n");
}

}  // namespace cvtele::cli

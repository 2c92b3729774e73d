#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cvtele/errors.hpp"
#include "cvtele/photonstats.hpp"
#include "cvtele/moments.hpp"
#include "cvtele/numerics.hpp"
#include "cvtele/optimize.hpp"
#include "cvtele/states.hpp"

namespace cvtele::cli {

using json = nlohmann::json;

/// Accepts a descriptor string or an object
/// {"kind": "fock"|"coherent"|"squeezed_vacuum"|"fock_mixture", ...}.
InputState state_from_json(const json& j);
json state_to_json(const InputState& state);

json to_json(const MomentSet& ms);
json to_json(const OptimumRecord& rec);

QuadratureConfig quadrature_from_json(const json& j, QuadratureConfig base = {});
DiffConfig diff_from_json(const json& j, DiffConfig base = {});
json to_json(const QuadratureConfig& cfg);
json to_json(const DiffConfig& cfg);

DerivativeSource source_from_string(std::string_view name);
std::string_view to_string(DerivativeSource source) noexcept;

/// Shortest decimal that round-trips, "nan"/"inf" spelled out.
std::string format_number(double x);

/// `a:b:n` → n evenly spaced values from a to b; a plain comma list is
/// taken verbatim.
std::vector<double> parse_grid(std::string_view text);

json error_record(const std::exception& ex);
json error_record(ErrorKind kind, const std::string& message);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes) noexcept;

/// Rows of cells, written as CSV (RFC 4180 quoting) or a JSON array of row
/// objects. Cells are kept as text so both forms agree byte for byte.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<json> cells);

  void write_csv(std::ostream& os, const std::string& provenance) const;
  void write_json(std::ostream& os) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

}  // namespace cvtele::cli

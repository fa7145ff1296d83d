#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "lienard/amplitude.hpp"
#include "lienard/asymptotics.hpp"
#include "lienard/cycles.hpp"
#include "lienard/integrator.hpp"
#include "lienard/system.hpp"
#include "lienard/theorems.hpp"

namespace lienard {

using Json = nlohmann::ordered_json;

/// Model files: see docs/formats.md. Throws ConfigError / StructuralError.
FunctionModel function_model_from_json(const Json& j);
Json function_model_to_json(const FunctionModel& model);
LienardSystem system_from_json(const Json& j);
Json system_to_json(const LienardSystem& system);
LienardSystem load_system_file(const std::filesystem::path& path);

Json to_json(const LimitCycle& c);
Json to_json(const AlphaBarResult& a);
Json to_json(const TheoremReport& r);
Json to_json(const PhiRoots& r);
Json to_json(const ZeroStructure& z);
Json to_json(const PotentialDecomposition& d);

/// Numbers in JSON: non-finite values are written as the strings
/// "inf", "-inf" and "nan".
Json number(double v);
double number_from(const Json& j);

/// Writes `content` to a temporary sibling then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip text of a double (non-finite as inf / -inf / nan).
std::string format_double(double v);

std::string trajectory_csv(const Trajectory& traj);
std::string events_csv(const Trajectory& traj);

struct TableRow {
  double mu = 0.0;
  double y_plus0 = 0.0;
  double alpha_bar = 0.0;
};

/// Fixed-column text table, rows sorted by mu, 10 significant digits.
/// Throws ConfigError on an empty row list.
std::string render_table(std::vector<TableRow> rows);

/// Human-readable hypothesis table of a report.
std::string render_report(const TheoremReport& r);

}  // namespace lienard

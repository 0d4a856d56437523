#pragma once

// JSON and CSV encodings of paths, trajectories and reports. Doubles are
// written in shortest round-trip form, so every decode(encode(x)) == x bit for
// bit. Non-finite values are written as the strings "inf", "-inf", "nan".

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "nbvar/asymptotics.hpp"
#include "nbvar/experiments.hpp"
#include "nbvar/flow.hpp"
#include "nbvar/minimizer.hpp"

namespace nbvar {

using Json = nlohmann::json;

Json number_to_json(double v);
double number_from_json(const Json& j);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

Json to_json(const Masses& m);
Masses masses_from_json(const Json& j);

/// [[x_1...], [x_2...], ...]
Json to_json(const Configuration& x);
Json to_json(const TangentVector& v);
Configuration configuration_from_json(const Json& j);
TangentVector tangent_from_json(const Json& j);

/// {"masses", "dim", "times", "nodes"} with nodes row-major, one row per node.
Json to_json(const DiscretePath& p);
DiscretePath path_from_json(const Json& j);

Json to_json(const FixedTimeResult& r);
FixedTimeResult fixed_time_result_from_json(const Json& j);

/// {"value", "tau_star", "energy_residual", "converged", "path", ...}
Json to_json(const FreeTimeResult& r);
FreeTimeResult free_time_result_from_json(const Json& j);

Json to_json(const Trajectory& tr);
Trajectory trajectory_from_json(const Json& j);

/// Metadata as "# key: value" lines, then the header
/// t, x<i>_<c>..., v<i>_<c>..., energy and one row per sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
Trajectory read_trajectory_csv(std::istream& is);

/// t, x<i>_<c>... per node.
void write_path_csv(std::ostream& os, const DiscretePath& p);

/// {"label", "a", "blocks", "margins", "exponents", "windows", "residuals", ...}
Json to_json(const ClassificationReport& r);
ClassificationReport classification_from_json(const Json& j);

Json to_json(const HyperbolicRay& r);

Json to_json(const HorofunctionReport& r);
HorofunctionReport horofunction_from_json(const Json& j);

/// The limit trajectory is embedded only when include_zeta is set.
Json to_json(const ExperimentReport& r, bool include_zeta = false);
ExperimentReport experiment_from_json(const Json& j);

Json to_json(const ProbeTable& t);
ProbeTable probe_table_from_json(const Json& j);
/// s, ok, fit_residual, energy_of_a, distance_to_b, a<i>_<c>...
void write_probe_csv(std::ostream& os, const ProbeTable& t);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nbvar

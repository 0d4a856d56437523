#pragma once

// JSON run configurations for the command-line tool. A config may name a
// preset ("preset": "flagship"); its own keys are then merged over the preset.

#include <string>

#include "nbvar/experiments.hpp"
#include "nbvar/serialize.hpp"

namespace nbvar {

class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

Json preset_config(const std::string& name);
Json parse_config(const std::string& text);
Json load_config(const std::string& path);

Masses config_masses(const Json& cfg);
double config_h(const Json& cfg);
/// Configuration stored under key, checked against the masses.
Configuration config_configuration(const Json& cfg, const char* key);
TangentVector config_velocity(const Json& cfg, const char* key);
MinimizeOptions config_minimize(const Json& cfg);
DirectionSequence config_sequence(const Json& cfg);
LambdaRule config_lambda_rule(const Json& cfg);
std::vector<double> config_lambdas(const Json& cfg, const DirectionSequence& seq);
ExperimentOptions config_experiment(const Json& cfg);
double config_horizon(const Json& cfg);
HorofunctionOptions config_horofunction(const Json& cfg);
std::vector<Configuration> config_probes(const Json& cfg);
ProbeFamily config_probe_family(const Json& cfg);

}  // namespace nbvar

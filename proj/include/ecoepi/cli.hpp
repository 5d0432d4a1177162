#pragma once

#include <string>

#include "ecoepi/config.hpp"

namespace ecoepi {

// Directory holding the bundled scenario configs (fig1.cfg .. fig3.cfg).
// Resolution order: $ECOEPI_CONFIG_DIR, ./configs, the checkout's configs/.
std::string bundled_config_dir();

std::string figure_config_path(int id);

ScenarioConfig load_figure_scenario(int id);

// Entry point behind the ecoepi binary. Exit status: 0 success, 2 on
// configuration or usage errors, 3 on numerical failures.
int run_cli(int argc, const char* const* argv);

}  // namespace ecoepi

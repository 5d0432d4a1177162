#include "ecoepi/cli.hpp"

int main(int argc, char** argv) { return ecoepi::run_cli(argc, argv); }

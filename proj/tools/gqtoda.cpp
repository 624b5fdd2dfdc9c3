#include "gqtoda/cli/commands.hpp"

int main(int argc, char** argv) { return gqtoda::cli::run_cli(argc, argv); }

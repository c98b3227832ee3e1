#include "pdmdirac/cli_app.hpp"

int main(int argc, char** argv) { return pdmdirac::run_cli(argc, argv); }

#include "cli_app.hpp"

int main(int argc, char** argv) { return mixsmooth::cli::run(argc, argv); }

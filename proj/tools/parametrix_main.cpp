#include "parametrix/cli_run.hpp"

int main(int argc, char **argv) { return parametrix::cli_main(argc, argv); }

#ifndef PARAMETRIX_CLI_RUN_HPP
#define PARAMETRIX_CLI_RUN_HPP

namespace parametrix {

// full command dispatch; returns the process exit code
// 0 = success, 1 = error, 2 = negative mathematical verdict
int cli_main(int argc, char **argv);

} // namespace parametrix

#endif

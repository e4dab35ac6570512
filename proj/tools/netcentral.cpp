#include "netcentral/cli.hpp"

int main(int argc, char** argv) { return netcentral::cli::run(argc, argv); }

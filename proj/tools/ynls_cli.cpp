#include "ynls/cli.hpp"

int main(int argc, char** argv) { return ynls::run_command(argc, argv); }

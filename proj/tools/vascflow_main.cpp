#include "vascflow/cli.hpp"

int main(int argc, char** argv) { return vascflow::run_cli(argc, argv); }

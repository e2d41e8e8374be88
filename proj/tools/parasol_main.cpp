#include "parasol/cli.hpp"

int main(int argc, char** argv) { return parasol::cli_main(argc, argv); }

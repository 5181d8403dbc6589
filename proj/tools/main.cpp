#include "slantsub/cli.hpp"

int main(int argc, char** argv) { return slantsub::cli_main(argc, argv); }

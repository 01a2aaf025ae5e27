#include "levyz/cli.hpp"

int main(int argc, char** argv) { return levyz::cli::run(argc, argv); }

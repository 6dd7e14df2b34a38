#include "muspec/cli.hpp"

#include <iostream>

int main (int argc, char** argv) {
	return muspec::run_cli(argc, argv, std::cout, std::cerr);
}

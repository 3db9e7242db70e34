#include <iostream>
#include <string>
#include <vector>

#include "dirac/cli/commands.hpp"

int main(int argc, char ** argv)
{
	std::vector<std::string> args(argv + 1, argv + argc);
	return dirac::cli::run(args, std::cout, std::cerr);
}

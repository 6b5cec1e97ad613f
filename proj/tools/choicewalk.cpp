#include <iostream>

#include "choicewalk/cli.hpp"

int main(int argc, char** argv) { return choicewalk::run_command(argc, argv, std::cout, std::cerr); }

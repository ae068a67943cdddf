#include "dynhist/cli.hpp"

int main(int argc, char** argv) { return dynhist::cli::run(argc, argv); }

#include "termbench/cli.hpp"

int main(int argc, char** argv) { return termbench::run(argc, argv); }

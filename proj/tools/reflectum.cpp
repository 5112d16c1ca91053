#include "reflectum/cli.hpp"

int main(int argc, char** argv) { return reflectum::cli::main(argc, argv); }
